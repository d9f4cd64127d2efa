#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/metric.hpp"
#include "mvote/rational.hpp"
#include "mvote/weights.hpp"

namespace mvote {

struct ConstructionParams {
  Rational alpha = 1;
  /// Candidate count; each construction has its own default.
  std::optional<std::size_t> m;
  /// Group size for constructions with a growing voter population.
  std::optional<std::size_t> k;
};

struct Fact {
  enum class Kind {
    social_cost,        // SC(candidates[0]) on witness `witness`
    cost_ratio,         // SC(candidates[0]) / SC(candidates[1])
    lottery_ratio,      // E[SC(lottery)] / min_c SC(c)
    worst_mirror_ratio, // max over all witnesses of lottery_ratio
    plurality,          // plu(candidates[0])
    veto,               // veto(candidates[0])
    asymptotic,         // limit statement, not checkable on one instance
  };
  std::string name;
  Kind kind;
  Rational value;
  std::size_t witness = 0;
  std::vector<CandidateId> candidates;
  std::optional<Lottery> lottery;
};

std::string to_string(Fact::Kind kind);

struct NamedInstance {
  std::string name;
  ConstructionParams params;
  Election election;
  std::vector<WeightedGraphSpec> witnesses;
  std::vector<Fact> facts;

  MetricSpace metric(std::size_t w = 0) const { return from_weighted_graph(witnesses.at(w)); }
};

struct CatalogEntry {
  std::string name;
  std::string summary;
  /// Parameter names with their defaults and lower bounds ("alpha" always
  /// accepted, in [0,1]).
  struct Param {
    std::string name;
    std::size_t default_value;
    std::size_t minimum;
  };
  std::vector<Param> params;
  std::vector<std::string> facts;
};

/// Throws std::invalid_argument for an unknown name or out-of-domain params.
NamedInstance construct(const std::string& name, const ConstructionParams& params = {});

const std::vector<CatalogEntry>& list_constructions();
std::string catalog_json();

/// Recomputes a fact from the bundle. nullopt for asymptotic facts.
std::optional<Rational> evaluate_fact(const NamedInstance& inst, const Fact& fact);

/// Every witness is consistent and alpha-decisive and every checkable fact
/// matches. `problems` collects a line per failure.
bool verify(const NamedInstance& inst, std::vector<std::string>* problems = nullptr);

std::string facts_json(const NamedInstance& inst);

/// Voter i at distance alpha from its top choice and 1 + (p-1) alpha / m from
/// its p-th choice; consistent and alpha-decisive for any profile.
WeightedGraphSpec generic_witness(const Election& e, const Rational& alpha);

}  // namespace mvote
