#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/matching.hpp"
#include "mvote/rational.hpp"
#include "mvote/weights.hpp"

namespace mvote {

struct RuleReport {
  std::string rule;
  Lottery outcome;
  /// Set for deterministic rules.
  std::optional<CandidateId> winner;
  /// Matching rules only: every candidate whose domination graph is matchable,
  /// plus one certificate per candidate.
  std::optional<CandidateSet> matchable;
  std::vector<MatchingCertificate> certificates;
};

/// Lowest-index candidate whose (p,q)-domination graph has a fractional
/// perfect matching. An empty matchable set throws InternalError.
RuleReport matching_rule(const Election& e, const WeightVector& p, const WeightVector& q);
RuleReport plurality_matching(const Election& e);
RuleReport uniform_matching(const Election& e);

Lottery random_dictatorship(const Election& e);

/// Degenerate on the lowest-index candidate with plu >= (1+alpha) n / 2 if
/// one exists, otherwise proportional to plu(a) / (n - 2 plu(a) / (1+alpha)).
Lottery smart_dictatorship(const Election& e, const Rational& alpha);

/// Two-candidate rule. Threshold cases take the same degenerate branch as
/// smart_dictatorship; otherwise the squares formula is evaluated directly.
/// Throws std::invalid_argument unless m = 2.
Lottery generalized_proportional_to_squares(const Election& e, const Rational& alpha);

/// Candidate weakly preferred by at least half the voters to every other one
/// (lowest index if several).
std::optional<CandidateId> condorcet_winner(const Election& e);

/// Most strict pairwise-majority wins; lowest index breaks ties.
CandidateId copeland_winner(const Election& e);

/// Number of voters preferring x to y.
std::size_t pairwise_support(const Election& e, CandidateId x, CandidateId y);

void check_alpha(const Rational& alpha);

/// A parsed rule name. For `matching:<p-file>:<q-file>` the two paths are kept
/// and the caller loads the weights.
struct RuleSpec {
  enum class Kind {
    plurality_matching,
    uniform_matching,
    custom_matching,
    random_dictatorship,
    smart_dictatorship,
    gps,
    condorcet,
    copeland,
  };
  Kind kind;
  std::string p_file;
  std::string q_file;

  std::string name() const;
};

/// Throws std::invalid_argument for unknown names.
RuleSpec parse_rule(std::string_view name);
std::vector<std::string> rule_names();

/// Runs a rule. `p`/`q` are required for custom matching. Condorcet with no
/// winner throws std::domain_error.
RuleReport run_rule(const RuleSpec& spec, const Election& e, const Rational& alpha,
                    const std::optional<WeightVector>& p = std::nullopt,
                    const std::optional<WeightVector>& q = std::nullopt);

}  // namespace mvote
