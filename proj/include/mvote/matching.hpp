#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/index_set.hpp"
#include "mvote/rational.hpp"
#include "mvote/weights.hpp"

namespace mvote {

/// Vertex-weighted bipartite voters x candidates graph of candidate a:
/// (i, c) is an edge iff a weakly defeats c in vote i.
/// Holds a pointer to the election, which must outlive the graph.
class DominationGraph {
 public:
  DominationGraph(const Election& e, CandidateId a, WeightVector p, WeightVector q);

  const Election& election() const { return *e_; }
  CandidateId candidate() const { return a_; }
  const WeightVector& p() const { return p_; }
  const WeightVector& q() const { return q_; }

  bool adjacent(VoterId i, CandidateId c) const { return e_->weakly_defeats(i, a_, c); }
  CandidateSet neighbors(VoterId i) const;
  /// A(a, S).
  CandidateSet neighborhood(const VoterSet& S) const;

 private:
  const Election* e_;
  CandidateId a_;
  WeightVector p_;
  WeightVector q_;
};

DominationGraph build_domination_graph(const Election& e, CandidateId a, WeightVector p,
                                       WeightVector q);

/// w[i][c] is the weight on edge (i, c).
using FractionalMatching = std::vector<std::vector<Rational>>;

struct MatchingCertificate {
  bool matchable = false;
  std::optional<FractionalMatching> matching;
  /// Voter set S with q(A(a,S)) < p(S); set when not matchable.
  std::optional<VoterSet> violating_set;
};

/// Exact max-flow decision with a witness either way.
MatchingCertificate check_fractional_matching(const DominationGraph& g);

/// Subset enumeration. Only the violating set is filled in. Throws
/// std::invalid_argument for more than 20 voters.
MatchingCertificate brute_force_hall(const DominationGraph& g);

bool is_valid_fractional_matching(const DominationGraph& g, const FractionalMatching& w);
bool is_hall_violation(const DominationGraph& g, const VoterSet& S);
/// Checks whichever witness the certificate carries.
bool certificate_is_valid(const DominationGraph& g, const MatchingCertificate& cert);

/// Bipartite voters x voters graph; rows[i] holds the right-side neighbors of i.
struct VoterGraph {
  std::vector<VoterSet> rows;

  std::size_t size() const { return rows.size(); }
  bool adjacent(VoterId i, VoterId j) const { return rows.at(i).contains(j); }
};

/// (i, j) iff a weakly defeats top(j) in vote i.
VoterGraph build_integral_domination_graph(const Election& e, CandidateId a);

/// (i, j) iff some c has a weakly defeating c in vote i and c weakly
/// defeating b in vote j.
VoterGraph build_separation_graph(const Election& e, CandidateId a, CandidateId b);

/// match[i] is the right vertex matched to left vertex i. Augmenting paths,
/// trying left vertices and their neighbors in increasing index order.
std::optional<std::vector<VoterId>> perfect_matching(const VoterGraph& g);

bool in_matching_uncovered_set(const Election& e, CandidateId a);

/// Adjacency-list JSON for debugging.
std::string domination_graph_json(const DominationGraph& g);
std::string voter_graph_json(const VoterGraph& g);

}  // namespace mvote
