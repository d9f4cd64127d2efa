#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mvote/index_set.hpp"

namespace mvote {

using Ranking = std::vector<CandidateId>;

/// A preference profile: n voters, each with a strict ranking of m candidates,
/// most preferred first.
class Election {
 public:
  Election(std::size_t num_candidates, std::vector<Ranking> rankings);

  std::size_t num_voters() const { return rankings_.size(); }
  std::size_t num_candidates() const { return m_; }

  const Ranking& ranking(VoterId i) const;
  const std::vector<Ranking>& rankings() const { return rankings_; }

  CandidateId top_choice(VoterId i) const;
  CandidateId last_choice(VoterId i) const;
  /// 0 for the top choice, m-1 for the last.
  std::size_t position(VoterId i, CandidateId c) const;

  /// a = c or a precedes c in voter i's ranking.
  bool weakly_defeats(VoterId i, CandidateId a, CandidateId c) const;

  friend bool operator==(const Election& x, const Election& y) {
    return x.m_ == y.m_ && x.rankings_ == y.rankings_;
  }

 private:
  void check_voter(VoterId i) const;
  void check_candidate(CandidateId c) const;

  std::size_t m_;
  std::vector<Ranking> rankings_;
  std::vector<std::vector<std::size_t>> position_;
};

std::size_t plurality_score(const Election& e, CandidateId c);
std::size_t veto_score(const Election& e, CandidateId c);
std::vector<std::size_t> plurality_scores(const Election& e);

/// Candidates that `a` weakly defeats in at least one vote of S.
CandidateSet defeated_set(const Election& e, CandidateId a, const VoterSet& S);

/// The sub-election on voters S and candidates D. Indices are re-mapped
/// densely in increasing order; the maps give the original indices.
struct RestrictedElection {
  Election election;
  std::vector<VoterId> voter_map;
  std::vector<CandidateId> candidate_map;
};

RestrictedElection restrict_election(const Election& e, const VoterSet& S,
                                     const CandidateSet& D);

Election parse_election(std::string_view text);
std::string serialize_election(const Election& e);

}  // namespace mvote
