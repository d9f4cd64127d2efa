#include "mvote/election.hpp"

#include <sstream>
#include <stdexcept>

#include "mvote/errors.hpp"
#include "text_lines.hpp"

namespace mvote {

Election::Election(std::size_t num_candidates, std::vector<Ranking> rankings)
    : m_(num_candidates), rankings_(std::move(rankings)) {
  if (m_ == 0) throw std::invalid_argument("election needs at least one candidate");
  if (rankings_.empty()) throw std::invalid_argument("election needs at least one voter");
  position_.assign(rankings_.size(), std::vector<std::size_t>(m_, m_));
  for (std::size_t i = 0; i < rankings_.size(); ++i) {
    const Ranking& r = rankings_[i];
    if (r.size() != m_) {
      throw std::invalid_argument("ranking of voter " + std::to_string(i) + " has " +
                                  std::to_string(r.size()) + " entries, expected " +
                                  std::to_string(m_));
    }
    for (std::size_t pos = 0; pos < m_; ++pos) {
      const CandidateId c = r[pos];
      if (c >= m_ || position_[i][c] != m_) {
        throw std::invalid_argument("ranking of voter " + std::to_string(i) +
                                    " is not a permutation of 0.." + std::to_string(m_ - 1));
      }
      position_[i][c] = pos;
    }
  }
}

void Election::check_voter(VoterId i) const {
  if (i >= rankings_.size()) throw std::out_of_range("voter index " + std::to_string(i));
}

void Election::check_candidate(CandidateId c) const {
  if (c >= m_) throw std::out_of_range("candidate index " + std::to_string(c));
}

const Ranking& Election::ranking(VoterId i) const {
  check_voter(i);
  return rankings_[i];
}

CandidateId Election::top_choice(VoterId i) const { return ranking(i).front(); }

CandidateId Election::last_choice(VoterId i) const { return ranking(i).back(); }

std::size_t Election::position(VoterId i, CandidateId c) const {
  check_voter(i);
  check_candidate(c);
  return position_[i][c];
}

bool Election::weakly_defeats(VoterId i, CandidateId a, CandidateId c) const {
  return position(i, a) <= position(i, c);
}

std::size_t plurality_score(const Election& e, CandidateId c) {
  if (c >= e.num_candidates()) throw std::out_of_range("candidate index " + std::to_string(c));
  std::size_t s = 0;
  for (VoterId i = 0; i < e.num_voters(); ++i) s += e.top_choice(i) == c ? 1 : 0;
  return s;
}

std::size_t veto_score(const Election& e, CandidateId c) {
  if (c >= e.num_candidates()) throw std::out_of_range("candidate index " + std::to_string(c));
  std::size_t s = 0;
  for (VoterId i = 0; i < e.num_voters(); ++i) s += e.last_choice(i) == c ? 1 : 0;
  return s;
}

std::vector<std::size_t> plurality_scores(const Election& e) {
  std::vector<std::size_t> s(e.num_candidates(), 0);
  for (VoterId i = 0; i < e.num_voters(); ++i) ++s[e.top_choice(i)];
  return s;
}

CandidateSet defeated_set(const Election& e, CandidateId a, const VoterSet& S) {
  if (S.universe() != e.num_voters()) throw std::invalid_argument("voter set size mismatch");
  CandidateSet out(e.num_candidates());
  for (VoterId i : S.members()) {
    const Ranking& r = e.ranking(i);
    // Everything from a's position downward.
    for (std::size_t pos = e.position(i, a); pos < r.size(); ++pos) out.insert(r[pos]);
  }
  return out;
}

RestrictedElection restrict_election(const Election& e, const VoterSet& S,
                                     const CandidateSet& D) {
  if (S.universe() != e.num_voters() || D.universe() != e.num_candidates()) {
    throw std::invalid_argument("restriction set size mismatch");
  }
  if (S.empty() || D.empty()) throw std::invalid_argument("restriction to an empty set");
  std::vector<VoterId> voter_map = S.members();
  std::vector<CandidateId> candidate_map = D.members();
  std::vector<std::size_t> new_index(e.num_candidates(), 0);
  for (std::size_t k = 0; k < candidate_map.size(); ++k) new_index[candidate_map[k]] = k;
  std::vector<Ranking> rankings;
  rankings.reserve(voter_map.size());
  for (VoterId i : voter_map) {
    Ranking r;
    for (CandidateId c : e.ranking(i)) {
      if (D.contains(c)) r.push_back(new_index[c]);
    }
    rankings.push_back(std::move(r));
  }
  return {Election(candidate_map.size(), std::move(rankings)), std::move(voter_map),
          std::move(candidate_map)};
}

Election parse_election(std::string_view text) {
  const auto lines = detail::token_lines(text);
  if (lines.empty() || lines[0].tokens.size() != 1 || lines[0].tokens[0] != "election") {
    throw ParseError("election file must start with 'election'");
  }
  if (lines.size() < 2 || lines[1].tokens.size() != 2) {
    throw ParseError("expected '<n> <m>' after the 'election' header");
  }
  const std::size_t n = detail::parse_count(lines[1].tokens[0], lines[1].line_no);
  const std::size_t m = detail::parse_count(lines[1].tokens[1], lines[1].line_no);
  if (n == 0 || m == 0) detail::fail_at(lines[1].line_no, "n and m must be positive");
  if (lines.size() - 2 != n) {
    throw ParseError("header declares " + std::to_string(n) + " voters but " +
                     std::to_string(lines.size() - 2) + " ranking lines follow");
  }
  std::vector<Ranking> rankings;
  rankings.reserve(n);
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto& tl = lines[k];
    if (tl.tokens.size() != m) {
      detail::fail_at(tl.line_no, "expected " + std::to_string(m) + " candidate indices");
    }
    Ranking r;
    std::vector<bool> seen(m, false);
    for (const auto& tok : tl.tokens) {
      const std::size_t c = detail::parse_count(tok, tl.line_no);
      if (c >= m) detail::fail_at(tl.line_no, "candidate index " + tok + " out of range");
      if (seen[c]) detail::fail_at(tl.line_no, "candidate " + tok + " listed twice");
      seen[c] = true;
      r.push_back(c);
    }
    rankings.push_back(std::move(r));
  }
  return Election(m, std::move(rankings));
}

std::string serialize_election(const Election& e) {
  std::ostringstream out;
  out << "election\n" << e.num_voters() << ' ' << e.num_candidates() << '\n';
  for (const Ranking& r : e.rankings()) {
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? " " : "") << r[k];
    out << '\n';
  }
  return out.str();
}

}  // namespace mvote
