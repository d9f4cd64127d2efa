#include "mvote/matching.hpp"

#include <json.hpp>
#include <stdexcept>

#include "max_flow.hpp"

namespace mvote {

DominationGraph::DominationGraph(const Election& e, CandidateId a, WeightVector p,
                                 WeightVector q)
    : e_(&e), a_(a), p_(std::move(p)), q_(std::move(q)) {
  if (a >= e.num_candidates()) throw std::out_of_range("candidate index " + std::to_string(a));
  if (p_.size() != e.num_voters()) throw std::invalid_argument("p has the wrong length");
  if (q_.size() != e.num_candidates()) throw std::invalid_argument("q has the wrong length");
}

CandidateSet DominationGraph::neighbors(VoterId i) const {
  return defeated_set(*e_, a_, VoterSet(e_->num_voters(), {i}));
}

CandidateSet DominationGraph::neighborhood(const VoterSet& S) const {
  return defeated_set(*e_, a_, S);
}

DominationGraph build_domination_graph(const Election& e, CandidateId a, WeightVector p,
                                       WeightVector q) {
  return DominationGraph(e, a, std::move(p), std::move(q));
}

MatchingCertificate check_fractional_matching(const DominationGraph& g) {
  const Election& e = g.election();
  const std::size_t n = e.num_voters();
  const std::size_t m = e.num_candidates();

  std::vector<Rational> all = g.p().values();
  all.insert(all.end(), g.q().values().begin(), g.q().values().end());
  const Integer scale = common_denominator(all);
  auto scaled = [&](const Rational& x) {
    Rational y = x * scale;
    return Integer(y.get_num());
  };
  // Total scaled weight on each side is `scale`, so scale + 1 is never binding.
  const Integer unbounded = scale + 1;

  const std::size_t source = n + m;
  const std::size_t sink = n + m + 1;
  detail::MaxFlow flow(n + m + 2);
  for (VoterId i = 0; i < n; ++i) flow.add_edge(source, i, scaled(g.p()[i]));
  for (CandidateId c = 0; c < m; ++c) flow.add_edge(n + c, sink, scaled(g.q()[c]));
  std::vector<std::vector<std::optional<std::size_t>>> edge_id(
      n, std::vector<std::optional<std::size_t>>(m));
  for (VoterId i = 0; i < n; ++i) {
    for (CandidateId c = 0; c < m; ++c) {
      if (g.adjacent(i, c)) edge_id[i][c] = flow.add_edge(i, n + c, unbounded);
    }
  }

  MatchingCertificate cert;
  if (flow.run(source, sink) == scale) {
    cert.matchable = true;
    FractionalMatching w(n, std::vector<Rational>(m, Rational(0)));
    for (VoterId i = 0; i < n; ++i) {
      for (CandidateId c = 0; c < m; ++c) {
        if (edge_id[i][c]) {
          w[i][c] = Rational(flow.flow_on(*edge_id[i][c]), scale);
          w[i][c].canonicalize();
        }
      }
    }
    cert.matching = std::move(w);
  } else {
    const auto side = flow.source_side(source);
    VoterSet S(n);
    for (VoterId i = 0; i < n; ++i) {
      if (side[i]) S.insert(i);
    }
    cert.violating_set = std::move(S);
  }
  return cert;
}

MatchingCertificate brute_force_hall(const DominationGraph& g) {
  const std::size_t n = g.election().num_voters();
  if (n > 20) throw std::invalid_argument("brute_force_hall supports at most 20 voters");
  MatchingCertificate cert;
  for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
    VoterSet S = VoterSet::from_mask(n, mask);
    if (is_hall_violation(g, S)) {
      cert.violating_set = std::move(S);
      return cert;
    }
  }
  cert.matchable = true;
  return cert;
}

bool is_valid_fractional_matching(const DominationGraph& g, const FractionalMatching& w) {
  const std::size_t n = g.election().num_voters();
  const std::size_t m = g.election().num_candidates();
  if (w.size() != n) return false;
  std::vector<Rational> col(m, Rational(0));
  for (VoterId i = 0; i < n; ++i) {
    if (w[i].size() != m) return false;
    Rational row = 0;
    for (CandidateId c = 0; c < m; ++c) {
      if (w[i][c] < 0) return false;
      if (w[i][c] != 0 && !g.adjacent(i, c)) return false;
      row += w[i][c];
      col[c] += w[i][c];
    }
    if (row != g.p()[i]) return false;
  }
  for (CandidateId c = 0; c < m; ++c) {
    if (col[c] != g.q()[c]) return false;
  }
  return true;
}

bool is_hall_violation(const DominationGraph& g, const VoterSet& S) {
  return g.q().mass(g.neighborhood(S)) < g.p().mass(S);
}

bool certificate_is_valid(const DominationGraph& g, const MatchingCertificate& cert) {
  if (cert.matchable) {
    return !cert.matching || is_valid_fractional_matching(g, *cert.matching);
  }
  return cert.violating_set && is_hall_violation(g, *cert.violating_set);
}

VoterGraph build_integral_domination_graph(const Election& e, CandidateId a) {
  const std::size_t n = e.num_voters();
  VoterGraph g{std::vector<VoterSet>(n, VoterSet(n))};
  for (VoterId i = 0; i < n; ++i) {
    for (VoterId j = 0; j < n; ++j) {
      if (e.weakly_defeats(i, a, e.top_choice(j))) g.rows[i].insert(j);
    }
  }
  return g;
}

VoterGraph build_separation_graph(const Election& e, CandidateId a, CandidateId b) {
  const std::size_t n = e.num_voters();
  VoterGraph g{std::vector<VoterSet>(n, VoterSet(n))};
  for (VoterId i = 0; i < n; ++i) {
    const CandidateSet below_a = defeated_set(e, a, VoterSet(n, {i}));
    for (VoterId j = 0; j < n; ++j) {
      for (CandidateId c : below_a.members()) {
        if (e.weakly_defeats(j, c, b)) {
          g.rows[i].insert(j);
          break;
        }
      }
    }
  }
  return g;
}

namespace {

bool augment(const VoterGraph& g, VoterId i, std::vector<bool>& visited,
             std::vector<std::optional<VoterId>>& owner) {
  for (VoterId j : g.rows[i].members()) {
    if (visited[j]) continue;
    visited[j] = true;
    if (!owner[j] || augment(g, *owner[j], visited, owner)) {
      owner[j] = i;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<VoterId>> perfect_matching(const VoterGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::optional<VoterId>> owner(n);
  for (VoterId i = 0; i < n; ++i) {
    std::vector<bool> visited(n, false);
    if (!augment(g, i, visited, owner)) return std::nullopt;
  }
  std::vector<VoterId> match(n);
  for (VoterId j = 0; j < n; ++j) match[*owner[j]] = j;
  return match;
}

bool in_matching_uncovered_set(const Election& e, CandidateId a) {
  for (CandidateId b = 0; b < e.num_candidates(); ++b) {
    if (!perfect_matching(build_separation_graph(e, a, b))) return false;
  }
  return true;
}

std::string domination_graph_json(const DominationGraph& g) {
  nlohmann::json j;
  j["candidate"] = g.candidate();
  j["p"] = nlohmann::json::array();
  j["q"] = nlohmann::json::array();
  for (const auto& x : g.p().values()) j["p"].push_back(to_string(x));
  for (const auto& x : g.q().values()) j["q"].push_back(to_string(x));
  j["adjacency"] = nlohmann::json::array();
  for (VoterId i = 0; i < g.election().num_voters(); ++i) {
    j["adjacency"].push_back(g.neighbors(i).members());
  }
  return j.dump();
}

std::string voter_graph_json(const VoterGraph& g) {
  nlohmann::json j;
  j["adjacency"] = nlohmann::json::array();
  for (const auto& row : g.rows) j["adjacency"].push_back(row.members());
  return j.dump();
}

}  // namespace mvote
