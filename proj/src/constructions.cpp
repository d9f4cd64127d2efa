#include "mvote/constructions.hpp"

#include <algorithm>
#include <json.hpp>
#include <numeric>
#include <stdexcept>

#include "mvote/rules.hpp"

namespace mvote {

namespace {

/// Accumulates labelled points and weighted edges. Zero-weight edges merge
/// their endpoints so the emitted graph only has positive weights.
class GraphBuilder {
 public:
  std::size_t point(std::string id, std::vector<VoterId> voters = {},
                    std::vector<CandidateId> candidates = {}) {
    nodes_.push_back({std::move(id), std::move(voters), std::move(candidates)});
    parent_.push_back(parent_.size());
    return nodes_.size() - 1;
  }

  void edge(std::size_t u, std::size_t v, const Rational& w) {
    if (w < 0) throw std::invalid_argument("negative edge weight");
    if (w == 0) {
      parent_[find(u)] = find(v);
    } else {
      edges_.push_back({u, v, w});
    }
  }

  WeightedGraphSpec build(std::size_t n, std::size_t m) {
    WeightedGraphSpec g;
    g.num_voters = n;
    g.num_candidates = m;
    std::vector<std::optional<std::size_t>> slot(nodes_.size());
    for (std::size_t x = 0; x < nodes_.size(); ++x) {
      const std::size_t r = find(x);
      if (!slot[r]) {
        slot[r] = g.points.size();
        g.points.push_back({nodes_[x].id, {}, {}});
      } else {
        g.points[*slot[r]].id += "+" + nodes_[x].id;
      }
      auto& p = g.points[*slot[r]];
      p.voters.insert(p.voters.end(), nodes_[x].voters.begin(), nodes_[x].voters.end());
      p.candidates.insert(p.candidates.end(), nodes_[x].candidates.begin(),
                          nodes_[x].candidates.end());
    }
    for (auto& p : g.points) {
      std::sort(p.voters.begin(), p.voters.end());
      std::sort(p.candidates.begin(), p.candidates.end());
    }
    for (const auto& e : edges_) {
      const std::size_t a = *slot[find(e.from)];
      const std::size_t b = *slot[find(e.to)];
      if (a != b) g.edges.push_back({a, b, e.weight});
    }
    return g;
  }

 private:
  struct Node {
    std::string id;
    std::vector<VoterId> voters;
    std::vector<CandidateId> candidates;
  };

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  std::vector<Node> nodes_;
  std::vector<std::size_t> parent_;
  std::vector<WeightedGraphSpec::Edge> edges_;
};

Rational diameter(const WeightedGraphSpec& g) {
  const MetricSpace d = from_weighted_graph(g);
  Rational best = 0;
  for (const auto& row : d.matrix()) {
    for (const auto& x : row) best = std::max(best, x);
  }
  return best;
}

/// Appends candidates m_base..m_target-1 on one point at ten times the
/// diameter from the first point, ranked last by everyone in index order.
void pad_with_far_candidates(WeightedGraphSpec& g, std::vector<Ranking>& rankings,
                             std::size_t m_target) {
  const std::size_t m_base = g.num_candidates;
  if (m_target <= m_base) return;
  Rational diam = diameter(g);
  const Rational gap = diam == 0 ? Rational(1) : Rational(10 * diam);
  WeightedGraphSpec::Point far{"far", {}, {}};
  for (CandidateId c = m_base; c < m_target; ++c) far.candidates.push_back(c);
  g.points.push_back(std::move(far));
  g.edges.push_back({0, g.points.size() - 1, gap});
  g.num_candidates = m_target;
  for (auto& r : rankings) {
    for (CandidateId c = m_base; c < m_target; ++c) r.push_back(c);
  }
}

Rational R(std::size_t x) { return Rational(static_cast<unsigned long>(x)); }

Fact social_cost_fact(const std::string& label, CandidateId c, Rational v, std::size_t w = 0) {
  return {"SC(" + label + ")", Fact::Kind::social_cost, std::move(v), w, {c}, std::nullopt};
}

Fact ratio_fact(const std::string& x, const std::string& y, CandidateId cx, CandidateId cy,
                Rational v, std::size_t w = 0) {
  return {"SC(" + x + ")/SC(" + y + ")", Fact::Kind::cost_ratio, std::move(v), w, {cx, cy},
          std::nullopt};
}

std::size_t param(const std::optional<std::size_t>& given, std::size_t fallback,
                  std::size_t minimum, const char* what) {
  const std::size_t v = given.value_or(fallback);
  if (v < minimum) {
    throw std::invalid_argument(std::string(what) + " must be at least " + std::to_string(minimum));
  }
  return v;
}

void reject_k(const ConstructionParams& p, const std::string& name) {
  if (p.k) throw std::invalid_argument(name + " takes no k parameter");
}

void reject_m(const ConstructionParams& p, const std::string& name) {
  if (p.m) throw std::invalid_argument(name + " takes no m parameter");
}

NamedInstance thm1_tight(const ConstructionParams& p) {
  reject_k(p, "thm1-tight");
  const std::size_t m = param(p.m, 3, 3, "m");
  const Rational& a = p.alpha;
  // Candidates a=0, b=1, c=2; voters 0 and 1.
  GraphBuilder gb;
  const auto pa = gb.point("a", {}, {0});
  const auto v0 = gb.point("v0", {0});
  const auto v1c = gb.point("v1_c", {1}, {2});
  const auto pb = gb.point("b", {}, {1});
  gb.edge(pa, v0, a);
  gb.edge(v0, v1c, 1);
  gb.edge(v0, pb, 1);
  gb.edge(pb, v1c, 1 + a);
  WeightedGraphSpec g = gb.build(2, 3);
  std::vector<Ranking> rankings{{0, 1, 2}, {2, 1, 0}};
  pad_with_far_candidates(g, rankings, m);
  NamedInstance inst{"thm1-tight", p, Election(m, rankings), {g}, {}};
  inst.facts = {social_cost_fact("b", 1, 2 + a), social_cost_fact("c", 2, 1),
                ratio_fact("b", "c", 1, 2, 2 + a)};
  return inst;
}

/// The two-block instance. With `mirrored` the B side is spread out instead.
WeightedGraphSpec two_block_metric(std::size_t ell, const Rational& alpha, bool mirrored) {
  GraphBuilder gb;
  // Spread side: voter s+i with candidate s+i at alpha, other spread
  // candidates at 1; the clustered side sits on one hub at distance 1.
  const std::size_t spread = mirrored ? ell : 0;
  const std::size_t clustered = mirrored ? 0 : ell;
  std::vector<VoterId> hub_voters;
  std::vector<CandidateId> hub_cands;
  for (std::size_t i = 0; i < ell; ++i) {
    hub_voters.push_back(clustered + i);
    hub_cands.push_back(clustered + i);
  }
  const auto hub = gb.point("hub", hub_voters, hub_cands);
  std::vector<std::size_t> voters;
  std::vector<std::size_t> cands;
  for (std::size_t i = 0; i < ell; ++i) {
    voters.push_back(gb.point("v" + std::to_string(spread + i), {spread + i}));
    cands.push_back(gb.point("c" + std::to_string(spread + i), {}, {spread + i}));
  }
  for (std::size_t i = 0; i < ell; ++i) {
    gb.edge(hub, voters[i], 1);
    for (std::size_t j = 0; j < ell; ++j) gb.edge(voters[i], cands[j], i == j ? alpha : Rational(1));
  }
  return gb.build(2 * ell, 2 * ell);
}

std::vector<Ranking> two_block_rankings(std::size_t ell) {
  std::vector<Ranking> rankings;
  for (std::size_t i = 0; i < 2 * ell; ++i) {
    const std::size_t own = i < ell ? 0 : ell;
    const std::size_t other = i < ell ? ell : 0;
    Ranking r{i};
    for (std::size_t c = own; c < own + ell; ++c) {
      if (c != i) r.push_back(c);
    }
    for (std::size_t c = other; c < other + ell; ++c) r.push_back(c);
    rankings.push_back(std::move(r));
  }
  return rankings;
}

NamedInstance thm2_lower(const ConstructionParams& p) {
  reject_k(p, "thm2-lower");
  const std::size_t m = param(p.m, 4, 2, "m");
  const std::size_t ell = m / 2;
  const Rational& a = p.alpha;
  WeightedGraphSpec g = two_block_metric(ell, a, false);
  std::vector<Ranking> rankings = two_block_rankings(ell);
  pad_with_far_candidates(g, rankings, m);
  NamedInstance inst{"thm2-lower", p, Election(m, rankings), {g}, {}};
  const Rational L = R(ell);
  for (std::size_t i = 0; i < ell; ++i) {
    inst.facts.push_back(
        social_cost_fact("a_" + std::to_string(i + 1), i, a + (L - 1) + L * (1 + a)));
  }
  for (std::size_t j = ell; j < 2 * ell; ++j) {
    inst.facts.push_back(social_cost_fact("a_" + std::to_string(j + 1), j, L));
  }
  inst.facts.push_back(ratio_fact("a_1", "a_" + std::to_string(ell + 1), 0, ell,
                                  2 + a - 2 * (1 - a) / R(2 * ell)));
  return inst;
}

NamedInstance thm6_rand(const ConstructionParams& p) {
  reject_k(p, "thm6-rand");
  const std::size_t m = param(p.m, 4, 2, "m");
  const std::size_t ell = m / 2;
  const Rational& a = p.alpha;
  WeightedGraphSpec g0 = two_block_metric(ell, a, false);
  WeightedGraphSpec g1 = two_block_metric(ell, a, true);
  std::vector<Ranking> rankings = two_block_rankings(ell);
  std::vector<Ranking> scratch = rankings;
  pad_with_far_candidates(g0, rankings, m);
  pad_with_far_candidates(g1, scratch, m);
  NamedInstance inst{"thm6-rand", p, Election(m, rankings), {g0, g1}, {}};
  const Rational L = R(ell);
  const Rational bad = a + (L - 1) + L * (1 + a);
  inst.facts.push_back(social_cost_fact("a_1", 0, bad, 0));
  inst.facts.push_back(social_cost_fact("a_" + std::to_string(ell + 1), ell, L, 0));
  inst.facts.push_back(social_cost_fact("a_1", 0, L, 1));
  inst.facts.push_back(social_cost_fact("a_" + std::to_string(ell + 1), ell, bad, 1));
  std::vector<Rational> probs(m, Rational(0));
  for (std::size_t c = 0; c < 2 * ell; ++c) probs[c] = Rational(1) / R(2 * ell);
  const Rational target = (3 + a) / 2 - (1 - a) / R(2 * ell);
  inst.facts.push_back({"worst E[SC(uniform over A and B)]/SC(opt)", Fact::Kind::worst_mirror_ratio,
                        target, 0, {}, Lottery(probs)});
  return inst;
}

NamedInstance prop2_muc(const ConstructionParams& p) {
  reject_k(p, "prop2-muc");
  const std::size_t m = param(p.m, 5, 5, "m");
  const Rational& a = p.alpha;
  // Candidates a=0, b=1, c=2, d=3, e=4; voters 0, 1, 2.
  GraphBuilder gb;
  const auto c1 = gb.point("c_v1", {1}, {2});
  const auto v2 = gb.point("v2", {2});
  const auto pd = gb.point("d", {}, {3});
  const auto pa = gb.point("a", {}, {0});
  const auto pe = gb.point("e", {}, {4});
  const auto pb = gb.point("b", {}, {1});
  const auto v0 = gb.point("v0", {0});
  gb.edge(c1, v2, 1);
  gb.edge(v2, pd, a);
  gb.edge(pd, pa, 1 - a);
  gb.edge(pa, pe, 1 + a);
  gb.edge(pe, pb, 1 - a);
  gb.edge(pb, v0, a);
  gb.edge(v0, c1, 1);
  WeightedGraphSpec g = gb.build(3, 5);
  std::vector<Ranking> rankings{{1, 4, 2, 0, 3}, {2, 3, 1, 0, 4}, {3, 0, 2, 1, 4}};
  pad_with_far_candidates(g, rankings, m);
  NamedInstance inst{"prop2-muc", p, Election(m, rankings), {g}, {}};
  inst.facts = {social_cost_fact("a", 0, 5 + a), social_cost_fact("c", 2, 2),
                ratio_fact("a", "c", 0, 2, (5 + a) / 2)};
  return inst;
}

NamedInstance prop3_condorcet(const ConstructionParams& p) {
  std::size_t k = 0;
  if (p.m && p.k && *p.m != *p.k + 2) throw std::invalid_argument("prop3-condorcet needs m = k + 2");
  if (p.m) {
    k = param(p.m, 4, 3, "m") - 2;
  } else {
    k = param(p.k, 2, 1, "k");
  }
  const Rational& a = p.alpha;
  const Rational K = R(k);
  // Candidates a=0, b=1, c_r=1+r. Voters: V_a = {0,1}, V_b = 2..k+1,
  // V_{c_r} = k+1+r.
  const std::size_t m = k + 2;
  const std::size_t n = 2 + k + k;
  GraphBuilder gb;
  const auto pa = gb.point("a", {}, {0});
  const auto va = gb.point("V_a", {0, 1});
  std::vector<VoterId> vb;
  for (std::size_t i = 0; i < k; ++i) vb.push_back(2 + i);
  const auto pb = gb.point("b_V_b", vb, {1});
  gb.edge(pa, va, a);
  for (std::size_t r = 1; r <= k; ++r) {
    const auto pc = gb.point("c" + std::to_string(r), {k + 1 + r}, {1 + r});
    gb.edge(va, pc, 1);
    gb.edge(pc, pb, 1 + a);
  }
  WeightedGraphSpec g = gb.build(n, m);
  std::vector<Ranking> rankings;
  Ranking chain;
  for (std::size_t r = 1; r <= k; ++r) chain.push_back(1 + r);
  for (int t = 0; t < 2; ++t) {
    Ranking r{0};
    r.insert(r.end(), chain.begin(), chain.end());
    r.push_back(1);
    rankings.push_back(r);
  }
  for (std::size_t i = 0; i < k; ++i) {
    Ranking r{1};
    r.insert(r.end(), chain.begin(), chain.end());
    r.push_back(0);
    rankings.push_back(r);
  }
  for (std::size_t r = 1; r <= k; ++r) {
    Ranking rk{1 + r, 0, 1};
    for (std::size_t s = 1; s <= k; ++s) {
      if (s != r) rk.push_back(1 + s);
    }
    rankings.push_back(rk);
  }
  ConstructionParams stored = p;
  stored.k = k;
  stored.m = m;
  NamedInstance inst{"prop3-condorcet", stored, Election(m, rankings), {g}, {}};
  const Rational sca = 3 * K + (3 * K + 2) * a;
  const Rational scb = K + 4 + (K + 2) * a;
  inst.facts = {social_cost_fact("a", 0, sca), social_cost_fact("b", 1, scb),
                ratio_fact("a", "b", 0, 1, sca / scb)};
  return inst;
}

NamedInstance thm5_plurality(const ConstructionParams& p) {
  reject_k(p, "thm5-plurality");
  const std::size_t m = param(p.m, 3, 2, "m");
  const Rational& a = p.alpha;
  const Rational M = R(m);
  // c* = 0 sits with voter 0; voter i >= 1 ranks candidate i first.
  GraphBuilder gb;
  const auto hub = gb.point("cstar_v0", {0}, {0});
  for (std::size_t i = 1; i < m; ++i) {
    const auto vi = gb.point("v" + std::to_string(i), {i});
    const auto ci = gb.point("c" + std::to_string(i), {}, {i});
    gb.edge(vi, hub, 1);
    gb.edge(vi, ci, a);
  }
  WeightedGraphSpec g = gb.build(m, m);
  std::vector<Ranking> rankings;
  Ranking first(m);
  std::iota(first.begin(), first.end(), CandidateId{0});
  rankings.push_back(first);
  for (std::size_t i = 1; i < m; ++i) {
    Ranking r{i, 0};
    for (std::size_t c = 1; c < m; ++c) {
      if (c != i) r.push_back(c);
    }
    rankings.push_back(r);
  }
  NamedInstance inst{"thm5-plurality", p, Election(m, rankings), {g}, {}};
  inst.facts.push_back(social_cost_fact("c*", 0, M - 1));
  const Rational other = a + (1 + a) + (M - 2) * (2 + a);
  for (std::size_t c = 1; c < m; ++c) {
    inst.facts.push_back(social_cost_fact("c" + std::to_string(c), c, other));
  }
  std::vector<Rational> probs(m, Rational(1) / M);
  inst.facts.push_back({"E[SC(1/m on c*, rest uniform)]/SC(c*)", Fact::Kind::lottery_ratio,
                        2 + a - 2 / M, 0, {}, Lottery(probs)});
  return inst;
}

NamedInstance thm7_mix(const ConstructionParams& p) {
  const std::size_t m = param(p.m, 4, 3, "m");
  const std::size_t k = param(p.k, 10, 1, "k");
  const std::size_t ell = m - 2;
  const Rational& a = p.alpha;
  const Rational K = R(k);
  const Rational L = R(ell);
  // a_j = j-1 for j = 1..ell+1, a* = ell+1. Group V_i = voters (i-1)k..ik-1,
  // V_{ell+1} = voter k*ell.
  const CandidateId star = ell + 1;
  const VoterId loner = k * ell;
  GraphBuilder gb;
  const auto pstar = gb.point("a*", {}, {star});
  const auto plon = gb.point("V_last", {loner});
  const auto plast = gb.point("a_last", {}, {ell});
  gb.edge(plon, plast, a);
  for (std::size_t i = 0; i < ell; ++i) {
    std::vector<VoterId> group;
    for (std::size_t t = 0; t < k; ++t) group.push_back(i * k + t);
    const auto vg = gb.point("V" + std::to_string(i + 1), group);
    const auto ci = gb.point("a" + std::to_string(i + 1), {}, {i});
    gb.edge(pstar, vg, 1);
    gb.edge(ci, vg, a);
    gb.edge(plon, ci, 2);
  }
  WeightedGraphSpec g = gb.build(k * ell + 1, m);
  std::vector<Ranking> rankings;
  for (std::size_t i = 0; i < ell; ++i) {
    Ranking r{i, star};
    for (std::size_t j = 0; j < ell; ++j) {
      if (j != i) r.push_back(j);
    }
    r.push_back(ell);
    for (std::size_t t = 0; t < k; ++t) rankings.push_back(r);
  }
  Ranking last{ell};
  for (std::size_t j = 0; j < ell; ++j) last.push_back(j);
  last.push_back(star);
  rankings.push_back(last);
  NamedInstance inst{"thm7-mix", p, Election(m, rankings), {g}, {}};
  const Rational sc_star = K * L + 3 + a;
  const Rational sc_one = L * K * a + 2 * (L - 1) * K + 2;
  inst.facts = {social_cost_fact("a*", star, sc_star), social_cost_fact("a_1", 0, sc_one),
                ratio_fact("a_1", "a*", 0, star, sc_one / sc_star),
                {"plu(a*)", Fact::Kind::plurality, 0, 0, {star}, std::nullopt},
                {"veto(a*)", Fact::Kind::veto, 1, 0, {star}, std::nullopt},
                {"limit of SC(a_1)/SC(a*) as k grows", Fact::Kind::asymptotic,
                 2 + a - 2 / (R(m) - 2), 0, {0, star}, std::nullopt}};
  return inst;
}

NamedInstance appb_condorcet(const ConstructionParams& p) {
  reject_k(p, "appB-condorcet");
  reject_m(p, "appB-condorcet");
  // Candidates a=0, b=1, c=2, d=3.
  Election e(4, {{1, 0, 2, 3},
                 {1, 0, 2, 3},
                 {2, 0, 1, 3},
                 {2, 0, 1, 3},
                 {3, 0, 1, 2},
                 {3, 0, 1, 2},
                 {1, 2, 3, 0}});
  NamedInstance inst{"appB-condorcet", p, e, {generic_witness(e, p.alpha)}, {}};
  inst.facts = {{"plu(a)", Fact::Kind::plurality, 0, 0, {0}, std::nullopt},
                {"veto(a)", Fact::Kind::veto, 1, 0, {0}, std::nullopt}};
  return inst;
}

NamedInstance appc_ties(const ConstructionParams& p) {
  const std::size_t k = param(p.k, 1, 1, "k");
  const std::size_t m = param(p.m, 3, 3, "m");
  const Rational& a = p.alpha;
  const Rational K = R(k);
  // Candidates a=0, b=1, c=2. Voters 0..k-1 rank a>b>c, k..2k-1 rank c>b>a,
  // 2k ranks b>a>c, 2k+1 ranks b>c>a.
  std::vector<VoterId> left;
  std::vector<VoterId> right{};
  for (std::size_t i = 0; i < k; ++i) left.push_back(i);
  for (std::size_t i = k; i < 2 * k; ++i) right.push_back(i);
  GraphBuilder gb;
  const auto pa = gb.point("a", {}, {0});
  const auto pl = gb.point("V_a", left);
  const auto pb = gb.point("b_V_b", {2 * k, 2 * k + 1}, {1});
  const auto pc = gb.point("c_V_c", right, {2});
  gb.edge(pa, pl, a);
  gb.edge(pl, pb, 1);
  gb.edge(pl, pc, 1);
  gb.edge(pb, pc, 1 + a);
  WeightedGraphSpec g = gb.build(2 * k + 2, 3);
  std::vector<Ranking> rankings;
  for (std::size_t i = 0; i < k; ++i) rankings.push_back({0, 1, 2});
  for (std::size_t i = 0; i < k; ++i) rankings.push_back({2, 1, 0});
  rankings.push_back({1, 0, 2});
  rankings.push_back({1, 2, 0});
  pad_with_far_candidates(g, rankings, m);
  NamedInstance inst{"appC-ties", p, Election(m, rankings), {g}, {}};
  // In this metric d(b,c) = 1 + alpha, so voters at b pay 1 + alpha to c.
  const Rational scb = K * (2 + a);
  const Rational scc = K + 2 * (1 + a);
  inst.facts = {social_cost_fact("b", 1, scb), social_cost_fact("c", 2, scc),
                ratio_fact("b", "c", 1, 2, scb / scc)};
  return inst;
}

}  // namespace

WeightedGraphSpec generic_witness(const Election& e, const Rational& alpha) {
  check_alpha(alpha);
  const std::size_t n = e.num_voters();
  const std::size_t m = e.num_candidates();
  GraphBuilder gb;
  std::vector<std::size_t> cand(m);
  for (CandidateId c = 0; c < m; ++c) cand[c] = gb.point("c" + std::to_string(c), {}, {c});
  const Rational step = alpha / R(m);
  for (VoterId i = 0; i < n; ++i) {
    const auto v = gb.point("v" + std::to_string(i), {i});
    const Ranking& r = e.ranking(i);
    gb.edge(v, cand[r[0]], alpha);
    for (std::size_t pos = 1; pos < m; ++pos) gb.edge(v, cand[r[pos]], 1 + R(pos - 1) * step);
  }
  return gb.build(n, m);
}

std::string to_string(Fact::Kind kind) {
  switch (kind) {
    case Fact::Kind::social_cost: return "social_cost";
    case Fact::Kind::cost_ratio: return "cost_ratio";
    case Fact::Kind::lottery_ratio: return "lottery_ratio";
    case Fact::Kind::worst_mirror_ratio: return "worst_mirror_ratio";
    case Fact::Kind::plurality: return "plurality";
    case Fact::Kind::veto: return "veto";
    case Fact::Kind::asymptotic: return "asymptotic";
  }
  return "";
}

const std::vector<CatalogEntry>& list_constructions() {
  static const std::vector<CatalogEntry> catalog{
      {"thm1-tight", "two voters whose matchable middle candidate costs 2+alpha times the optimum",
       {{"m", 3, 3}}, {"social_cost", "cost_ratio"}},
      {"thm2-lower", "two mirrored blocks of voters; any deterministic pick from A is bad",
       {{"m", 4, 2}}, {"social_cost", "cost_ratio"}},
      {"prop2-muc", "matching-uncovered candidate with ratio (5+alpha)/2",
       {{"m", 5, 5}}, {"social_cost", "cost_ratio"}},
      {"prop3-condorcet", "Condorcet winner far from optimal",
       {{"k", 2, 1}}, {"social_cost", "cost_ratio"}},
      {"thm5-plurality", "every plurality score is 1; the unlucky candidate is optimal",
       {{"m", 3, 2}}, {"social_cost", "lottery_ratio"}},
      {"thm6-rand", "the two-block profile with both mirror metrics",
       {{"m", 4, 2}}, {"social_cost", "worst_mirror_ratio"}},
      {"thm7-mix", "optimal candidate with zero plurality score that matching cannot pick",
       {{"m", 4, 3}, {"k", 10, 1}}, {"social_cost", "cost_ratio", "plurality", "veto", "asymptotic"}},
      {"appB-condorcet", "Condorcet winner with plurality 0 and veto 1", {}, {"plurality", "veto"}},
      {"appC-ties", "only one matchable candidate, and it is far from optimal",
       {{"k", 1, 1}, {"m", 3, 3}}, {"social_cost", "cost_ratio"}},
  };
  return catalog;
}

NamedInstance construct(const std::string& name, const ConstructionParams& params) {
  check_alpha(params.alpha);
  if (name == "thm1-tight") return thm1_tight(params);
  if (name == "thm2-lower") return thm2_lower(params);
  if (name == "prop2-muc") return prop2_muc(params);
  if (name == "prop3-condorcet") return prop3_condorcet(params);
  if (name == "thm5-plurality") return thm5_plurality(params);
  if (name == "thm6-rand") return thm6_rand(params);
  if (name == "thm7-mix") return thm7_mix(params);
  if (name == "appB-condorcet") return appb_condorcet(params);
  if (name == "appC-ties") return appc_ties(params);
  throw std::invalid_argument("unknown construction '" + name + "'");
}

std::string catalog_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& entry : list_constructions()) {
    nlohmann::json params = nlohmann::json::array();
    params.push_back({{"name", "alpha"}, {"default", "1"}, {"domain", "[0,1]"}});
    for (const auto& p : entry.params) {
      params.push_back({{"name", p.name}, {"default", std::to_string(p.default_value)},
                        {"domain", ">=" + std::to_string(p.minimum)}});
    }
    out.push_back({{"name", entry.name}, {"summary", entry.summary}, {"params", params},
                   {"facts", entry.facts}});
  }
  return out.dump(2);
}

namespace {

Rational lottery_ratio(const MetricSpace& d, const Lottery& L) {
  return expected_social_cost(d, L) / social_cost(d, optimal_candidate(d));
}

}  // namespace

std::optional<Rational> evaluate_fact(const NamedInstance& inst, const Fact& fact) {
  switch (fact.kind) {
    case Fact::Kind::social_cost:
      return social_cost(inst.metric(fact.witness), fact.candidates.at(0));
    case Fact::Kind::cost_ratio: {
      const MetricSpace d = inst.metric(fact.witness);
      return Rational(social_cost(d, fact.candidates.at(0)) / social_cost(d, fact.candidates.at(1)));
    }
    case Fact::Kind::lottery_ratio:
      return lottery_ratio(inst.metric(fact.witness), fact.lottery.value());
    case Fact::Kind::worst_mirror_ratio: {
      Rational worst = 0;
      for (std::size_t w = 0; w < inst.witnesses.size(); ++w) {
        worst = std::max(worst, lottery_ratio(inst.metric(w), fact.lottery.value()));
      }
      return worst;
    }
    case Fact::Kind::plurality: return R(plurality_score(inst.election, fact.candidates.at(0)));
    case Fact::Kind::veto: return R(veto_score(inst.election, fact.candidates.at(0)));
    case Fact::Kind::asymptotic: return std::nullopt;
  }
  return std::nullopt;
}

bool verify(const NamedInstance& inst, std::vector<std::string>* problems) {
  bool ok = true;
  auto report = [&](const std::string& what) {
    ok = false;
    if (problems) problems->push_back(inst.name + ": " + what);
  };
  for (std::size_t w = 0; w < inst.witnesses.size(); ++w) {
    const MetricSpace d = inst.metric(w);
    if (!consistent_with(d, inst.election)) {
      report("witness " + std::to_string(w) + " is not consistent with the profile");
    } else if (!is_alpha_decisive(d, inst.election, inst.params.alpha)) {
      report("witness " + std::to_string(w) + " is not alpha-decisive");
    }
  }
  for (const Fact& f : inst.facts) {
    const auto v = evaluate_fact(inst, f);
    if (v && *v != f.value) {
      report(f.name + " evaluates to " + to_string(*v) + ", expected " + to_string(f.value));
    }
  }
  return ok;
}

std::string facts_json(const NamedInstance& inst) {
  nlohmann::json j;
  j["name"] = inst.name;
  nlohmann::json params;
  params["alpha"] = to_string(inst.params.alpha);
  if (inst.params.m) params["m"] = *inst.params.m;
  if (inst.params.k) params["k"] = *inst.params.k;
  j["params"] = params;
  j["n"] = inst.election.num_voters();
  j["m"] = inst.election.num_candidates();
  j["witnesses"] = inst.witnesses.size();
  nlohmann::json facts = nlohmann::json::array();
  for (const Fact& f : inst.facts) {
    nlohmann::json fj{{"name", f.name},
                      {"kind", to_string(f.kind)},
                      {"value", to_string(f.value)},
                      {"witness", f.witness},
                      {"candidates", f.candidates}};
    if (f.lottery) {
      nlohmann::json probs = nlohmann::json::array();
      for (const auto& x : f.lottery->probabilities()) probs.push_back(to_string(x));
      fj["lottery"] = probs;
    }
    facts.push_back(std::move(fj));
  }
  j["facts"] = std::move(facts);
  return j.dump(2);
}

}  // namespace mvote
