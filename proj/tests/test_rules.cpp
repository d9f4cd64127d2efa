#include <doctest.h>

#include "mvote/constructions.hpp"
#include "mvote/errors.hpp"
#include "mvote/rules.hpp"
#include "support.hpp"

using namespace mvote;
using namespace mvote::testing;

namespace {

/// n voters over two candidates, the first `pa` of them ranking 0 first.
Election two_candidate(std::size_t pa, std::size_t pb) {
  std::vector<Ranking> r(pa, Ranking{0, 1});
  r.insert(r.end(), pb, Ranking{1, 0});
  return Election(2, r);
}

/// Squares formula for Pr[first candidate], written out directly.
Rational squares_formula(const Rational& x, const Rational& y, const Rational& alpha) {
  const Rational num = (1 + alpha) * x * x - (1 - alpha) * x * y;
  const Rational den = (1 + alpha) * (x * x + y * y) - 2 * (1 - alpha) * x * y;
  return num / den;
}

/// Normalized plu/(n - 2 plu/(1+alpha)) weights, no threshold branch.
std::vector<Rational> proportional_formula(const std::vector<std::size_t>& plu,
                                           const Rational& alpha) {
  Rational n = 0;
  for (auto p : plu) n += p;
  std::vector<Rational> w;
  Rational total = 0;
  for (auto p : plu) {
    const Rational x = Rational(static_cast<unsigned long>(p));
    w.push_back(x / (n - 2 * x / (1 + alpha)));
    total += w.back();
  }
  for (auto& x : w) x /= total;
  return w;
}

std::size_t prefer_count(const Election& e, CandidateId x, CandidateId y) {
  std::size_t k = 0;
  for (VoterId i = 0; i < e.num_voters(); ++i) k += e.position(i, x) < e.position(i, y) ? 1 : 0;
  return k;
}

Election permute_voters(const Election& e, std::mt19937_64& rng) {
  auto r = e.rankings();
  for (std::size_t k = r.size(); k > 1; --k) std::swap(r[k - 1], r[draw(rng, 0, k - 1)]);
  return Election(e.num_candidates(), r);
}

}  // namespace

TEST_CASE("matching rules on Fig. 1") {
  const Election e = fig1();
  const auto pm = plurality_matching(e);
  CHECK(pm.winner == CandidateId{0});
  REQUIRE(pm.matchable);
  CHECK(*pm.matchable == CandidateSet(3, {0}));
  CHECK(pm.outcome == Lottery::degenerate(3, 0));
  CHECK(pm.certificates.size() == 3);

  const auto um = uniform_matching(e);
  REQUIRE(um.winner);
  // The winner's graph satisfies |A(w,S)|/m >= |S|/n for every S.
  const auto g = build_domination_graph(e, *um.winner, WeightVector::uniform(4),
                                        WeightVector::uniform(3));
  for (unsigned long long mask = 0; mask < 16; ++mask) {
    const auto S = VoterSet::from_mask(4, mask);
    CHECK(Rational(static_cast<unsigned long>(g.neighborhood(S).count()), 3UL) >=
          Rational(static_cast<unsigned long>(S.count()), 4UL));
  }
}

TEST_CASE("matching rules, trivial profiles") {
  const Election single(1, {{0}, {0}});
  CHECK(plurality_matching(single).winner == CandidateId{0});
  CHECK(uniform_matching(single).winner == CandidateId{0});

  const Election unanimous(3, {{2, 0, 1}, {2, 1, 0}});
  CHECK(uniform_matching(unanimous).matchable->contains(2));
  const auto r = matching_rule(unanimous, WeightVector::uniform(2), WeightVector({0, 0, 1}));
  CHECK(r.winner == CandidateId{2});
}

TEST_CASE("plurality matching on the appendix instances") {
  for (std::size_t k : {1, 2, 5}) {
    const auto inst = construct("appC-ties", {Q("1/2"), std::nullopt, k});
    const auto r = plurality_matching(inst.election);
    CHECK(*r.matchable == CandidateSet(3, {1}));
    CHECK(r.winner == CandidateId{1});
  }
  const auto appb = construct("appB-condorcet").election;
  CHECK_FALSE(plurality_matching(appb).matchable->contains(0));
}

TEST_CASE("plurality matching properties on random elections") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 400; ++t) {
    const Election e = random_election(rng, draw(rng, 1, 7), draw(rng, 1, 5));
    const auto r = plurality_matching(e);
    REQUIRE(r.winner);
    CHECK(r.matchable->contains(*r.winner));
    CHECK(in_matching_uncovered_set(e, *r.winner));
    CHECK(plurality_score(e, *r.winner) >= veto_score(e, *r.winner));
    const auto r2 = plurality_matching(permute_voters(e, rng));
    CHECK(*r2.matchable == *r.matchable);
  }
}

TEST_CASE("random dictatorship") {
  CHECK(random_dictatorship(fig1()) == Lottery({Q("1/2"), Q("1/4"), Q("1/4")}));
  CHECK(random_dictatorship(Election(2, {{1, 0}, {1, 0}})) == Lottery::degenerate(2, 1));
  CHECK(random_dictatorship(Election(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}})) ==
        Lottery({Q("1/3"), Q("1/3"), Q("1/3")}));
}

TEST_CASE("smart dictatorship examples") {
  const Election e = two_candidate(2, 1);
  CHECK(smart_dictatorship(e, 1) == Lottery({Q("4/5"), Q("1/5")}));
  CHECK(smart_dictatorship(e, 0) == Lottery::degenerate(2, 0));
  const Election cyc(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  for (const auto& a : alpha_grid()) {
    CHECK(smart_dictatorship(cyc, a) == Lottery({Q("1/3"), Q("1/3"), Q("1/3")}));
  }
  CHECK_THROWS_AS(smart_dictatorship(e, Q("3/2")), std::invalid_argument);
}

TEST_CASE("smart dictatorship against the written-out formula") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 300; ++t) {
    const Election e = random_election(rng, draw(rng, 1, 9), draw(rng, 1, 5));
    const Rational alpha = make_rational(static_cast<long>(draw(rng, 0, 8)), 8);
    const auto plu = plurality_scores(e);
    const auto L = smart_dictatorship(e, alpha);
    CHECK(sum(L.probabilities()) == 1);
    const Rational n = Rational(static_cast<unsigned long>(e.num_voters()));
    std::optional<CandidateId> heavy;
    for (CandidateId c = 0; c < plu.size() && !heavy; ++c) {
      if (2 * Rational(static_cast<unsigned long>(plu[c])) >= (1 + alpha) * n) heavy = c;
    }
    if (heavy) {
      CHECK(L == Lottery::degenerate(plu.size(), *heavy));
    } else {
      CHECK(L.probabilities() == proportional_formula(plu, alpha));
    }
    for (CandidateId c = 0; c < plu.size(); ++c) {
      if (plu[c] == 0) CHECK(L.probability(c) == 0);
    }
    CHECK(smart_dictatorship(permute_voters(e, rng), alpha) == L);
  }
}

TEST_CASE("generalized proportional to squares") {
  CHECK(generalized_proportional_to_squares(two_candidate(2, 1), 1).probability(0) == Q("4/5"));
  CHECK(generalized_proportional_to_squares(two_candidate(3, 3), Q("1/2")) ==
        Lottery({Q("1/2"), Q("1/2")}));
  CHECK(generalized_proportional_to_squares(two_candidate(4, 0), Q("1/2")) ==
        Lottery::degenerate(2, 0));
  CHECK_THROWS_AS(generalized_proportional_to_squares(fig1(), 1), std::invalid_argument);

  // Agreement with the smart dictatorship and with the squares formula
  // wherever no candidate crosses the threshold.
  for (std::size_t pa = 0; pa <= 9; ++pa) {
    for (std::size_t pb = 0; pa + pb <= 9; ++pb) {
      if (pa + pb == 0) continue;
      for (long an = 0; an <= 4; ++an) {
        const Rational alpha = make_rational(an, 4);
        const Election e = two_candidate(pa, pb);
        const Rational n = Rational(static_cast<unsigned long>(pa + pb));
        const bool below = 2 * Rational(static_cast<unsigned long>(std::max(pa, pb))) < (1 + alpha) * n;
        const auto gps = generalized_proportional_to_squares(e, alpha);
        if (!below) continue;
        CHECK(gps == smart_dictatorship(e, alpha));
        CHECK(gps.probability(0) == squares_formula(Rational(static_cast<unsigned long>(pa)),
                                                    Rational(static_cast<unsigned long>(pb)), alpha));
      }
    }
  }
}

TEST_CASE("condorcet and copeland") {
  const auto appb = construct("appB-condorcet").election;
  CHECK(condorcet_winner(appb) == CandidateId{0});
  CHECK(copeland_winner(appb) == 0);
  for (CandidateId c = 1; c < 4; ++c) CHECK(2 * prefer_count(appb, 0, c) > appb.num_voters());

  for (std::size_t k : {2, 5}) {
    const auto e = construct("prop3-condorcet", {1, std::nullopt, k}).election;
    CHECK(condorcet_winner(e) == CandidateId{0});
  }
  CHECK(condorcet_winner(Election(2, {{0, 1}, {1, 0}})) == CandidateId{0});
  CHECK_FALSE(condorcet_winner(Election(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}})));
  CHECK(copeland_winner(Election(3, {{1, 0, 2}, {1, 2, 0}})) == 1);
  CHECK(copeland_winner(Election(1, {{0}})) == 0);

  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const Election e = random_election(rng, draw(rng, 1, 7), draw(rng, 1, 5));
    const std::size_t n = e.num_voters();
    const std::size_t m = e.num_candidates();
    std::optional<CandidateId> cw;
    std::vector<std::size_t> wins(m, 0);
    for (CandidateId x = 0; x < m; ++x) {
      bool all = true;
      for (CandidateId y = 0; y < m; ++y) {
        if (x == y) continue;
        CHECK(pairwise_support(e, x, y) == prefer_count(e, x, y));
        all = all && 2 * prefer_count(e, x, y) >= n;
        wins[x] += 2 * prefer_count(e, x, y) > n ? 1 : 0;
      }
      if (all && !cw) cw = x;
    }
    CHECK(condorcet_winner(e) == cw);
    const auto best = std::max_element(wins.begin(), wins.end()) - wins.begin();
    CHECK(copeland_winner(e) == static_cast<CandidateId>(best));
  }
}

TEST_CASE("rule names") {
  const Election e = fig1();
  CHECK(parse_rule("plurality-matching").name() == "plurality-matching");
  CHECK_THROWS_AS(parse_rule("borda"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rule("matching:onlyone"), std::invalid_argument);
  for (const auto& name : rule_names()) {
    if (name.rfind("matching:", 0) == 0) continue;
    const auto spec = parse_rule(name);
    if (spec.kind == RuleSpec::Kind::gps) {
      CHECK_THROWS_AS(run_rule(spec, e, 1), std::invalid_argument);
      continue;
    }
    const auto r = run_rule(spec, e, 1);
    CHECK(sum(r.outcome.probabilities()) == 1);
  }
  const auto custom = parse_rule("matching:p.w:q.w");
  CHECK(custom.kind == RuleSpec::Kind::custom_matching);
  CHECK(custom.p_file == "p.w");
  CHECK(custom.q_file == "q.w");
  CHECK_THROWS_AS(run_rule(custom, e, 1), std::invalid_argument);
  const auto r = run_rule(custom, e, 1, WeightVector::uniform(4), WeightVector::plurality(e));
  CHECK(r.winner == CandidateId{0});
  CHECK_THROWS_AS(run_rule(parse_rule("condorcet"), Election(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}), 1),
                  std::domain_error);
}
