#include <doctest.h>

#include <json.hpp>

#include "mvote/constructions.hpp"
#include "mvote/matching.hpp"
#include "mvote/rules.hpp"
#include "support.hpp"

using namespace mvote;
using namespace mvote::testing;

namespace {

const std::vector<std::string> kNames{"thm1-tight",     "thm2-lower",     "prop2-muc",
                                      "prop3-condorcet", "thm5-plurality", "thm6-rand",
                                      "thm7-mix",        "appB-condorcet", "appC-ties"};

Rational R(std::size_t x) { return Rational(static_cast<unsigned long>(x)); }

Rational min_cost(const MetricSpace& d) {
  Rational best = social_cost(d, 0);
  for (CandidateId c = 1; c < d.num_candidates(); ++c) best = std::min(best, social_cost(d, c));
  return best;
}

/// Recomputes a fact from the bundle without going through evaluate_fact.
std::optional<Rational> recompute(const NamedInstance& inst, const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::social_cost:
      return social_cost(inst.metric(f.witness), f.candidates.at(0));
    case Fact::Kind::cost_ratio: {
      const auto d = inst.metric(f.witness);
      return social_cost(d, f.candidates.at(0)) / social_cost(d, f.candidates.at(1));
    }
    case Fact::Kind::lottery_ratio: {
      const auto d = inst.metric(f.witness);
      return expected_social_cost(d, *f.lottery) / min_cost(d);
    }
    case Fact::Kind::worst_mirror_ratio: {
      Rational worst = 0;
      for (std::size_t w = 0; w < inst.witnesses.size(); ++w) {
        const auto d = inst.metric(w);
        worst = std::max(worst, Rational(expected_social_cost(d, *f.lottery) / min_cost(d)));
      }
      return worst;
    }
    case Fact::Kind::plurality:
      return R(plurality_score(inst.election, f.candidates.at(0)));
    case Fact::Kind::veto:
      return R(veto_score(inst.election, f.candidates.at(0)));
    case Fact::Kind::asymptotic:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("catalog") {
  const auto& cat = list_constructions();
  REQUIRE(cat.size() == 9);
  for (std::size_t k = 0; k < cat.size(); ++k) {
    CHECK(cat[k].name == kNames[k]);
    CHECK_FALSE(cat[k].summary.empty());
    CHECK_NOTHROW(construct(cat[k].name));
  }
  const auto j = nlohmann::json::parse(catalog_json());
  CHECK(j.size() == 9);
  CHECK_THROWS_AS(construct("thm9"), std::invalid_argument);
}

TEST_CASE("every bundle verifies on a parameter grid") {
  for (const auto& name : kNames) {
    for (const auto& alpha : alpha_grid()) {
      for (std::size_t bump = 0; bump < 3; ++bump) {
        ConstructionParams params{alpha};
        const auto base = construct(name, params);
        if (name == "prop3-condorcet" || name == "thm7-mix" || name == "appC-ties") {
          params.k = base.params.k.value_or(1) + bump;
        } else if (name != "appB-condorcet") {
          params.m = base.election.num_candidates() + bump;
        }
        const auto inst = construct(name, params);
        std::vector<std::string> problems;
        CHECK_MESSAGE(verify(inst, &problems), name, " ", to_string(alpha), " ", bump);
        for (const auto& p : problems) MESSAGE(p);
        for (std::size_t w = 0; w < inst.witnesses.size(); ++w) {
          const auto d = inst.metric(w);
          CHECK(consistent_with(d, inst.election));
          CHECK(is_alpha_decisive(d, inst.election, alpha));
        }
        for (const auto& f : inst.facts) {
          const auto v = recompute(inst, f);
          if (v) CHECK_MESSAGE(*v == f.value, name, " ", f.name);
          CHECK(evaluate_fact(inst, f) == v);
        }
        const auto facts = nlohmann::json::parse(facts_json(inst));
        CHECK(facts["facts"].size() == inst.facts.size());
      }
    }
  }
}

TEST_CASE("bundles match the closed forms") {
  for (const auto& a : alpha_grid()) {
    {
      const auto d = construct("thm1-tight", {a}).metric();
      CHECK(social_cost(d, 1) == 2 + a);
      CHECK(social_cost(d, 2) == 1);
    }
    for (std::size_t m : {4, 6, 8}) {
      const auto inst = construct("thm2-lower", {a, m});
      const auto d = inst.metric();
      const std::size_t ell = m / 2;
      for (std::size_t i = 0; i < ell; ++i) {
        CHECK(social_cost(d, i) / social_cost(d, ell) == 2 + a - 2 * (1 - a) / R(m));
      }
    }
    {
      const auto d = construct("prop2-muc", {a}).metric();
      CHECK(social_cost(d, 0) == 5 + a);
      CHECK(social_cost(d, 2) == 2);
    }
    for (std::size_t k : {2, 3, 5}) {
      const auto d = construct("prop3-condorcet", {a, std::nullopt, k}).metric();
      CHECK(social_cost(d, 0) == R(3 * k) + R(3 * k + 2) * a);
      CHECK(social_cost(d, 1) == R(k + 4) + R(k + 2) * a);
    }
    for (std::size_t m : {3, 4, 5}) {
      const auto inst = construct("thm5-plurality", {a, m});
      const auto d = inst.metric();
      CHECK(social_cost(d, 0) == R(m - 1));
      for (CandidateId c = 1; c < m; ++c) CHECK(social_cost(d, c) == a + (1 + a) + R(m - 2) * (2 + a));
      for (CandidateId c = 0; c < m; ++c) CHECK(plurality_score(inst.election, c) == 1);
      const Lottery uniform(std::vector<Rational>(m, 1 / R(m)));
      CHECK(expected_social_cost(d, uniform) / social_cost(d, 0) == 2 + a - 2 / R(m));
    }
    for (std::size_t k : {2, 4, 10}) {
      const auto inst = construct("thm7-mix", {a, std::nullopt, k});
      const std::size_t m = inst.election.num_candidates();
      const std::size_t ell = m - 2;
      const auto d = inst.metric();
      const CandidateId star = ell + 1;
      CHECK(social_cost(d, star) == R(k * ell + 3) + a);
      CHECK(social_cost(d, 0) == R(ell * k) * a + R(2 * (ell - 1) * k + 2));
      CHECK(plurality_score(inst.election, star) < veto_score(inst.election, star));
      CHECK_FALSE(plurality_matching(inst.election).matchable->contains(star));
    }
    for (std::size_t k : {1, 3, 10}) {
      const auto d = construct("appC-ties", {a, std::nullopt, k}).metric();
      CHECK(social_cost(d, 1) == R(k) * (2 + a));
      CHECK(social_cost(d, 2) == R(k) + 2 + 2 * a);
    }
  }
}

TEST_CASE("spot values") {
  const auto t1 = construct("thm1-tight", {Q("1/2")});
  std::map<std::string, Rational> by_name;
  for (const auto& f : t1.facts) by_name[f.name] = f.value;
  CHECK(by_name.at("SC(b)") == Q("5/2"));
  CHECK(by_name.at("SC(c)") == 1);

  const auto t5 = construct("thm5-plurality", {1, 3});
  bool seen = false;
  for (const auto& f : t5.facts) {
    if (f.kind == Fact::Kind::lottery_ratio) {
      CHECK(f.value == Q("7/3"));
      seen = true;
    }
  }
  CHECK(seen);

  const auto c1 = construct("appC-ties", {0, std::nullopt, 1});
  CHECK(c1.election.num_voters() == 4);
  CHECK(*plurality_matching(c1.election).matchable == CandidateSet(3, {1}));

  const auto b = construct("appB-condorcet");
  CHECK(b.election.num_voters() == 7);
  CHECK(b.election.num_candidates() == 4);
}

TEST_CASE("mirror witnesses transpose the cost table") {
  for (const auto& a : alpha_grid()) {
    for (std::size_t m : {4, 6}) {
      const auto inst = construct("thm6-rand", {a, m});
      REQUIRE(inst.witnesses.size() == 2);
      const auto d0 = inst.metric(0);
      const auto d1 = inst.metric(1);
      const std::size_t ell = m / 2;
      for (std::size_t i = 0; i < ell; ++i) {
        CHECK(social_cost(d0, i) == social_cost(d1, i + ell));
        CHECK(social_cost(d0, i + ell) == social_cost(d1, i));
      }
      const Lottery uniform(std::vector<Rational>(m, 1 / R(m)));
      const Rational worst = std::max(Rational(expected_social_cost(d0, uniform) / min_cost(d0)),
                                      Rational(expected_social_cost(d1, uniform) / min_cost(d1)));
      CHECK(worst == (3 + a) / 2 - (1 - a) / R(2 * ell));
    }
  }
}

TEST_CASE("uncovered but unmatched candidate") {
  const auto e = construct("prop2-muc").election;
  CHECK(in_matching_uncovered_set(e, 0));
  CHECK_FALSE(perfect_matching(build_integral_domination_graph(e, 0)));
  CHECK(perfect_matching(build_integral_domination_graph(e, 2)));
  CHECK(perfect_matching(build_integral_domination_graph(e, 3)));
}

TEST_CASE("generic witness") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 100; ++t) {
    const Election e = random_election(rng, draw(rng, 1, 5), draw(rng, 1, 5));
    for (const auto& a : alpha_grid()) {
      const auto d = from_weighted_graph(generic_witness(e, a));
      CHECK(consistent_with(d, e));
      CHECK(is_alpha_decisive(d, e, a));
    }
  }
}

TEST_CASE("bad parameters") {
  CHECK_THROWS_AS(construct("thm1-tight", {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(construct("thm2-lower", {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(construct("thm1-tight", {Q("3/2")}), std::invalid_argument);
  CHECK_THROWS_AS(construct("prop3-condorcet", {1, std::nullopt, 0}), std::invalid_argument);
}
