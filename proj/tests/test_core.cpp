#include <doctest.h>

#include "mvote/election.hpp"
#include "mvote/errors.hpp"
#include "mvote/weights.hpp"
#include "support.hpp"

using namespace mvote;
using namespace mvote::testing;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6") == Q("1/2"));
  CHECK(parse_rational("-4") == -4);
  CHECK(parse_rational("+2/4") == Q("1/2"));
  CHECK(to_string(Q("6/4")) == "3/2");
  CHECK(to_string(Q("0/5")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  const std::vector<Rational> v{Q("1/4"), Q("1/6"), Q("2")};
  CHECK(common_denominator(v) == 12);
  CHECK(sum(v) == Q("29/12"));
  CHECK(common_denominator({}) == 1);
}

TEST_CASE("parse_election") {
  const Election e = parse_election("# fig 1\nelection\n4 3\n0 1 2\n2 0 1 # voter 1\n\n0 2 1\n1 0 2\n");
  CHECK(e == fig1());
  CHECK(e.num_voters() == 4);
  CHECK(e.num_candidates() == 3);

  const Election one = parse_election("election\n1 1\n0");
  CHECK(one.num_voters() == 1);
  CHECK(one.num_candidates() == 1);

  CHECK_THROWS_AS(parse_election("election\n1 3\n0 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_election("election\n1 3\n0 1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_election("election\n1 3\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_election("election\n2 3\n0 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_election("elections\n1 1\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_election("election\n1\n0\n"), ParseError);
  CHECK_THROWS_AS(parse_election("election\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_election("election\n1 2\n0 x\n"), ParseError);
}

TEST_CASE("Election constructor validates") {
  CHECK_THROWS_AS(Election(0, {{}}), std::invalid_argument);
  CHECK_THROWS_AS(Election(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Election(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Election(2, {{0}}), std::invalid_argument);
}

TEST_CASE("top, last and position") {
  const Election e = fig1();
  CHECK(e.top_choice(2) == 0);
  CHECK(e.top_choice(1) == 2);
  CHECK(e.last_choice(0) == 2);
  CHECK(e.position(1, 1) == 2);
  CHECK_THROWS_AS(e.top_choice(4), std::out_of_range);
  const Election single(1, {{0}, {0}, {0}});
  for (VoterId i = 0; i < 3; ++i) CHECK(single.top_choice(i) == 0);
}

TEST_CASE("plurality and veto scores") {
  const Election e = fig1();
  CHECK(plurality_score(e, 0) == 2);
  CHECK(plurality_score(e, 1) == 1);
  CHECK(plurality_score(e, 2) == 1);
  CHECK(veto_score(e, 2) == 2);
  CHECK(veto_score(e, 0) == 0);
  CHECK(veto_score(e, 1) == 2);
  CHECK_THROWS_AS(plurality_score(e, 3), std::out_of_range);

  const Election unanimous(3, {{2, 0, 1}, {2, 1, 0}, {2, 0, 1}});
  CHECK(plurality_score(unanimous, 2) == 3);
  const Election single(1, {{0}, {0}});
  CHECK(veto_score(single, 0) == 2);
  CHECK(plurality_score(single, 0) == 2);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const Election r = random_election(rng, draw(rng, 1, 7), draw(rng, 1, 6));
    std::size_t plu = 0;
    std::size_t veto = 0;
    for (CandidateId c = 0; c < r.num_candidates(); ++c) {
      plu += plurality_score(r, c);
      veto += veto_score(r, c);
    }
    CHECK(plu == r.num_voters());
    CHECK(veto == r.num_voters());
    const auto scores = plurality_scores(r);
    for (CandidateId c = 0; c < r.num_candidates(); ++c) CHECK(scores[c] == plurality_score(r, c));
  }
}

TEST_CASE("weakly_defeats is a total order per voter") {
  const Election e = fig1();
  CHECK(e.weakly_defeats(0, 0, 2));
  CHECK_FALSE(e.weakly_defeats(1, 0, 2));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const Election r = random_election(rng, 3, 5);
    for (VoterId i = 0; i < 3; ++i) {
      for (CandidateId x = 0; x < 5; ++x) {
        CHECK(r.weakly_defeats(i, x, x));
        for (CandidateId y = 0; y < 5; ++y) {
          if (x != y) CHECK(r.weakly_defeats(i, x, y) != r.weakly_defeats(i, y, x));
          for (CandidateId z = 0; z < 5; ++z) {
            if (r.weakly_defeats(i, x, y) && r.weakly_defeats(i, y, z)) {
              CHECK(r.weakly_defeats(i, x, z));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("defeated_set") {
  const Election e = fig1();
  CHECK(defeated_set(e, 1, VoterSet(4, {1, 2})) == CandidateSet(3, {1}));
  CHECK(defeated_set(e, 0, VoterSet::full(4)) == CandidateSet::full(3));
  CHECK(defeated_set(e, 0, VoterSet(4)).empty());

  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = draw(rng, 1, 6);
    const std::size_t m = draw(rng, 1, 5);
    const Election r = random_election(rng, n, m);
    const auto S = VoterSet::from_mask(n, rng() & ((1ULL << n) - 1));
    const auto T = VoterSet::from_mask(n, rng() & ((1ULL << n) - 1));
    const CandidateId a = draw(rng, 0, m - 1);
    CHECK(defeated_set(r, a, S | T) == (defeated_set(r, a, S) | defeated_set(r, a, T)));
    if (!S.empty()) CHECK(defeated_set(r, a, S).contains(a));
  }
}

TEST_CASE("restrict_election") {
  const Election e = fig1();
  const auto ab = restrict_election(e, VoterSet(4, {0, 1}), CandidateSet(3, {0, 1}));
  CHECK(ab.election == Election(2, {{0, 1}, {0, 1}}));
  CHECK(ab.voter_map == std::vector<VoterId>{0, 1});
  CHECK(ab.candidate_map == std::vector<CandidateId>{0, 1});

  const auto same = restrict_election(e, VoterSet::full(4), CandidateSet::full(3));
  CHECK(same.election == e);

  const auto bc = restrict_election(e, VoterSet(4, {3}), CandidateSet(3, {1, 2}));
  CHECK(bc.election == Election(2, {{0, 1}}));
  CHECK(bc.candidate_map == std::vector<CandidateId>{1, 2});

  CHECK_THROWS_AS(restrict_election(e, VoterSet(4), CandidateSet::full(3)), std::invalid_argument);
  CHECK_THROWS_AS(restrict_election(e, VoterSet::full(4), CandidateSet(3)), std::invalid_argument);

  // Restricting twice equals restricting once by the intersection.
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = draw(rng, 1, 6);
    const std::size_t m = draw(rng, 1, 5);
    const Election r = random_election(rng, n, m);
    const auto S1 = VoterSet::from_mask(n, rng() & ((1ULL << n) - 1));
    const auto D1 = CandidateSet::from_mask(m, rng() & ((1ULL << m) - 1));
    if (S1.empty() || D1.empty()) continue;
    const auto first = restrict_election(r, S1, D1);
    const std::size_t n2 = S1.count();
    const std::size_t m2 = D1.count();
    const auto S2 = VoterSet::from_mask(n2, rng() & ((1ULL << n2) - 1));
    const auto D2 = CandidateSet::from_mask(m2, rng() & ((1ULL << m2) - 1));
    if (S2.empty() || D2.empty()) continue;
    const auto twice = restrict_election(first.election, S2, D2);
    VoterSet S(n);
    for (VoterId i : S2.members()) S.insert(first.voter_map[i]);
    CandidateSet D(m);
    for (CandidateId c : D2.members()) D.insert(first.candidate_map[c]);
    const auto once = restrict_election(r, S, D);
    CHECK(twice.election == once.election);
  }
}

TEST_CASE("election round trip") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Election r = random_election(rng, draw(rng, 1, 8), draw(rng, 1, 8));
    CHECK(parse_election(serialize_election(r)) == r);
  }
}

TEST_CASE("weight vectors") {
  const Election e = fig1();
  const auto q = WeightVector::plurality(e);
  CHECK(q[0] == Q("1/2"));
  CHECK(q[1] == Q("1/4"));
  CHECK(WeightVector::uniform(3)[2] == Q("1/3"));
  CHECK(WeightVector::from_counts({1, 3})[1] == Q("3/4"));
  CHECK(q.mass(CandidateSet(3, {0, 2})) == Q("3/4"));
  CHECK_THROWS_AS(WeightVector({Q("1/2")}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({Q("3/2"), Q("-1/2")}), std::invalid_argument);
  CHECK_THROWS_AS(WeightVector({}), std::invalid_argument);

  const WeightVector w({Q("1/3"), Q("0"), Q("2/3")});
  CHECK(parse_weights(serialize_weights(w)) == w);
  CHECK_THROWS_AS(parse_weights("weights 2\n1/2\n"), ParseError);
  CHECK_THROWS_AS(parse_weights("weights 2\n1/2 1/3\n"), ParseError);
}

TEST_CASE("lotteries") {
  const Lottery L({Q("1/2"), Q("0"), Q("1/2")});
  CHECK(L.support() == std::vector<CandidateId>{0, 2});
  CHECK_FALSE(L.is_degenerate());
  const Lottery D = Lottery::degenerate(3, 1);
  CHECK(D.is_degenerate());
  CHECK(D.probability(1) == 1);
  CHECK_THROWS(Lottery({Q("1/2")}));
}
