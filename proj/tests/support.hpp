#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/rational.hpp"
#include "mvote/sampling.hpp"
#include "mvote/weights.hpp"

namespace mvote::testing {

inline Rational Q(const std::string& s) { return parse_rational(s); }

/// Candidates a=0, b=1, c=2.
inline Election fig1() { return Election(3, {{0, 1, 2}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}}); }

inline std::vector<Ranking> all_rankings(std::size_t m) {
  Ranking r(m);
  std::iota(r.begin(), r.end(), 0);
  std::vector<Ranking> out;
  do {
    out.push_back(r);
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

/// Calls f on every profile of n voters over m candidates (m!^n of them).
template <class F>
void for_each_profile(std::size_t n, std::size_t m, F&& f) {
  const auto perms = all_rankings(m);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Ranking> rankings;
    for (std::size_t k : idx) rankings.push_back(perms[k]);
    f(Election(m, rankings));
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == perms.size()) idx[pos++] = 0;
    if (pos == n) return;
  }
}

/// Profiles up to voter permutation: nondecreasing ranking indices.
template <class F>
void for_each_anonymous_profile(std::size_t n, std::size_t m, F&& f) {
  const auto perms = all_rankings(m);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Ranking> rankings;
    for (std::size_t k : idx) rankings.push_back(perms[k]);
    f(Election(m, rankings));
    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] + 1 == perms.size()) --pos;
    if (pos == 0) return;
    const std::size_t v = idx[pos - 1] + 1;
    for (std::size_t j = pos - 1; j < n; ++j) idx[j] = v;
  }
}

inline std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform_below_inclusive(rng, hi - lo));
}

inline Election random_election(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<Ranking> rankings;
  for (std::size_t i = 0; i < n; ++i) {
    Ranking r(m);
    std::iota(r.begin(), r.end(), 0);
    for (std::size_t k = m; k > 1; --k) std::swap(r[k - 1], r[draw(rng, 0, k - 1)]);
    rankings.push_back(std::move(r));
  }
  return Election(m, rankings);
}

/// Random rational probability vector; some entries are zero now and then.
inline WeightVector random_weights(std::mt19937_64& rng, std::size_t k) {
  std::vector<std::size_t> raw(k);
  std::size_t total = 0;
  for (auto& x : raw) {
    x = draw(rng, 0, 3) == 0 ? 0 : draw(rng, 1, 12);
    total += x;
  }
  if (total == 0) {
    raw[draw(rng, 0, k - 1)] = 1;
    total = 1;
  }
  std::vector<Rational> w;
  for (auto x : raw) w.push_back(make_rational(static_cast<long>(x), static_cast<long>(total)));
  return WeightVector(w);
}

inline const std::vector<Rational>& alpha_grid() {
  static const std::vector<Rational> grid{Q("0"), Q("1/4"), Q("1/2"), Q("1")};
  return grid;
}

}  // namespace mvote::testing
