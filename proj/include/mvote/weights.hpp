#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/index_set.hpp"
#include "mvote/rational.hpp"

namespace mvote {

/// Nonnegative rational weights summing to exactly 1, indexed by voters or
/// candidates depending on use.
class WeightVector {
 public:
  /// Throws std::invalid_argument unless nonnegative and normalized.
  explicit WeightVector(std::vector<Rational> weights);

  static WeightVector uniform(std::size_t size);
  /// plu(c)/n for each candidate.
  static WeightVector plurality(const Election& e);
  /// counts[k] / sum(counts); the sum must be positive.
  static WeightVector from_counts(const std::vector<std::size_t>& counts);

  std::size_t size() const { return weights_.size(); }
  const Rational& operator[](std::size_t k) const { return weights_.at(k); }
  const std::vector<Rational>& values() const { return weights_; }

  template <class Tag>
  Rational mass(const IndexSet<Tag>& s) const {
    Rational total = 0;
    for (std::size_t k : s.members()) total += weights_.at(k);
    return total;
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<Rational> weights_;
};

/// File format: `weights <k>` then k rationals (any line layout).
WeightVector parse_weights(std::string_view text);
std::string serialize_weights(const WeightVector& w);

/// A probability distribution over candidates.
class Lottery {
 public:
  explicit Lottery(std::vector<Rational> probabilities);

  static Lottery degenerate(std::size_t num_candidates, CandidateId c);

  std::size_t num_candidates() const { return p_.size(); }
  const Rational& probability(CandidateId c) const { return p_.at(c); }
  const std::vector<Rational>& probabilities() const { return p_; }
  std::vector<CandidateId> support() const;
  /// Set when the support is a single candidate.
  bool is_degenerate() const { return support().size() == 1; }

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  std::vector<Rational> p_;
};

}  // namespace mvote
