#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/rational.hpp"
#include "mvote/weights.hpp"

namespace mvote {

using Matrix = std::vector<std::vector<Rational>>;

class MetricViolation : public std::invalid_argument {
 public:
  enum class Kind { not_square, negative, diagonal, asymmetric, triangle };

  MetricViolation(Kind kind, std::array<std::size_t, 3> witness, const std::string& what)
      : std::invalid_argument(what), kind_(kind), witness_(witness) {}

  Kind kind() const { return kind_; }
  /// Offending points. For triangle violations d(x,z) > d(x,y) + d(y,z) with
  /// (x, y, z) in that order; two-point violations repeat the last index.
  const std::array<std::size_t, 3>& witness() const { return witness_; }

 private:
  Kind kind_;
  std::array<std::size_t, 3> witness_;
};

/// Pseudometric over n voters (points 0..n-1) and m candidates (points
/// n..n+m-1). Distinct entities may sit at distance zero.
class MetricSpace {
 public:
  /// Throws MetricViolation.
  MetricSpace(std::size_t n, std::size_t m, Matrix d);

  std::size_t num_voters() const { return n_; }
  std::size_t num_candidates() const { return m_; }
  std::size_t num_points() const { return n_ + m_; }

  const Rational& distance(std::size_t x, std::size_t y) const { return d_.at(x).at(y); }
  const Rational& voter_candidate(VoterId i, CandidateId c) const;
  const Rational& candidate_candidate(CandidateId a, CandidateId b) const;
  std::size_t candidate_point(CandidateId c) const { return n_ + c; }
  const Matrix& matrix() const { return d_; }

  friend bool operator==(const MetricSpace&, const MetricSpace&) = default;

 private:
  std::size_t n_;
  std::size_t m_;
  Matrix d_;
};

/// Interprets a square matrix as n voters followed by m candidates.
MetricSpace validate_metric(const Matrix& d, std::size_t n, std::size_t m);

/// Undirected weighted graph on points; each point carries any number of
/// voters and candidates (colocated entities).
struct WeightedGraphSpec {
  struct Point {
    std::string id;
    std::vector<VoterId> voters;
    std::vector<CandidateId> candidates;
  };
  struct Edge {
    std::size_t from;
    std::size_t to;
    Rational weight;
  };
  std::size_t num_voters = 0;
  std::size_t num_candidates = 0;
  std::vector<Point> points;
  std::vector<Edge> edges;
};

/// Shortest-path closure. Throws std::invalid_argument when the graph is
/// disconnected, an edge weight is not positive, or an entity is placed on
/// zero or several points.
MetricSpace from_weighted_graph(const WeightedGraphSpec& g);

/// Every adjacent pair of every ranking is weakly ordered by distance.
bool consistent_with(const MetricSpace& d, const Election& e);

/// Rankings by distance, equidistant candidates in index order.
Election induced_profile(const MetricSpace& d);

/// d(i, top(i)) <= alpha d(i, c) for all voters i and candidates c != top(i).
/// Throws std::invalid_argument if d is not consistent with e.
bool is_alpha_decisive(const MetricSpace& d, const Election& e, const Rational& alpha);

/// Smallest alpha for which the voter-nearest-top condition holds:
/// max over voters and non-top candidates of d(i,top)/d(i,c). Pairs at zero
/// distance are skipped (they force d(i,top) = 0 as well under consistency).
Rational minimal_decisiveness(const MetricSpace& d, const Election& e);

Rational social_cost(const MetricSpace& d, CandidateId c);
Rational expected_social_cost(const MetricSpace& d, const Lottery& L);

/// Sum of the k largest voter distances to c, 1 <= k <= n.
Rational phi_k(const MetricSpace& d, CandidateId c, std::size_t k);

/// A candidate minimizing social cost (lowest index among ties).
CandidateId optimal_candidate(const MetricSpace& d);

void check_dimensions(const MetricSpace& d, const Election& e);

MetricSpace parse_metric(std::string_view text);
std::string serialize_metric(const MetricSpace& d);
WeightedGraphSpec parse_graph(std::string_view text);
std::string serialize_graph(const WeightedGraphSpec& g);

}  // namespace mvote
