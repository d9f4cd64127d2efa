#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvote/election.hpp"
#include "mvote/lp.hpp"
#include "mvote/metric.hpp"
#include "mvote/rational.hpp"
#include "mvote/weights.hpp"

namespace mvote {

/// How voters map to LP points.
enum class VoterGrouping {
  /// One point per voter.
  none,
  /// Voters with identical rankings share one point, weighted by their
  /// count. The supremum is unchanged: the ratio is linear-fractional in each
  /// group's total, so moving the whole group onto its best member never
  /// lowers it.
  by_ranking,
};

/// Builds the adversary's program over all consistent alpha-decisive
/// pseudometrics. One variable per unordered pair of points.
class LpModel {
 public:
  LpModel(const Election& e, const Rational& alpha,
          VoterGrouping grouping = VoterGrouping::by_ranking);

  std::size_t num_points() const { return points_; }
  std::size_t num_vars() const { return points_ * (points_ - 1) / 2; }
  /// Variable of d(x, y); x != y.
  std::size_t var(std::size_t x, std::size_t y) const;

  /// Metric, consistency and decisiveness rows only.
  const LinearProgram& base() const { return base_; }
  std::size_t triangle_rows() const { return triangle_rows_; }
  std::size_t consistency_rows() const { return consistency_rows_; }
  std::size_t decisiveness_rows() const { return decisiveness_rows_; }

  /// SC(c) as a linear form.
  std::vector<LinearProgram::Term> social_cost_terms(CandidateId c) const;
  /// E[SC(L)] as a linear form.
  std::vector<LinearProgram::Term> expected_cost_terms(const Lottery& L) const;

  /// Expands grouped voters back to one row per voter.
  MetricSpace to_metric(const std::vector<Rational>& values) const;

 private:
  std::size_t n_;
  std::size_t m_;
  /// Representative point of each voter, and the voter count of each point.
  std::vector<std::size_t> voter_point_;
  std::vector<std::size_t> weight_;
  std::size_t points_;
  LinearProgram base_;
  std::size_t triangle_rows_ = 0;
  std::size_t consistency_rows_ = 0;
  std::size_t decisiveness_rows_ = 0;
};

enum class DistortionStatus { bounded, unbounded, degenerate };

std::string to_string(DistortionStatus s);

struct DistortionResult {
  DistortionStatus status = DistortionStatus::degenerate;
  /// LP optimum; 1 for degenerate results; meaningless when unbounded.
  Rational value = 1;
  CandidateId reference = 0;
  /// Bounded: a metric attaining the value with SC(reference) = normalization.
  /// Unbounded: a metric with SC(reference) = 0 and positive expected cost.
  std::optional<MetricSpace> witness;
  /// Filled by distortion_of_outcome, one entry per reference candidate.
  std::vector<DistortionResult> per_reference;
};

/// sup of E[SC(outcome)] / SC(b) over consistent alpha-decisive metrics.
DistortionResult worst_case_ratio(const Election& e, const Lottery& outcome, CandidateId b,
                                  const Rational& alpha, const Rational& normalization = 1,
                                  VoterGrouping grouping = VoterGrouping::by_ranking);

/// Same, sharing a prebuilt model across references.
DistortionResult worst_case_ratio(const LpModel& model, const Lottery& outcome, CandidateId b,
                                  const Rational& normalization = 1);

/// Maximum over every reference candidate.
DistortionResult distortion_of_outcome(const Election& e, const Lottery& outcome,
                                       const Rational& alpha,
                                       VoterGrouping grouping = VoterGrouping::by_ranking);

/// 1 + (1+alpha) sum_a Pr[a] (n - 2 plu(a)/(1+alpha)) d(a,c*) / sum_a plu(a) d(a,c*).
/// nullopt when the denominator is zero.
std::optional<Rational> lemma3_bound(const MetricSpace& d, const Election& e, const Lottery& L,
                                     const Rational& alpha, CandidateId c_star);

/// SC(a) <= SC(c*) + (n - 2 plu(a)/(1+alpha)) d(a,c*). Throws
/// std::invalid_argument when d is not consistent and alpha-decisive or c*
/// is not optimal.
bool check_prop4(const MetricSpace& d, const Election& e, CandidateId a, CandidateId c_star,
                 const Rational& alpha);

/// sum_i x_i / (n - w x_i) >= m / (m - w). Throws std::invalid_argument unless
/// w in (0,1], sum x = n and every x_i in [0, n/w).
bool check_summation_bound(const std::vector<Rational>& x, const Rational& w, const Rational& n);

std::string distortion_json(const DistortionResult& r);

}  // namespace mvote
