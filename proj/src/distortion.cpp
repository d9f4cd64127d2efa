#include "mvote/distortion.hpp"

#include <json.hpp>
#include <map>
#include <stdexcept>

#include "mvote/errors.hpp"
#include "mvote/rules.hpp"

namespace mvote {

using Sense = LinearProgram::Sense;
using Terms = std::vector<LinearProgram::Term>;

namespace {

std::size_t count_points(const Election& e, VoterGrouping grouping,
                         std::vector<std::size_t>& voter_point, std::vector<std::size_t>& weight) {
  voter_point.assign(e.num_voters(), 0);
  weight.clear();
  std::map<Ranking, std::size_t> seen;
  for (VoterId i = 0; i < e.num_voters(); ++i) {
    if (grouping == VoterGrouping::by_ranking) {
      auto [it, fresh] = seen.emplace(e.ranking(i), weight.size());
      if (!fresh) {
        voter_point[i] = it->second;
        ++weight[it->second];
        continue;
      }
    }
    voter_point[i] = weight.size();
    weight.push_back(1);
  }
  return weight.size() + e.num_candidates();
}

}  // namespace

LpModel::LpModel(const Election& e, const Rational& alpha, VoterGrouping grouping)
    : n_(e.num_voters()),
      m_(e.num_candidates()),
      points_(count_points(e, grouping, voter_point_, weight_)),
      base_(points_ * (points_ - 1) / 2) {
  check_alpha(alpha);
  const std::size_t types = weight_.size();
  for (std::size_t x = 0; x < points_; ++x) {
    for (std::size_t z = x + 1; z < points_; ++z) {
      for (std::size_t y = 0; y < points_; ++y) {
        if (y == x || y == z) continue;
        base_.add_constraint({{var(x, z), 1}, {var(x, y), -1}, {var(y, z), -1}},
                             Sense::less_equal, 0);
        ++triangle_rows_;
      }
    }
  }
  std::vector<bool> done(types, false);
  for (VoterId i = 0; i < n_; ++i) {
    const std::size_t v = voter_point_[i];
    if (done[v]) continue;
    done[v] = true;
    const Ranking& r = e.ranking(i);
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      base_.add_constraint({{var(v, types + r[k]), 1}, {var(v, types + r[k + 1]), -1}},
                           Sense::less_equal, 0);
      ++consistency_rows_;
    }
    const std::size_t top = types + r.front();
    for (std::size_t k = 1; k < r.size(); ++k) {
      base_.add_constraint({{var(v, top), 1}, {var(v, types + r[k]), -alpha}}, Sense::less_equal,
                           0);
      ++decisiveness_rows_;
    }
  }
}

std::size_t LpModel::var(std::size_t x, std::size_t y) const {
  if (x == y || x >= points_ || y >= points_) throw std::out_of_range("no variable for this pair");
  if (x > y) std::swap(x, y);
  // Pairs (x, y) with x < y, enumerated row by row.
  return x * points_ - x * (x + 1) / 2 + (y - x - 1);
}

Terms LpModel::social_cost_terms(CandidateId c) const {
  if (c >= m_) throw std::out_of_range("candidate index");
  const std::size_t types = weight_.size();
  Terms t;
  for (std::size_t v = 0; v < types; ++v) {
    t.push_back({var(v, types + c), Rational(static_cast<unsigned long>(weight_[v]))});
  }
  return t;
}

Terms LpModel::expected_cost_terms(const Lottery& L) const {
  if (L.num_candidates() != m_) throw std::invalid_argument("lottery has the wrong length");
  Terms t;
  for (CandidateId c : L.support()) {
    for (auto [v, w] : social_cost_terms(c)) t.push_back({v, w * L.probability(c)});
  }
  return t;
}

MetricSpace LpModel::to_metric(const std::vector<Rational>& values) const {
  const std::size_t types = weight_.size();
  auto point_of = [&](std::size_t x) { return x < n_ ? voter_point_[x] : types + (x - n_); };
  Matrix d(n_ + m_, std::vector<Rational>(n_ + m_, Rational(0)));
  for (std::size_t x = 0; x < n_ + m_; ++x) {
    for (std::size_t y = x + 1; y < n_ + m_; ++y) {
      const std::size_t px = point_of(x);
      const std::size_t py = point_of(y);
      if (px != py) d[x][y] = d[y][x] = values.at(var(px, py));
    }
  }
  return MetricSpace(n_, m_, std::move(d));
}

std::string to_string(DistortionStatus s) {
  switch (s) {
    case DistortionStatus::bounded: return "bounded";
    case DistortionStatus::unbounded: return "unbounded";
    case DistortionStatus::degenerate: return "degenerate";
  }
  return "";
}

DistortionResult worst_case_ratio(const LpModel& model, const Lottery& outcome, CandidateId b,
                                  const Rational& normalization) {
  if (normalization <= 0) throw std::invalid_argument("normalization must be positive");
  if (b >= outcome.num_candidates()) throw std::out_of_range("reference candidate index");
  DistortionResult result;
  result.reference = b;

  // Can the reference cost vanish while the outcome keeps positive cost?
  LinearProgram probe = model.base();
  probe.add_constraint(model.social_cost_terms(b), Sense::equal, 0);
  probe.add_constraint(model.expected_cost_terms(outcome), Sense::equal, 1);
  const LpSolution feasible = solve(probe);
  if (feasible.status != LpSolution::Status::infeasible) {
    result.status = DistortionStatus::unbounded;
    result.witness = model.to_metric(feasible.values);
    return result;
  }

  LinearProgram lp = model.base();
  lp.add_constraint(model.social_cost_terms(b), Sense::equal, normalization);
  lp.set_objective(model.expected_cost_terms(outcome));
  const LpSolution sol = solve(lp);
  switch (sol.status) {
    case LpSolution::Status::infeasible:
      // SC(b) is forced to 0, and then so is the expected cost.
      result.status = DistortionStatus::degenerate;
      result.value = 1;
      return result;
    case LpSolution::Status::unbounded:
      throw InternalError("ratio program unbounded after the feasibility probe failed");
    case LpSolution::Status::optimal:
      break;
  }
  result.status = DistortionStatus::bounded;
  result.value = sol.objective / normalization;
  result.witness = model.to_metric(sol.values);
  return result;
}

DistortionResult worst_case_ratio(const Election& e, const Lottery& outcome, CandidateId b,
                                  const Rational& alpha, const Rational& normalization,
                                  VoterGrouping grouping) {
  return worst_case_ratio(LpModel(e, alpha, grouping), outcome, b, normalization);
}

DistortionResult distortion_of_outcome(const Election& e, const Lottery& outcome,
                                       const Rational& alpha, VoterGrouping grouping) {
  const LpModel model(e, alpha, grouping);
  std::vector<DistortionResult> parts;
  for (CandidateId b = 0; b < e.num_candidates(); ++b) {
    parts.push_back(worst_case_ratio(model, outcome, b));
  }
  std::optional<std::size_t> pick;
  for (std::size_t k = 0; k < parts.size() && !pick; ++k) {
    if (parts[k].status == DistortionStatus::unbounded) pick = k;
  }
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (pick && parts[*pick].status == DistortionStatus::unbounded) break;
    if (parts[k].status != DistortionStatus::bounded) continue;
    if (!pick || parts[k].value > parts[*pick].value) pick = k;
  }
  DistortionResult out;
  if (pick) {
    out = parts[*pick];
  } else {
    out.status = DistortionStatus::degenerate;
    out.value = 1;
  }
  out.per_reference = std::move(parts);
  return out;
}

std::optional<Rational> lemma3_bound(const MetricSpace& d, const Election& e, const Lottery& L,
                                     const Rational& alpha, CandidateId c_star) {
  check_dimensions(d, e);
  check_alpha(alpha);
  const auto plu = plurality_scores(e);
  const Rational n = static_cast<unsigned long>(e.num_voters());
  Rational num = 0;
  Rational den = 0;
  for (CandidateId a = 0; a < e.num_candidates(); ++a) {
    const Rational x = static_cast<unsigned long>(plu[a]);
    const Rational& dist = d.candidate_candidate(a, c_star);
    num += L.probability(a) * (n - 2 * x / (1 + alpha)) * dist;
    den += x * dist;
  }
  if (den == 0) return std::nullopt;
  return Rational(1 + (1 + alpha) * num / den);
}

bool check_prop4(const MetricSpace& d, const Election& e, CandidateId a, CandidateId c_star,
                 const Rational& alpha) {
  if (!is_alpha_decisive(d, e, alpha)) throw std::invalid_argument("metric is not alpha-decisive");
  const Rational best = social_cost(d, c_star);
  for (CandidateId c = 0; c < e.num_candidates(); ++c) {
    if (social_cost(d, c) < best) throw std::invalid_argument("c_star is not optimal");
  }
  const Rational n = static_cast<unsigned long>(e.num_voters());
  const Rational x = static_cast<unsigned long>(plurality_score(e, a));
  return social_cost(d, a) <= best + (n - 2 * x / (1 + alpha)) * d.candidate_candidate(a, c_star);
}

bool check_summation_bound(const std::vector<Rational>& x, const Rational& w, const Rational& n) {
  if (w <= 0 || w > 1) throw std::invalid_argument("w must lie in (0, 1]");
  if (x.empty()) throw std::invalid_argument("empty vector");
  Rational total = 0;
  for (const Rational& xi : x) {
    if (xi < 0 || w * xi >= n) throw std::invalid_argument("entry outside [0, n/w)");
    total += xi;
  }
  if (total != n) throw std::invalid_argument("entries do not sum to n");
  Rational lhs = 0;
  for (const Rational& xi : x) lhs += xi / (n - w * xi);
  const Rational m = static_cast<unsigned long>(x.size());
  return lhs >= m / (m - w);
}

std::string distortion_json(const DistortionResult& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  if (r.status == DistortionStatus::unbounded) {
    j["value"] = nullptr;
  } else {
    j["value"] = to_string(r.value);
  }
  j["reference"] = r.reference;
  if (r.witness) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.witness->matrix()) {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& x : row) out.push_back(to_string(x));
      rows.push_back(std::move(out));
    }
    j["witness_metric"] = std::move(rows);
  } else {
    j["witness_metric"] = nullptr;
  }
  if (!r.per_reference.empty()) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : r.per_reference) {
      parts.push_back({{"reference", p.reference},
                       {"status", to_string(p.status)},
                       {"value", p.status == DistortionStatus::unbounded
                                     ? nlohmann::json(nullptr)
                                     : nlohmann::json(to_string(p.value))}});
    }
    j["per_reference"] = std::move(parts);
  }
  return j.dump(2);
}

}  // namespace mvote
