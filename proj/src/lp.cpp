#include "mvote/lp.hpp"

#include <optional>
#include <stdexcept>

#include "mvote/errors.hpp"

namespace mvote {

void LinearProgram::add_constraint(std::vector<Term> terms, Sense sense, Rational rhs) {
  for (const auto& [v, coef] : terms) {
    if (v >= num_vars_) throw std::out_of_range("constraint refers to an unknown variable");
  }
  rows_.push_back({std::move(terms), sense, std::move(rhs)});
}

void LinearProgram::set_objective(std::vector<Term> terms) {
  objective_.assign(num_vars_, Rational(0));
  for (const auto& [v, coef] : terms) {
    if (v >= num_vars_) throw std::out_of_range("objective refers to an unknown variable");
    objective_[v] += coef;
  }
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars()) return false;
  for (const Rational& v : x) {
    if (v < 0) return false;
  }
  for (const auto& row : lp.rows()) {
    Rational lhs = 0;
    for (const auto& [v, coef] : row.terms) lhs += coef * x[v];
    switch (row.sense) {
      case LinearProgram::Sense::less_equal:
        if (lhs > row.rhs) return false;
        break;
      case LinearProgram::Sense::equal:
        if (lhs != row.rhs) return false;
        break;
      case LinearProgram::Sense::greater_equal:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

// Dictionary form: basic[r] = beta[r] + sum_k D[r][k] * nonbasic[k],
// z = z0 + sum_k obj[k] * nonbasic[k]. Variable ids: originals first, then
// one slack per row, then the auxiliary variable.
class Dictionary {
 public:
  Dictionary(std::vector<std::vector<Rational>> D, std::vector<Rational> beta,
             std::vector<std::size_t> basic, std::vector<std::size_t> nonbasic)
      : D_(std::move(D)), beta_(std::move(beta)), basic_(std::move(basic)),
        nonbasic_(std::move(nonbasic)) {}

  std::vector<Rational> obj;
  Rational z0 = 0;
  std::size_t pivots = 0;

  std::size_t rows() const { return D_.size(); }
  std::size_t cols() const { return nonbasic_.size(); }
  const std::vector<std::vector<Rational>>& D() const { return D_; }
  const std::vector<Rational>& beta() const { return beta_; }
  const std::vector<std::size_t>& basic() const { return basic_; }
  const std::vector<std::size_t>& nonbasic() const { return nonbasic_; }

  void pivot(std::size_t r, std::size_t j) {
    ++pivots;
    std::vector<Rational>& row = D_[r];
    const Rational p = row[j];
    // Solve row r for the entering variable.
    Rational inv = 1 / p;
    beta_[r] = -beta_[r] * inv;
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k == j) {
        row[k] = inv;
      } else if (sgn(row[k]) != 0) {
        row[k] = -row[k] * inv;
      }
      if (sgn(row[k]) != 0) nz.push_back(k);
    }
    Rational f;
    auto substitute = [&](std::vector<Rational>& other, Rational* constant) {
      f = other[j];
      if (sgn(f) == 0) return;
      other[j] = 0;
      for (std::size_t k : nz) other[k] += f * row[k];
      if (constant) *constant += f * beta_[r];
    };
    for (std::size_t i = 0; i < D_.size(); ++i) {
      if (i != r) substitute(D_[i], &beta_[i]);
    }
    substitute(obj, &z0);
    std::swap(basic_[r], nonbasic_[j]);
  }

  /// Bland's rule. Returns false at optimality; sets `unbounded` when the
  /// entering column has no blocking row.
  bool step(bool& unbounded) {
    std::optional<std::size_t> enter;
    for (std::size_t k = 0; k < cols(); ++k) {
      if (sgn(obj[k]) > 0 && (!enter || nonbasic_[k] < nonbasic_[*enter])) enter = k;
    }
    if (!enter) return false;
    const std::size_t j = *enter;
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (sgn(D_[i][j]) >= 0) continue;
      Rational ratio = beta_[i] / -D_[i][j];
      if (!leave || ratio < best || (ratio == best && basic_[i] < basic_[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) {
      unbounded = true;
      return false;
    }
    pivot(*leave, j);
    return true;
  }

  void drop_row(std::size_t r) {
    D_.erase(D_.begin() + static_cast<std::ptrdiff_t>(r));
    beta_.erase(beta_.begin() + static_cast<std::ptrdiff_t>(r));
    basic_.erase(basic_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  void drop_column(std::size_t j) {
    for (auto& row : D_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(j));
    obj.erase(obj.begin() + static_cast<std::ptrdiff_t>(j));
    nonbasic_.erase(nonbasic_.begin() + static_cast<std::ptrdiff_t>(j));
  }

 private:
  std::vector<std::vector<Rational>> D_;
  std::vector<Rational> beta_;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  // Normalize every row to sum a_k x_k <= b.
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  auto push = [&](const LinearProgram::Row& row, int sign) {
    std::vector<Rational> dense(n, Rational(0));
    for (const auto& [v, coef] : row.terms) dense[v] += coef;
    if (sign < 0) {
      for (auto& x : dense) x = -x;
    }
    A.push_back(std::move(dense));
    b.push_back(sign < 0 ? Rational(-row.rhs) : row.rhs);
  };
  for (const auto& row : lp.rows()) {
    switch (row.sense) {
      case LinearProgram::Sense::less_equal: push(row, 1); break;
      case LinearProgram::Sense::greater_equal: push(row, -1); break;
      case LinearProgram::Sense::equal:
        push(row, 1);
        push(row, -1);
        break;
    }
  }
  const std::size_t R = A.size();
  const std::size_t aux = n + R;

  bool need_phase_one = false;
  for (const auto& x : b) need_phase_one = need_phase_one || sgn(x) < 0;

  // slack_r = b_r - a_r.x (+ x0 during phase one).
  const std::size_t ncols = n + (need_phase_one ? 1 : 0);
  std::vector<std::vector<Rational>> D(R, std::vector<Rational>(ncols));
  std::vector<std::size_t> basic(R);
  std::vector<std::size_t> nonbasic(ncols);
  for (std::size_t k = 0; k < n; ++k) nonbasic[k] = k;
  if (need_phase_one) nonbasic[n] = aux;
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t k = 0; k < n; ++k) D[r][k] = -A[r][k];
    if (need_phase_one) D[r][n] = 1;
    basic[r] = n + r;
  }
  Dictionary dict(std::move(D), b, std::move(basic), std::move(nonbasic));

  LpSolution sol;
  if (need_phase_one) {
    dict.obj.assign(ncols, Rational(0));
    dict.obj[n] = -1;
    std::size_t worst = 0;
    for (std::size_t r = 1; r < R; ++r) {
      if (b[r] < b[worst]) worst = r;
    }
    dict.pivot(worst, n);
    bool unbounded = false;
    while (dict.step(unbounded)) {
    }
    if (unbounded) throw InternalError("phase one objective is bounded by zero");
    if (sgn(dict.z0) < 0) {
      sol.status = LpSolution::Status::infeasible;
      sol.pivots = dict.pivots;
      return sol;
    }
    // Move x0 out of the basis if it stayed there at level zero.
    for (std::size_t r = 0; r < dict.rows(); ++r) {
      if (dict.basic()[r] != aux) continue;
      bool moved = false;
      for (std::size_t k = 0; k < dict.cols() && !moved; ++k) {
        if (sgn(dict.D()[r][k]) != 0) {
          dict.pivot(r, k);
          moved = true;
        }
      }
      // An all-zero row pins x0 to 0 and carries no constraint.
      if (!moved) dict.drop_row(r);
      break;
    }
    for (std::size_t k = 0; k < dict.cols(); ++k) {
      if (dict.nonbasic()[k] == aux) {
        dict.drop_column(k);
        break;
      }
    }
    for (std::size_t r = 0; r < dict.rows(); ++r) {
      if (dict.basic()[r] == aux) throw InternalError("auxiliary variable stuck in basis");
    }
  }

  // Express the real objective in the current nonbasic variables.
  const auto& c = lp.objective();
  dict.obj.assign(dict.cols(), Rational(0));
  dict.z0 = 0;
  std::vector<std::optional<std::size_t>> col_of(n + R + 1);
  for (std::size_t k = 0; k < dict.cols(); ++k) col_of[dict.nonbasic()[k]] = k;
  for (std::size_t v = 0; v < n; ++v) {
    if (sgn(c[v]) == 0) continue;
    if (col_of[v]) {
      dict.obj[*col_of[v]] += c[v];
      continue;
    }
    for (std::size_t r = 0; r < dict.rows(); ++r) {
      if (dict.basic()[r] != v) continue;
      dict.z0 += c[v] * dict.beta()[r];
      for (std::size_t k = 0; k < dict.cols(); ++k) {
        if (sgn(dict.D()[r][k]) != 0) dict.obj[k] += c[v] * dict.D()[r][k];
      }
      break;
    }
  }

  bool unbounded = false;
  while (dict.step(unbounded)) {
  }
  sol.pivots = dict.pivots;
  sol.values.assign(n, Rational(0));
  for (std::size_t r = 0; r < dict.rows(); ++r) {
    if (dict.basic()[r] < n) sol.values[dict.basic()[r]] = dict.beta()[r];
  }
  if (unbounded) {
    sol.status = LpSolution::Status::unbounded;
    return sol;
  }
  sol.status = LpSolution::Status::optimal;
  sol.objective = dict.z0;
  return sol;
}

}  // namespace mvote
