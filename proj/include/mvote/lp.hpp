#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mvote/rational.hpp"

namespace mvote {

/// maximize c.x subject to rows and x >= 0, in exact arithmetic.
class LinearProgram {
 public:
  enum class Sense { less_equal, equal, greater_equal };
  using Term = std::pair<std::size_t, Rational>;

  explicit LinearProgram(std::size_t num_vars) : num_vars_(num_vars), objective_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_constraints() const { return rows_.size(); }

  void add_constraint(std::vector<Term> terms, Sense sense, Rational rhs);
  void set_objective(std::vector<Term> terms);

  struct Row {
    std::vector<Term> terms;
    Sense sense;
    Rational rhs;
  };
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<Rational>& objective() const { return objective_; }

 private:
  std::size_t num_vars_;
  std::vector<Rational> objective_;
  std::vector<Row> rows_;
};

struct LpSolution {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Rational objective;
  std::vector<Rational> values;
  std::size_t pivots = 0;
};

/// Dictionary simplex with Bland's rule; auxiliary-variable phase one when the
/// origin is infeasible. Terminates on every input.
LpSolution solve(const LinearProgram& lp);

/// True when every row holds at `x` (and x >= 0).
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace mvote
