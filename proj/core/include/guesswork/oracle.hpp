#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "guesswork/core.hpp"
#include "guesswork/guessing.hpp"

namespace guesswork::oracle {

// {t : 0 <= t_i <= 1, sum_i t_i = k}.
class CappedSimplex {
 public:
  // ValidationError unless 1 <= k <= n.
  CappedSimplex(std::size_t n, double k);
  std::size_t n() const { return n_; }
  double k() const { return k_; }

 private:
  std::size_t n_;
  double k_;
};

// Euclidean projection onto the capped simplex: t_i = clip(v_i - lambda, 0, 1)
// with lambda found by bisection and then solved exactly on the free set.
std::vector<double> project_capped_simplex(std::span<const double> v,
                                           const CappedSimplex& domain);

// Projection in the metric sum_i w_i (t_i - v_i)^2 onto
// {lower <= t_i <= upper, sum_i t_i = total}:
// t_i = clip(v_i - mu / w_i, lower, upper). Weights must be positive.
std::vector<double> project_capped_box(std::span<const double> v,
                                       std::span<const double> weights,
                                       double lower, double upper,
                                       double total);

struct DescentOptions {
  std::size_t max_iterations = 100000;
  // Coordinates are kept >= this so t^(-1/alpha) stays finite.
  double floor = 1e-12;
};

struct DescentResult {
  double value = 0.0;
  std::vector<double> t;  // original index order; zero-probability atoms get 0
  double gap = 0.0;       // Frank-Wolfe duality gap at termination
  std::size_t iterations = 0;
};

// Minimizes sum_i p_i * alpha_loss(t_i) over the capped simplex on the
// positive support by diagonally scaled projected descent with Armijo
// backtracking, starting from t = k/n. Stops once the Frank-Wolfe gap, an
// upper bound on the distance to the optimum, drops to `tol`.
// DomainError unless k < positive support; ConvergenceError at the cap.
DescentResult minimize_expected_loss(const Pmf& pmf, GuessBudget k,
                                     Alpha alpha, double tol,
                                     const DescentOptions& options = {});

// y with y^T A >= 0 for every column of the strategy system and y^T b < 0.
// The last entry multiplies the normalization row sum(Q) = 1.
struct FarkasCertificate {
  std::vector<std::string> y;  // exact rationals, "num/den"
  bool verified = false;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<FarkasCertificate> certificate;  // set when infeasible
  // Nonzero subset weights when feasible: (sorted symbol indices, weight).
  std::vector<std::pair<std::vector<std::size_t>, double>> witness;
};

// Exact feasibility of A Q = t, 1^T Q = 1, Q >= 0 where the columns of A are
// indicator vectors of the k-subsets of [0, n). Inputs are scaled to integers
// over a common denominator of 1e9; when the float sum of t is within 1e-9
// of k the rounding is apportioned so the scaled sum is exact.
// DomainError when n > 20 or C(n, k) > 1e5.
FeasibilityResult lp_feasibility(std::span<const double> t, GuessBudget k);

bool lp_feasible(std::span<const double> t, GuessBudget k);

}  // namespace guesswork::oracle
