#include "guesswork/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "guesswork/error.hpp"

namespace guesswork::oracle {

namespace {

constexpr std::size_t kMaxBisection = 200;
constexpr long long kDenominator = 1'000'000'000;
constexpr std::size_t kMaxLpSymbols = 20;
constexpr std::size_t kMaxLpColumns = 100'000;

// ---------------------------------------------------------------------------
// Descent helpers

// Loss, gradient and curvature of one coordinate: p * alpha_loss(t).
struct Coordinate {
  double value;
  double grad;
  double curv;
};

Coordinate evaluate(double p, double t, Alpha alpha) {
  Coordinate c{};
  c.value = p * alpha_loss(t, alpha);
  switch (alpha.kind()) {
    case Alpha::Kind::kInfinity:
      c.grad = -p;
      c.curv = 0.0;
      break;
    case Alpha::Kind::kOne:
      c.grad = -p / t;
      c.curv = p / (t * t);
      break;
    case Alpha::Kind::kFinite: {
      const double a = alpha.value();
      const double pw = std::pow(t, -1.0 / a);
      c.grad = -p * pw;
      c.curv = p / a * pw / t;
      break;
    }
  }
  return c;
}

double objective(std::span<const double> p, std::span<const double> t,
                 Alpha alpha) {
  double f = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) f += p[i] * alpha_loss(t[i], alpha);
  return f;
}

// Linear minimization over {floor <= s_i <= 1, sum s = k}: greedily raise the
// most negative gradient coordinates. Returns g^T (t - s).
struct GapEstimate {
  double gap;
  // Round-off scale of the gap evaluation.
  double noise;
};

GapEstimate frank_wolfe_gap(std::span<const double> grad, std::span<const double> t,
                            double floor, double k) {
  const std::size_t m = grad.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return grad[a] < grad[b]; });
  std::vector<double> s(m, floor);
  double budget = k - floor * static_cast<double>(m);
  for (std::size_t i : order) {
    if (budget <= 0.0) break;
    const double raise = std::min(1.0 - floor, budget);
    s[i] += raise;
    budget -= raise;
  }
  GapEstimate est{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    est.gap += grad[i] * (t[i] - s[i]);
    est.noise += std::abs(grad[i]) * (std::abs(t[i]) + std::abs(s[i]));
  }
  est.noise *= 64.0 * std::numeric_limits<double>::epsilon();
  return est;
}

// ---------------------------------------------------------------------------
// Exact phase-one simplex

std::string rational_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> current(k);
  std::iota(current.begin(), current.end(), std::size_t{0});
  while (true) {
    out.push_back(current);
    std::size_t i = k;
    while (i > 0 && current[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::size_t>(c);
}

// Integers over kDenominator; apportions rounding so the sum is exact when the
// float sum is within tolerance of k.
std::vector<long long> scale_to_integers(std::span<const double> t,
                                         std::size_t k) {
  std::vector<long long> b(t.size());
  const double sum = std::accumulate(t.begin(), t.end(), 0.0);
  if (std::abs(sum - static_cast<double>(k)) > kSumTolerance) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      b[i] = std::llround(t[i] * static_cast<double>(kDenominator));
    }
    return b;
  }
  std::vector<double> remainder(t.size());
  long long total = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double scaled = t[i] * static_cast<double>(kDenominator);
    b[i] = static_cast<long long>(std::floor(scaled));
    remainder[i] = scaled - static_cast<double>(b[i]);
    total += b[i];
  }
  long long deficit = static_cast<long long>(k) * kDenominator - total;
  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    return remainder[a] > remainder[c];
  });
  for (std::size_t j = 0; deficit > 0 && !order.empty(); j = (j + 1) % order.size()) {
    ++b[order[j]];
    --deficit;
  }
  for (std::size_t j = order.size(); deficit < 0 && !order.empty();) {
    j = (j == 0 ? order.size() : j) - 1;
    --b[order[j]];
    ++deficit;
  }
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Projection

CappedSimplex::CappedSimplex(std::size_t n, double k) : n_(n), k_(k) {
  if (!(k >= 1.0) || k > static_cast<double>(n)) {
    throw ValidationError("capped simplex requires 1 <= k <= n");
  }
}

std::vector<double> project_capped_box(std::span<const double> v,
                                       std::span<const double> weights,
                                       double lower, double upper,
                                       double total) {
  const std::size_t n = v.size();
  if (weights.size() != n) {
    throw std::invalid_argument("project_capped_box: weight length mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("project_capped_box: weights must be positive");
    }
  }
  const double dn = static_cast<double>(n);
  if (total < lower * dn - 1e-12 || total > upper * dn + 1e-12) {
    throw std::invalid_argument("project_capped_box: empty feasible set");
  }
  auto clipped = [&](double mu, std::size_t i) {
    return std::clamp(v[i] - mu / weights[i], lower, upper);
  };
  auto mass = [&](double mu) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += clipped(mu, i);
    return s;
  };

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, weights[i] * (v[i] - upper));
    hi = std::max(hi, weights[i] * (v[i] - lower));
  }
  // mass(lo) = n * upper >= total >= n * lower = mass(hi); mass is monotone.
  for (std::size_t it = 0; it < kMaxBisection; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mass(mid) > total ? lo : hi) = mid;
  }
  double mu = 0.5 * (lo + hi);

  // Solve exactly on the free set identified by the bracket.
  double fixed = 0.0;
  double free_v = 0.0;
  double free_inv_w = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = v[i] - mu / weights[i];
    if (x <= lower) {
      fixed += lower;
    } else if (x >= upper) {
      fixed += upper;
    } else {
      free_v += v[i];
      free_inv_w += 1.0 / weights[i];
    }
  }
  if (free_inv_w > 0.0) {
    const double exact = (free_v + fixed - total) / free_inv_w;
    if (std::isfinite(exact) &&
        std::abs(mass(exact) - total) <= std::abs(mass(mu) - total)) {
      mu = exact;
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = clipped(mu, i);
  return out;
}

std::vector<double> project_capped_simplex(std::span<const double> v,
                                           const CappedSimplex& domain) {
  if (v.size() != domain.n()) {
    throw std::invalid_argument("project_capped_simplex: dimension mismatch");
  }
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ValidationError("project_capped_simplex: input must be finite");
    }
  }
  const std::vector<double> unit(v.size(), 1.0);
  return project_capped_box(v, unit, 0.0, 1.0, domain.k());
}

// ---------------------------------------------------------------------------
// Descent

DescentResult minimize_expected_loss(const Pmf& pmf, GuessBudget k,
                                     Alpha alpha, double tol,
                                     const DescentOptions& options) {
  if (!(tol > 0.0)) throw ValidationError("minimize_expected_loss: tol must be > 0");
  std::vector<std::size_t> support;
  std::vector<double> p;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] > 0.0) {
      support.push_back(i);
      p.push_back(pmf[i]);
    }
  }
  const std::size_t m = p.size();
  const double budget = static_cast<double>(k.value());
  if (k.value() >= m) {
    throw DomainError("minimize_expected_loss: k must be below the positive support");
  }
  const double floor = options.floor;

  std::vector<double> t(m, budget / static_cast<double>(m));
  std::vector<double> grad(m);
  std::vector<double> curv(m);
  std::vector<double> target(m);
  std::vector<double> trial(m);
  double f = objective(p, t, alpha);

  DescentResult result;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    for (std::size_t i = 0; i < m; ++i) {
      const Coordinate c = evaluate(p[i], t[i], alpha);
      grad[i] = c.grad;
      curv[i] = c.curv;
    }
    const GapEstimate est = frank_wolfe_gap(grad, t, floor, budget);
    const double gap = est.gap;
    result.gap = gap;
    result.iterations = iter;
    auto finish = [&] {
      result.value = f;
      result.t.assign(pmf.size(), 0.0);
      for (std::size_t j = 0; j < m; ++j) result.t[support[j]] = t[j];
      return result;
    };
    if (gap <= tol) return finish();
    // Below this the gap is indistinguishable from zero in this arithmetic.
    const bool at_precision_limit = gap <= est.noise;

    // Newton target per coordinate; the linear (alpha = inf) objective uses a
    // long Euclidean step instead.
    for (std::size_t i = 0; i < m; ++i) {
      if (curv[i] > 0.0) {
        target[i] = t[i] - grad[i] / curv[i];
      } else {
        curv[i] = 1.0;
        target[i] = t[i] - 1e6 * grad[i];
      }
    }
    const std::vector<double> x =
        project_capped_box(target, curv, floor, 1.0, budget);

    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) slope += grad[i] * (x[i] - t[i]);
    const double f_noise =
        64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f));

    double step = 1.0;
    double f_trial = 0.0;
    bool accepted = false;
    if (slope < 0.0) {
      while (step > 1e-20) {
        for (std::size_t i = 0; i < m; ++i) trial[i] = t[i] + step * (x[i] - t[i]);
        f_trial = objective(p, trial, alpha);
        if (f_trial <= f + 1e-4 * step * slope) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
    }
    if (!accepted) {
      // Near the optimum the objective is flat below round-off; the full
      // scaled step is kept only if it is no worse within round-off and it
      // shrinks the first-order gap.
      for (std::size_t i = 0; i < m; ++i) trial[i] = x[i];
      f_trial = objective(p, trial, alpha);
      std::vector<double> trial_grad(m);
      for (std::size_t i = 0; i < m; ++i) {
        trial_grad[i] = evaluate(p[i], trial[i], alpha).grad;
      }
      const double trial_gap = frank_wolfe_gap(trial_grad, trial, floor, budget).gap;
      accepted = f_trial <= f + f_noise && trial_gap < gap;
    }
    if (!accepted) {
      if (at_precision_limit) return finish();
      throw ConvergenceError("minimize_expected_loss: line search stalled at gap " +
                             std::to_string(gap));
    }
    if (f_trial > f + f_noise) {
      throw std::logic_error("minimize_expected_loss: objective increased");
    }
    t.swap(trial);
    f = f_trial;
  }
  throw ConvergenceError("minimize_expected_loss: iteration cap of " +
                         std::to_string(options.max_iterations) + " reached");
}

// ---------------------------------------------------------------------------
// Exact feasibility

FeasibilityResult lp_feasibility(std::span<const double> t, GuessBudget k) {
  const std::size_t n = t.size();
  const std::size_t kk = k.value();
  if (n > kMaxLpSymbols) {
    throw DomainError("lp_feasible: at most 20 symbols supported");
  }
  if (binomial_capped(n, kk, kMaxLpColumns) > kMaxLpColumns) {
    throw DomainError("lp_feasible: more than 1e5 subset columns");
  }
  for (double v : t) {
    if (!std::isfinite(v)) throw ValidationError("lp_feasible: non-finite entry");
  }

  const auto columns = k_subsets(n, kk);
  const std::size_t rows = n + 1;
  const std::size_t structural = columns.size();
  const std::size_t width = structural + rows;

  std::vector<long long> b = scale_to_integers(t, kk);
  b.push_back(kDenominator);

  // Tableau with one artificial per row; rows with negative rhs are negated.
  std::vector<int> sign(rows, 1);
  std::vector<std::vector<mpq_class>> tab(rows, std::vector<mpq_class>(width));
  std::vector<mpq_class> rhs(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    sign[r] = b[r] < 0 ? -1 : 1;
    rhs[r] = mpq_class(static_cast<long>(sign[r] * b[r]));
    tab[r][structural + r] = 1;
  }
  for (std::size_t j = 0; j < structural; ++j) {
    for (std::size_t i : columns[j]) tab[i][j] = sign[i];
    tab[n][j] = sign[n];
  }
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = structural + r;

  // Reduced costs of the phase-one objective sum(artificials).
  std::vector<mpq_class> reduced(width);
  for (std::size_t j = 0; j < structural; ++j) {
    for (std::size_t r = 0; r < rows; ++r) reduced[j] -= tab[r][j];
  }

  // Bland's rule.
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (sgn(reduced[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = rows;
    mpq_class best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (sgn(tab[r][enter]) <= 0) continue;
      mpq_class ratio = rhs[r] / tab[r][enter];
      if (leave == rows || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == rows) {
      // Cannot happen: phase one is bounded below by zero.
      throw std::logic_error("lp_feasible: unbounded phase-one problem");
    }
    const mpq_class pivot = tab[leave][enter];
    for (std::size_t j = 0; j < width; ++j) tab[leave][j] /= pivot;
    rhs[leave] /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || sgn(tab[r][enter]) == 0) continue;
      const mpq_class factor = tab[r][enter];
      for (std::size_t j = 0; j < width; ++j) tab[r][j] -= factor * tab[leave][j];
      rhs[r] -= factor * rhs[leave];
    }
    if (sgn(reduced[enter]) != 0) {
      const mpq_class factor = reduced[enter];
      for (std::size_t j = 0; j < width; ++j) reduced[j] -= factor * tab[leave][j];
    }
    basis[leave] = enter;
  }

  mpq_class infeasibility;
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] >= structural) infeasibility += rhs[r];
  }

  FeasibilityResult result;
  if (sgn(infeasibility) == 0) {
    result.feasible = true;
    for (std::size_t r = 0; r < rows; ++r) {
      if (basis[r] < structural && sgn(rhs[r]) > 0) {
        result.witness.emplace_back(columns[basis[r]],
                                    rhs[r].get_d() / static_cast<double>(kDenominator));
      }
    }
    return result;
  }

  // Duals of the final basis: reduced cost of artificial r is 1 - pi_r.
  // y = -pi separates the sign-adjusted system; undo the row negation.
  std::vector<mpq_class> y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const mpq_class pi = 1 - reduced[structural + r];
    y[r] = -pi * sign[r];
  }
  bool verified = true;
  for (const auto& col : columns) {
    mpq_class dot = y[n];
    for (std::size_t i : col) dot += y[i];
    if (sgn(dot) < 0) {
      verified = false;
      break;
    }
  }
  mpq_class yb;
  for (std::size_t r = 0; r < rows; ++r) yb += y[r] * mpq_class(static_cast<long>(b[r]));
  verified = verified && sgn(yb) < 0;

  FarkasCertificate cert;
  cert.verified = verified;
  for (const auto& v : y) cert.y.push_back(rational_string(v));
  result.certificate = std::move(cert);
  return result;
}

bool lp_feasible(std::span<const double> t, GuessBudget k) {
  return lp_feasibility(t, k).feasible;
}

}  // namespace guesswork::oracle
