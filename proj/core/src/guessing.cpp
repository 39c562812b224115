#include "guesswork/guessing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "guesswork/error.hpp"

namespace guesswork {

namespace {

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (lo == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

// tails[r] = ln sum_{i >= r} p_i^alpha, accumulated from the smallest atom
// upward.
std::vector<double> log_tail_sums(const std::vector<double>& probs, double a) {
  std::vector<double> tails(probs.size());
  double acc = -std::numeric_limits<double>::infinity();
  for (std::size_t r = probs.size(); r-- > 0;) {
    acc = log_add_exp(a * std::log(probs[r]), acc);
    tails[r] = acc;
  }
  return tails;
}

std::size_t scan_s_star(const std::vector<double>& probs,
                        const std::vector<double>& tails, std::size_t k,
                        double a) {
  for (std::size_t r = 1; r <= k; ++r) {
    const double log_ratio = std::log(static_cast<double>(k - r + 1)) +
                             a * std::log(probs[r - 1]) - tails[r - 1];
    if (log_ratio <= 0.0) return r;
  }
  // Unreachable for k < positive support: at r = k the tail contains p_k
  // plus at least one more positive atom.
  throw std::logic_error("s_star: no admissible threshold index found");
}

CoverageVector scatter(const SortedPmf& sorted, const std::vector<double>& t,
                       GuessBudget k) {
  CoverageVector cov;
  cov.k = k;
  cov.t.assign(sorted.original_size, 0.0);
  for (std::size_t r = 0; r < t.size(); ++r) cov.t[sorted.perm[r]] = t[r];
  return cov;
}

}  // namespace

GuessBudget::GuessBudget(std::size_t k) : k_(k) {
  if (k == 0) throw ValidationError("guess budget k must be at least 1");
}

SortedPmf SortedPmf::from(const Pmf& pmf) {
  SortedPmf out;
  out.original_size = pmf.size();
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] > 0.0) {
      out.perm.push_back(i);
    } else {
      ++out.zero_count;
    }
  }
  std::stable_sort(out.perm.begin(), out.perm.end(),
                   [&](std::size_t a, std::size_t b) { return pmf[a] > pmf[b]; });
  out.probs.reserve(out.perm.size());
  for (std::size_t i : out.perm) out.probs.push_back(pmf[i]);
  return out;
}

std::size_t CoverageVector::guesses_per_draw() const {
  const auto positive = static_cast<std::size_t>(
      std::count_if(t.begin(), t.end(), [](double v) { return v > 0.0; }));
  return std::min(k.value(), positive);
}

double CoverageVector::sum() const {
  return std::accumulate(t.begin(), t.end(), 0.0);
}

std::size_t s_star(const SortedPmf& sorted, GuessBudget k, Alpha alpha) {
  const std::size_t budget = k.value();
  if (budget >= sorted.size()) {
    throw DomainError("s_star: k = " + std::to_string(budget) +
                      " must be below the positive support size " +
                      std::to_string(sorted.size()));
  }
  if (alpha.is_infinite()) return budget;
  const double a = alpha.value();
  return scan_s_star(sorted.probs, log_tail_sums(sorted.probs, a), budget, a);
}

LossReport minimal_loss(const Pmf& pmf, GuessBudget k, Alpha alpha) {
  const SortedPmf sorted = SortedPmf::from(pmf);
  const std::size_t m = sorted.size();
  const std::size_t budget = k.value();
  LossReport report;
  report.alpha = alpha;

  if (budget >= m) {
    report.value = 0.0;
    report.s_star = m;
    report.lambda = sorted.probs.back();
    report.coverage = scatter(sorted, std::vector<double>(m, 1.0), k);
    return report;
  }

  std::vector<double> t(m, 0.0);
  if (alpha.is_infinite()) {
    double top = 0.0;
    for (std::size_t r = 0; r < budget; ++r) {
      top += sorted.probs[r];
      t[r] = 1.0;
    }
    report.value = std::max(0.0, 1.0 - top);
    report.s_star = budget;
    report.lambda = sorted.probs[budget - 1];
    report.coverage = scatter(sorted, t, k);
    return report;
  }

  const double a = alpha.value();
  const auto tails = log_tail_sums(sorted.probs, a);
  const std::size_t s = scan_s_star(sorted.probs, tails, budget, a);
  const double free_slots = static_cast<double>(budget - s + 1);
  const double log_scale = std::log(free_slots) - tails[s - 1];
  report.s_star = s;
  report.lambda = std::exp((tails[s - 1] - std::log(free_slots)) / a);

  for (std::size_t r = 0; r + 1 < s; ++r) t[r] = 1.0;
  std::vector<double> log_t(m, 0.0);
  for (std::size_t r = s - 1; r < m; ++r) {
    log_t[r] = std::min(0.0, log_scale + a * std::log(sorted.probs[r]));
    t[r] = std::exp(log_t[r]);
  }

  double value = 0.0;
  if (alpha.is_one()) {
    double tail = 0.0;
    for (std::size_t r = s - 1; r < m; ++r) tail += sorted.probs[r];
    std::vector<double> collapsed(sorted.probs.begin(),
                                  sorted.probs.begin() +
                                      static_cast<std::ptrdiff_t>(s - 1));
    collapsed.push_back(tail);
    value = shannon_entropy(sorted.probs).nats() -
            shannon_entropy(collapsed).nats() - tail * std::log(free_slots);
  } else {
    const double e = alpha.exponent();
    double acc = 0.0;
    for (std::size_t r = s - 1; r < m; ++r) {
      acc += sorted.probs[r] * -std::expm1(e * log_t[r]);
    }
    value = a / (a - 1.0) * acc;
  }
  report.value = std::max(0.0, value);
  report.coverage = scatter(sorted, t, k);
  return report;
}

CoverageVector optimal_coverage(const Pmf& pmf, GuessBudget k, Alpha alpha) {
  return minimal_loss(pmf, k, alpha).coverage;
}

ConditionalLoss minimal_loss_conditional(const JointPmf& joint, GuessBudget k,
                                         Alpha alpha) {
  ConditionalLoss out;
  out.per_y.resize(joint.cols());
  for (std::size_t y = 0; y < joint.cols(); ++y) {
    const double mass = joint.column_mass(y);
    if (!(mass > 0.0)) continue;
    out.per_y[y] = minimal_loss(conditional_pmf(joint, y), k, alpha);
    out.value += mass * out.per_y[y]->value;
  }
  return out;
}

}  // namespace guesswork
