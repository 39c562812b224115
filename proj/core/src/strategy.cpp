#include "guesswork/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "guesswork/error.hpp"

namespace guesswork {

namespace {

constexpr double kAdmissibleTolerance = 1e-9;
constexpr double kBreakpointMerge = 1e-12;

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

std::size_t draw_component(const SubsetMixture& mix, std::mt19937_64& gen) {
  const double u = unit_uniform(gen);
  double acc = 0.0;
  const auto& parts = mix.components();
  for (std::size_t c = 0; c < parts.size(); ++c) {
    acc += parts[c].weight;
    if (u < acc) return c;
  }
  return parts.size() - 1;
}

}  // namespace

const char* to_string(Admissibility::Reason reason) {
  switch (reason) {
    case Admissibility::Reason::kAdmissible:
      return "admissible";
    case Admissibility::Reason::kBoundViolation:
      return "bound-violation";
    case Admissibility::Reason::kSumViolation:
      return "sum-violation";
  }
  return "unknown";
}

Admissibility is_admissible(std::span<const double> t, GuessBudget k) {
  Admissibility out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || t[i] < -kAdmissibleTolerance ||
        t[i] > 1.0 + kAdmissibleTolerance) {
      out.reason = Admissibility::Reason::kBoundViolation;
      out.index = i;
      break;
    }
  }
  out.sum = std::accumulate(t.begin(), t.end(), 0.0);
  if (out.admissible() &&
      std::abs(out.sum - static_cast<double>(k.value())) > kAdmissibleTolerance) {
    out.reason = Admissibility::Reason::kSumViolation;
  }
  return out;
}

// ---------------------------------------------------------------------------
// SubsetMixture

SubsetMixture::SubsetMixture(std::size_t symbols,
                             std::vector<Component> components)
    : symbols_(symbols), components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("subset mixture: no components");
  }
  const std::size_t size = components_.front().subset.size();
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.subset.size() != size) {
      throw std::invalid_argument("subset mixture: subsets differ in size");
    }
    if (!(c.weight > 0.0)) {
      throw std::invalid_argument("subset mixture: nonpositive weight");
    }
    auto sorted = c.subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("subset mixture: repeated guess in subset");
    }
    if (!sorted.empty() && sorted.back() >= symbols_) {
      throw std::invalid_argument("subset mixture: symbol index out of range");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw std::invalid_argument("subset mixture: weights do not sum to 1");
  }
}

std::size_t SubsetMixture::subset_size() const {
  return components_.front().subset.size();
}

std::vector<double> SubsetMixture::induced_coverage() const {
  std::vector<double> cov(symbols_, 0.0);
  for (const auto& c : components_) {
    for (std::size_t i : c.subset) cov[i] += c.weight;
  }
  return cov;
}

// ---------------------------------------------------------------------------
// Decomposition

SubsetMixture realize_coverage(std::span<const double> t, GuessBudget k,
                               std::span<const std::size_t> order) {
  const Admissibility check = is_admissible(t, k);
  if (!check) {
    std::string msg = "realize_coverage: coverage is not admissible (";
    msg += to_string(check.reason);
    if (check.index) msg += " at index " + std::to_string(*check.index);
    msg += ")";
    throw DomainError(msg);
  }
  const std::size_t n = t.size();
  const std::size_t budget = k.value();
  std::vector<double> clamped(n);
  for (std::size_t i = 0; i < n; ++i) clamped[i] = std::clamp(t[i], 0.0, 1.0);

  std::vector<std::size_t> layout;
  if (order.empty()) {
    layout.resize(n);
    std::iota(layout.begin(), layout.end(), std::size_t{0});
    std::stable_sort(layout.begin(), layout.end(),
                     [&](std::size_t a, std::size_t b) {
                       return clamped[a] > clamped[b];
                     });
  } else {
    layout.assign(order.begin(), order.end());
  }
  std::erase_if(layout, [&](std::size_t i) { return !(clamped[i] > 0.0); });

  // ends[j] = right end of symbol layout[j]'s interval; the last is pinned to
  // exactly k.
  std::vector<double> ends(layout.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < layout.size(); ++j) {
    acc += clamped[layout[j]];
    ends[j] = acc;
  }
  ends.back() = static_cast<double>(budget);

  std::vector<double> cuts{0.0};
  for (std::size_t j = 0; j + 1 < ends.size(); ++j) {
    double frac = ends[j] - std::floor(ends[j]);
    if (frac > 1.0 - kBreakpointMerge) frac = 0.0;
    cuts.push_back(frac);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts) {
    if (merged.empty() || c - merged.back() > kBreakpointMerge) {
      merged.push_back(c);
    }
  }
  merged.push_back(1.0);

  std::vector<SubsetMixture::Component> parts;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t c = 0; c + 1 < merged.size(); ++c) {
    const double width = merged[c + 1] - merged[c];
    const double u = 0.5 * (merged[c] + merged[c + 1]);
    std::vector<std::size_t> subset;
    subset.reserve(budget);
    for (std::size_t j = 0; j < budget; ++j) {
      const double probe = u + static_cast<double>(j);
      const auto it = std::upper_bound(ends.begin(), ends.end(), probe);
      subset.push_back(layout[static_cast<std::size_t>(it - ends.begin())]);
    }
    if (auto found = seen.find(subset); found != seen.end()) {
      parts[found->second].weight += width;
    } else {
      seen.emplace(subset, parts.size());
      parts.push_back({std::move(subset), width});
    }
  }
  return SubsetMixture(n, std::move(parts));
}

SubsetMixture realize_coverage(const CoverageVector& coverage) {
  return realize_coverage(coverage.t, GuessBudget(coverage.guesses_per_draw()));
}

SubsetMixture realize_coverage(const CoverageVector& coverage, const Pmf& pmf) {
  if (pmf.size() != coverage.t.size()) {
    throw DomainError("realize_coverage: pmf and coverage differ in length");
  }
  std::vector<std::size_t> order(pmf.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pmf[a] > pmf[b]; });
  return realize_coverage(coverage.t, GuessBudget(coverage.guesses_per_draw()),
                          order);
}

// ---------------------------------------------------------------------------
// Sampling and evaluation

std::vector<std::size_t> sample_guesses(const SubsetMixture& mix,
                                        std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return mix.components()[draw_component(mix, gen)].subset;
}

std::vector<std::vector<std::size_t>> sample_guesses(const SubsetMixture& mix,
                                                     std::uint64_t seed,
                                                     std::size_t count) {
  std::mt19937_64 gen(seed);
  std::vector<std::vector<std::size_t>> draws;
  draws.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    draws.push_back(mix.components()[draw_component(mix, gen)].subset);
  }
  return draws;
}

double strategy_loss(const SubsetMixture& mix, const Pmf& pmf, Alpha alpha) {
  if (mix.symbols() > pmf.size()) {
    throw DomainError("strategy_loss: mixture references symbols beyond the pmf");
  }
  std::vector<double> cov = mix.induced_coverage();
  cov.resize(pmf.size(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] > 0.0) {
      loss += pmf[i] * alpha_loss(std::clamp(cov[i], 0.0, 1.0), alpha);
    }
  }
  return loss;
}

}  // namespace guesswork
