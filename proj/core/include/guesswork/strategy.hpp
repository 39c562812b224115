#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "guesswork/core.hpp"
#include "guesswork/guessing.hpp"

namespace guesswork {

struct Admissibility {
  enum class Reason { kAdmissible, kBoundViolation, kSumViolation };

  Reason reason = Reason::kAdmissible;
  // Offending coordinate for kBoundViolation.
  std::optional<std::size_t> index;
  double sum = 0.0;

  bool admissible() const { return reason == Reason::kAdmissible; }
  explicit operator bool() const { return admissible(); }
};

const char* to_string(Admissibility::Reason reason);

// Bounds are checked before the sum; both use an absolute tolerance of 1e-9.
Admissibility is_admissible(std::span<const double> t, GuessBudget k);

// A distribution over guess sets of equal size. Each subset lists distinct
// symbol indices in guessing order.
class SubsetMixture {
 public:
  struct Component {
    std::vector<std::size_t> subset;
    double weight = 0.0;
  };

  // Throws std::invalid_argument if a component has a repeated symbol,
  // subset sizes differ, a weight is nonpositive, or weights do not sum to 1.
  SubsetMixture(std::size_t symbols, std::vector<Component> components);

  std::size_t symbols() const { return symbols_; }
  std::size_t subset_size() const;
  const std::vector<Component>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

  // Sum of weights of the components containing each symbol.
  std::vector<double> induced_coverage() const;

 private:
  std::size_t symbols_;
  std::vector<Component> components_;
};

// Systematic-sampling decomposition of an admissible coverage vector into at
// most n weighted subsets. Symbols with t_i = 0 never appear.
//
// Symbols are laid out on [0, k) in guessing order, symbol i occupying an
// interval of length t_i. An offset u in [0, 1) selects the k symbols whose
// intervals contain u, u + 1, ..., u + k - 1. The selection only changes at
// the fractional parts of the cumulative sums, so the cells between those
// breakpoints are the mixture components. Guessing order defaults to
// decreasing t (ties by index); passing the pmf orders by decreasing p.
//
// DomainError when t is not admissible for its guess-set size.
SubsetMixture realize_coverage(const CoverageVector& coverage);
SubsetMixture realize_coverage(const CoverageVector& coverage, const Pmf& pmf);
SubsetMixture realize_coverage(std::span<const double> t, GuessBudget k,
                               std::span<const std::size_t> order = {});

// Draws one component by weight from a generator seeded with `seed`.
std::vector<std::size_t> sample_guesses(const SubsetMixture& mix,
                                        std::uint64_t seed);

// Draws `count` guess lists from a single generator stream.
std::vector<std::vector<std::size_t>> sample_guesses(const SubsetMixture& mix,
                                                     std::uint64_t seed,
                                                     std::size_t count);

// Expected alpha-loss of playing `mix` against `pmf`.
double strategy_loss(const SubsetMixture& mix, const Pmf& pmf, Alpha alpha);

}  // namespace guesswork
