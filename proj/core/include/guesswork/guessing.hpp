#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "guesswork/core.hpp"

namespace guesswork {

// Number of guesses the adversary may make; always >= 1.
class GuessBudget {
 public:
  explicit GuessBudget(std::size_t k);
  std::size_t value() const { return k_; }
  friend bool operator==(const GuessBudget&, const GuessBudget&) = default;

 private:
  std::size_t k_;
};

// Positive-probability atoms sorted nonincreasing. Ties keep ascending
// original index. perm[r] is the original index of sorted rank r.
struct SortedPmf {
  std::vector<double> probs;
  std::vector<std::size_t> perm;
  std::size_t original_size = 0;
  std::size_t zero_count = 0;

  static SortedPmf from(const Pmf& pmf);
  std::size_t size() const { return probs.size(); }
};

// Per-symbol probability that the symbol is among the k guesses, in the
// original index order of the pmf it was computed for.
struct CoverageVector {
  std::vector<double> t;
  GuessBudget k{1};

  // Size of each guess set realizing t: min(k, positive support).
  std::size_t guesses_per_draw() const;
  double sum() const;
};

struct LossReport {
  double value = 0.0;
  // 1-based sorted rank: ranks < s_star are always guessed.
  std::size_t s_star = 1;
  CoverageVector coverage;
  Alpha alpha = Alpha::one();
  // Water level of the reduced KKT system t_i = min((p_i / lambda)^alpha, 1).
  double lambda = 0.0;
};

// Least r in [1, k] with (k - r + 1) p_r^alpha <= sum_{i >= r} p_i^alpha.
// Returns k at infinity. DomainError when k >= the positive support.
std::size_t s_star(const SortedPmf& sorted, GuessBudget k, Alpha alpha);

LossReport minimal_loss(const Pmf& pmf, GuessBudget k, Alpha alpha);

CoverageVector optimal_coverage(const Pmf& pmf, GuessBudget k, Alpha alpha);

struct ConditionalLoss {
  double value = 0.0;
  // Indexed by y; empty for zero-mass columns.
  std::vector<std::optional<LossReport>> per_y;
};

ConditionalLoss minimal_loss_conditional(const JointPmf& joint, GuessBudget k,
                                         Alpha alpha);

}  // namespace guesswork
