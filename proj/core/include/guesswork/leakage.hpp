#pragma once

#include <cstddef>
#include <optional>

#include "guesswork/core.hpp"
#include "guesswork/guessing.hpp"

namespace guesswork {

// Where the largest tilted entry was found.
struct TiltedOffender {
  enum class Source { kConditional, kMarginal };
  Source source = Source::kMarginal;
  std::size_t x = 0;
  // Set for kConditional.
  std::optional<std::size_t> y;
  double tilted_mass = 0.0;
};

struct RobustnessCheck {
  bool robust = false;
  double threshold = 0.0;  // 1/k
  TiltedOffender worst;
};

struct LeakageReport {
  double value = 0.0;  // nats
  GuessBudget k{1};
  Alpha alpha = Alpha::one();
  double numerator_exponent = 0.0;    // ln N
  double denominator_exponent = 0.0;  // ln D
  bool robust = false;
  RobustnessCheck robustness;
};

// E[P(hit)^((alpha-1)/alpha)] at the loss-optimal k-guess strategy, i.e.
// 1 - ((alpha-1)/alpha) * minimal_loss. DomainError at alpha in {1, inf}.
double max_expectation(const Pmf& pmf, GuessBudget k, Alpha alpha);

// (alpha/(alpha-1)) ln(N / D) with N the P_Y-average of max_expectation over
// the conditionals and D = max_expectation(P_X). Clamped to 0 within 1e-9.
LeakageReport alpha_leakage(const JointPmf& joint, GuessBudget k, Alpha alpha);

// Every tilted conditional entry and every tilted marginal entry is at most
// 1/k (+1e-12). Zero-mass columns are skipped.
RobustnessCheck robustness_condition(const JointPmf& joint, GuessBudget k,
                                     Alpha alpha);

}  // namespace guesswork
