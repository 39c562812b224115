#include "guesswork/leakage.hpp"

#include <cmath>
#include <limits>

#include "guesswork/error.hpp"

namespace guesswork {

namespace {

constexpr double kRobustSlack = 1e-12;
constexpr double kLeakageClamp = 1e-9;

void require_leakage_order(Alpha alpha, const char* where) {
  if (!alpha.is_generic()) {
    throw DomainError(std::string(where) +
                      ": alpha-leakage is defined for finite alpha != 1 only");
  }
}

}  // namespace

double max_expectation(const Pmf& pmf, GuessBudget k, Alpha alpha) {
  require_leakage_order(alpha, "max_expectation");
  return 1.0 - alpha.exponent() * minimal_loss(pmf, k, alpha).value;
}

RobustnessCheck robustness_condition(const JointPmf& joint, GuessBudget k,
                                     Alpha alpha) {
  RobustnessCheck check;
  check.threshold = 1.0 / static_cast<double>(k.value());
  check.worst.tilted_mass = -1.0;

  const Pmf marginal = tilted(joint.marginal_x(), alpha);
  for (std::size_t x = 0; x < marginal.size(); ++x) {
    if (marginal[x] > check.worst.tilted_mass) {
      check.worst = {TiltedOffender::Source::kMarginal, x, std::nullopt,
                     marginal[x]};
    }
  }
  for (std::size_t y = 0; y < joint.cols(); ++y) {
    if (!(joint.column_mass(y) > 0.0)) continue;
    const Pmf cond = tilted(conditional_pmf(joint, y), alpha);
    for (std::size_t x = 0; x < cond.size(); ++x) {
      if (cond[x] > check.worst.tilted_mass) {
        check.worst = {TiltedOffender::Source::kConditional, x, y, cond[x]};
      }
    }
  }
  check.robust = check.worst.tilted_mass <= check.threshold + kRobustSlack;
  return check;
}

LeakageReport alpha_leakage(const JointPmf& joint, GuessBudget k, Alpha alpha) {
  require_leakage_order(alpha, "alpha_leakage");
  LeakageReport report;
  report.k = k;
  report.alpha = alpha;

  double numerator = 0.0;
  for (std::size_t y = 0; y < joint.cols(); ++y) {
    const double mass = joint.column_mass(y);
    if (!(mass > 0.0)) continue;
    numerator += mass * max_expectation(conditional_pmf(joint, y), k, alpha);
  }
  const double denominator = max_expectation(joint.marginal_x(), k, alpha);
  report.numerator_exponent = std::log(numerator);
  report.denominator_exponent = std::log(denominator);

  const double a = alpha.value();
  double value =
      a / (a - 1.0) * (report.numerator_exponent - report.denominator_exponent);
  const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() *
                          std::abs(a / (a - 1.0)) *
                          std::max(1.0, std::abs(report.numerator_exponent) +
                                            std::abs(report.denominator_exponent));
  if ((value < 0.0 && value >= -kLeakageClamp) || std::abs(value) <= roundoff) value = 0.0;
  report.value = value;

  report.robustness = robustness_condition(joint, k, alpha);
  report.robust = report.robustness.robust;
  return report;
}

}  // namespace guesswork
