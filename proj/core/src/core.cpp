#include "guesswork/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "guesswork/error.hpp"

namespace guesswork {

namespace {

constexpr double kOneSnap = 1e-12;
constexpr double kEntropySlack = 1e-12;

void check_labels(const std::vector<std::string>& labels, std::size_t n,
                  const char* what) {
  if (labels.empty()) return;
  if (labels.size() != n) {
    throw ValidationError(std::string(what) + ": label count " +
                          std::to_string(labels.size()) +
                          " does not match dimension " + std::to_string(n));
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw ValidationError(std::string(what) + ": labels must be distinct");
  }
}

// Validates entries and total mass, then divides through by the sum.
void validate_and_normalize(std::vector<double>& probs, const char* what) {
  if (probs.empty()) {
    throw ValidationError(std::string(what) + ": empty distribution");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p)) {
      throw ValidationError(std::string(what) + ": entry " + std::to_string(i) +
                            " is not finite");
    }
    if (p < 0.0) {
      throw ValidationError(std::string(what) +
                            ": nonnegativity violated at entry " +
                            std::to_string(i));
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(12);
    msg << what << ": entries must sum to 1 within 1e-9 (sum = " << sum << ")";
    throw ValidationError(msg.str());
  }
  for (double& p : probs) p /= sum;
}

// log(sum_i exp(logs_i)) over finite entries.
double log_sum_exp(const std::vector<double>& logs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : logs) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

}  // namespace

// ---------------------------------------------------------------------------
// Alpha

Alpha Alpha::finite(double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValidationError("alpha must be a finite positive number");
  }
  if (std::abs(value - 1.0) <= kOneSnap) {
    throw ValidationError(
        "alpha = 1 must use the exactly-one variant (Alpha::one())");
  }
  return Alpha(Kind::kFinite, value);
}

Alpha Alpha::infinity() {
  return Alpha(Kind::kInfinity, std::numeric_limits<double>::infinity());
}

Alpha Alpha::from_value(double value) {
  if (std::isinf(value) && value > 0) return infinity();
  if (std::abs(value - 1.0) <= kOneSnap) return one();
  return finite(value);
}

Alpha Alpha::parse(std::string_view token) {
  std::string lowered(token);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lowered == "inf" || lowered == "infinity" || lowered == "+inf") {
    return infinity();
  }
  if (lowered == "1") return one();
  double value = 0.0;
  const char* first = lowered.data();
  const char* last = first + lowered.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || lowered.empty()) {
    throw ValidationError("cannot parse alpha token '" + std::string(token) +
                          "'");
  }
  if (!std::isfinite(value)) {
    throw ValidationError("alpha token '" + std::string(token) +
                          "' is not finite; use 'inf'");
  }
  return from_value(value);
}

double Alpha::exponent() const {
  switch (kind_) {
    case Kind::kOne:
      return 0.0;
    case Kind::kInfinity:
      return 1.0;
    case Kind::kFinite:
      break;
  }
  return (value_ - 1.0) / value_;
}

std::string Alpha::to_string() const {
  if (is_infinite()) return "inf";
  if (is_one()) return "1";
  std::ostringstream out;
  out.precision(17);
  out << value_;
  return out.str();
}

// ---------------------------------------------------------------------------
// Pmf

Pmf::Pmf(std::vector<double> probs, std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  validate_and_normalize(probs_, "pmf");
  check_labels(labels_, probs_.size(), "pmf");
}

Pmf Pmf::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("pmf: empty distribution");
  return Pmf(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw ValidationError("pmf: point mass index out of range");
  std::vector<double> probs(n, 0.0);
  probs[at] = 1.0;
  return Pmf(std::move(probs));
}

std::string Pmf::label(std::size_t i) const {
  return labels_.empty() ? std::to_string(i) : labels_[i];
}

std::size_t Pmf::positive_support() const {
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0; }));
}

// ---------------------------------------------------------------------------
// JointPmf

JointPmf::JointPmf(std::size_t rows, std::size_t cols,
                   std::vector<double> row_major,
                   std::vector<std::string> x_labels,
                   std::vector<std::string> y_labels)
    : rows_(rows),
      cols_(cols),
      probs_(std::move(row_major)),
      x_labels_(std::move(x_labels)),
      y_labels_(std::move(y_labels)) {
  if (rows_ == 0 || cols_ == 0 || probs_.size() != rows_ * cols_) {
    throw ValidationError("joint: matrix shape does not match data length");
  }
  validate_and_normalize(probs_, "joint");
  check_labels(x_labels_, rows_, "joint x");
  check_labels(y_labels_, cols_, "joint y");
}

JointPmf JointPmf::from_rows(const std::vector<std::vector<double>>& rows,
                             std::vector<std::string> x_labels,
                             std::vector<std::string> y_labels) {
  if (rows.empty() || rows.front().empty()) {
    throw ValidationError("joint: empty matrix");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw ValidationError("joint: ragged matrix rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return JointPmf(rows.size(), cols, std::move(flat), std::move(x_labels),
                  std::move(y_labels));
}

JointPmf JointPmf::product(const Pmf& px, const Pmf& py) {
  std::vector<double> flat;
  flat.reserve(px.size() * py.size());
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < py.size(); ++y) flat.push_back(px[x] * py[y]);
  }
  return JointPmf(px.size(), py.size(), std::move(flat), px.labels(),
                  py.labels());
}

JointPmf JointPmf::diagonal(const Pmf& pmf) {
  const std::size_t n = pmf.size();
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) flat[i * n + i] = pmf[i];
  return JointPmf(n, n, std::move(flat), pmf.labels(), pmf.labels());
}

Pmf JointPmf::marginal_x() const {
  std::vector<double> px(rows_, 0.0);
  for (std::size_t x = 0; x < rows_; ++x) {
    for (std::size_t y = 0; y < cols_; ++y) px[x] += (*this)(x, y);
  }
  return Pmf(std::move(px), x_labels_);
}

Pmf JointPmf::marginal_y() const {
  std::vector<double> py(cols_, 0.0);
  for (std::size_t y = 0; y < cols_; ++y) py[y] = column_mass(y);
  return Pmf(std::move(py), y_labels_);
}

double JointPmf::column_mass(std::size_t y) const {
  double mass = 0.0;
  for (std::size_t x = 0; x < rows_; ++x) mass += (*this)(x, y);
  return mass;
}

// ---------------------------------------------------------------------------
// Entropy

Entropy::Entropy(double nats) : nats_(nats) {
  if (std::isnan(nats)) throw DomainError("entropy is NaN");
  if (nats < 0.0) {
    if (nats < -kEntropySlack) {
      throw DomainError("entropy is negative beyond round-off");
    }
    nats_ = 0.0;
  }
}

double Entropy::bits() const { return nats_ / std::numbers::ln2; }

// ---------------------------------------------------------------------------
// Functionals

double alpha_loss(double p, Alpha alpha) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("alpha_loss: probability outside [0, 1]");
  }
  switch (alpha.kind()) {
    case Alpha::Kind::kInfinity:
      return 1.0 - p;
    case Alpha::Kind::kOne:
      return p == 0.0 ? std::numeric_limits<double>::infinity() : -std::log(p);
    case Alpha::Kind::kFinite:
      break;
  }
  const double a = alpha.value();
  if (p == 0.0) {
    return a < 1.0 ? std::numeric_limits<double>::infinity() : a / (a - 1.0);
  }
  // 1 - p^e == -expm1(e ln p).
  const double e = alpha.exponent();
  return -(a / (a - 1.0)) * std::expm1(e * std::log(p));
}

Pmf tilted(const Pmf& pmf, Alpha alpha) {
  if (alpha.is_one()) return pmf;
  const auto probs = pmf.probs();
  const double hi = *std::max_element(probs.begin(), probs.end());
  std::vector<double> out(probs.size(), 0.0);
  if (alpha.is_infinite()) {
    const auto ties =
        static_cast<double>(std::count(probs.begin(), probs.end(), hi));
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] == hi) out[i] = 1.0 / ties;
    }
    return Pmf(std::move(out), pmf.labels());
  }
  // Scaled by the maximum before powering.
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      out[i] = std::pow(probs[i] / hi, alpha.value());
      sum += out[i];
    }
  }
  for (double& v : out) v /= sum;
  return Pmf(std::move(out), pmf.labels());
}

Entropy shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return Entropy(h);
}

Entropy renyi_entropy(const Pmf& pmf, Alpha alpha) {
  const auto probs = pmf.probs();
  if (alpha.is_one()) return shannon_entropy(probs);
  const double hi = *std::max_element(probs.begin(), probs.end());
  if (alpha.is_infinite()) return Entropy(-std::log(hi));
  const double a = alpha.value();
  std::vector<double> logs;
  logs.reserve(probs.size());
  for (double p : probs) {
    if (p > 0.0) logs.push_back(a * std::log(p));
  }
  return Entropy(log_sum_exp(logs) / (1.0 - a));
}

Entropy arimoto_conditional_entropy(const JointPmf& joint, Alpha alpha) {
  if (!alpha.is_generic()) {
    throw DomainError(
        "arimoto_conditional_entropy: defined for finite alpha != 1 only");
  }
  const double a = alpha.value();
  // ln sum_y exp( (1/a) * ln sum_x P(x,y)^a )
  std::vector<double> column_terms;
  column_terms.reserve(joint.cols());
  std::vector<double> logs;
  for (std::size_t y = 0; y < joint.cols(); ++y) {
    logs.clear();
    for (std::size_t x = 0; x < joint.rows(); ++x) {
      const double p = joint(x, y);
      if (p > 0.0) logs.push_back(a * std::log(p));
    }
    if (!logs.empty()) column_terms.push_back(log_sum_exp(logs) / a);
  }
  return Entropy(a / (1.0 - a) * log_sum_exp(column_terms));
}

Pmf conditional_pmf(const JointPmf& joint, std::size_t y_index) {
  if (y_index >= joint.cols()) {
    throw DomainError("conditional_pmf: column index out of range");
  }
  const double mass = joint.column_mass(y_index);
  if (!(mass > 0.0)) {
    throw DomainError("conditional_pmf: column " + std::to_string(y_index) +
                      " has zero marginal mass");
  }
  std::vector<double> column(joint.rows());
  for (std::size_t x = 0; x < joint.rows(); ++x) {
    column[x] = joint(x, y_index) / mass;
  }
  return Pmf(std::move(column), joint.x_labels());
}

}  // namespace guesswork
