#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace guesswork {

inline constexpr double kSumTolerance = 1e-9;

// Loss order in (0, inf]. The orders 1 (log-loss) and infinity (0-1 loss) are
// separate variants.
class Alpha {
 public:
  enum class Kind { kFinite, kOne, kInfinity };

  // Throws ValidationError for value <= 0, non-finite values, and values
  // within 1e-12 of 1 (use one()).
  static Alpha finite(double value);
  static Alpha one() { return Alpha(Kind::kOne, 1.0); }
  static Alpha infinity();
  // Accepts any positive double; snaps |value - 1| <= 1e-12 to one() and
  // +inf to infinity().
  static Alpha from_value(double value);
  // Token grammar: decimal literal, "1", or "inf" (case-insensitive).
  static Alpha parse(std::string_view token);

  Kind kind() const { return kind_; }
  bool is_one() const { return kind_ == Kind::kOne; }
  bool is_infinite() const { return kind_ == Kind::kInfinity; }
  bool is_generic() const { return kind_ == Kind::kFinite; }
  // 1.0 for one(), +inf for infinity().
  double value() const { return value_; }
  // (alpha - 1) / alpha, the exponent applied to success probabilities.
  double exponent() const;

  std::string to_string() const;

  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  Alpha(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

// Finite probability vector with optional symbol labels. Construction
// validates (entries >= 0, sum within 1e-9 of 1, distinct labels) and then
// renormalizes by the sum.
class Pmf {
 public:
  explicit Pmf(std::vector<double> probs,
               std::vector<std::string> labels = {});

  static Pmf uniform(std::size_t n);
  static Pmf point_mass(std::size_t n, std::size_t at);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }
  std::string label(std::size_t i) const;
  std::size_t positive_support() const;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

// n x m joint distribution P_XY, rows indexed by x and columns by y.
class JointPmf {
 public:
  JointPmf(std::size_t rows, std::size_t cols, std::vector<double> row_major,
           std::vector<std::string> x_labels = {},
           std::vector<std::string> y_labels = {});
  static JointPmf from_rows(const std::vector<std::vector<double>>& rows,
                            std::vector<std::string> x_labels = {},
                            std::vector<std::string> y_labels = {});
  static JointPmf product(const Pmf& px, const Pmf& py);
  // P(x = i, y = i) = pmf[i].
  static JointPmf diagonal(const Pmf& pmf);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t x, std::size_t y) const {
    return probs_[x * cols_ + y];
  }
  std::span<const double> data() const { return probs_; }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }

  Pmf marginal_x() const;
  Pmf marginal_y() const;
  double column_mass(std::size_t y) const;

  friend bool operator==(const JointPmf&, const JointPmf&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> probs_;
  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
};

// Entropy in nats; tiny negative round-off is clamped to zero.
class Entropy {
 public:
  explicit Entropy(double nats);
  double nats() const { return nats_; }
  double bits() const;

 private:
  double nats_;
};

// alpha/(alpha-1) * (1 - p^((alpha-1)/alpha)), with -ln p at alpha = 1 and
// 1 - p at alpha = infinity. +inf at p = 0 when alpha <= 1.
double alpha_loss(double p, Alpha alpha);

// Normalized alpha-th power. At infinity: uniform over the argmax set.
Pmf tilted(const Pmf& pmf, Alpha alpha);

Entropy renyi_entropy(const Pmf& pmf, Alpha alpha);
Entropy shannon_entropy(std::span<const double> probs);

// Defined for generic finite alpha only; DomainError at 1 and infinity.
Entropy arimoto_conditional_entropy(const JointPmf& joint, Alpha alpha);

// P_{X|Y=y}. DomainError when P_Y(y) = 0.
Pmf conditional_pmf(const JointPmf& joint, std::size_t y_index);

}  // namespace guesswork
