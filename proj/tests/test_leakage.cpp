#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "guesswork/error.hpp"
#include "guesswork/leakage.hpp"
#include "test_support.hpp"

using namespace guesswork;
using guesswork::testing::Rng;

namespace {

JointPmf permute_rows(const JointPmf& j, const std::vector<std::size_t>& perm) {
  std::vector<std::vector<double>> rows(j.rows(), std::vector<double>(j.cols()));
  for (std::size_t x = 0; x < j.rows(); ++x) {
    for (std::size_t y = 0; y < j.cols(); ++y) rows[x][y] = j(perm[x], y);
  }
  return JointPmf::from_rows(rows);
}

JointPmf permute_cols(const JointPmf& j, const std::vector<std::size_t>& perm) {
  std::vector<std::vector<double>> rows(j.rows(), std::vector<double>(j.cols()));
  for (std::size_t x = 0; x < j.rows(); ++x) {
    for (std::size_t y = 0; y < j.cols(); ++y) rows[x][y] = j(x, perm[y]);
  }
  return JointPmf::from_rows(rows);
}

}  // namespace

TEST_SUITE("leakage") {

TEST_CASE("max_expectation worked values") {
  for (double a : {0.5, 2.0, 7.0}) {
    CHECK(max_expectation(Pmf::point_mass(4, 1), GuessBudget(1), Alpha::finite(a)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t n : {3u, 6u}) {
      for (std::size_t k = 1; k < n; ++k) {
        CHECK(max_expectation(Pmf::uniform(n), GuessBudget(k), Alpha::finite(a)) ==
              doctest::Approx(std::pow(double(k) / double(n), (a - 1) / a)).epsilon(1e-12));
      }
    }
  }
  CHECK(max_expectation(Pmf({0.7, 0.2, 0.1}), GuessBudget(2), Alpha::finite(2.0)) ==
        doctest::Approx(0.923606797749979).epsilon(1e-13));
  CHECK_THROWS_AS(max_expectation(Pmf::uniform(3), GuessBudget(1), Alpha::one()), DomainError);
  CHECK_THROWS_AS(max_expectation(Pmf::uniform(3), GuessBudget(1), Alpha::infinity()),
                  DomainError);
}

TEST_CASE("alpha_leakage worked values") {
  const auto product = JointPmf::product(Pmf({0.7, 0.2, 0.1}), Pmf({0.4, 0.6}));
  for (std::size_t k : {1u, 2u}) {
    CHECK(alpha_leakage(product, GuessBudget(k), Alpha::finite(2.0)).value == 0.0);
  }
  for (std::size_t n : {2u, 4u, 9u}) {
    const auto r = alpha_leakage(JointPmf::diagonal(Pmf::uniform(n)), GuessBudget(1),
                                 Alpha::finite(2.0));
    CHECK(r.value == doctest::Approx(std::log(double(n))).epsilon(1e-12));
    CHECK(r.numerator_exponent == doctest::Approx(0.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(alpha_leakage(product, GuessBudget(1), Alpha::one()), DomainError);
}

TEST_CASE("robustness worked values") {
  const auto uniform = JointPmf::product(Pmf::uniform(4), Pmf::uniform(3));
  for (double a : {0.5, 2.0, 9.0}) {
    const auto r = robustness_condition(uniform, GuessBudget(3), Alpha::finite(a));
    CHECK(r.robust);
    CHECK(r.threshold == doctest::Approx(1.0 / 3));
    CHECK(r.worst.tilted_mass == doctest::Approx(0.25));
  }

  const auto diag = robustness_condition(JointPmf::diagonal(Pmf::uniform(3)), GuessBudget(2),
                                         Alpha::finite(2.0));
  CHECK_FALSE(diag.robust);
  CHECK(diag.worst.source == TiltedOffender::Source::kConditional);
  CHECK(diag.worst.tilted_mass == doctest::Approx(1.0));
  REQUIRE(diag.worst.y.has_value());
  CHECK(diag.worst.x == *diag.worst.y);

  const auto j = JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}});
  const auto r = robustness_condition(j, GuessBudget(2), Alpha::finite(2.0));
  CHECK_FALSE(r.robust);
  CHECK(r.worst.tilted_mass == doctest::Approx(0.64 / 0.68).epsilon(1e-13));
  CHECK(r.worst.source == TiltedOffender::Source::kConditional);
  CHECK(r.worst.x == *r.worst.y);
}

TEST_CASE("k = 1 leakage is the entropy difference") {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const JointPmf j = guesswork::testing::random_joint(rng, rng.index(2, 7), rng.index(1, 5));
    const Alpha a = Alpha::finite(trial % 2 ? rng.uniform(0.2, 0.95) : rng.uniform(1.05, 10.0));
    const double expected = renyi_entropy(j.marginal_x(), a).nats() -
                            arimoto_conditional_entropy(j, a).nats();
    CHECK(std::abs(alpha_leakage(j, GuessBudget(1), a).value - expected) <= 1e-9);
  }
}

TEST_CASE("leakage is nonnegative and permutation invariant") {
  Rng rng(47);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = rng.index(2, 7);
    const std::size_t cols = rng.index(1, 5);
    const JointPmf j = guesswork::testing::random_joint(rng, rows, cols, 0.6);
    const GuessBudget k(rng.index(1, rows - 1));
    const Alpha a = Alpha::finite(trial % 2 ? rng.uniform(0.2, 0.95) : rng.uniform(1.05, 10.0));
    const auto r = alpha_leakage(j, k, a);
    CHECK(r.value >= -1e-9);

    std::vector<std::size_t> px(rows), py(cols);
    std::iota(px.begin(), px.end(), std::size_t{0});
    std::iota(py.begin(), py.end(), std::size_t{0});
    std::shuffle(px.begin(), px.end(), rng.engine());
    std::shuffle(py.begin(), py.end(), rng.engine());
    CHECK(alpha_leakage(permute_rows(j, px), k, a).value == doctest::Approx(r.value).epsilon(1e-10));
    CHECK(alpha_leakage(permute_cols(j, py), k, a).value == doctest::Approx(r.value).epsilon(1e-10));
  }
}

TEST_CASE("robust joints leak the same for every budget") {
  Rng rng(53);
  int robust = 0;
  for (int trial = 0; trial < 2000 && robust < 100; ++trial) {
    const JointPmf j = guesswork::testing::random_joint(rng, rng.index(6, 10), rng.index(1, 4), 30.0);
    const Alpha a = Alpha::finite(rng.uniform(0.3, 3.0));
    for (std::size_t k : {2u, 3u}) {
      if (!robustness_condition(j, GuessBudget(k), a).robust) continue;
      ++robust;
      const double lk = alpha_leakage(j, GuessBudget(k), a).value;
      const double l1 = alpha_leakage(j, GuessBudget(1), a).value;
      CHECK(std::abs(lk - l1) <= 1e-9);
    }
  }
  CHECK(robust >= 100);
}

TEST_CASE("zero-mass columns are skipped") {
  const auto j = JointPmf::from_rows({{0.3, 0.0, 0.2}, {0.2, 0.0, 0.3}});
  const auto dense = JointPmf::from_rows({{0.3, 0.2}, {0.2, 0.3}});
  CHECK(alpha_leakage(j, GuessBudget(1), Alpha::finite(2.0)).value ==
        doctest::Approx(alpha_leakage(dense, GuessBudget(1), Alpha::finite(2.0)).value));
  CHECK(robustness_condition(j, GuessBudget(1), Alpha::finite(2.0)).robust);
}

}  // TEST_SUITE
