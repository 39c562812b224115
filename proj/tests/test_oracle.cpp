#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <optional>

#include <gmpxx.h>

#include "guesswork/error.hpp"
#include "guesswork/guessing.hpp"
#include "guesswork/oracle.hpp"
#include "guesswork/strategy.hpp"
#include "test_support.hpp"

using namespace guesswork;
using namespace guesswork::oracle;
using guesswork::testing::Rng;

namespace {

// Checks y^T a >= 0 for every k-subset column and y^T b < 0 with exact
// rationals, independently of the certificate's own verification flag.
bool check_farkas(const FarkasCertificate& cert, const std::vector<double>& t, std::size_t k) {
  const std::size_t n = t.size();
  if (cert.y.size() != n + 1) return false;
  std::vector<mpq_class> y;
  for (const auto& s : cert.y) {
    mpq_class q(s);
    q.canonicalize();
    y.push_back(q);
  }
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    mpq_class acc = y[n];
    for (std::size_t i = 0; i < n; ++i) {
      if (mask[i]) acc += y[i];
    }
    if (acc < 0) return false;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  mpq_class rhs = y[n];
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class ti(static_cast<long>(std::llround(t[i] * 4.0)), 4);
    rhs += y[i] * ti;
  }
  return rhs < 0;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("capped simplex domain") {
  CHECK_THROWS_AS(CappedSimplex(3, 0.0), ValidationError);
  CHECK_THROWS_AS(CappedSimplex(3, 4.0), ValidationError);
  CHECK_NOTHROW(CappedSimplex(3, 3.0));
}

TEST_CASE("projection worked values") {
  const CappedSimplex d(3, 2);
  const std::vector<double> feasible{0.9, 0.5, 0.6};
  const auto same = project_capped_simplex(feasible, d);
  CHECK(guesswork::testing::max_abs_diff(same, feasible) <= 1e-12);
  const auto corner = project_capped_simplex(std::vector<double>{2, 2, -1}, d);
  CHECK(corner == std::vector<double>{1.0, 1.0, 0.0});
  const auto inner = project_capped_simplex(std::vector<double>{1, 0.5, 0.5}, d);
  CHECK(guesswork::testing::max_abs_diff(inner, {1, 0.5, 0.5}) <= 1e-12);
}

TEST_CASE("projection satisfies the clip characterization") {
  Rng rng(59);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = rng.index(1, 15);
    const double k = static_cast<double>(rng.index(1, n));
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-3.0, 3.0);
    const auto t = project_capped_simplex(v, CappedSimplex(n, k));
    double sum = 0.0;
    for (double x : t) sum += x;
    CHECK(std::abs(sum - k) <= 1e-10);
    // A single shift lambda explains every free coordinate; clipped
    // coordinates sit on the correct side of it.
    std::optional<double> lambda;
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i] <= 1e-12 || t[i] >= 1 - 1e-12) continue;
      if (!lambda) lambda = v[i] - t[i];
      CHECK(std::abs(v[i] - t[i] - *lambda) <= 1e-9);
    }
    if (lambda) {
      for (std::size_t i = 0; i < n; ++i) {
        if (t[i] == 0.0) CHECK(v[i] <= *lambda + 1e-9);
        if (t[i] == 1.0) CHECK(v[i] >= *lambda + 1 - 1e-9);
      }
    }
    // Optimality against random feasible points.
    const auto other = guesswork::testing::random_admissible(rng, n, static_cast<std::size_t>(k));
    double dt = 0.0, dother = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dt += (t[i] - v[i]) * (t[i] - v[i]);
      dother += (other[i] - v[i]) * (other[i] - v[i]);
    }
    CHECK(dt <= dother + 1e-9);
  }
}

TEST_CASE("weighted box projection") {
  const std::vector<double> v{3, 0, 0};
  const std::vector<double> w{1, 2, 2};
  const auto t = project_capped_box(v, w, 0.0, 1.0, 2.0);
  CHECK(t[0] == doctest::Approx(1.0));
  CHECK(t[1] == doctest::Approx(0.5));
  CHECK(t[2] == doctest::Approx(0.5));
  CHECK_THROWS(project_capped_box(v, std::vector<double>{1, 0, 1}, 0.0, 1.0, 2.0));
}

TEST_CASE("descent worked values") {
  const auto u = minimize_expected_loss(Pmf::uniform(4), GuessBudget(2), Alpha::finite(2.0), 1e-8);
  CHECK(u.value == doctest::Approx(2 * (1 - std::sqrt(0.5))).epsilon(1e-8));
  for (double t : u.t) CHECK(t == doctest::Approx(0.5).epsilon(1e-6));

  const auto r = minimize_expected_loss(Pmf({0.7, 0.2, 0.1}), GuessBudget(2), Alpha::finite(2.0),
                                        1e-8);
  CHECK(r.value == doctest::Approx(0.152786404500042).epsilon(1e-8));
  CHECK(guesswork::testing::max_abs_diff(r.t, {1.0, 0.8, 0.2}) <= 1e-4);
  CHECK(r.gap <= 1e-8);

  const auto h = minimize_expected_loss(Pmf::uniform(2), GuessBudget(1), Alpha::finite(0.5), 1e-8);
  CHECK(h.value == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(minimize_expected_loss(Pmf::uniform(4), GuessBudget(4), Alpha::one(), 1e-8),
                  DomainError);
  CHECK_THROWS_AS(minimize_expected_loss(Pmf::uniform(4), GuessBudget(1), Alpha::one(), 0.0),
                  ValidationError);
  CHECK_THROWS_AS(minimize_expected_loss(Pmf({0.7, 0.2, 0.1}), GuessBudget(2), Alpha::finite(2.0),
                                         1e-14, DescentOptions{.max_iterations = 2}),
                  ConvergenceError);
}

TEST_CASE("descent handles the special orders and zero atoms") {
  const Pmf p({0.45, 0.0, 0.3, 0.25});
  for (Alpha a : {Alpha::one(), Alpha::infinity(), Alpha::finite(0.3), Alpha::finite(20.0)}) {
    const auto d = minimize_expected_loss(p, GuessBudget(2), a, 1e-10);
    const auto r = minimal_loss(p, GuessBudget(2), a);
    CHECK(d.value == doctest::Approx(r.value).epsilon(1e-6));
    CHECK(d.t[1] == 0.0);
  }
}

TEST_CASE("lp feasibility worked values") {
  const auto ok = lp_feasibility(std::vector<double>{1, 0.5, 0.5}, GuessBudget(2));
  CHECK(ok.feasible);
  CHECK_FALSE(ok.certificate.has_value());
  double total = 0.0;
  for (const auto& [subset, w] : ok.witness) {
    CHECK(subset.size() == 2);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0));

  const std::vector<double> bad{1.1, 0.5, 0.4};
  const auto no = lp_feasibility(bad, GuessBudget(2));
  CHECK_FALSE(no.feasible);
  REQUIRE(no.certificate.has_value());
  CHECK(no.certificate->verified);

  CHECK_FALSE(lp_feasible(std::vector<double>{0.6, 0.6, 0.6}, GuessBudget(2)));
  CHECK(lp_feasible(std::vector<double>{1, 1, 0}, GuessBudget(2)));
  CHECK_THROWS_AS(lp_feasible(std::vector<double>(21, 0.5), GuessBudget(2)), DomainError);
  CHECK_THROWS_AS(lp_feasible(std::vector<double>(20, 0.5), GuessBudget(10)), DomainError);
}

TEST_CASE("lp agrees with admissibility on the three-symbol grid") {
  const double grid[] = {0, 0.25, 0.5, 0.75, 1};
  int points = 0;
  for (double a : grid) {
    for (double b : grid) {
      for (double c : grid) {
        if (a + b + c != 2.0) continue;
        ++points;
        const std::vector<double> t{a, b, c};
        CHECK(lp_feasible(t, GuessBudget(2)) == is_admissible(t, GuessBudget(2)).admissible());
      }
    }
  }
  CHECK(points > 0);
}

TEST_CASE("farkas certificates separate infeasible points") {
  const double grid[] = {-0.5, -0.25, 0, 0.5, 1, 1.25, 1.5};
  for (double a : grid) {
    for (double b : grid) {
      for (double c : grid) {
        for (std::size_t k : {1u, 2u}) {
          const std::vector<double> t{a, b, c};
          const auto r = lp_feasibility(t, GuessBudget(k));
          CHECK(r.feasible == is_admissible(t, GuessBudget(k)).admissible());
          if (!r.feasible) {
            REQUIRE(r.certificate.has_value());
            CHECK(r.certificate->verified);
            CHECK(check_farkas(*r.certificate, t, k));
          }
        }
      }
    }
  }
}

}  // TEST_SUITE
