#include <doctest.h>

#include <cmath>
#include <limits>

#include "guesswork/core.hpp"
#include "guesswork/error.hpp"
#include "test_support.hpp"

using namespace guesswork;
using guesswork::testing::Rng;

TEST_SUITE("core") {

TEST_CASE("alpha variants and token parsing") {
  CHECK(Alpha::parse("inf").is_infinite());
  CHECK(Alpha::parse("INF").is_infinite());
  CHECK(Alpha::parse("1").is_one());
  CHECK(Alpha::parse("1.0").is_one());
  CHECK(Alpha::parse("0.5").is_generic());
  CHECK(Alpha::parse("0.5").value() == 0.5);
  CHECK(Alpha::from_value(1.0 + 1e-13).is_one());
  CHECK(Alpha::from_value(1.0 + 1e-7).is_generic());
  CHECK_THROWS_AS(Alpha::finite(1.0), ValidationError);
  CHECK_THROWS_AS(Alpha::finite(0.0), ValidationError);
  CHECK_THROWS_AS(Alpha::finite(-2.0), ValidationError);
  CHECK_THROWS_AS(Alpha::parse("abc"), ValidationError);
  CHECK_THROWS_AS(Alpha::parse(""), ValidationError);
  CHECK_THROWS_AS(Alpha::parse("nan"), ValidationError);
  CHECK(Alpha::finite(2.0).exponent() == doctest::Approx(0.5));
}

TEST_CASE("pmf validation and renormalization") {
  CHECK_THROWS_AS(Pmf({0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(Pmf({1.2, -0.2}), ValidationError);
  CHECK_THROWS_AS(Pmf({}), ValidationError);
  CHECK_THROWS_AS(Pmf({0.5, 0.5}, {"a", "a"}), ValidationError);
  CHECK_THROWS_AS(Pmf({0.5, 0.5}, {"a"}), ValidationError);
  try {
    Pmf({0.3, 0.6});
    FAIL("expected a sum violation");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("sum to 1") != std::string::npos);
  }
  const Pmf p({0.5 + 4e-10, 0.5});
  CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(Pmf({0.0, 1.0, 0.0}).positive_support() == 1);
}

TEST_CASE("joint pmf shape checks and marginals") {
  CHECK_THROWS_AS(JointPmf(2, 2, {0.5, 0.5}), ValidationError);
  CHECK_THROWS_AS(JointPmf::from_rows({{0.5, 0.2}, {0.3}}), ValidationError);
  CHECK_THROWS_AS(JointPmf::from_rows({{0.5, 0.5}}, {"x0", "x1"}), ValidationError);
  const auto j = JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}});
  CHECK(j.marginal_x()[0] == doctest::Approx(0.5));
  CHECK(j.marginal_y()[1] == doctest::Approx(0.5));
}

TEST_CASE("alpha_loss worked values") {
  CHECK(alpha_loss(0.3, Alpha::infinity()) == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(alpha_loss(1.0, Alpha::one()) == 0.0);
  CHECK(alpha_loss(0.25, Alpha::finite(0.5)) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(std::isinf(alpha_loss(0.0, Alpha::one())));
  CHECK(std::isinf(alpha_loss(0.0, Alpha::finite(0.5))));
  CHECK(alpha_loss(0.0, Alpha::finite(2.0)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(alpha_loss(1.5, Alpha::one()), DomainError);
  CHECK_THROWS_AS(alpha_loss(-0.1, Alpha::finite(2.0)), DomainError);
}

TEST_CASE("alpha_loss is monotone and continuous at the special orders") {
  for (double a : {0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 5.0, 20.0, 1e300}) {
    const Alpha alpha = Alpha::from_value(a == 1e300 ? std::numeric_limits<double>::infinity() : a);
    double prev = alpha_loss(0.0, alpha);
    for (int i = 1; i <= 200; ++i) {
      const double cur = alpha_loss(i / 200.0, alpha);
      CHECK(cur < prev);
      prev = cur;
    }
  }
  for (int i = 1; i <= 100; ++i) {
    const double p = 0.01 * i;
    const double at_one = alpha_loss(p, Alpha::one());
    CHECK(std::abs(alpha_loss(p, Alpha::finite(1 + 1e-7)) - at_one) <= 1e-5);
    CHECK(std::abs(alpha_loss(p, Alpha::finite(1 - 1e-7)) - at_one) <= 1e-5);
    CHECK(std::abs(alpha_loss(p, Alpha::finite(1e7)) - alpha_loss(p, Alpha::infinity())) <= 1e-5);
  }
}

TEST_CASE("tilted distribution") {
  const Pmf u = Pmf::uniform(4);
  const Pmf tu = tilted(u, Alpha::finite(2.0));
  for (std::size_t i = 0; i < 4; ++i) CHECK(tu[i] == doctest::Approx(0.25));
  const Pmf half = tilted(Pmf({0.5, 0.5}), Alpha::finite(3.0));
  CHECK(half[0] == doctest::Approx(0.5));

  const Pmf t = tilted(Pmf({0.7, 0.2, 0.1}), Alpha::finite(2.0));
  CHECK(t[0] == doctest::Approx(0.49 / 0.54).epsilon(1e-14));
  CHECK(t[1] == doctest::Approx(0.04 / 0.54).epsilon(1e-14));
  CHECK(t[2] == doctest::Approx(0.01 / 0.54).epsilon(1e-14));

  const Pmf p({0.3, 0.3, 0.4} );
  CHECK(tilted(p, Alpha::one()) == p);
  const Pmf inf = tilted(Pmf({0.4, 0.2, 0.4}), Alpha::infinity());
  CHECK(inf[0] == 0.5);
  CHECK(inf[1] == 0.0);
  CHECK(inf[2] == 0.5);

  // Large orders must not underflow to 0/0.
  const Pmf sharp = tilted(Pmf({0.6, 0.4}), Alpha::finite(5000.0));
  CHECK(sharp[0] == doctest::Approx(1.0));
}

TEST_CASE("tilting preserves entry order") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Pmf p = guesswork::testing::random_pmf(rng, 6);
    const Pmf t = tilted(p, Alpha::finite(rng.uniform(0.1, 8.0)));
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        if (p[i] > p[j]) CHECK(t[i] >= t[j]);
      }
    }
  }
}

TEST_CASE("renyi entropy worked values") {
  for (double a : {0.5, 2.0, 7.0}) {
    CHECK(renyi_entropy(Pmf::uniform(8), Alpha::finite(a)).nats() ==
          doctest::Approx(std::log(8.0)).epsilon(1e-14));
    CHECK(renyi_entropy(Pmf::point_mass(5, 2), Alpha::finite(a)).nats() == 0.0);
  }
  CHECK(renyi_entropy(Pmf::uniform(8), Alpha::one()).nats() == doctest::Approx(std::log(8.0)));
  CHECK(renyi_entropy(Pmf::uniform(8), Alpha::infinity()).nats() ==
        doctest::Approx(std::log(8.0)));
  CHECK(renyi_entropy(Pmf({0.7, 0.2, 0.1}), Alpha::finite(2.0)).nats() ==
        doctest::Approx(0.616186139423817).epsilon(1e-13));
  CHECK(renyi_entropy(Pmf({0.7, 0.2, 0.1}), Alpha::infinity()).nats() ==
        doctest::Approx(-std::log(0.7)));
  CHECK(renyi_entropy(Pmf::uniform(2), Alpha::one()).bits() == doctest::Approx(1.0));
}

TEST_CASE("renyi entropy is nonincreasing in the order") {
  Rng rng(3);
  const double grid[] = {0.2, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0, 10.0, 50.0};
  for (int trial = 0; trial < 300; ++trial) {
    const Pmf p = guesswork::testing::random_pmf(rng, rng.index(2, 10), 0.7);
    double prev = std::numeric_limits<double>::infinity();
    for (double a : grid) {
      const double h = renyi_entropy(p, Alpha::from_value(a)).nats();
      CHECK(h <= prev + 1e-12);
      prev = h;
    }
    CHECK(renyi_entropy(p, Alpha::infinity()).nats() <= prev + 1e-12);
  }
}

TEST_CASE("arimoto conditional entropy") {
  const Alpha two = Alpha::finite(2.0);
  CHECK(arimoto_conditional_entropy(JointPmf::diagonal(Pmf::uniform(4)), two).nats() ==
        doctest::Approx(0.0).epsilon(1e-15));
  const Pmf px({0.7, 0.2, 0.1});
  const auto product = JointPmf::product(px, Pmf({0.25, 0.75}));
  CHECK(arimoto_conditional_entropy(product, two).nats() ==
        doctest::Approx(0.616186139423817).epsilon(1e-12));
  const auto j = JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}});
  CHECK(arimoto_conditional_entropy(j, two).nats() ==
        doctest::Approx(0.385662480811985).epsilon(1e-12));
  CHECK_THROWS_AS(arimoto_conditional_entropy(j, Alpha::one()), DomainError);
  CHECK_THROWS_AS(arimoto_conditional_entropy(j, Alpha::infinity()), DomainError);
}

TEST_CASE("conditioning does not increase arimoto entropy") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const JointPmf j = guesswork::testing::random_joint(rng, rng.index(2, 6), rng.index(1, 5));
    const Alpha a = Alpha::finite(trial % 2 ? rng.uniform(0.1, 0.95) : rng.uniform(1.05, 10.0));
    CHECK(arimoto_conditional_entropy(j, a).nats() <=
          renyi_entropy(j.marginal_x(), a).nats() + 1e-9);
  }
}

TEST_CASE("conditional pmf") {
  const auto diag = JointPmf::diagonal(Pmf::uniform(3));
  const Pmf c0 = conditional_pmf(diag, 0);
  CHECK(c0[0] == 1.0);
  CHECK(c0[1] == 0.0);
  const Pmf px({0.7, 0.2, 0.1});
  const Pmf c = conditional_pmf(JointPmf::product(px, Pmf({0.5, 0.5})), 1);
  CHECK(c[0] == doctest::Approx(0.7));
  const Pmf col = conditional_pmf(JointPmf::from_rows({{0.4, 0.1}, {0.1, 0.4}}), 0);
  CHECK(col[0] == doctest::Approx(0.8));
  CHECK(col[1] == doctest::Approx(0.2));
  const auto degenerate = JointPmf::from_rows({{0.5, 0.0}, {0.5, 0.0}});
  CHECK_THROWS_AS(conditional_pmf(degenerate, 1), DomainError);
}

}  // TEST_SUITE
