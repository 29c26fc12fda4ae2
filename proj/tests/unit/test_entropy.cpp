#include "modcert/entropy.hpp"
#include "random_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace modcert;

namespace {

RationalDistribution exact(std::vector<Rational> w) { return RationalDistribution::from_weights(std::move(w)); }
RealDistribution real(std::vector<double> w) { return RealDistribution::from_weights(std::move(w)); }

RationalJoint triple() {
  // a = p(0,0), b = p(1,0), c = p(0,1).
  return RationalJoint::from_cells(
      {{0, 0, make_rational(1, 2)}, {1, 0, make_rational(1, 3)}, {0, 1, make_rational(1, 6)}});
}

double sum_p_log2(const RealDistribution& p) {
  double s = 0.0;
  for (double w : p.weights()) {
    if (w > 0.0) s += w * std::log(w) * std::log(w);
  }
  return s;
}

}  // namespace

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(real({}), InvalidDistribution);
  CHECK_THROWS_AS(real({0.5, 0.6}), InvalidDistribution);
  CHECK_THROWS_AS(real({1.5, -0.5}), InvalidDistribution);
  CHECK_THROWS_AS(real({std::nan(""), 1.0}), InvalidDistribution);
  CHECK_THROWS_AS(exact({make_rational(1, 3), make_rational(1, 3)}), InvalidDistribution);
  CHECK_THROWS_AS(RealDistribution::from_weights({0.5, 0.5}, {1, 1}), InvalidDistribution);
  CHECK_THROWS_AS(RealDistribution::from_weights({0.5, 0.5}, {1}), InvalidDistribution);
  CHECK_NOTHROW(real({0.1, 0.2, 0.7 + 1e-13}));
  CHECK_THROWS_AS(RationalJoint::from_cells({{0, 0, make_rational(1, 2)}, {0, 0, make_rational(1, 2)}}),
                  InvalidDistribution);
}

TEST_CASE("Shannon and Tsallis examples") {
  CHECK(shannon_entropy(real({0.5, 0.5})) == doctest::Approx(std::log(2.0)));
  CHECK(shannon_entropy(real({0.5, 0.5}), 2.0) == doctest::Approx(1.0));
  CHECK(shannon_entropy(real({1.0, 0.0})) == 0.0);
  CHECK(tsallis_entropy(exact({make_rational(1, 2), make_rational(1, 2)}), 2) == make_rational(1, 2));
  CHECK(tsallis_entropy(exact({make_rational(1, 3), make_rational(2, 3)}), 3) == make_rational(1, 3));
  CHECK(tsallis_entropy(real({0.25, 0.75}), Alpha(2)) == doctest::Approx(0.375));
  CHECK_THROWS_AS(tsallis_entropy(real({0.5, 0.5}), Alpha(1)), AlphaIsOne);
  CHECK_THROWS_AS(tsallis_entropy(exact({Rational(1)}), 1), AlphaIsOne);
  CHECK(generalized_entropy(real({0.5, 0.5}), Alpha(1)) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(Alpha(0.0), DomainError);
  CHECK_THROWS_AS(Alpha(-1.0), DomainError);
  CHECK_THROWS_AS(Alpha{HUGE_VAL}, DomainError);
  CHECK_THROWS_AS(shannon_entropy(real({1.0}), 1.0), DomainError);
}

TEST_CASE("Alpha parsing") {
  CHECK(Alpha::parse("7/2").value() == 3.5);
  CHECK_FALSE(Alpha::parse("7/2").integer().has_value());
  CHECK(Alpha::parse("2").integer() == std::optional<unsigned>(2));
  CHECK(Alpha::parse("0.5").value() == 0.5);
  CHECK(Alpha::parse("1").is_one());
  CHECK_THROWS_AS(Alpha::parse("abc"), ParseError);
  CHECK_THROWS_AS(Alpha::parse("0"), DomainError);
}

TEST_CASE("uniform closed forms") {
  for (int n = 1; n <= 8; ++n) {
    const RealDistribution u = real(std::vector<double>(n, 1.0 / n));
    CHECK(shannon_entropy(u) == doctest::Approx(std::log(n)).epsilon(1e-12));
    for (double a : {0.5, 2.0, 3.0}) {
      const double closed = (std::pow(n, 1.0 - a) - 1.0) / (1.0 - a);
      CHECK(tsallis_entropy(u, Alpha(a)) == doctest::Approx(closed).epsilon(1e-12));
    }
    const RationalDistribution ue = exact(std::vector<Rational>(n, make_rational(1, n)));
    // (n^{1-a} - 1)/(1-a) at a = 2 is 1 - 1/n.
    CHECK(tsallis_entropy(ue, 2) == Rational(1) - make_rational(1, n));
  }
}

TEST_CASE("marginals and conditionals") {
  const RationalJoint j = triple();
  const auto rows = marginalize(j, Axis::Row);
  CHECK(rows.weights() == std::vector<Rational>{make_rational(2, 3), make_rational(1, 3)});
  CHECK(rows.labels() == std::vector<long>{0, 1});
  const auto cols = marginalize(j, Axis::Col);
  CHECK(cols.weights() == std::vector<Rational>{make_rational(5, 6), make_rational(1, 6)});
  const auto given = condition(j, Axis::Row, 0);
  CHECK(given.weights() == std::vector<Rational>{make_rational(3, 4), make_rational(1, 4)});
  CHECK(given.labels() == std::vector<long>{0, 1});
  CHECK(condition(j, Axis::Col, 1).weights() == std::vector<Rational>{Rational(1)});
  CHECK_THROWS_AS(condition(j, Axis::Row, 7), ZeroMarginal);

  const RationalJoint with_zero =
      RationalJoint::from_cells({{0, 0, Rational(1)}, {1, 0, Rational(0)}, {1, 1, Rational(0)}});
  CHECK_THROWS_AS(condition(with_zero, Axis::Row, 1), ZeroMarginal);
}

TEST_CASE("product joint") {
  const auto p = exact({make_rational(1, 4), make_rational(3, 4)});
  const auto q = exact({make_rational(1, 3), make_rational(1, 3), make_rational(1, 3)});
  const RationalJoint j = RationalJoint::product(p, q);
  CHECK(j.cells().size() == 6);
  CHECK(marginalize(j, Axis::Row).weights() == p.weights());
  CHECK(marginalize(j, Axis::Col).weights() == q.weights());
  for (unsigned a : {2U, 3U, 4U}) {
    // Deformed additivity: S(p x q) = S(p) + S(q) + (1-a) S(p) S(q).
    const Rational sp = tsallis_entropy(p, a), sq = tsallis_entropy(q, a);
    CHECK(tsallis_entropy(j.flatten(), a) == sp + sq + Rational(1 - static_cast<long>(a)) * sp * sq);
  }
  const RealJoint jr = modcert::testing::to_real(j);
  const double sp = tsallis_entropy(to_real(p), Alpha(0.5)), sq = tsallis_entropy(to_real(q), Alpha(0.5));
  CHECK(tsallis_entropy(jr.flatten(), Alpha(0.5)) == doctest::Approx(sp + sq + 0.5 * sp * sq).epsilon(1e-12));
  CHECK(shannon_entropy(jr.flatten()) ==
        doctest::Approx(shannon_entropy(to_real(p)) + shannon_entropy(to_real(q))).epsilon(1e-12));
}

TEST_CASE("chain rule on the triple") {
  const RationalJoint j = triple();
  for (unsigned a : {2U, 3U}) {
    CHECK(chain_rule_residual(j, a, ChainOrder::XFirst) == 0);
    CHECK(chain_rule_residual(j, a, ChainOrder::YFirst) == 0);
  }
  const RealJoint jr = modcert::testing::to_real(j);
  CHECK(chain_rule_residual(jr, Alpha(1), ChainOrder::XFirst) <= 1e-12);
  CHECK(chain_rule_residual(jr, Alpha(1), ChainOrder::YFirst) <= 1e-12);
}

TEST_CASE("a non-entropy functional breaks the chain rule") {
  const RealJoint jr = modcert::testing::to_real(triple());
  auto sum_squares = [](const RealDistribution& p) {
    double s = 0.0;
    for (double w : p.weights()) s += w * w;
    return s;
  };
  CHECK(chain_rule_residual(jr, Alpha(2), ChainOrder::XFirst, sum_squares) > 1e-3);
}

TEST_CASE("chain rule on random joints") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 500; ++trial) {
    const RationalJoint j = modcert::testing::random_rational_joint(rng, 5);
    const RealJoint jr = modcert::testing::to_real(j);
    for (double a : {0.5, 1.0, 2.0, 3.0, 3.5}) {
      for (ChainOrder o : {ChainOrder::XFirst, ChainOrder::YFirst}) {
        REQUIRE(chain_rule_residual(jr, Alpha(a), o) <= 1e-12);
      }
    }
    for (unsigned a : {2U, 3U}) {
      REQUIRE(chain_rule_residual(j, a, ChainOrder::XFirst) == 0);
      REQUIRE(chain_rule_residual(j, a, ChainOrder::YFirst) == 0);
    }
  }
}

TEST_CASE("Tsallis approaches Shannon as alpha -> 1") {
  std::mt19937_64 rng(7);
  const double delta = 1e-4;
  for (int trial = 0; trial < 50; ++trial) {
    const RealDistribution p = modcert::testing::to_real(modcert::testing::random_rational_joint(rng, 4)).flatten();
    const double s1 = shannon_entropy(p);
    const double lo = tsallis_entropy(p, Alpha(1.0 - delta));
    const double hi = tsallis_entropy(p, Alpha(1.0 + delta));
    // The first-order term is +-(delta/2) sum p ln^2 p and cancels in the mean.
    CHECK(std::abs(0.5 * (lo + hi) - s1) <= 1e-6);
    CHECK(std::abs(hi - s1) <= delta * sum_p_log2(p) + 1e-9);
    CHECK(std::abs(lo - s1) <= delta * sum_p_log2(p) + 1e-9);
  }
}

TEST_CASE("binary solution") {
  CHECK(binary_solution_s(0.5, Alpha(1)) == doctest::Approx(1.0));
  CHECK(binary_solution_s(0.0, Alpha(1)) == 0.0);
  CHECK(binary_solution_s(1.0, Alpha(2)) == 0.0);
  CHECK(binary_solution_s(make_rational(1, 3), 2) == make_rational(4, 9));
  CHECK_THROWS_AS(binary_solution_s(1.5, Alpha(2)), DomainError);
  CHECK_THROWS_AS(binary_solution_s(Rational(-1), 2), DomainError);
  for (double a : {0.5, 2.0, 3.0, 3.5}) {
    for (double x : {0.0, 0.1, 0.3, 0.5, 0.9}) {
      CHECK(binary_solution_s(x, Alpha(a)) == doctest::Approx(tsallis_entropy(real({x, 1.0 - x}), Alpha(a))));
      CHECK(binary_solution_s(x, Alpha(a)) == doctest::Approx(binary_solution_s(1.0 - x, Alpha(a))));
    }
  }
  for (long k = 0; k <= 10; ++k) {
    const Rational x = make_rational(k, 10);
    CHECK(binary_solution_s(x, 3).get_d() == doctest::Approx(binary_solution_s(x.get_d(), Alpha(3))));
  }
}
