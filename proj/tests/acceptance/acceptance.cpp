// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 when everything passes).

#include "modcert/certificate.hpp"
#include "modcert/entropy.hpp"
#include "modcert/fe.hpp"
#include "modcert/modgroup.hpp"
#include "random_support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace modcert;

namespace {

// Tolerances and limits.
constexpr double kRelativeTolerance = 1e-12;
constexpr double kSeparationFloor = 1e-3;
constexpr double kPerturbationLow = 1e-4;
constexpr double kPerturbationHigh = 1e-2;
constexpr double kIdentityBudgetMs = 1.0;
constexpr double kRoundTripBudgetMs = 1000.0;
constexpr double kBezoutBudgetMs = 1000.0;
constexpr double kBatchBudgetMs = 10000.0;
constexpr double kSolutionBudgetMs = 5000.0;
constexpr double kFalsificationBudgetMs = 5000.0;
constexpr double kChainRuleBudgetMs = 5000.0;
constexpr std::uint64_t kSeed = 0x5eed2024;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failures = 0;

void criterion(const char* id, const char* title, double budget_ms, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (budget_ms > 0.0 && ms > budget_ms) o.fail("runtime " + fmt(ms) + " ms over " + fmt(budget_ms) + " ms");
  std::printf("%s %s  %s  [%.2f ms]%s%s\n", o.pass ? "PASS" : "FAIL", id, title, ms,
              o.detail.empty() ? "" : "  ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

Outcome identities() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& c : check_matrix_identities()) {
    ++n;
    if (!c.pass) o.fail(c.name + " computes " + c.computed);
  }
  o.note(std::to_string(n) + " identities checked");
  return o;
}

Outcome round_trip() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  for (int i = 0; i < 1000; ++i) {
    const GroupElement g = testing::random_st_word(rng, 40).evaluate();
    const GeneratorWord st = decompose_st(g);
    if (!(st.evaluate() == g)) o.fail("S/T word of " + g.to_string() + " does not multiply back");
    if (!(rewrite_st_to_ab(st).evaluate() == g)) o.fail("A/B word of " + g.to_string() + " does not multiply back");
    if (!o.pass) break;
  }
  return o;
}

Outcome bezout() {
  Outcome o;
  std::size_t count = 0;
  for (long q = 1; q <= 100; ++q) {
    for (long p = -100; p <= 100; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const auto target = ProjectivePoint::from_coordinates(p, q);
      if (!(apply_homography(bezout_element(target), ProjectivePoint::zero()) == target)) {
        o.fail("bezout_element misses " + to_string(target));
        return o;
      }
      ++count;
    }
  }
  o.note(std::to_string(count) + " points");
  return o;
}

Outcome certificates() {
  Outcome o;
  BatchOptions opts;
  opts.max_denominator = 50;
  opts.extra_targets = {Rational(2), Rational(-1), make_rational(-1, 2), make_rational(7, 3)};
  const BatchReport report = batch_certify(opts);
  for (const auto& e : report.entries) {
    if (!e.verdict.valid()) o.fail(to_string(e.target) + ": " + e.verdict.reason);
  }
  // Independent replay: no iterate at 0 or infinity, endpoint is the target.
  for (const auto& e : report.entries) {
    if (e.target == make_rational(1, 2)) continue;
    const Certificate c = generate_certificate(e.target);
    const auto trace = replay(c.word);
    for (const auto& x : trace) {
      if (x.is_zero() || x.is_infinity()) o.fail(to_string(e.target) + " passes through " + to_string(x));
    }
    if (trace.empty() || !(trace.back() == point_from_rational(e.target))) o.fail(to_string(e.target) + " misses");
  }
  o.note(std::to_string(report.valid) + "/" + std::to_string(report.entries.size()) + " valid, max length " +
         std::to_string(report.max_word_length));
  return o;
}

Outcome solutions() {
  Outcome o;
  double worst = 0.0;
  for (const Rational& a : {make_rational(1, 2), Rational(1), Rational(2), Rational(3), make_rational(7, 2)}) {
    const Alpha alpha = Alpha::from_rational(a);
    for (long lambda : {-2L, 1L, 5L}) {
      const auto r = scan_grid(ResidualKind::Main, candidates::solution(alpha, Rational(lambda)), alpha, {100});
      worst = std::max(worst, r.max_relative);
      if (!r.within(kRelativeTolerance)) {
        o.fail("alpha=" + to_string(a) + " lambda=" + std::to_string(lambda) + " relative " + fmt(r.max_relative));
      }
    }
  }
  for (unsigned a : {2U, 3U}) {
    for (long lambda : {-2L, 1L, 5L}) {
      const auto r = scan_grid_exact(ResidualKind::Main, candidates::solution(Alpha(a), Rational(lambda)), a, 100);
      if (r.max_residual != 0) o.fail("exact residual " + to_string(r.max_residual) + " at alpha=" + std::to_string(a));
    }
  }
  o.note("max relative " + fmt(worst));
  return o;
}

Outcome falsification() {
  Outcome o;
  const Rational r = main_equation_residual(candidates::linear(), 1, make_rational(1, 4), make_rational(1, 4));
  if (r != make_rational(1, 4)) o.fail("u=x residual at (1/4,1/4) is " + to_string(r));
  const CandidateFunction u = candidates::shannon_plus_linear(1.0, 2.0);
  const auto fundamental = scan_grid(ResidualKind::Fundamental, u, Alpha(1), {100});
  const auto main = scan_grid(ResidualKind::Main, u, Alpha(1), {100});
  if (!fundamental.within(kRelativeTolerance)) o.fail("s_1+2x fundamental relative " + fmt(fundamental.max_relative));
  if (!(main.max_residual > kSeparationFloor)) o.fail("s_1+2x main max " + fmt(main.max_residual));
  o.note("fundamental " + fmt(fundamental.max_relative) + ", main " + fmt(main.max_residual));
  return o;
}

Outcome chain_rule() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const RationalJoint exact = testing::random_rational_joint(rng, 6);
    const RealJoint real = testing::to_real(exact);
    for (double a : {0.5, 1.0, 2.0, 3.0}) {
      for (ChainOrder order : {ChainOrder::XFirst, ChainOrder::YFirst}) {
        worst = std::max(worst, chain_rule_residual(real, Alpha(a), order));
      }
    }
    for (unsigned a : {2U, 3U}) {
      for (ChainOrder order : {ChainOrder::XFirst, ChainOrder::YFirst}) {
        if (chain_rule_residual(exact, a, order) != 0) o.fail("nonzero exact residual at alpha=" + std::to_string(a));
      }
    }
    if (!o.pass) break;
  }
  if (worst > kRelativeTolerance) o.fail("float residual " + fmt(worst));
  o.note("max float residual " + fmt(worst));
  return o;
}

double max_lemma_residual(const CandidateFunction& u, const Alpha& alpha) {
  double m = 0.0;
  for (const auto& r : interval_lemma_residuals(u, alpha)) m = std::max(m, r.max_residual);
  return m;
}

Rational max_exact_lemma_residual(const CandidateFunction& u, unsigned alpha) {
  Rational m = 0;
  for (const auto& r : interval_lemma_residuals_exact(u, alpha)) m = std::max(m, r.max_residual);
  return m;
}

Outcome h_machinery() {
  Outcome o;
  const CandidateFunction s2 = candidates::solution(Alpha(2));
  const Rational base = max_exact_lemma_residual(s2, 2);
  if (base != 0) o.fail("s_2 exact lemma residual " + to_string(base));

  const CandidateFunction perturbed =
      candidates::perturbed(s2, make_rational(1, 1000), candidates::polynomial({0, 1, -1}, "x(1-x)"));
  const Rational p = max_exact_lemma_residual(perturbed, 2);
  const double p_float = max_lemma_residual(perturbed, Alpha(2));
  if (!(p.get_d() >= kPerturbationLow && p.get_d() <= kPerturbationHigh)) {
    o.fail("s_2 + 1e-3 x(1-x) lemma residual " + to_string(p) + " (float " + fmt(p_float) + ") outside [" +
           fmt(kPerturbationLow) + ", " + fmt(kPerturbationHigh) +
           "]; x(1-x) = s_2/2, so u = (1 + 5e-4) s_2 and h stays 0");
  }

  for (double a : {0.5, 1.0, 2.0, 3.0, 3.5}) {
    for (long lambda : {-2L, 1L, 5L}) {
      const CandidateFunction u = candidates::solution(Alpha(a), Rational(lambda));
      if (HFunction(u)(0.5) != 0.0 || u(0.0) != 0.0 || u(1.0) != 0.0) {
        o.fail("boundary values of " + u.name + " at alpha=" + fmt(a));
      }
    }
  }
  o.note("s_2 max " + to_string(base) + ", perturbed max " + to_string(p));
  return o;
}

}  // namespace

int main() {
  criterion("AC1", "matrix identities", kIdentityBudgetMs, identities);
  criterion("AC2", "S/T and A/B round trip", kRoundTripBudgetMs, round_trip);
  criterion("AC3", "orbit transitivity", kBezoutBudgetMs, bezout);
  criterion("AC4", "certificate completeness", kBatchBudgetMs, certificates);
  criterion("AC5", "solutions satisfy the main equation", kSolutionBudgetMs, solutions);
  criterion("AC6", "falsification", kFalsificationBudgetMs, falsification);
  criterion("AC7", "chain rule", kChainRuleBudgetMs, chain_rule);
  criterion("AC8", "h machinery", 0.0, h_machinery);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures;
}
