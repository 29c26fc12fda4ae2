#pragma once

// Residual engines for the entropy functional equations
//
//   main:        u(1-x) + (1-x)^a u(y/(1-x)) = u(y) + (1-y)^a u((1-x-y)/(1-y))
//   fundamental: u(x)   + (1-x)^a u(y/(1-x)) = u(y) + (1-y)^a u(x/(1-y))
//
// for x, y in [0, 1) with x + y <= 1, and for the equations satisfied by the
// 1-periodic asymmetry h(x) = u({x}) - u(1 - {x}) of a solution u.

#include "modcert/entropy.hpp"
#include "modcert/rational.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modcert {

/// A candidate u: [0, 1] -> R, optionally with an exact rational evaluator.
struct CandidateFunction {
  std::string name;
  std::function<double(double)> eval;
  std::function<Rational(const Rational&)> exact;

  double operator()(double x) const { return eval(x); }
  bool has_exact() const { return static_cast<bool>(exact); }
};

namespace candidates {

/// lambda * s_alpha. Exact when alpha is an integer >= 2.
CandidateFunction solution(const Alpha& alpha, const Rational& lambda = 1);
/// u(x) = slope * x.
CandidateFunction linear(const Rational& slope = 1);
/// a * s_1 + b * x (s_1 with base-2 logs).
CandidateFunction shannon_plus_linear(double a, double b);
/// sum_k coeffs[k] x^k, always exact.
CandidateFunction polynomial(std::vector<Rational> coeffs, std::string name = "polynomial");
/// x^2 (1-x)^2, symmetric.
CandidateFunction symmetric_quartic();
/// base + eps * shape. Exact when both inputs are.
CandidateFunction perturbed(const CandidateFunction& base, const Rational& eps, const CandidateFunction& shape);
/// Piecewise-linear interpolation of (x, u) samples sorted by x.
CandidateFunction tabulated(std::vector<std::pair<double, double>> samples, std::string name = "table");
/// "x,u" rows; a header line is skipped.
CandidateFunction load_tabulated(std::string_view csv_text, std::string name = "table");

}  // namespace candidates

/// h(x) = u({x}) - u(1 - {x}) with {x} = x - floor(x).
class HFunction {
 public:
  explicit HFunction(CandidateFunction u) : u_(std::move(u)) {}

  double operator()(double x) const;
  /// Requires u.has_exact().
  Rational exact(const Rational& x) const;
  const CandidateFunction& base() const { return u_; }

 private:
  CandidateFunction u_;
};

/// Both sides of an identity at one point.
struct EquationSides {
  double lhs = 0.0;
  double rhs = 0.0;

  double residual() const;
  /// max(1, |lhs|, |rhs|), the denominator of the relative residual.
  double scale() const;
};

/// Throws DomainError unless x, y in [0, 1) and x + y <= 1.
EquationSides main_equation_sides(const CandidateFunction& u, const Alpha& alpha, double x, double y);
EquationSides fundamental_equation_sides(const CandidateFunction& u, const Alpha& alpha, double x, double y);
double main_equation_residual(const CandidateFunction& u, const Alpha& alpha, double x, double y);
double fundamental_equation_residual(const CandidateFunction& u, const Alpha& alpha, double x, double y);

/// Exact |LHS - RHS| for integer alpha and u.has_exact().
Rational main_equation_residual(const CandidateFunction& u, unsigned alpha, const Rational& x, const Rational& y);
Rational fundamental_equation_residual(const CandidateFunction& u, unsigned alpha, const Rational& x,
                                       const Rational& y);

/// h(x) = |x|^a h((2x-1)/x) and h(x) = -|x|^a h((1-x)/x).
EquationSides h_first_sides(const HFunction& h, const Alpha& alpha, double x);
EquationSides h_second_sides(const HFunction& h, const Alpha& alpha, double x);

/// Residuals of both extended h-equations. Throws DomainError at x = 0.
std::pair<double, double> h_equation_residuals(const CandidateFunction& u, const Alpha& alpha, double x);
std::pair<Rational, Rational> h_equation_residuals(const CandidateFunction& u, unsigned alpha, const Rational& x);

struct ResidualSample {
  double x = 0.0;
  std::optional<double> y;
  double residual = 0.0;
  double scale = 1.0;
};

struct ResidualReport {
  std::string label;
  std::string grid;
  std::vector<ResidualSample> samples;
  double max_residual = 0.0;
  /// max of residual / scale.
  double max_relative = 0.0;
  std::optional<std::size_t> argmax;

  void add(double x, std::optional<double> y, const EquationSides& sides);
  bool within(double relative_tolerance) const { return max_relative <= relative_tolerance; }

  /// x,y,residual
  std::string to_csv() const;
  std::string summary_json(int indent = 2) const;
};

/// Shape of an interval identity for h.
enum class LemmaForm {
  Antisymmetry,  // h(x) = -h(1-x)
  Periodicity,   // h(x+1) = h(x)
  AlphaStep,     // h(x) = |x|^a h(2 - 1/x)
  BetaStep,      // h(x) = -|x|^a h(1/x - 1)
};

/// One of the identities obeyed by h on a stated interval.
struct IntervalLemma {
  std::string id;
  std::string statement;
  Rational lo;
  Rational hi;
  LemmaForm form;
};

/// Unbounded intervals are clipped to [-8, 8]; poles at 0 are kept at
/// distance pole_clearance.
std::vector<IntervalLemma> interval_lemmas(const Rational& pole_clearance = make_rational(1, 10000));

EquationSides lemma_sides(const IntervalLemma& lemma, const HFunction& h, const Alpha& alpha, double x);
/// Exact |LHS - RHS|; needs an exact base candidate.
Rational lemma_residual(const IntervalLemma& lemma, const HFunction& h, unsigned alpha, const Rational& x);

/// Each lemma sampled at `points` evenly spaced points of its interval.
std::vector<ResidualReport> interval_lemma_residuals(const CandidateFunction& u, const Alpha& alpha,
                                                     std::size_t points = 257);

struct ExactLemmaResult {
  std::string id;
  std::size_t points = 0;
  Rational max_residual = 0;
  Rational argmax = 0;
};

/// Same sampling in rational arithmetic, for integer alpha and exact u.
std::vector<ExactLemmaResult> interval_lemma_residuals_exact(const CandidateFunction& u, unsigned alpha,
                                                             std::size_t points = 257);

enum class ResidualKind { Main, Fundamental, HFirst, HSecond };

struct GridSpec {
  /// Simplex step 1/n for main/fundamental; n points for the h-equations.
  std::size_t n = 100;
  double lo = -8.0;
  double hi = 8.0;
  double pole_clearance = 1e-4;
};

/// Evaluates the residual on the grid, skipping points outside the domain.
ResidualReport scan_grid(ResidualKind kind, const CandidateFunction& u, const Alpha& alpha, const GridSpec& grid);

struct ExactScanResult {
  std::size_t points = 0;
  Rational max_residual = 0;
  Rational argmax_x = 0;
  Rational argmax_y = 0;
};

/// Main or fundamental equation on the rational simplex grid i/n, j/n.
ExactScanResult scan_grid_exact(ResidualKind kind, const CandidateFunction& u, unsigned alpha, std::size_t n);

}  // namespace modcert
