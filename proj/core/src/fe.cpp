#include "modcert/fe.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace modcert {

namespace {

// Grid arithmetic can push y/(1-x) a rounding step past 1.
double clamp_unit(double t) { return std::clamp(t, 0.0, 1.0); }

void require_simplex(double x, double y) {
  if (!(x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0 && x + y <= 1.0)) {
    throw DomainError("need x, y in [0, 1) with x + y <= 1, got (" + std::to_string(x) + ", " +
                      std::to_string(y) + ")");
  }
}

void require_simplex(const Rational& x, const Rational& y) {
  if (sgn(x) < 0 || x >= 1 || sgn(y) < 0 || y >= 1 || x + y > 1) {
    throw DomainError("need x, y in [0, 1) with x + y <= 1, got (" + to_string(x) + ", " + to_string(y) + ")");
  }
}

void require_exact(const CandidateFunction& u) {
  if (!u.has_exact()) throw DomainError("candidate '" + u.name + "' has no exact evaluator");
}

// one_x = 1-x, one_y = 1-y and rest = 1-x-y are passed in so grid scans can
// supply them exactly; rest = 1e-17 instead of 0 costs 3e-9 under a sqrt.
EquationSides main_sides_unchecked(const CandidateFunction& u, double a, double y, double one_x, double one_y,
                                   double rest) {
  const double lhs = u(one_x) + std::pow(one_x, a) * u(clamp_unit(y / one_x));
  const double rhs = u(y) + std::pow(one_y, a) * u(clamp_unit(rest / one_y));
  return {lhs, rhs};
}

EquationSides fundamental_sides_unchecked(const CandidateFunction& u, double a, double x, double y, double one_x,
                                          double one_y) {
  const double lhs = u(x) + std::pow(one_x, a) * u(clamp_unit(y / one_x));
  const double rhs = u(y) + std::pow(one_y, a) * u(clamp_unit(x / one_y));
  return {lhs, rhs};
}

Rational frac(const Rational& x) {
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(x - fl);
}

double abs_pow(double x, double a) { return std::pow(std::abs(x), a); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

namespace candidates {

CandidateFunction solution(const Alpha& alpha, const Rational& lambda) {
  CandidateFunction u;
  u.name = to_string(lambda) + "*s_alpha";
  const double l = lambda.get_d();
  u.eval = [alpha, l](double x) { return l * binary_solution_s(x, alpha); };
  if (alpha.integer() && *alpha.integer() >= 2) {
    const unsigned k = *alpha.integer();
    u.exact = [k, lambda](const Rational& x) { return Rational(lambda * binary_solution_s(x, k)); };
  }
  return u;
}

CandidateFunction linear(const Rational& slope) {
  CandidateFunction u;
  u.name = to_string(slope) + "*x";
  const double s = slope.get_d();
  u.eval = [s](double x) { return s * x; };
  u.exact = [slope](const Rational& x) { return Rational(slope * x); };
  return u;
}

CandidateFunction shannon_plus_linear(double a, double b) {
  CandidateFunction u;
  std::ostringstream name;
  name << a << "*s_1+" << b << "*x";
  u.name = name.str();
  const Alpha one(1.0);
  u.eval = [a, b, one](double x) { return a * binary_solution_s(x, one) + b * x; };
  return u;
}

CandidateFunction polynomial(std::vector<Rational> coeffs, std::string name) {
  CandidateFunction u;
  u.name = std::move(name);
  std::vector<double> c;
  for (const auto& r : coeffs) c.push_back(r.get_d());
  u.eval = [c](double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  u.exact = [coeffs = std::move(coeffs)](const Rational& x) {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  return u;
}

CandidateFunction symmetric_quartic() {
  // x^2 (1-x)^2 = x^2 - 2x^3 + x^4
  return polynomial({0, 0, 1, -2, 1}, "x^2*(1-x)^2");
}

CandidateFunction perturbed(const CandidateFunction& base, const Rational& eps, const CandidateFunction& shape) {
  CandidateFunction u;
  u.name = base.name + "+" + to_string(eps) + "*(" + shape.name + ")";
  const double e = eps.get_d();
  u.eval = [b = base.eval, s = shape.eval, e](double x) { return b(x) + e * s(x); };
  if (base.has_exact() && shape.has_exact()) {
    u.exact = [b = base.exact, s = shape.exact, eps](const Rational& x) { return Rational(b(x) + eps * s(x)); };
  }
  return u;
}

CandidateFunction tabulated(std::vector<std::pair<double, double>> samples, std::string name) {
  if (samples.size() < 2) throw DomainError("a tabulated candidate needs at least two samples");
  std::sort(samples.begin(), samples.end());
  CandidateFunction u;
  u.name = std::move(name);
  u.eval = [s = std::move(samples)](double x) {
    if (x <= s.front().first) return s.front().second;
    if (x >= s.back().first) return s.back().second;
    const auto hi = std::upper_bound(s.begin(), s.end(), x,
                                     [](double v, const auto& p) { return v < p.first; });
    const auto lo = hi - 1;
    const double t = (x - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
  };
  return u;
}

CandidateFunction load_tabulated(std::string_view csv_text, std::string name) {
  std::vector<std::pair<double, double>> samples;
  std::istringstream in{std::string(csv_text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::string xs, us;
    if (!std::getline(ls, xs, ',') || !std::getline(ls, us)) throw ParseError("table rows need x,u");
    try {
      samples.emplace_back(std::stod(xs), std::stod(us));
    } catch (const std::exception&) {
      if (samples.empty()) continue;  // header
      throw ParseError("bad table row '" + line + "'");
    }
  }
  return tabulated(std::move(samples), std::move(name));
}

}  // namespace candidates

double HFunction::operator()(double x) const {
  const double f = x - std::floor(x);
  return u_(f) - u_(1.0 - f);
}

Rational HFunction::exact(const Rational& x) const {
  require_exact(u_);
  const Rational f = frac(x);
  return Rational(u_.exact(f) - u_.exact(Rational(1 - f)));
}

double EquationSides::residual() const { return std::abs(lhs - rhs); }

double EquationSides::scale() const { return std::max({1.0, std::abs(lhs), std::abs(rhs)}); }

EquationSides main_equation_sides(const CandidateFunction& u, const Alpha& alpha, double x, double y) {
  require_simplex(x, y);
  return main_sides_unchecked(u, alpha.value(), y, 1.0 - x, 1.0 - y, std::max(0.0, (1.0 - x) - y));
}

EquationSides fundamental_equation_sides(const CandidateFunction& u, const Alpha& alpha, double x, double y) {
  require_simplex(x, y);
  return fundamental_sides_unchecked(u, alpha.value(), x, y, 1.0 - x, 1.0 - y);
}

double main_equation_residual(const CandidateFunction& u, const Alpha& alpha, double x, double y) {
  return main_equation_sides(u, alpha, x, y).residual();
}

double fundamental_equation_residual(const CandidateFunction& u, const Alpha& alpha, double x, double y) {
  return fundamental_equation_sides(u, alpha, x, y).residual();
}

Rational main_equation_residual(const CandidateFunction& u, unsigned alpha, const Rational& x, const Rational& y) {
  require_simplex(x, y);
  require_exact(u);
  const Rational one_x = 1 - x;
  const Rational one_y = 1 - y;
  const Rational lhs = u.exact(one_x) + pow(one_x, alpha) * u.exact(Rational(y / one_x));
  const Rational rhs = u.exact(y) + pow(one_y, alpha) * u.exact(Rational((one_x - y) / one_y));
  return abs(lhs - rhs);
}

Rational fundamental_equation_residual(const CandidateFunction& u, unsigned alpha, const Rational& x,
                                       const Rational& y) {
  require_simplex(x, y);
  require_exact(u);
  const Rational one_x = 1 - x;
  const Rational one_y = 1 - y;
  const Rational lhs = u.exact(x) + pow(one_x, alpha) * u.exact(Rational(y / one_x));
  const Rational rhs = u.exact(y) + pow(one_y, alpha) * u.exact(Rational(x / one_y));
  return abs(lhs - rhs);
}

EquationSides h_first_sides(const HFunction& h, const Alpha& alpha, double x) {
  if (x == 0.0) throw DomainError("the h-equations have a pole at x = 0");
  return {h(x), abs_pow(x, alpha.value()) * h((2.0 * x - 1.0) / x)};
}

EquationSides h_second_sides(const HFunction& h, const Alpha& alpha, double x) {
  if (x == 0.0) throw DomainError("the h-equations have a pole at x = 0");
  return {h(x), -abs_pow(x, alpha.value()) * h((1.0 - x) / x)};
}

std::pair<double, double> h_equation_residuals(const CandidateFunction& u, const Alpha& alpha, double x) {
  const HFunction h(u);
  return {h_first_sides(h, alpha, x).residual(), h_second_sides(h, alpha, x).residual()};
}

std::pair<Rational, Rational> h_equation_residuals(const CandidateFunction& u, unsigned alpha, const Rational& x) {
  if (sgn(x) == 0) throw DomainError("the h-equations have a pole at x = 0");
  const HFunction h(u);
  const Rational weight = pow(Rational(abs(x)), alpha);
  const Rational hx = h.exact(x);
  const Rational r1 = abs(Rational(hx - weight * h.exact(Rational((2 * x - 1) / x))));
  const Rational r2 = abs(Rational(hx + weight * h.exact(Rational((1 - x) / x))));
  return {r1, r2};
}

void ResidualReport::add(double x, std::optional<double> y, const EquationSides& sides) {
  ResidualSample s{x, y, sides.residual(), sides.scale()};
  // NaN residuals must surface as failures, not be skipped by comparisons.
  const double r = std::isnan(s.residual) ? INFINITY : s.residual;
  const double rel = r / s.scale;
  if (!argmax || r > max_residual) {
    max_residual = r;
    argmax = samples.size();
  }
  max_relative = std::max(max_relative, rel);
  samples.push_back(s);
}

std::string ResidualReport::to_csv() const {
  std::string out = "x,y,residual\n";
  for (const auto& s : samples) {
    out += format_double(s.x) + "," + (s.y ? format_double(*s.y) : std::string()) + "," +
           format_double(s.residual) + "\n";
  }
  return out;
}

std::string ResidualReport::summary_json(int indent) const {
  nlohmann::ordered_json j;
  j["label"] = label;
  j["grid"] = grid;
  j["points"] = samples.size();
  j["max_residual"] = max_residual;
  j["max_relative"] = max_relative;
  if (argmax) {
    const auto& s = samples[*argmax];
    j["argmax"]["x"] = s.x;
    if (s.y) j["argmax"]["y"] = *s.y;
  } else {
    j["argmax"] = nullptr;
  }
  return j.dump(indent);
}

std::vector<IntervalLemma> interval_lemmas(const Rational& c) {
  const Rational half = make_rational(1, 2);
  return {
      {"antisymmetry", "h(x) = -h(1-x)", -8, 8, LemmaForm::Antisymmetry},
      {"periodicity", "h(x+1) = h(x)", -8, 8, LemmaForm::Periodicity},
      {"half_to_one", "h(z) = z^a h(2 - 1/z), z in [1/2, 1]", half, 1, LemmaForm::AlphaStep},
      {"half_to_one_reflected", "h(z) = -z^a h(1/z - 1), z in [1/2, 1]", half, 1, LemmaForm::BetaStep},
      {"one_to_two", "h(x) = x^a h(2 - 1/x), x in [1, 2]", 1, 2, LemmaForm::AlphaStep},
      {"two_to_infinity", "h(x) = x^a h(2 - 1/x), x in [2, inf)", 2, 8, LemmaForm::AlphaStep},
      {"zero_to_half_reflected", "h(x) = -x^a h(1/x - 1), x in [0, 1/2]", c, half, LemmaForm::BetaStep},
      {"zero_to_half", "h(x) = x^a h(2 - 1/x), x in [0, 1/2]", c, half, LemmaForm::AlphaStep},
      {"negative_axis", "h(x) = |x|^a h(2 - 1/x), x in (-inf, 0]", -8, Rational(-c), LemmaForm::AlphaStep},
  };
}

EquationSides lemma_sides(const IntervalLemma& lemma, const HFunction& h, const Alpha& alpha, double x) {
  switch (lemma.form) {
    case LemmaForm::Antisymmetry: return {h(x), -h(1.0 - x)};
    case LemmaForm::Periodicity: return {h(x + 1.0), h(x)};
    case LemmaForm::AlphaStep: return h_first_sides(h, alpha, x);
    case LemmaForm::BetaStep: return h_second_sides(h, alpha, x);
  }
  return {};
}

Rational lemma_residual(const IntervalLemma& lemma, const HFunction& h, unsigned alpha, const Rational& x) {
  Rational lhs, rhs;
  switch (lemma.form) {
    case LemmaForm::Antisymmetry:
      lhs = h.exact(x);
      rhs = -h.exact(Rational(1 - x));
      break;
    case LemmaForm::Periodicity:
      lhs = h.exact(Rational(x + 1));
      rhs = h.exact(x);
      break;
    case LemmaForm::AlphaStep:
    case LemmaForm::BetaStep: {
      const auto [first, second] = h_equation_residuals(h.base(), alpha, x);
      return lemma.form == LemmaForm::AlphaStep ? first : second;
    }
  }
  return abs(Rational(lhs - rhs));
}

namespace {

Rational lemma_point(const IntervalLemma& lemma, std::size_t i, std::size_t points) {
  return lemma.lo + (lemma.hi - lemma.lo) * make_rational(static_cast<long>(i), static_cast<long>(points - 1));
}

}  // namespace

std::vector<ResidualReport> interval_lemma_residuals(const CandidateFunction& u, const Alpha& alpha,
                                                     std::size_t points) {
  points = std::max<std::size_t>(points, 2);
  const HFunction h(u);
  std::vector<ResidualReport> reports;
  for (const auto& lemma : interval_lemmas()) {
    ResidualReport r;
    r.label = lemma.id;
    r.grid = "line [" + to_string(lemma.lo) + ", " + to_string(lemma.hi) + "] n=" + std::to_string(points);
    for (std::size_t i = 0; i < points; ++i) {
      const double x = lemma_point(lemma, i, points).get_d();
      r.add(x, std::nullopt, lemma_sides(lemma, h, alpha, x));
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<ExactLemmaResult> interval_lemma_residuals_exact(const CandidateFunction& u, unsigned alpha,
                                                             std::size_t points) {
  require_exact(u);
  points = std::max<std::size_t>(points, 2);
  const HFunction h(u);
  std::vector<ExactLemmaResult> out;
  for (const auto& lemma : interval_lemmas()) {
    ExactLemmaResult r;
    r.id = lemma.id;
    for (std::size_t i = 0; i < points; ++i) {
      const Rational x = lemma_point(lemma, i, points);
      const Rational res = lemma_residual(lemma, h, alpha, x);
      if (r.points == 0 || res > r.max_residual) {
        r.max_residual = res;
        r.argmax = x;
      }
      ++r.points;
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

const char* kind_label(ResidualKind kind) {
  switch (kind) {
    case ResidualKind::Main: return "main";
    case ResidualKind::Fundamental: return "fundamental";
    case ResidualKind::HFirst: return "h_first";
    case ResidualKind::HSecond: return "h_second";
  }
  return "?";
}

}  // namespace

ResidualReport scan_grid(ResidualKind kind, const CandidateFunction& u, const Alpha& alpha, const GridSpec& grid) {
  ResidualReport report;
  report.label = std::string(kind_label(kind)) + " u=" + u.name;
  const std::size_t n = std::max<std::size_t>(grid.n, 1);
  if (kind == ResidualKind::Main || kind == ResidualKind::Fundamental) {
    report.grid = "simplex step 1/" + std::to_string(n);
    const double a = alpha.value();
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n && i + j <= n; ++j) {
        const double x = static_cast<double>(i) / dn;
        const double y = static_cast<double>(j) / dn;
        const double one_x = static_cast<double>(n - i) / dn;
        const double one_y = static_cast<double>(n - j) / dn;
        const double rest = static_cast<double>(n - i - j) / dn;
        report.add(x, y,
                   kind == ResidualKind::Main ? main_sides_unchecked(u, a, y, one_x, one_y, rest)
                                              : fundamental_sides_unchecked(u, a, x, y, one_x, one_y));
      }
    }
    return report;
  }
  report.grid = "line [" + format_double(grid.lo) + ", " + format_double(grid.hi) + "] n=" + std::to_string(n);
  const HFunction h(u);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = n == 1 ? grid.lo
                            : grid.lo + (grid.hi - grid.lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    if (std::abs(x) < grid.pole_clearance) continue;
    report.add(x, std::nullopt, kind == ResidualKind::HFirst ? h_first_sides(h, alpha, x) : h_second_sides(h, alpha, x));
  }
  return report;
}

ExactScanResult scan_grid_exact(ResidualKind kind, const CandidateFunction& u, unsigned alpha, std::size_t n) {
  if (kind != ResidualKind::Main && kind != ResidualKind::Fundamental) {
    throw DomainError("exact scans cover the main and fundamental equations");
  }
  require_exact(u);
  n = std::max<std::size_t>(n, 1);
  ExactScanResult result;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n && i + j <= n; ++j) {
      const Rational x = make_rational(static_cast<long>(i), static_cast<long>(n));
      const Rational y = make_rational(static_cast<long>(j), static_cast<long>(n));
      const Rational r = kind == ResidualKind::Main ? main_equation_residual(u, alpha, x, y)
                                                    : fundamental_equation_residual(u, alpha, x, y);
      if (result.points == 0 || r > result.max_residual) {
        result.max_residual = r;
        result.argmax_x = x;
        result.argmax_y = y;
      }
      ++result.points;
    }
  }
  return result;
}

}  // namespace modcert
