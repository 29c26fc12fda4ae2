#include "modcert/entropy.hpp"

#include <limits>

namespace modcert {

RealDistribution to_real(const RationalDistribution& p) {
  std::vector<double> w;
  w.reserve(p.size());
  for (const Rational& x : p.weights()) w.push_back(x.get_d());
  return RealDistribution::from_weights(std::move(w), p.labels());
}

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError("alpha must be a positive real, got " + std::to_string(value));
  }
  if (value == std::floor(value) && value <= std::numeric_limits<unsigned>::max()) {
    integer_ = static_cast<unsigned>(value);
  }
}

Alpha Alpha::from_rational(const Rational& value) {
  if (sgn(value) <= 0) throw DomainError("alpha must be positive, got " + to_string(value));
  return Alpha(value.get_d());
}

Alpha Alpha::parse(std::string_view text) {
  try {
    return from_rational(parse_rational(text));
  } catch (const ParseError&) {
  }
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParseError("not a number: '" + s + "'");
  return Alpha(v);
}

double shannon_entropy(const RealDistribution& p, double log_base) {
  if (!(log_base > 0.0) || log_base == 1.0) throw DomainError("log base must be positive and != 1");
  double h = 0.0;
  for (double w : p.weights()) {
    if (w > 0.0) h -= w * std::log(w);
  }
  return h / std::log(log_base);
}

double tsallis_entropy(const RealDistribution& p, const Alpha& alpha) {
  if (alpha.is_one()) throw AlphaIsOne();
  double sum = 0.0;
  for (double w : p.weights()) {
    if (w > 0.0) sum += std::pow(w, alpha.value());
  }
  return (sum - 1.0) / (1.0 - alpha.value());
}

Rational tsallis_entropy(const RationalDistribution& p, unsigned alpha) {
  if (alpha == 1) throw AlphaIsOne();
  if (alpha == 0) throw DomainError("alpha must be positive");
  Rational sum = 0;
  for (const Rational& w : p.weights()) sum += pow(w, alpha);
  Rational out = (sum - 1) / Rational(1 - static_cast<long>(alpha));
  out.canonicalize();
  return out;
}

double generalized_entropy(const RealDistribution& p, const Alpha& alpha) {
  return alpha.is_one() ? shannon_entropy(p) : tsallis_entropy(p, alpha);
}

namespace {

template <typename T, typename Entropy, typename Power>
T chain_rule_gap(const JointDistribution<T>& joint, ChainOrder order, Entropy&& f, Power&& weight_pow) {
  const Axis axis = order == ChainOrder::XFirst ? Axis::Row : Axis::Col;
  const Distribution<T> marginal = marginalize(joint, axis);
  T rhs = f(marginal);
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    if (!detail::is_positive(marginal.weights()[i])) continue;
    rhs += weight_pow(marginal.weights()[i]) * f(condition(joint, axis, marginal.labels()[i]));
  }
  return T(f(joint.flatten()) - rhs);
}

}  // namespace

double chain_rule_residual(const RealJoint& joint, const Alpha& alpha, ChainOrder order) {
  return chain_rule_residual(joint, alpha, order,
                             [&alpha](const RealDistribution& p) { return generalized_entropy(p, alpha); });
}

double chain_rule_residual(const RealJoint& joint, const Alpha& alpha, ChainOrder order,
                           const EntropyFunctional& f) {
  const double a = alpha.value();
  return std::abs(chain_rule_gap(joint, order, f, [a](double w) { return std::pow(w, a); }));
}

Rational chain_rule_residual(const RationalJoint& joint, unsigned alpha, ChainOrder order) {
  auto f = [alpha](const RationalDistribution& p) { return tsallis_entropy(p, alpha); };
  auto w_pow = [alpha](const Rational& w) { return pow(w, alpha); };
  return abs(chain_rule_gap(joint, order, f, w_pow));
}

double binary_solution_s(double x, const Alpha& alpha, double log_base) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("s_alpha is defined on [0, 1], got " + std::to_string(x));
  const double y = 1.0 - x;
  if (alpha.is_one()) {
    auto term = [](double t) { return t > 0.0 ? -t * std::log(t) : 0.0; };
    return (term(x) + term(y)) / std::log(log_base);
  }
  const double a = alpha.value();
  return (std::pow(x, a) + std::pow(y, a) - 1.0) / (1.0 - a);
}

Rational binary_solution_s(const Rational& x, unsigned alpha) {
  if (alpha == 1) throw AlphaIsOne();
  if (alpha == 0) throw DomainError("alpha must be positive");
  if (sgn(x) < 0 || x > 1) throw DomainError("s_alpha is defined on [0, 1], got " + to_string(x));
  Rational out = (pow(x, alpha) + pow(Rational(1 - x), alpha) - 1) / Rational(1 - static_cast<long>(alpha));
  out.canonicalize();
  return out;
}

}  // namespace modcert
