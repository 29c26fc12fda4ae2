#pragma once

// Finite distributions, Shannon and Tsallis entropies, marginals,
// conditionals and residuals of the alpha-deformed chain rule.
//
// Two numeric modes share one interface: Distribution<Rational> is exact
// (used with integer alpha), Distribution<double> is IEEE arithmetic.

#include "modcert/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace modcert {

class InvalidDistribution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroMarginal : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class AlphaIsOne : public std::domain_error {
 public:
  AlphaIsOne() : std::domain_error("Tsallis entropy is undefined at alpha = 1; use Shannon entropy") {}
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Tolerance on the total mass of a floating-point distribution.
inline constexpr double kNormalizationTolerance = 1e-12;

namespace detail {

inline bool is_negative(const Rational& w) { return sgn(w) < 0; }
inline bool is_negative(double w) { return !(w >= 0.0); }  // rejects NaN too
inline bool is_positive(const Rational& w) { return sgn(w) > 0; }
inline bool is_positive(double w) { return w > 0.0; }
inline bool is_unit_mass(const Rational& total) { return total == 1; }
inline bool is_unit_mass(double total) { return std::abs(total - 1.0) <= kNormalizationTolerance; }
inline std::string weight_text(const Rational& w) { return to_string(w); }
inline std::string weight_text(double w) { return std::to_string(w); }

}  // namespace detail

/// A probability vector on outcomes labelled by integers.
template <typename T>
class Distribution {
 public:
  /// Labels default to 0..n-1. Throws InvalidDistribution for negative
  /// weights, bad mass, duplicate labels or a label/weight size mismatch.
  static Distribution from_weights(std::vector<T> weights, std::vector<long> labels = {}) {
    if (weights.empty()) throw InvalidDistribution("distribution needs at least one outcome");
    if (labels.empty()) {
      labels.resize(weights.size());
      for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<long>(i);
    }
    if (labels.size() != weights.size()) throw InvalidDistribution("label count differs from weight count");
    if (std::set<long>(labels.begin(), labels.end()).size() != labels.size()) {
      throw InvalidDistribution("duplicate outcome label");
    }
    T total{0};
    for (const T& w : weights) {
      if (detail::is_negative(w)) throw InvalidDistribution("negative weight " + detail::weight_text(w));
      total += w;
    }
    if (!detail::is_unit_mass(total)) {
      throw InvalidDistribution("weights sum to " + detail::weight_text(total) + ", not 1");
    }
    return Distribution(std::move(weights), std::move(labels));
  }

  const std::vector<T>& weights() const { return weights_; }
  const std::vector<long>& labels() const { return labels_; }
  std::size_t size() const { return weights_.size(); }

 private:
  Distribution(std::vector<T> w, std::vector<long> l) : weights_(std::move(w)), labels_(std::move(l)) {}

  std::vector<T> weights_;
  std::vector<long> labels_;
};

using RationalDistribution = Distribution<Rational>;
using RealDistribution = Distribution<double>;

RealDistribution to_real(const RationalDistribution& p);

template <typename T>
struct JointCell {
  long row;
  long col;
  T weight;
};

/// A probability on a subset of rows x cols. Cells are kept sorted by
/// (row, col); zero-weight cells are allowed and kept.
template <typename T>
class JointDistribution {
 public:
  static JointDistribution from_cells(std::vector<JointCell<T>> cells) {
    if (cells.empty()) throw InvalidDistribution("joint distribution needs at least one cell");
    std::sort(cells.begin(), cells.end(),
              [](const auto& x, const auto& y) { return std::pair(x.row, x.col) < std::pair(y.row, y.col); });
    T total{0};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0 && cells[i].row == cells[i - 1].row && cells[i].col == cells[i - 1].col) {
        throw InvalidDistribution("duplicate cell (" + std::to_string(cells[i].row) + ", " +
                                  std::to_string(cells[i].col) + ")");
      }
      if (detail::is_negative(cells[i].weight)) {
        throw InvalidDistribution("negative weight " + detail::weight_text(cells[i].weight));
      }
      total += cells[i].weight;
    }
    if (!detail::is_unit_mass(total)) {
      throw InvalidDistribution("weights sum to " + detail::weight_text(total) + ", not 1");
    }
    return JointDistribution(std::move(cells));
  }

  /// The independent joint p (x) q on the full product support.
  static JointDistribution product(const Distribution<T>& p, const Distribution<T>& q) {
    std::vector<JointCell<T>> cells;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < q.size(); ++j) {
        cells.push_back({p.labels()[i], q.labels()[j], T(p.weights()[i] * q.weights()[j])});
      }
    }
    return from_cells(std::move(cells));
  }

  const std::vector<JointCell<T>>& cells() const { return cells_; }

  /// The joint law as a distribution over its support, in cell order.
  Distribution<T> flatten() const {
    std::vector<T> w;
    w.reserve(cells_.size());
    for (const auto& c : cells_) w.push_back(c.weight);
    return Distribution<T>::from_weights(std::move(w));
  }

 private:
  explicit JointDistribution(std::vector<JointCell<T>> cells) : cells_(std::move(cells)) {}

  std::vector<JointCell<T>> cells_;
};

using RationalJoint = JointDistribution<Rational>;
using RealJoint = JointDistribution<double>;

/// ROW is the first variable X, COL the second variable Y.
enum class Axis { Row, Col };

/// X_*p (Row) or Y_*p (Col), with outcomes in increasing label order.
template <typename T>
Distribution<T> marginalize(const JointDistribution<T>& joint, Axis axis) {
  std::map<long, T> mass;
  for (const auto& c : joint.cells()) {
    auto [it, inserted] = mass.try_emplace(axis == Axis::Row ? c.row : c.col, T{0});
    it->second += c.weight;
  }
  std::vector<T> weights;
  std::vector<long> labels;
  for (auto& [label, w] : mass) {
    labels.push_back(label);
    weights.push_back(std::move(w));
  }
  return Distribution<T>::from_weights(std::move(weights), std::move(labels));
}

/// Law of the other variable given that the `axis` variable equals
/// `outcome`. Throws ZeroMarginal when that outcome has no mass.
template <typename T>
Distribution<T> condition(const JointDistribution<T>& joint, Axis axis, long outcome) {
  T total{0};
  std::vector<T> weights;
  std::vector<long> labels;
  for (const auto& c : joint.cells()) {
    if ((axis == Axis::Row ? c.row : c.col) != outcome) continue;
    total += c.weight;
    weights.push_back(c.weight);
    labels.push_back(axis == Axis::Row ? c.col : c.row);
  }
  if (!detail::is_positive(total)) {
    throw ZeroMarginal("outcome " + std::to_string(outcome) + " has zero marginal probability");
  }
  for (T& w : weights) w = T(w / total);
  // Cells are sorted by (row, col), so the labels are already increasing.
  if constexpr (std::is_same_v<T, double>) {
    // Renormalize away rounding so the conditional passes validation.
    double s = 0.0;
    for (double w : weights) s += w;
    for (double& w : weights) w /= s;
  }
  return Distribution<T>::from_weights(std::move(weights), std::move(labels));
}

/// Degree of a Tsallis entropy. Integer values are flagged so exact
/// rational evaluation can be used.
class Alpha {
 public:
  /// Throws DomainError unless value > 0 and finite.
  explicit Alpha(double value);
  /// Exact value, e.g. 7/2.
  static Alpha from_rational(const Rational& value);
  /// "2", "7/2", "0.5".
  static Alpha parse(std::string_view text);

  double value() const { return value_; }
  bool is_one() const { return integer_ == 1U; }
  /// Set when the value is a positive integer.
  std::optional<unsigned> integer() const { return integer_; }

 private:
  double value_;
  std::optional<unsigned> integer_;
};

/// -sum p log p in the given base, with 0 log 0 = 0. Natural log by default.
double shannon_entropy(const RealDistribution& p, double log_base = std::exp(1.0));

/// (sum p^alpha - 1) / (1 - alpha). Throws AlphaIsOne for alpha = 1.
double tsallis_entropy(const RealDistribution& p, const Alpha& alpha);
/// Exact version for a positive integer degree. Throws AlphaIsOne for 1.
Rational tsallis_entropy(const RationalDistribution& p, unsigned alpha);

/// Tsallis entropy for alpha != 1 and natural-log Shannon entropy at 1.
double generalized_entropy(const RealDistribution& p, const Alpha& alpha);

/// X_FIRST expands through the row marginal, Y_FIRST through the column one.
enum class ChainOrder { XFirst, YFirst };

/// An information functional f[X] evaluated on a law.
using EntropyFunctional = std::function<double(const RealDistribution&)>;

/// |f(p) - f(marginal) - sum_x marginal(x)^alpha f(conditional_x)|, with
/// zero-mass outcomes contributing nothing. f defaults to
/// generalized_entropy(., alpha).
double chain_rule_residual(const RealJoint& joint, const Alpha& alpha, ChainOrder order);
double chain_rule_residual(const RealJoint& joint, const Alpha& alpha, ChainOrder order,
                           const EntropyFunctional& f);
/// Exact residual for integer alpha >= 2.
Rational chain_rule_residual(const RationalJoint& joint, unsigned alpha, ChainOrder order);

/// s_1(x) = -x log2 x - (1-x) log2(1-x) at alpha = 1 (log base selectable),
/// s_alpha(x) = (x^alpha + (1-x)^alpha - 1) / (1 - alpha) otherwise.
/// Throws DomainError outside [0, 1].
double binary_solution_s(double x, const Alpha& alpha, double log_base = 2.0);
/// Exact version for integer alpha >= 2.
Rational binary_solution_s(const Rational& x, unsigned alpha);

}  // namespace modcert
