#pragma once

// The rational projective line P1(Q) and the homography action of
// GroupElement on it.

#include "modcert/group_element.hpp"
#include "modcert/rational.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace modcert {

/// A point [p:q] of P1(Q) in canonical form: gcd(|p|,|q|) = 1 and either
/// q > 0, or q = 0 and p = 1. Infinity is exactly [1:0], so equality of
/// points is equality of coordinates.
class ProjectivePoint {
 public:
  /// Reduces and fixes the sign. Throws std::invalid_argument for (0, 0).
  static ProjectivePoint from_coordinates(BigInt p, BigInt q);
  static ProjectivePoint from_coordinates(long p, long q);

  static ProjectivePoint infinity() { return ProjectivePoint(BigInt(1), BigInt(0)); }
  static ProjectivePoint zero() { return ProjectivePoint(BigInt(0), BigInt(1)); }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }

  bool is_infinity() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0; }

  friend bool operator==(const ProjectivePoint& x, const ProjectivePoint& y) {
    return x.p_ == y.p_ && x.q_ == y.q_;
  }

 private:
  ProjectivePoint(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {}

  BigInt p_;
  BigInt q_;
};

struct Infinity {
  friend bool operator==(Infinity, Infinity) { return true; }
};

/// The affine view of a projective point: a rational or the point at infinity.
using ExtendedRational = std::variant<Rational, Infinity>;

ProjectivePoint point_from_rational(const Rational& r);
ExtendedRational point_to_rational(const ProjectivePoint& pt);

/// Canonical form of [a p + b q : c p + d q].
ProjectivePoint apply_homography(const GroupElement& g, const ProjectivePoint& pt);

/// "p/q", "p" when q = 1, and "inf" for [1:0].
std::string to_string(const ProjectivePoint& pt);

/// Inverse of to_string: accepts "inf" or any rational literal.
ProjectivePoint parse_point(std::string_view text);

}  // namespace modcert
