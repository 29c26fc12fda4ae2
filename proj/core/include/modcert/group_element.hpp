#pragma once

// 2x2 integer matrices of determinant +-1, taken modulo {+I, -I}.

#include "modcert/rational.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace modcert {

class InvalidMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of GL2(Z)/{+-I}, stored as [[a, b], [c, d]].
///
/// The representative is normalized so that the first nonzero entry of
/// (a, b, c, d) is positive. Two elements are equal exactly when their
/// normalized entries are equal. The det +1 elements form PSL2(Z).
class GroupElement {
 public:
  /// The identity.
  GroupElement();

  /// Throws InvalidMatrix unless ad - bc is +1 or -1.
  static GroupElement from_entries(BigInt a, BigInt b, BigInt c, BigInt d);
  static GroupElement from_entries(long a, long b, long c, long d);

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& c() const { return c_; }
  const BigInt& d() const { return d_; }

  /// +1 or -1.
  int determinant() const;
  bool in_psl2() const { return determinant() == 1; }

  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
  friend bool operator==(const GroupElement& g, const GroupElement& h);

  /// "[[a,b],[c,d]]"
  std::string to_string() const;

 private:
  GroupElement(BigInt a, BigInt b, BigInt c, BigInt d);
  void normalize();

  BigInt a_;
  BigInt b_;
  BigInt c_;
  BigInt d_;
};

inline GroupElement multiply(const GroupElement& g, const GroupElement& h) { return g * h; }
inline GroupElement invert(const GroupElement& g) { return g.inverse(); }
inline int determinant(const GroupElement& g) { return g.determinant(); }

/// g^n for any integer n.
GroupElement power(const GroupElement& g, long n);

/// Parses "[[a,b],[c,d]]" (whitespace tolerated).
GroupElement parse_group_element(std::string_view text);

}  // namespace modcert
