#include "modcert/group_element.hpp"

#include <cctype>
#include <utility>

namespace modcert {

GroupElement::GroupElement() : a_(1), b_(0), c_(0), d_(1) {}

GroupElement::GroupElement(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  normalize();
}

GroupElement GroupElement::from_entries(BigInt a, BigInt b, BigInt c, BigInt d) {
  const BigInt det = a * d - b * c;
  if (det != 1 && det != -1) {
    throw InvalidMatrix("determinant must be +1 or -1, got " + det.get_str());
  }
  return GroupElement(std::move(a), std::move(b), std::move(c), std::move(d));
}

GroupElement GroupElement::from_entries(long a, long b, long c, long d) {
  return from_entries(BigInt(a), BigInt(b), BigInt(c), BigInt(d));
}

void GroupElement::normalize() {
  const BigInt* first = &a_;
  if (a_ == 0) first = (b_ != 0) ? &b_ : (c_ != 0) ? &c_ : &d_;
  if (sgn(*first) < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

int GroupElement::determinant() const {
  const BigInt det = a_ * d_ - b_ * c_;
  return sgn(det);
}

GroupElement GroupElement::inverse() const {
  // Adjugate divided by the determinant; the sign is absorbed when det = -1.
  if (determinant() == 1) return GroupElement(d_, -b_, -c_, a_);
  return GroupElement(-d_, b_, c_, -a_);
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  return GroupElement(g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
                      g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_);
}

bool operator==(const GroupElement& g, const GroupElement& h) {
  return g.a_ == h.a_ && g.b_ == h.b_ && g.c_ == h.c_ && g.d_ == h.d_;
}

std::string GroupElement::to_string() const {
  return "[[" + a_.get_str() + "," + b_.get_str() + "],[" + c_.get_str() + "," + d_.get_str() + "]]";
}

GroupElement power(const GroupElement& g, long n) {
  GroupElement base = n < 0 ? g.inverse() : g;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  GroupElement result;
  while (k != 0) {
    if (k & 1UL) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

GroupElement parse_group_element(std::string_view text) {
  std::string stripped;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) stripped.push_back(ch);
  }
  const std::string_view s(stripped);
  if (s.size() < 9 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]") {
    throw ParseError("expected [[a,b],[c,d]], got '" + std::string(text) + "'");
  }
  const std::string_view inner = s.substr(2, s.size() - 4);
  const auto sep = inner.find("],[");
  if (sep == std::string_view::npos) {
    throw ParseError("expected [[a,b],[c,d]], got '" + std::string(text) + "'");
  }
  auto split_pair = [&](std::string_view row) {
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("matrix row must have two entries: '" + std::string(row) + "'");
    }
    return std::pair{parse_integer(row.substr(0, comma)), parse_integer(row.substr(comma + 1))};
  };
  auto [a, b] = split_pair(inner.substr(0, sep));
  auto [c, d] = split_pair(inner.substr(sep + 3));
  return GroupElement::from_entries(std::move(a), std::move(b), std::move(c), std::move(d));
}

}  // namespace modcert
