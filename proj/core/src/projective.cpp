#include "modcert/projective.hpp"

#include <stdexcept>
#include <utility>

namespace modcert {

ProjectivePoint ProjectivePoint::from_coordinates(BigInt p, BigInt q) {
  if (p == 0 && q == 0) {
    throw std::invalid_argument("[0:0] is not a projective point");
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  p /= g;
  q /= g;
  if (sgn(q) < 0 || (q == 0 && sgn(p) < 0)) {
    p = -p;
    q = -q;
  }
  return ProjectivePoint(std::move(p), std::move(q));
}

ProjectivePoint ProjectivePoint::from_coordinates(long p, long q) {
  return from_coordinates(BigInt(p), BigInt(q));
}

ProjectivePoint point_from_rational(const Rational& r) {
  return ProjectivePoint::from_coordinates(r.get_num(), r.get_den());
}

ExtendedRational point_to_rational(const ProjectivePoint& pt) {
  if (pt.is_infinity()) return Infinity{};
  return Rational(pt.p(), pt.q());
}

ProjectivePoint apply_homography(const GroupElement& g, const ProjectivePoint& pt) {
  return ProjectivePoint::from_coordinates(g.a() * pt.p() + g.b() * pt.q(),
                                           g.c() * pt.p() + g.d() * pt.q());
}

std::string to_string(const ProjectivePoint& pt) {
  if (pt.is_infinity()) return "inf";
  if (pt.q() == 1) return pt.p().get_str();
  return pt.p().get_str() + "/" + pt.q().get_str();
}

ProjectivePoint parse_point(std::string_view text) {
  if (text == "inf") return ProjectivePoint::infinity();
  return point_from_rational(parse_rational(text));
}

}  // namespace modcert
