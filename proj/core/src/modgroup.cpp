#include "modcert/modgroup.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace modcert {

GroupElement named_element(NamedElement name) {
  switch (name) {
    case NamedElement::S: return GroupElement::from_entries(0, -1, 1, 0);
    case NamedElement::T: return GroupElement::from_entries(1, 1, 0, 1);
    case NamedElement::A: return GroupElement::from_entries(2, -1, 1, 0);
    case NamedElement::B: return GroupElement::from_entries(-1, 1, 1, 0);
    case NamedElement::B2: return GroupElement::from_entries(2, -1, -1, 1);
    case NamedElement::P: return GroupElement::from_entries(0, 1, -1, 1);
    case NamedElement::Identity: return GroupElement();
  }
  throw std::logic_error("unknown named element");
}

Alphabet alphabet_of(Generator g) {
  return (g == Generator::S || g == Generator::T) ? Alphabet::ST : Alphabet::AB;
}

GroupElement letter_element(const Letter& l) {
  static const GroupElement s = named_element(NamedElement::S);
  static const GroupElement t = named_element(NamedElement::T);
  static const GroupElement a = named_element(NamedElement::A);
  static const GroupElement b = named_element(NamedElement::B);
  const GroupElement* base = nullptr;
  switch (l.name) {
    case Generator::S: base = &s; break;
    case Generator::T: base = &t; break;
    case Generator::A: base = &a; break;
    case Generator::B: base = &b; break;
  }
  return l.exponent > 0 ? *base : base->inverse();
}

GeneratorWord::GeneratorWord(Alphabet alphabet, std::vector<Letter> letters) : alphabet_(alphabet) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) push_back(l);
}

void GeneratorWord::push_back(const Letter& l) {
  if (alphabet_of(l.name) != alphabet_) {
    throw std::invalid_argument("letter " + modcert::to_string(l) + " is not in the word's alphabet");
  }
  if (l.exponent != 1 && l.exponent != -1) {
    throw std::invalid_argument("letter exponent must be +1 or -1");
  }
  if (!letters_.empty() && letters_.back() == l.inverse()) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

void GeneratorWord::append(const GeneratorWord& other) {
  for (const Letter& l : other.letters_) push_back(l);
}

GroupElement GeneratorWord::evaluate() const {
  GroupElement product;
  for (const Letter& l : letters_) product = product * letter_element(l);
  return product;
}

GeneratorWord GeneratorWord::inverse() const {
  GeneratorWord out(alphabet_);
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return out;
}

std::string to_string(const Letter& l) {
  std::string s;
  switch (l.name) {
    case Generator::S: s = "S"; break;
    case Generator::T: s = "T"; break;
    case Generator::A: s = "A"; break;
    case Generator::B: s = "B"; break;
  }
  if (l.exponent < 0) s += "'";
  return s;
}

Letter parse_letter(std::string_view token) {
  if (token.empty() || token.size() > 2 || (token.size() == 2 && token[1] != '\'')) {
    throw ParseError("bad letter token '" + std::string(token) + "'");
  }
  const int exponent = token.size() == 2 ? -1 : 1;
  switch (token[0]) {
    case 'S': return {Generator::S, exponent};
    case 'T': return {Generator::T, exponent};
    case 'A': return {Generator::A, exponent};
    case 'B': return {Generator::B, exponent};
    default: throw ParseError("bad letter token '" + std::string(token) + "'");
  }
}

std::string GeneratorWord::to_string() const {
  std::string out;
  for (const Letter& l : letters_) {
    if (!out.empty()) out += ' ';
    out += modcert::to_string(l);
  }
  return out;
}

GeneratorWord GeneratorWord::parse(Alphabet alphabet, std::string_view text) {
  std::istringstream in{std::string(text)};
  GeneratorWord word(alphabet);
  std::string token;
  while (in >> token) {
    try {
      word.push_back(parse_letter(token));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return word;
}

namespace {

void push_power(GeneratorWord& word, Generator gen, const BigInt& n) {
  if (!n.fits_slong_p()) {
    throw std::length_error("generator exponent " + n.get_str() + " is too large to spell out");
  }
  const long k = n.get_si();
  const Letter l{gen, k < 0 ? -1 : 1};
  for (long i = 0; i < (k < 0 ? -k : k); ++i) word.push_back(l);
}

}  // namespace

GeneratorWord decompose_st(const GroupElement& g) {
  if (!g.in_psl2()) {
    throw NotInPsl2("element " + g.to_string() + " has determinant -1");
  }
  // Invariant: g = word * [[a,b],[c,d]] up to sign.
  BigInt a = g.a(), b = g.b(), c = g.c(), d = g.d();
  GeneratorWord word(Alphabet::ST);
  BigInt q;
  while (c != 0) {
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    // T^-q lowers the top row so that |a| < |c|.
    a -= q * c;
    b -= q * d;
    push_power(word, Generator::T, q);
    // S^-1 [[a,b],[c,d]] = [[c,d],[-a,-b]].
    BigInt na = c, nb = d;
    c = -a;
    d = -b;
    a = std::move(na);
    b = std::move(nb);
    word.push_back({Generator::S, 1});
  }
  // Now [[a,b],[0,d]] with a = d = +-1, i.e. T^(b/a).
  push_power(word, Generator::T, a * b);
  return word;
}

GeneratorWord rewrite_st_to_ab(const GeneratorWord& word) {
  if (word.alphabet() != Alphabet::ST) {
    throw std::invalid_argument("rewrite_st_to_ab expects an S/T word");
  }
  constexpr Letter a{Generator::A, 1}, ai{Generator::A, -1};
  constexpr Letter b{Generator::B, 1}, bi{Generator::B, -1};
  static const GeneratorWord s_block(Alphabet::AB, {b, b, a, bi, bi, a, a, bi, bi});
  static const GeneratorWord t_block(Alphabet::AB, {b, b, ai, bi, bi});
  static const GeneratorWord s_inv_block = s_block.inverse();
  static const GeneratorWord t_inv_block = t_block.inverse();

  GeneratorWord out(Alphabet::AB);
  for (const Letter& l : word.letters()) {
    if (l.name == Generator::S) {
      out.append(l.exponent > 0 ? s_block : s_inv_block);
    } else {
      out.append(l.exponent > 0 ? t_block : t_inv_block);
    }
  }
  return out;
}

GroupElement bezout_element(const ProjectivePoint& target) {
  const BigInt& p = target.p();
  const BigInt& q = target.q();
  if (target.is_zero()) return GroupElement();
  if (target.is_infinity()) return GroupElement::from_entries(0, 1, -1, 0);
  // x q = 1 (mod p), reduced into [0, |p|); then y = (x q - 1) / p exactly.
  BigInt abs_p = abs(p);
  BigInt x;
  if (abs_p == 1) {
    x = 0;
  } else {
    BigInt q_mod = q % abs_p;
    if (mpz_invert(x.get_mpz_t(), q_mod.get_mpz_t(), abs_p.get_mpz_t()) == 0) {
      throw std::logic_error("non-reduced projective point");
    }
  }
  BigInt y = (x * q - 1) / p;
  return GroupElement::from_entries(x, p, y, q);
}

std::vector<IdentityCheck> check_matrix_identities() {
  const GroupElement s = named_element(NamedElement::S);
  const GroupElement t = named_element(NamedElement::T);
  const GroupElement a = named_element(NamedElement::A);
  const GroupElement b = named_element(NamedElement::B);
  const GroupElement b2 = named_element(NamedElement::B2);
  const GroupElement p = named_element(NamedElement::P);
  const GroupElement id;
  const GroupElement ai = a.inverse(), b2i = b2.inverse(), pi = p.inverse();
  const GroupElement si = s.inverse(), ti = t.inverse();

  std::vector<IdentityCheck> checks;
  auto check = [&](std::string name, const GroupElement& lhs, const GroupElement& rhs) {
    checks.push_back({std::move(name), lhs.to_string(), rhs.to_string(), lhs == rhs});
  };

  check("B*B = [[2,-1],[-1,1]]", b * b, GroupElement::from_entries(2, -1, -1, 1));
  check("B*A^-1 = [[-1,1],[0,1]]", b * ai, GroupElement::from_entries(-1, 1, 0, 1));
  check("P = S^-1*T^-1 = [[0,1],[-1,1]]", si * ti, GroupElement::from_entries(0, 1, -1, 1));
  check("P*A*P^-1 = [[1,-1],[0,1]]", p * a * pi, GroupElement::from_entries(1, -1, 0, 1));
  check("P*A*P^-1 = T^-1", p * a * pi, ti);
  // As printed; exact multiplication gives [[0,1],[-1,3]] for P*B^2*P^-1.
  check("P*B^2*P^-1 = [[3,-1],[1,0]]", p * b2 * pi, GroupElement::from_entries(3, -1, 1, 0));
  check("P*B^-2*P^-1 = [[3,-1],[1,0]]", p * b2i * pi, GroupElement::from_entries(3, -1, 1, 0));
  check("S = T^-3*P*B^-2*P^-1", power(t, -3) * p * b2i * pi, s);
  check("T = P*A^-1*P^-1", p * ai * pi, t);
  check("S = P*A^3*B^-2*P^-1", p * power(a, 3) * b2i * pi, s);
  check("P*S*P^-1 = S^-1*T^-1*S*T*S", p * s * pi, si * ti * s * t * s);
  check("P*T*P^-1 = S^-1*T*S", p * t * pi, si * t * s);
  check("S = B^2*A*B^-2*A^2*B^-2", b2 * a * b2i * a * a * b2i, s);
  check("T = B^2*A^-1*B^-2", b2 * ai * b2i, t);
  check("S^2 = I", s * s, id);
  check("(S*T)^3 = I", power(s * t, 3), id);

  // B*A^-1 acts as x -> 1 - x.
  const GroupElement reflection = b * ai;
  std::string computed, expected;
  bool pass = true;
  for (const char* sample : {"0", "1", "1/2", "1/3", "-2", "inf"}) {
    const ProjectivePoint x = parse_point(sample);
    const ProjectivePoint image = apply_homography(reflection, x);
    const ProjectivePoint want =
        x.is_infinity() ? x : point_from_rational(Rational(1) - Rational(x.p(), x.q()));
    if (!computed.empty()) {
      computed += ", ";
      expected += ", ";
    }
    computed += std::string(sample) + "->" + to_string(image);
    expected += std::string(sample) + "->" + to_string(want);
    pass = pass && image == want;
  }
  checks.push_back({"B*A^-1 acts as x -> 1-x", computed, expected, pass});
  return checks;
}

}  // namespace modcert
