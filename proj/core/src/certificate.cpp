#include "modcert/certificate.hpp"

#include "modcert/modgroup.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace modcert {

namespace {

using ordered_json = nlohmann::ordered_json;

const ProjectivePoint& origin() {
  static const ProjectivePoint half = ProjectivePoint::from_coordinates(1, 2);
  return half;
}

bool is_excluded(const ProjectivePoint& x) { return x.is_zero() || x.is_infinity(); }

// Shortest words from 1/2 to the points that can follow a visit to 0 or
// infinity. Their iterates avoid both excluded points.
const std::vector<HomographyLetter>* anchor_word(const ProjectivePoint& x) {
  static const ProjectivePoint one = ProjectivePoint::from_coordinates(1, 1);
  static const ProjectivePoint two = ProjectivePoint::from_coordinates(2, 1);
  static const ProjectivePoint minus_one = ProjectivePoint::from_coordinates(-1, 1);
  static const std::vector<HomographyLetter> to_half{};
  static const std::vector<HomographyLetter> to_one{kBeta};
  static const std::vector<HomographyLetter> to_two{kBetaInv, kBetaInv, kAlpha, kBeta};
  static const std::vector<HomographyLetter> to_minus_one{kBetaInv, kBetaInv, kAlpha, kAlpha};
  if (x == origin()) return &to_half;
  if (x == one) return &to_one;
  if (x == two) return &to_two;
  if (x == minus_one) return &to_minus_one;
  return nullptr;
}

std::vector<HomographyLetter> splice(const std::vector<HomographyLetter>& prefix,
                                     const std::vector<HomographyLetter>& word, std::size_t from) {
  std::vector<HomographyLetter> out(prefix);
  out.insert(out.end(), word.begin() + static_cast<std::ptrdiff_t>(from), word.end());
  return out;
}

std::vector<HomographyLetter> shorten_word(std::vector<HomographyLetter> word) {
  const auto trace = replay(word);
  for (std::size_t j = trace.size(); j-- > 0;) {
    const auto* anchor = anchor_word(trace[j]);
    if (anchor != nullptr) {
      if (anchor->size() <= j + 1) return splice(*anchor, word, j + 1);
      break;
    }
  }
  return word;
}

HomographyLetter from_generator_letter(const Letter& l) {
  return {l.name == Generator::A ? Homography::Alpha : Homography::Beta, l.exponent};
}

}  // namespace

GroupElement letter_matrix(const HomographyLetter& l) {
  static const GroupElement a = named_element(NamedElement::A);
  static const GroupElement b = named_element(NamedElement::B);
  static const GroupElement a_inv = a.inverse();
  static const GroupElement b_inv = b.inverse();
  if (l.name == Homography::Alpha) return l.exponent > 0 ? a : a_inv;
  return l.exponent > 0 ? b : b_inv;
}

std::string to_string(const HomographyLetter& l) {
  std::string s = l.name == Homography::Alpha ? "A" : "B";
  if (l.exponent < 0) s += "'";
  return s;
}

HomographyLetter parse_homography_letter(std::string_view token) {
  if (token == "A") return kAlpha;
  if (token == "A'") return kAlphaInv;
  if (token == "B") return kBeta;
  if (token == "B'") return kBetaInv;
  throw ParseError("bad homography letter '" + std::string(token) + "'");
}

ProjectivePoint certificate_origin() { return origin(); }

std::vector<ProjectivePoint> replay(const std::vector<HomographyLetter>& word) {
  std::vector<ProjectivePoint> trace;
  trace.reserve(word.size());
  ProjectivePoint x = origin();
  for (const HomographyLetter& l : word) {
    x = apply_homography(letter_matrix(l), x);
    trace.push_back(x);
  }
  return trace;
}

GroupElement word_product(const std::vector<HomographyLetter>& word) {
  GroupElement g;
  for (const HomographyLetter& l : word) g = letter_matrix(l) * g;
  return g;
}

std::vector<HomographyLetter> raw_certificate_word(const Rational& r) {
  if (r == 0) throw ZeroTarget();
  // seed maps 0 to 1/2, so g maps 1/2 to r.
  static const GroupElement seed = GroupElement::from_entries(1, 1, 1, 2);
  GroupElement g = bezout_element(point_from_rational(r)) * seed.inverse();

  GeneratorWord ab(Alphabet::AB);
  if (g.determinant() < 0) {
    ab.push_back({Generator::B, 1});
    g = named_element(NamedElement::B).inverse() * g;
  }
  ab.append(rewrite_st_to_ab(decompose_st(g)));

  // ab multiplies left to right; the rightmost letter acts first.
  std::vector<HomographyLetter> word;
  word.reserve(ab.size());
  for (auto it = ab.letters().rbegin(); it != ab.letters().rend(); ++it) {
    word.push_back(from_generator_letter(*it));
  }
  return word;
}

std::vector<HomographyLetter> repair_word(std::vector<HomographyLetter> word) {
  // Each pass moves the largest bad index strictly down, so this bound is
  // never reached by a correct implementation.
  const std::size_t max_passes = word.size() + 1;
  for (std::size_t pass = 0; pass <= max_passes; ++pass) {
    const auto trace = replay(word);
    std::size_t bad = trace.size();
    for (std::size_t i = trace.size(); i-- > 0;) {
      if (is_excluded(trace[i])) {
        bad = i;
        break;
      }
    }
    if (bad == trace.size()) return word;
    if (bad + 1 == trace.size()) {
      throw InternalRepairFailure("word ends at " + to_string(trace.back()));
    }
    const auto* anchor = anchor_word(trace[bad + 1]);
    if (anchor == nullptr) {
      throw InternalRepairFailure("iterate after " + to_string(trace[bad]) + " is " +
                                  to_string(trace[bad + 1]));
    }
    word = splice(*anchor, word, bad + 2);
  }
  throw InternalRepairFailure("repair did not terminate");
}

Certificate generate_certificate(const Rational& r, const CertifyOptions& options) {
  std::vector<HomographyLetter> word = repair_word(raw_certificate_word(r));
  if (options.shorten) word = shorten_word(std::move(word));

  Certificate c;
  c.target = point_from_rational(r);
  c.trace = replay(word);
  c.word = std::move(word);
  if (const Verdict v = verify_certificate(c); !v.valid()) {
    throw InternalRepairFailure("certificate for " + to_string(r) + " failed verification: " + v.reason);
  }
  return c;
}

Verdict verify_certificate(const Certificate& c) {
  auto fail = [](VerdictKind kind, std::optional<std::size_t> index, std::string reason) {
    return Verdict{kind, index, std::move(reason)};
  };
  if (c.word.size() != c.trace.size()) {
    return fail(VerdictKind::LengthMismatch, std::nullopt,
                "word has " + std::to_string(c.word.size()) + " letters but trace has " +
                    std::to_string(c.trace.size()) + " points");
  }
  ProjectivePoint x = origin();
  for (std::size_t i = 0; i < c.word.size(); ++i) {
    x = apply_homography(letter_matrix(c.word[i]), x);
    const std::string at = " at index " + std::to_string(i);
    if (c.trace[i].is_zero() || x.is_zero()) return fail(VerdictKind::ZeroIterate, i, "zero" + at);
    if (c.trace[i].is_infinity() || x.is_infinity()) {
      return fail(VerdictKind::InfiniteIterate, i, "infinity" + at);
    }
    if (!(c.trace[i] == x)) {
      return fail(VerdictKind::TraceMismatch, i,
                  "trace mismatch" + at + ": recorded " + to_string(c.trace[i]) + ", replayed " + to_string(x));
    }
  }
  if (!(x == c.target)) {
    return fail(VerdictKind::WrongEndpoint, std::nullopt,
                "endpoint " + to_string(x) + " differs from target " + to_string(c.target));
  }
  return {};
}

std::string to_json(const Certificate& c, int indent) {
  ordered_json j;
  j["target"] = to_string(c.target);
  j["word"] = ordered_json::array();
  for (const auto& l : c.word) j["word"].push_back(to_string(l));
  j["trace"] = ordered_json::array();
  for (const auto& x : c.trace) j["trace"].push_back(to_string(x));
  return j.dump(indent);
}

Certificate certificate_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("certificate JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("target") || !j.contains("word") || !j.contains("trace") ||
      !j["target"].is_string() || !j["word"].is_array() || !j["trace"].is_array()) {
    throw ParseError("certificate JSON needs string 'target' and arrays 'word', 'trace'");
  }
  Certificate c;
  c.target = parse_point(j["target"].get<std::string>());
  for (const auto& tok : j["word"]) {
    if (!tok.is_string()) throw ParseError("word entries must be strings");
    c.word.push_back(parse_homography_letter(tok.get<std::string>()));
  }
  for (const auto& tok : j["trace"]) {
    if (!tok.is_string()) throw ParseError("trace entries must be strings");
    c.trace.push_back(parse_point(tok.get<std::string>()));
  }
  return c;
}

std::string BatchReport::to_csv() const {
  std::ostringstream out;
  out << "target,word_length,verdict,word\n";
  for (const auto& e : entries) {
    out << to_string(e.target) << ',' << e.word_length << ','
        << (e.verdict.valid() ? "VALID" : "INVALID: " + e.verdict.reason) << ',' << e.word << '\n';
  }
  return out.str();
}

std::vector<Rational> batch_targets(const BatchOptions& options) {
  if (options.max_denominator < 1) {
    throw std::invalid_argument("max_denominator must be at least 1");
  }
  std::set<Rational> targets;
  for (long q = 1; q <= options.max_denominator; ++q) {
    const long top = std::max(q, options.signed_bound * q);
    for (long p = 1; p <= top; ++p) {
      if (std::gcd(p, q) != 1) continue;
      targets.insert(make_rational(p, q));
      if (options.signed_bound > 0) targets.insert(make_rational(-p, q));
    }
  }
  for (const auto& r : options.extra_targets) targets.insert(r);
  return {targets.begin(), targets.end()};
}

BatchReport batch_certify(const BatchOptions& options) {
  const std::vector<Rational> targets = batch_targets(options);
  BatchReport report;
  report.entries.resize(targets.size());

  auto work = [&](std::size_t i) {
    BatchEntry& e = report.entries[i];
    e.target = targets[i];
    try {
      const Certificate c = generate_certificate(targets[i], options.certify);
      e.verdict = verify_certificate(c);
      e.word_length = c.word.size();
      std::string w;
      for (const auto& l : c.word) {
        if (!w.empty()) w += ' ';
        w += to_string(l);
      }
      e.word = std::move(w);
    } catch (const std::exception& ex) {
      e.verdict = Verdict{VerdictKind::GenerationFailed, std::nullopt, ex.what()};
    }
  };

  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < targets.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < targets.size(); i = next++) work(i);
      });
    }
  }

  for (const auto& e : report.entries) {
    if (e.verdict.valid()) {
      ++report.valid;
    } else {
      ++report.invalid;
    }
    report.max_word_length = std::max(report.max_word_length, e.word_length);
    report.total_word_length += e.word_length;
  }
  return report;
}

}  // namespace modcert
