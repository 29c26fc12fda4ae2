#pragma once

// Vanishing certificates: words in the homographies
//   alpha(x) = (2x - 1) / x,   beta(x) = (1 - x) / x
// and their inverses that carry 1/2 to a target rational while every
// intermediate iterate stays away from 0 and infinity.

#include "modcert/group_element.hpp"
#include "modcert/projective.hpp"
#include "modcert/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace modcert {

enum class Homography { Alpha, Beta };

struct HomographyLetter {
  Homography name;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const HomographyLetter&, const HomographyLetter&) = default;
};

inline constexpr HomographyLetter kAlpha{Homography::Alpha, 1};
inline constexpr HomographyLetter kAlphaInv{Homography::Alpha, -1};
inline constexpr HomographyLetter kBeta{Homography::Beta, 1};
inline constexpr HomographyLetter kBetaInv{Homography::Beta, -1};

/// A, B or their inverses: [[2,-1],[1,0]], [[-1,1],[1,0]], ...
GroupElement letter_matrix(const HomographyLetter& l);

/// "A", "A'", "B", "B'".
std::string to_string(const HomographyLetter& l);
HomographyLetter parse_homography_letter(std::string_view token);

/// The starting point 1/2 = [1:2].
ProjectivePoint certificate_origin();

/// word[i] is applied i-th, starting from 1/2; trace[i] is the point reached
/// after applying word[0..i]. The empty certificate witnesses 1/2 itself.
struct Certificate {
  ProjectivePoint target = certificate_origin();
  std::vector<HomographyLetter> word;
  std::vector<ProjectivePoint> trace;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Iterates of the word applied to 1/2, one per letter.
std::vector<ProjectivePoint> replay(const std::vector<HomographyLetter>& word);

/// The group element w_n * ... * w_1.
GroupElement word_product(const std::vector<HomographyLetter>& word);

class ZeroTarget : public std::domain_error {
 public:
  ZeroTarget() : std::domain_error("0 has no certificate: the target must be nonzero") {}
};

class InternalRepairFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CertifyOptions {
  /// After repairing, replace the prefix ending at the last iterate equal
  /// to 1/2, 1, 2 or -1 with the shortest known word reaching that point.
  bool shorten = true;
};

/// Builds a certificate for a nonzero rational. Throws ZeroTarget for 0.
Certificate generate_certificate(const Rational& r, const CertifyOptions& options = {});

/// Word from 1/2 to r before any repair: Bezout element, S/T decomposition,
/// A/B rewriting, letters listed in application order. Iterates may hit
/// 0 or infinity.
std::vector<HomographyLetter> raw_certificate_word(const Rational& r);

/// Applies the repair rules at the largest index whose iterate is 0 or
/// infinity until none is left. The word must end at a finite nonzero point.
std::vector<HomographyLetter> repair_word(std::vector<HomographyLetter> word);

enum class VerdictKind {
  Valid,
  LengthMismatch,
  ZeroIterate,
  InfiniteIterate,
  TraceMismatch,
  WrongEndpoint,
  GenerationFailed,
};

struct Verdict {
  VerdictKind kind = VerdictKind::Valid;
  /// Zero-based position in the word/trace, when the failure has one.
  std::optional<std::size_t> index;
  std::string reason;

  bool valid() const { return kind == VerdictKind::Valid; }
};

/// Replays the word exactly from 1/2 and checks every iterate against the
/// stored trace, the excluded points 0 and infinity, and the target.
Verdict verify_certificate(const Certificate& c);

std::string to_json(const Certificate& c, int indent = -1);
/// Throws ParseError on malformed JSON or tokens.
Certificate certificate_from_json(std::string_view text);

struct BatchOptions {
  long max_denominator = 1;
  /// When positive, also certify every reduced p/q with q <= max_denominator
  /// and 0 < |p/q| <= signed_bound.
  long signed_bound = 0;
  std::vector<Rational> extra_targets;
  unsigned threads = 1;
  CertifyOptions certify;
};

struct BatchEntry {
  Rational target;
  std::size_t word_length = 0;
  Verdict verdict;
  std::string word;
};

struct BatchReport {
  std::vector<BatchEntry> entries;  // sorted by target
  std::size_t valid = 0;
  std::size_t invalid = 0;
  std::size_t max_word_length = 0;
  std::size_t total_word_length = 0;

  bool all_valid() const { return invalid == 0; }
  /// target,word_length,verdict,word
  std::string to_csv() const;
};

/// Targets of a batch run, sorted and without duplicates.
std::vector<Rational> batch_targets(const BatchOptions& options);

BatchReport batch_certify(const BatchOptions& options);

}  // namespace modcert
