#pragma once

// Named generators of the modular group, words over {S, T} and {A, B},
// Euclidean decomposition into S/T letters and rewriting into A/B letters.

#include "modcert/group_element.hpp"
#include "modcert/projective.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modcert {

enum class NamedElement { S, T, A, B, B2, P, Identity };

/// S = [[0,-1],[1,0]], T = [[1,1],[0,1]], A = [[2,-1],[1,0]],
/// B = [[-1,1],[1,0]] (det -1), B2 = B*B, P = S^-1 T^-1.
GroupElement named_element(NamedElement name);

enum class Alphabet { ST, AB };
enum class Generator { S, T, A, B };

struct Letter {
  Generator name;
  int exponent = 1;  // +1 or -1

  Letter inverse() const { return {name, -exponent}; }
  friend bool operator==(const Letter&, const Letter&) = default;
};

Alphabet alphabet_of(Generator g);
GroupElement letter_element(const Letter& l);

class NotInPsl2 : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A freely reduced word over one alphabet. Letters are multiplied left to
/// right: the word (x1, ..., xn) denotes x1 * x2 * ... * xn.
class GeneratorWord {
 public:
  explicit GeneratorWord(Alphabet alphabet) : alphabet_(alphabet) {}
  /// Throws std::invalid_argument for letters outside the alphabet and
  /// freely reduces the rest.
  GeneratorWord(Alphabet alphabet, std::vector<Letter> letters);

  Alphabet alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Appends with cancellation against the current last letter.
  void push_back(const Letter& l);
  void append(const GeneratorWord& other);

  GroupElement evaluate() const;
  GeneratorWord inverse() const;

  /// Whitespace separated tokens; inverses carry a trailing apostrophe.
  std::string to_string() const;
  static GeneratorWord parse(Alphabet alphabet, std::string_view text);

  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

std::string to_string(const Letter& l);
Letter parse_letter(std::string_view token);

/// Writes a det +1 element as a word in S and T (no minimality).
/// Throws NotInPsl2 when the determinant is -1.
GeneratorWord decompose_st(const GroupElement& g);

/// S -> B B A B' B' A A B' B', T -> B B A' B' B', inverses by reversal.
GeneratorWord rewrite_st_to_ab(const GeneratorWord& word);

/// A det +1 element g with g[0:1] = target. For [p:q] with p != 0 this is
/// [[x, p], [y, q]] with x q - y p = 1 and 0 <= x < |p|; [0:1] gives the
/// identity and [1:0] gives [[0,1],[-1,0]].
GroupElement bezout_element(const ProjectivePoint& target);

struct IdentityCheck {
  std::string name;
  std::string computed;
  std::string expected;
  bool pass = false;
};

/// Exact checks of the displayed matrix identities relating A, B, P, S, T.
std::vector<IdentityCheck> check_matrix_identities();

}  // namespace modcert
