#pragma once

// Word language for group elements and the JSON group-spec format.
//
//   word := term { ("*" | WS) term }
//   term := atom [ "^" int ]
//   atom := NAME | "[" word { "," word } "]" | "(" word ")"
//
// Brackets are left-normed commutators: [a,b,c] = [[a,b],c]. The bare name
// "e" denotes the identity.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nilcap/hall_basis.hpp"
#include "nilcap/normal_form.hpp"

namespace nilcap {

struct WordAST {
  enum class Kind { kIdentity, kGen, kPower, kProduct, kBracket };

  Kind kind = Kind::kIdentity;
  std::string name;           // kGen
  std::int64_t exponent = 0;  // kPower
  std::vector<WordAST> children;

  static WordAST identity() { return {}; }
  static WordAST gen(std::string name);
  static WordAST power(WordAST base, std::int64_t exponent);
  static WordAST product(std::vector<WordAST> factors);
  static WordAST bracket(std::vector<WordAST> entries);

  friend bool operator==(const WordAST&, const WordAST&) = default;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses one word. Single-factor products are returned as the factor itself.
WordAST parse_word(std::string_view text);

/// Canonical text; parse_word(format_word(w)) == w for parser output.
std::string format_word(const WordAST& w);

/// "x1^a x2^b [x2,x1]^c ..." with zero exponents omitted; identity is "e".
std::string format_normal_form(const NormalForm& nf);

/// Names used in a word, sorted and deduplicated ("e" is not a name).
std::vector<std::string> word_names(const WordAST& w);

struct Presentation11 {
  int alpha = 0;
  int beta = 0;
  int gamma = 0;
  int sigma = 0;

  friend bool operator==(const Presentation11&, const Presentation11&) = default;
};

/// Throws std::invalid_argument naming the violated constraint.
void validate_presentation11(std::uint64_t p, const Presentation11& params);

/// Declarative group description. Orders are given per generator in the
/// user's order; relators refer to x1..xr in that same order.
struct GroupSpec {
  std::uint64_t prime = 0;
  int nilpotency_class = 0;
  std::vector<int> orders;
  BasisVariant variant = BasisVariant::kStandard;
  std::vector<WordAST> relators;
  std::optional<Presentation11> presentation11;

  /// Checks ranges and variant constraints; throws std::invalid_argument.
  void validate() const;
};

GroupSpec parse_group_spec(std::string_view json_text);
std::string group_spec_to_json(const GroupSpec& spec);

}  // namespace nilcap
