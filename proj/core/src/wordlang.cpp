#include "nilcap/wordlang.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include <nlohmann/json.hpp>

#include "nilcap/arith.hpp"

namespace nilcap {

bool NormalForm::is_identity() const {
  return std::all_of(exps.begin(), exps.end(), [](std::int64_t e) { return e == 0; });
}

WordAST WordAST::gen(std::string name) {
  WordAST w;
  w.kind = Kind::kGen;
  w.name = std::move(name);
  return w;
}

WordAST WordAST::power(WordAST base, std::int64_t exponent) {
  WordAST w;
  w.kind = Kind::kPower;
  w.exponent = exponent;
  w.children.push_back(std::move(base));
  return w;
}

WordAST WordAST::product(std::vector<WordAST> factors) {
  WordAST w;
  w.kind = Kind::kProduct;
  w.children = std::move(factors);
  return w;
}

WordAST WordAST::bracket(std::vector<WordAST> entries) {
  if (entries.size() < 2) throw std::invalid_argument("bracket needs at least two entries");
  WordAST w;
  w.kind = Kind::kBracket;
  w.children = std::move(entries);
  return w;
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::invalid_argument("at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  WordAST parse_all() {
    skip_ws();
    if (at_end()) throw ParseError("empty word", pos_);
    WordAST w = word();
    skip_ws();
    if (!at_end()) {
      if (peek() == ']' || peek() == ')') throw ParseError("unbalanced '" + std::string(1, peek()) + "'", pos_);
      throw ParseError("unexpected character '" + std::string(1, peek()) + "'", pos_);
    }
    return w;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  static bool starts_term(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '[' || c == '(';
  }

  WordAST word() {
    std::vector<WordAST> factors;
    factors.push_back(term());
    for (;;) {
      skip_ws();
      if (at_end()) break;
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (at_end() || !starts_term(peek())) throw ParseError("expected a factor after '*'", pos_);
        factors.push_back(term());
        continue;
      }
      if (starts_term(peek())) {
        factors.push_back(term());
        continue;
      }
      break;
    }
    if (factors.size() == 1) return std::move(factors[0]);
    return WordAST::product(std::move(factors));
  }

  WordAST term() {
    WordAST base = atom();
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_ws();
      return WordAST::power(std::move(base), integer());
    }
    return base;
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && text_[end] == '-') ++end;
    const std::size_t digits = end;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    if (end == digits) throw ParseError("expected an integer exponent", start);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
    if (ec != std::errc() || ptr != text_.data() + end) throw ParseError("exponent out of range", start);
    pos_ = end;
    return value;
  }

  WordAST atom() {
    skip_ws();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    const char c = peek();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "e") return WordAST::identity();
      return WordAST::gen(std::move(name));
    }
    if (c == '(') {
      const std::size_t open = pos_++;
      skip_ws();
      if (at_end()) throw ParseError("unbalanced '('", open);
      if (peek() == ')') throw ParseError("empty parentheses", pos_);
      WordAST inner = word();
      skip_ws();
      if (at_end() || peek() != ')') throw ParseError("unbalanced '(' (expected ')')", at_end() ? open : pos_);
      ++pos_;
      return inner;
    }
    if (c == '[') {
      const std::size_t open = pos_++;
      skip_ws();
      if (at_end()) throw ParseError("unbalanced '['", open);
      if (peek() == ']') throw ParseError("zero-length bracket", open);
      std::vector<WordAST> entries;
      entries.push_back(word());
      for (;;) {
        skip_ws();
        if (at_end()) throw ParseError("unbalanced '[' (expected ']')", open);
        if (peek() == ',') {
          ++pos_;
          skip_ws();
          if (at_end() || !starts_term(peek())) throw ParseError("expected a word after ','", pos_);
          entries.push_back(word());
          continue;
        }
        if (peek() == ']') {
          ++pos_;
          break;
        }
        throw ParseError("expected ',' or ']'", pos_);
      }
      if (entries.size() < 2) throw ParseError("bracket needs at least two entries", open);
      return WordAST::bracket(std::move(entries));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_atomic(const WordAST& w) {
  if (w.kind == WordAST::Kind::kProduct || w.kind == WordAST::Kind::kPower) {
    return "(" + format_word(w) + ")";
  }
  return format_word(w);
}

void collect_names(const WordAST& w, std::set<std::string>& out) {
  if (w.kind == WordAST::Kind::kGen) out.insert(w.name);
  for (const auto& c : w.children) collect_names(c, out);
}

}  // namespace

WordAST parse_word(std::string_view text) { return Parser(text).parse_all(); }

std::string format_word(const WordAST& w) {
  switch (w.kind) {
    case WordAST::Kind::kIdentity:
      return "e";
    case WordAST::Kind::kGen:
      return w.name;
    case WordAST::Kind::kPower:
      return format_atomic(w.children.at(0)) + "^" + std::to_string(w.exponent);
    case WordAST::Kind::kProduct: {
      std::string s;
      for (std::size_t i = 0; i < w.children.size(); ++i) {
        if (i) s += " ";
        const auto& c = w.children[i];
        s += c.kind == WordAST::Kind::kProduct ? "(" + format_word(c) + ")" : format_word(c);
      }
      return s;
    }
    case WordAST::Kind::kBracket: {
      std::string s = "[";
      for (std::size_t i = 0; i < w.children.size(); ++i) {
        if (i) s += ",";
        s += format_word(w.children[i]);
      }
      return s + "]";
    }
  }
  return "e";
}

std::string format_normal_form(const NormalForm& nf) {
  std::string s;
  for (std::size_t i = 0; i < nf.exps.size(); ++i) {
    if (nf.exps[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += nf.basis->name(static_cast<int>(i));
    if (nf.exps[i] != 1) s += "^" + std::to_string(nf.exps[i]);
  }
  return s.empty() ? "e" : s;
}

std::vector<std::string> word_names(const WordAST& w) {
  std::set<std::string> names;
  collect_names(w, names);
  return {names.begin(), names.end()};
}

void validate_presentation11(std::uint64_t p, const Presentation11& q) {
  arith::require_prime(p);
  if (p == 2) throw std::invalid_argument("presentation11: p must be odd");
  if (q.beta < q.gamma || q.gamma < 1) throw std::invalid_argument("presentation11: need beta >= gamma >= 1");
  if (q.gamma < q.sigma || q.sigma < 0) throw std::invalid_argument("presentation11: need gamma >= sigma >= 0");
  if (q.alpha + q.sigma < 2 * q.gamma) {
    throw std::invalid_argument("presentation11: need alpha + sigma >= 2 gamma");
  }
  if (q.sigma == q.gamma && q.alpha < q.beta) {
    throw std::invalid_argument("presentation11: sigma = gamma requires alpha >= beta");
  }
}

void GroupSpec::validate() const {
  arith::require_prime(prime);
  if (nilpotency_class < 1 || nilpotency_class > kMaxClass) {
    throw std::invalid_argument("class must be in [1, " + std::to_string(kMaxClass) + "]");
  }
  if (orders.empty() || static_cast<int>(orders.size()) > kMaxRank) {
    throw std::invalid_argument("need between 1 and " + std::to_string(kMaxRank) + " orders");
  }
  for (int a : orders) {
    if (a < 1) throw std::invalid_argument("orders must be positive");
  }
  if (variant == BasisVariant::kStandard && prime < static_cast<std::uint64_t>(nilpotency_class)) {
    throw std::invalid_argument("standard basis needs prime >= class; use variant k3p2 for p = 2, class 3");
  }
  if (variant == BasisVariant::kK3P2 && (prime != 2 || nilpotency_class != 3)) {
    throw std::invalid_argument("variant k3p2 needs prime 2 and class 3");
  }
  std::set<std::string> allowed;
  for (std::size_t i = 0; i < orders.size(); ++i) allowed.insert("x" + std::to_string(i + 1));
  for (const auto& r : relators) {
    for (const auto& n : word_names(r)) {
      if (!allowed.count(n)) throw std::invalid_argument("relator uses unknown generator '" + n + "'");
    }
  }
  if (presentation11) {
    validate_presentation11(prime, *presentation11);
    if (nilpotency_class != 2 || orders != std::vector<int>{presentation11->alpha, presentation11->beta}) {
      throw std::invalid_argument("presentation11 implies class 2 and orders [alpha, beta]");
    }
  }
}

namespace {

int json_int(const nlohmann::json& j, const char* field) {
  if (!j.is_number_integer()) throw std::invalid_argument(std::string("field '") + field + "' must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v > 1000000) throw std::invalid_argument(std::string("field '") + field + "' out of range");
  return static_cast<int>(v);
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("group spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("group spec must be a JSON object");
  static const std::set<std::string> known = {"prime", "class", "orders", "variant", "relators", "presentation11"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw std::invalid_argument("unknown field '" + key + "'");
  }
  GroupSpec spec;
  if (!j.contains("prime")) throw std::invalid_argument("missing field 'prime'");
  spec.prime = static_cast<std::uint64_t>(json_int(j["prime"], "prime"));
  if (j.contains("presentation11")) {
    const auto& q = j["presentation11"];
    if (!q.is_object()) throw std::invalid_argument("field 'presentation11' must be an object");
    static const std::set<std::string> qknown = {"alpha", "beta", "gamma", "sigma"};
    for (const auto& [key, _] : q.items()) {
      if (!qknown.count(key)) throw std::invalid_argument("unknown field 'presentation11." + key + "'");
    }
    Presentation11 p11;
    for (const char* f : {"alpha", "beta", "gamma", "sigma"}) {
      if (!q.contains(f)) throw std::invalid_argument(std::string("missing field 'presentation11.") + f + "'");
    }
    p11.alpha = json_int(q["alpha"], "alpha");
    p11.beta = json_int(q["beta"], "beta");
    p11.gamma = json_int(q["gamma"], "gamma");
    p11.sigma = json_int(q["sigma"], "sigma");
    spec.presentation11 = p11;
    spec.nilpotency_class = 2;
    spec.orders = {p11.alpha, p11.beta};
  }
  if (j.contains("class")) spec.nilpotency_class = json_int(j["class"], "class");
  if (j.contains("orders")) {
    if (!j["orders"].is_array()) throw std::invalid_argument("field 'orders' must be an array");
    spec.orders.clear();
    for (const auto& o : j["orders"]) spec.orders.push_back(json_int(o, "orders"));
  }
  if (!spec.presentation11) {
    if (!j.contains("class")) throw std::invalid_argument("missing field 'class'");
    if (!j.contains("orders")) throw std::invalid_argument("missing field 'orders'");
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw std::invalid_argument("field 'variant' must be a string");
    const auto v = j["variant"].get<std::string>();
    if (v == "standard") {
      spec.variant = BasisVariant::kStandard;
    } else if (v == "k3p2") {
      spec.variant = BasisVariant::kK3P2;
    } else {
      throw std::invalid_argument("variant must be \"standard\" or \"k3p2\", got \"" + v + "\"");
    }
  }
  if (j.contains("relators")) {
    if (!j["relators"].is_array()) throw std::invalid_argument("field 'relators' must be an array");
    for (const auto& r : j["relators"]) {
      if (!r.is_string()) throw std::invalid_argument("relators must be strings");
      const auto text = r.get<std::string>();
      try {
        spec.relators.push_back(parse_word(text));
      } catch (const ParseError& e) {
        throw std::invalid_argument("relator \"" + text + "\": " + e.what());
      }
    }
  }
  spec.validate();
  return spec;
}

std::string group_spec_to_json(const GroupSpec& spec) {
  nlohmann::ordered_json j;
  j["prime"] = spec.prime;
  j["class"] = spec.nilpotency_class;
  j["orders"] = spec.orders;
  j["variant"] = to_string(spec.variant);
  if (!spec.relators.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : spec.relators) arr.push_back(format_word(r));
    j["relators"] = arr;
  }
  if (spec.presentation11) {
    j["presentation11"] = {{"alpha", spec.presentation11->alpha},
                           {"beta", spec.presentation11->beta},
                           {"gamma", spec.presentation11->gamma},
                           {"sigma", spec.presentation11->sigma}};
  }
  return j.dump();
}

}  // namespace nilcap
