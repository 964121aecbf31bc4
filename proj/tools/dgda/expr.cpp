#include "expr.hpp"

#include <cctype>

#include "dgda/errors.hpp"

namespace dgda::cli {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const Scope& scope) : s_(s), scope_(scope) {}

  AlgElem run() {
    AlgElem e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  const Scope& scope_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("expression \"" + std::string(s_) + "\" at column " + std::to_string(pos_ + 1) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  AlgElem mul(const AlgElem& a, const AlgElem& b) const { return scope_.mul ? scope_.mul(a, b) : free_mul(a, b); }

  AlgElem sum() {
    AlgElem acc(scope_.dim);
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    for (;;) {
      AlgElem t = product();
      if (negate) t = -t;
      acc += t;
      if (eat('+'))
        negate = false;
      else if (eat('-'))
        negate = true;
      else
        return acc;
    }
  }

  AlgElem product() {
    AlgElem acc = power();
    while (eat('*')) acc = mul(acc, power());
    return acc;
  }

  AlgElem power() {
    AlgElem base = atom();
    if (!eat('^')) return base;
    long e = integer();
    if (e < 0) fail("negative exponent");
    AlgElem r = AlgElem::one(scope_.dim);
    for (long i = 0; i < e; ++i) r = mul(r, base);
    return r;
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 9) fail("integer too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  AlgElem atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      AlgElem e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  AlgElem number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string text(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t den = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (den == pos_) fail("expected a denominator");
      text += "/" + std::string(s_.substr(den, pos_ - den));
    }
    Scalar q;
    if (q.set_str(text, 10) != 0) fail("bad number " + text);
    if (q.get_den() == 0) fail("zero denominator");
    q.canonicalize();
    return AlgElem::scalar(scope_.dim, q);
  }

  std::string identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  MultiIndex decoration() {
    MultiIndex a;
    do {
      long v = integer();
      a.push_back(static_cast<int>(v));
    } while (eat(','));
    if (!eat(']')) fail("expected ']'");
    if (static_cast<int>(a.size()) != scope_.dim) {
      if (a.size() == 1 && a[0] == 0) return MultiIndex(scope_.dim, 0);
      fail("decoration needs " + std::to_string(scope_.dim) + " entries");
    }
    return a;
  }

  AlgElem name() {
    std::string id = identifier();
    MultiIndex deco(scope_.dim, 0);
    bool decorated = false;
    if (pos_ < s_.size() && s_[pos_] == '[') {
      ++pos_;
      deco = decoration();
      decorated = true;
    }
    if (auto it = scope_.gens.find(id); it != scope_.gens.end())
      return AlgElem::generator(scope_.dim, it->second, deco);
    int var = variable_index(id);
    if (var < 0) fail("unknown name " + id);
    if (decorated) fail("base variables take no decoration");
    return AlgElem::from_poly(Poly::variable(scope_.dim, var));
  }

  int variable_index(const std::string& id) const {
    for (std::size_t i = 0; i < scope_.vars.size(); ++i)
      if (scope_.vars[i] == id) return static_cast<int>(i);
    if (id.size() >= 2 && id[0] == 'x') {
      for (std::size_t i = 1; i < id.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(id[i]))) return -1;
      if (id.size() > 4) return -1;
      int k = std::stoi(id.substr(1));
      if (k >= 1 && k <= scope_.dim) return k - 1;
    }
    return -1;
  }
};

}  // namespace

AlgElem parse_expr(std::string_view text, const Scope& scope) { return Parser(text, scope).run(); }

}  // namespace dgda::cli
