#include "genss/cli/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "genss/errors.hpp"

namespace genss::cli {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// ---------------------------------------------------------------- shared scanning

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  std::size_t pos() const { return pos_; }
  bool done() {
    skip_space();
    return pos_ >= src_.size();
  }
  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  // Next character without skipping blanks; used for implicit "2t".
  char peek_raw(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept(std::string_view word) {
    skip_space();
    if (src_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail({std::string(1, c)});
  }
  void expect(std::string_view word) {
    if (!accept(word)) fail({std::string(word)});
  }

  bool at_number() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek_raw(1))));
  }
  double number() {
    skip_space();
    double v = 0.0;
    const auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
    if (ec != std::errc()) fail({"number"});
    pos_ = static_cast<std::size_t>(end - src_.data());
    return v;
  }
  long integer() {
    skip_space();
    long v = 0;
    const auto [end, ec] = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
    if (ec != std::errc()) fail({"integer"});
    pos_ = static_cast<std::size_t>(end - src_.data());
    return v;
  }
  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < src_.size() && ident_char(src_[pos_])) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }
  // Consumes a standalone 't' that directly follows the previous token.
  bool accept_glued_t() {
    if (peek_raw() == 't' && !ident_char(peek_raw(1))) {
      ++pos_;
      return true;
    }
    return false;
  }
  // A standalone identifier letter directly following a number, e.g. the i in "2i".
  bool accept_glued(char c) {
    if (peek_raw() == c && !ident_char(peek_raw(1))) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, std::size_t at) const {
    std::string list;
    for (const auto& e : expected) list += (list.empty() ? "" : ", ") + ("'" + e + "'");
    const std::string found = at < src_.size() ? fmt::format("'{}'", src_[at]) : "end of input";
    throw ParseError(at, std::move(expected), fmt::format("at {}: expected {}, found {}", at, list, found));
  }
  [[noreturn]] void fail(std::vector<std::string> expected) {
    skip_space();
    fail(std::move(expected), pos_);
  }
  [[noreturn]] void fail_message(std::size_t at, const std::string& msg) const {
    throw ParseError(at, {}, fmt::format("at {}: {}", at, msg));
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- forcing grammar

const Kernel kUnit = Kernel::smooth(0, 0.0);

bool is_scalar(const Dist& d) {
  for (const auto& [k, c] : d.terms())
    if (!(k == kUnit)) return false;
  return true;
}

Dist scalar_dist(const GenScalar& c) { return c.is_zero() ? Dist() : Dist(kUnit, c); }

const std::vector<std::string> kFactorStart = {"number", "i", "(", "delta", "H", "t", "exp", "sin", "cos",
                                               "sinh", "cosh", "s", "lambda", "omega_rod", "S_rod", "C_rod",
                                               "kc", "ks"};

class ForcingParser {
 public:
  explicit ForcingParser(std::string_view src) : in_(src) {}

  Dist parse_all() {
    Dist d = expr();
    if (!in_.done()) in_.fail({"+", "-", "*", "/", "end of input"});
    return d;
  }

 private:
  Dist expr() {
    Dist acc;
    if (in_.accept('-')) {
      acc = -term();
    } else {
      in_.accept('+');
      acc = term();
    }
    for (;;) {
      if (in_.accept('+')) {
        acc += term();
      } else if (in_.accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Dist term() {
    Dist acc = power();
    for (;;) {
      if (in_.accept('*')) {
        const std::size_t at = in_.pos();
        acc = multiply(acc, power(), at);
      } else if (in_.accept('/')) {
        const std::size_t at = in_.pos();
        const Dist den = power();
        if (!is_scalar(den)) in_.fail_message(at, "only constants may appear in a denominator");
        try {
          acc *= gs_invert(den.coefficient(kUnit));
        } catch (const Error& e) {
          in_.fail_message(at, e.what());
        }
      } else {
        return acc;
      }
    }
  }

  Dist power() {
    const std::size_t at = in_.pos();
    Dist base = primary();
    if (!in_.accept('^')) return base;
    int n = 0;
    if (in_.accept('(')) {
      const bool negative = in_.accept('-');
      if (!negative) in_.accept('+');
      n = static_cast<int>(in_.integer());
      if (negative) n = -n;
      in_.expect(')');
    } else {
      n = static_cast<int>(in_.integer());
    }
    if (n < 0) {
      if (!is_scalar(base)) in_.fail_message(at, "negative powers need a constant base");
      try {
        return scalar_dist(pow(base.coefficient(kUnit), n));
      } catch (const Error& e) {
        in_.fail_message(at, e.what());
      }
    }
    Dist r = scalar_dist(1.0);
    for (int i = 0; i < n; ++i) r = multiply(r, base, at);
    return r;
  }

  Dist primary() {
    const std::size_t at = in_.pos();
    if (in_.at_number()) {
      cplx v = in_.number();
      if (in_.accept_glued('i')) v = cplx(0.0, v.real());
      Dist d = scalar_dist(v);
      if (in_.accept_glued_t()) d = multiply(d, Dist::smooth(1, 0.0), at);
      return d;
    }
    if (in_.accept('(')) {
      Dist d = expr();
      in_.expect(')');
      if (in_.accept_glued_t()) d = multiply(d, Dist::smooth(1, 0.0), at);
      return d;
    }
    if (!std::isalpha(static_cast<unsigned char>(in_.peek()))) in_.fail(kFactorStart);
    const std::string word = in_.identifier();
    if (word == "i") return scalar_dist(cplx(0.0, 1.0));
    if (word == "t") return Dist::smooth(1, 0.0);
    if (word == "s") return scalar_dist(GenScalar::s());
    if (word == "lambda") return scalar_dist(GenScalar::lambda());
    if (word == "omega_rod") return scalar_dist(GenScalar::rod_omega());
    if (word == "S_rod") return scalar_dist(GenScalar::rod_sine());
    if (word == "C_rod") return scalar_dist(GenScalar::rod_cosine());
    if (word == "delta0") return scalar_dist(GenScalar::delta0());
    if (word == "delta") return delta(at);
    if (word == "H") {
      if (in_.accept('(')) {
        in_.expect('t');
        in_.expect(')');
      }
      return Dist::heaviside();
    }
    if (word == "kc" || word == "ks") return kernel_constant(word == "ks");
    if (word == "exp" || word == "sin" || word == "cos" || word == "sinh" || word == "cosh") {
      in_.expect('(');
      const cplx r = rate(at);
      in_.expect(')');
      const Dist ep = Dist::smooth(0, r);
      const Dist em = Dist::smooth(0, -r);
      if (word == "exp") return ep;
      if (word == "cosh") return 0.5 * (ep + em);
      if (word == "sinh") return 0.5 * (ep - em);
      const Dist ip = Dist::smooth(0, cplx(0.0, 1.0) * r);
      const Dist im = Dist::smooth(0, cplx(0.0, -1.0) * r);
      if (word == "cos") return 0.5 * (ip + im);
      return cplx(0.0, -0.5) * (ip - im);
    }
    in_.fail_message(at, fmt::format("unknown name '{}'", word));
  }

  // delta, delta', delta^(n), each optionally followed by (t); (0) gives the value at zero.
  Dist delta(std::size_t at) {
    int n = 0;
    while (in_.peek_raw() == '\'') {
      in_.accept('\'');
      ++n;
    }
    if (n == 0 && in_.peek_raw() == '^' && in_.peek_raw(1) == '(') {
      in_.accept('^');
      in_.accept('(');
      n = static_cast<int>(in_.integer());
      if (n < 0) in_.fail_message(at, "derivative order must be nonnegative");
      in_.expect(')');
    }
    if (in_.peek_raw() == '(') {
      in_.accept('(');
      if (in_.accept('t')) {
        in_.expect(')');
      } else if (in_.accept('0')) {
        in_.expect(')');
        // iota(delta^(n))(0) vanishes for odd n by symmetry of the mollifier
        return n % 2 == 1 ? Dist() : scalar_dist(GenScalar::delta_even(n / 2));
      } else {
        in_.fail({"t", "0"});
      }
    }
    return Dist::delta(n);
  }

  Dist kernel_constant(bool sine) {
    in_.expect('{');
    const int m = static_cast<int>(in_.integer());
    in_.expect(';');
    const double a = signed_number();
    in_.expect(';');
    const double w = signed_number();
    in_.expect('}');
    if (m < 0) in_.fail_message(in_.pos(), "kernel constant power must be nonnegative");
    return scalar_dist(sine ? GenScalar::kernel_odd_sin(m, a, w) : GenScalar::kernel_odd_cos(m, a, w));
  }

  double signed_number() {
    const bool negative = in_.accept('-');
    if (!negative) in_.accept('+');
    const double v = in_.number();
    return negative ? -v : v;
  }

  // The argument of exp/sin/cos must be c*t for a constant c.
  cplx rate(std::size_t at) {
    const Dist arg = expr();
    if (arg.terms().size() == 1) {
      const auto& [k, c] = *arg.terms().begin();
      if (k == Kernel::smooth(1, 0.0)) {
        if (const auto v = c.constant()) return *v;
      }
    }
    in_.fail_message(at, "function argument must be a constant multiple of t");
  }

  Dist multiply(const Dist& a, const Dist& b, std::size_t at) {
    if (is_scalar(a)) return a.is_zero() ? Dist() : a.coefficient(kUnit) * b;
    if (is_scalar(b)) return b.is_zero() ? Dist() : b.coefficient(kUnit) * a;
    Dist out;
    for (const auto& [ka, ca] : a.terms()) {
      for (const auto& [kb, cb] : b.terms()) {
        if (ka.kind == Kernel::Kind::Delta || kb.kind == Kernel::Kind::Delta) {
          in_.fail_message(at, "delta terms may only be multiplied by constants");
        }
        const int m = ka.order + kb.order;
        const cplx r = ka.rate + kb.rate;
        const bool cut = ka.kind == Kernel::Kind::Cut || kb.kind == Kernel::Kind::Cut;
        out.add(cut ? Kernel::cut(m, r) : Kernel::smooth(m, r), ca * cb);
      }
    }
    return out;
  }

  Scanner in_;
};

// ---------------------------------------------------------------- polynomials in x

using Poly = std::vector<cplx>;  // ascending

Poly poly_add(Poly a, const Poly& b, double sign) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

class PolyParser {
 public:
  explicit PolyParser(std::string_view src) : in_(src) {}

  Poly parse_all() {
    Poly p = expr();
    if (!in_.done()) in_.fail({"+", "-", "*", "end of input"});
    return p;
  }

 private:
  Poly expr() {
    Poly acc;
    if (in_.accept('-')) {
      acc = poly_add({0.0}, term(), -1.0);
    } else {
      in_.accept('+');
      acc = term();
    }
    for (;;) {
      if (in_.accept('+')) {
        acc = poly_add(acc, term(), 1.0);
      } else if (in_.accept('-')) {
        acc = poly_add(acc, term(), -1.0);
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = power();
    while (in_.accept('*')) acc = poly_mul(acc, power());
    return acc;
  }

  Poly power() {
    const std::size_t at = in_.pos();
    const Poly base = primary();
    if (!in_.accept('^')) return base;
    const bool paren = in_.accept('(');
    const long n = in_.integer();
    if (paren) in_.expect(')');
    if (n < 0 || n > 64) in_.fail_message(at, "exponent must be between 0 and 64");
    Poly r{1.0};
    for (long i = 0; i < n; ++i) r = poly_mul(r, base);
    return r;
  }

  Poly primary() {
    if (in_.at_number()) {
      cplx v = in_.number();
      if (in_.accept_glued('i')) v = cplx(0.0, v.real());
      if (in_.accept_glued('x')) return {0.0, v};
      return {v};
    }
    if (in_.accept('(')) {
      Poly p = expr();
      in_.expect(')');
      return p;
    }
    const std::size_t at = in_.pos();
    const std::string word = in_.identifier();
    if (word == "x") return {0.0, 1.0};
    if (word == "i") return {cplx(0.0, 1.0)};
    if (word.empty()) in_.fail({"number", "x", "i", "("});
    in_.fail_message(at, fmt::format("unknown name '{}' in operator", word));
  }

  Scanner in_;
};

}  // namespace

Dist parse_forcing(std::string_view src) { return ForcingParser(src).parse_all(); }

GenScalar parse_scalar(std::string_view src) {
  const Dist d = parse_forcing(src);
  if (!is_scalar(d)) throw ParseError(0, {"constant"}, "expected a constant, got a function of t");
  return d.coefficient(kUnit);
}

PolyOp parse_operator(std::string_view src) {
  Poly ascending;
  if (src.find('x') != std::string_view::npos) {
    ascending = PolyParser(src).parse_all();
  } else {
    // comma-separated coefficients, highest order first
    std::vector<cplx> descending;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = src.find(',', start);
      const std::string_view item = src.substr(start, comma == std::string_view::npos ? src.npos : comma - start);
      try {
        const Poly c = PolyParser(item).parse_all();
        descending.push_back(c.front());
      } catch (const ParseError& e) {
        throw ParseError(start + e.position(), e.expected(),
                         fmt::format("coefficient {}: {}", descending.size() + 1, e.what()));
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    ascending.assign(descending.rbegin(), descending.rend());
  }
  std::size_t top = ascending.size();
  while (top > 0 && ascending[top - 1] == cplx(0.0)) --top;
  if (top < 2) throw ParseError(0, {"operator of degree >= 1"}, "operator must have degree at least 1");
  ascending.resize(top);
  return PolyOp(ascending);
}

}  // namespace genss::cli
