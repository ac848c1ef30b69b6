#include "polynomial.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

#include "error.hpp"

namespace okkit::algebra {

Exponent add(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::Dimension, "exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent sub(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::Dimension, "exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exponent scale(const Exponent& a, int k) {
  Exponent r(a);
  for (auto& x : r) x *= k;
  return r;
}

std::string to_string(const Exponent& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + "]";
}

Ring::Ring(std::vector<std::string> variables, bool laurent)
    : variables_(std::move(variables)), laurent_(laurent) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& v = variables_[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw Error(ErrorCode::Parse, "invalid variable name '" + v + "'");
    for (char c : v)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw Error(ErrorCode::Parse, "invalid variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (variables_[j] == v) throw Error(ErrorCode::Parse, "duplicate variable '" + v + "'");
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> variables, bool laurent) {
  return std::make_shared<const Ring>(std::move(variables), laurent);
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error(ErrorCode::Dimension, "polynomial without ring");
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  p.add_term(Exponent(p.ring_->size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Polynomial p(std::move(ring));
  Exponent e(p.ring_->size(), 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

Polynomial Polynomial::monomial(RingPtr ring, Exponent exponent, const Rational& c) {
  Polynomial p(std::move(ring));
  p.add_term(exponent, c);
  return p;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<long> Polynomial::homogeneous_degree(std::span<const long> weights) const {
  std::optional<long> deg;
  for (const auto& [e, c] : terms_) {
    long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * (weights.empty() ? 1L : weights[i]);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg ? deg : std::optional<long>(0);
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (!ring_->same_as(*other.ring_))
    throw Error(ErrorCode::Dimension, "polynomials live in different rings");
}

void Polynomial::check_exponent(const Exponent& e) const {
  if (e.size() != ring_->size())
    throw Error(ErrorCode::Dimension, "exponent " + algebra::to_string(e) + " does not match ring size " +
                                          std::to_string(ring_->size()));
  if (!ring_->laurent())
    for (int x : e)
      if (x < 0) throw Error(ErrorCode::Dimension, "negative exponent in a non-Laurent ring");
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  check_exponent(e);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coef] : terms_) coef *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  Polynomial r(a.ring_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(add(ea, eb), ca * cb);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.ring_->same_as(*b.ring_) && a.terms_ == b.terms_;
}

Polynomial Polynomial::substitute(const RingPtr& target, std::span<const Polynomial> images) const {
  if (images.size() != ring_->size())
    throw Error(ErrorCode::Dimension, "substitution needs one image per variable");
  for (const auto& img : images)
    if (!img.ring_->same_as(*target)) throw Error(ErrorCode::Dimension, "substitution image in wrong ring");

  // Cache powers per variable; negative powers need an invertible (monomial) image.
  std::vector<std::map<int, Polynomial>> cache(ring_->size());
  auto power = [&](std::size_t var, int k) -> const Polynomial& {
    auto it = cache[var].find(k);
    if (it != cache[var].end()) return it->second;
    Polynomial p(target);
    if (k >= 0) {
      p = images[var].pow(static_cast<unsigned>(k));
    } else {
      const auto& img = images[var];
      if (img.size() != 1 || !target->laurent())
        throw Error(ErrorCode::Evaluation, "negative power of a non-monomial image for variable " + ring_->name(var));
      const auto& [e, c] = *img.terms().begin();
      Rational ck = 1;
      for (int i = 0; i < -k; ++i) ck /= c;
      p = Polynomial::monomial(target, scale(e, k), ck);
    }
    return cache[var].emplace(k, std::move(p)).first->second;
  };

  Polynomial result(target);
  for (const auto& [e, c] : terms_) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * power(i, e[i]);
    result += term;
  }
  return result;
}

Complex Polynomial::evaluate(std::span<const Complex> point) const {
  if (point.size() != ring_->size()) throw Error(ErrorCode::Dimension, "evaluation point has wrong length");
  Complex sum = 0;
  for (const auto& [e, c] : terms_) {
    Complex term = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 && point[i] == Complex(0))
        throw Error(ErrorCode::Evaluation, "negative exponent at zero coordinate " + ring_->name(i));
      term *= std::pow(point[i], e[i]);
    }
    sum += term;
  }
  return sum;
}

namespace {

std::string monomial_text(const Ring& ring, const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.name(i);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Recursive-descent reader shared by the rational and complex grammars.
class Reader {
 public:
  Reader(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::Parse, msg + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) fail("expected integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rational rational() {
    std::string num = integer();
    if (accept('/')) return parse_rational(num + "/" + integer());
    return parse_rational(num);
  }

  double real() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    std::string tok(text_.substr(start, pos_ - start));
    try {
      std::size_t used = 0;
      double x = std::stod(tok, &used);
      if (used != tok.size()) fail("bad real '" + tok + "'");
      return x;
    } catch (const std::logic_error&) {
      fail("bad real '" + tok + "'");
    }
  }

  // factor ('*' factor)*, factors are variables with optional ^int.
  Exponent monomial() {
    Exponent e(ring_.size(), 0);
    do {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_.index_of(name);
      if (!idx) fail("unknown variable '" + name + "'");
      int k = 1;
      if (accept('^')) k = std::stoi(integer());
      e[*idx] += k;
    } while (accept('*'));
    return e;
  }

  bool at_variable() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

 private:
  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool negative = c < 0;
    Rational a = abs(c);
    std::string mono = monomial_text(*ring_, e);
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    if (mono.empty())
      s += okkit::to_string(a);
    else if (a == 1)
      s += mono;
    else
      s += okkit::to_string(a) + "*" + mono;
  }
  return s;
}

Polynomial Polynomial::parse(RingPtr ring, std::string_view text) {
  Polynomial p(ring);
  Reader r(*ring, text);
  if (r.done()) r.fail("empty polynomial");
  bool first = true;
  while (!r.done()) {
    int sign = 1;
    if (r.accept('-'))
      sign = -1;
    else if (!r.accept('+') && !first)
      r.fail("expected '+' or '-'");
    first = false;
    Rational c = 1;
    Exponent e(ring->size(), 0);
    if (r.at_variable()) {
      e = r.monomial();
    } else {
      c = r.rational();
      if (r.accept('*')) e = r.monomial();
    }
    p.add_term(e, sign > 0 ? c : Rational(-c));
  }
  return p;
}

// ---------------------------------------------------------------------------

ComplexPolynomial ComplexPolynomial::from(const Polynomial& p) {
  ComplexPolynomial r(p.ring());
  for (const auto& [e, c] : p.terms()) r.add_term(e, to_double(c));
  return r;
}

void ComplexPolynomial::add_term(const Exponent& e, Complex c) {
  if (e.size() != ring_->size()) throw Error(ErrorCode::Dimension, "exponent does not match ring");
  if (c == Complex(0)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0)) terms_.erase(it);
  }
}

Complex ComplexPolynomial::evaluate(std::span<const Complex> point) const {
  if (point.size() != ring_->size()) throw Error(ErrorCode::Dimension, "evaluation point has wrong length");
  Complex sum = 0;
  for (const auto& [e, c] : terms_) {
    Complex term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term *= std::pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

std::string ComplexPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!s.empty()) s += " + ";
    const auto& [e, c] = *it;
    // Adding 0.0 turns -0 into 0 so equal fibers print identically.
    s += "[" + format_double(c.real() + 0.0) + ", " + format_double(c.imag() + 0.0) + "]";
    std::string mono = monomial_text(*ring_, e);
    if (!mono.empty()) s += "*" + mono;
  }
  return s;
}

ComplexPolynomial ComplexPolynomial::parse(RingPtr ring, std::string_view text) {
  ComplexPolynomial p(ring);
  Reader r(*ring, text);
  if (r.done()) r.fail("empty polynomial");
  bool first = true;
  while (!r.done()) {
    if (!first && !r.accept('+')) r.fail("expected '+'");
    first = false;
    if (!r.accept('[')) r.fail("expected '['");
    double re = r.real();
    if (!r.accept(',')) r.fail("expected ','");
    double im = r.real();
    if (!r.accept(']')) r.fail("expected ']'");
    Exponent e(ring->size(), 0);
    if (r.accept('*')) e = r.monomial();
    p.add_term(e, Complex(re, im));
  }
  return p;
}

// ---------------------------------------------------------------------------

CompiledPolynomial::CompiledPolynomial(const ComplexPolynomial& p) : nvars_(p.ring()->size()) {
  for (const auto& [e, c] : p.terms()) {
    Term t{c, {}};
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t.powers.emplace_back(i, e[i]);
    terms_.push_back(std::move(t));
  }
}

Complex CompiledPolynomial::value(std::span<const Complex> x) const {
  Complex sum = 0;
  for (const auto& t : terms_) {
    Complex v = t.coefficient;
    for (auto [i, k] : t.powers) v *= std::pow(x[i], k);
    sum += v;
  }
  return sum;
}

Complex CompiledPolynomial::value_and_gradient(std::span<const Complex> x, std::vector<Complex>& grad) const {
  grad.assign(nvars_, Complex(0));
  Complex sum = 0;
  for (const auto& t : terms_) {
    Complex v = t.coefficient;
    for (auto [i, k] : t.powers) v *= std::pow(x[i], k);
    sum += v;
    for (std::size_t a = 0; a < t.powers.size(); ++a) {
      auto [i, k] = t.powers[a];
      Complex d = t.coefficient * static_cast<double>(k) * std::pow(x[i], k - 1);
      for (std::size_t b = 0; b < t.powers.size(); ++b)
        if (b != a) d *= std::pow(x[t.powers[b].first], t.powers[b].second);
      grad[i] += d;
    }
  }
  return sum;
}

double CompiledPolynomial::magnitude(std::span<const Complex> x) const {
  double m = 0;
  for (const auto& t : terms_) {
    double v = std::abs(t.coefficient);
    for (auto [i, k] : t.powers) v *= std::pow(std::abs(x[i]), k);
    m += v;
  }
  return m;
}

}  // namespace okkit::algebra
