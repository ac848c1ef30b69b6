#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace okkit::algebra {

using Complex = std::complex<double>;

// Integer exponent vector; ordering is lexicographic on entries.
using Exponent = std::vector<int>;

Exponent add(const Exponent& a, const Exponent& b);
Exponent sub(const Exponent& a, const Exponent& b);
Exponent scale(const Exponent& a, int k);
std::string to_string(const Exponent& e);

// Named variables plus a flag allowing negative exponents.
class Ring {
 public:
  Ring(std::vector<std::string> variables, bool laurent = false);

  std::size_t size() const noexcept { return variables_.size(); }
  const std::string& name(std::size_t i) const { return variables_.at(i); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  bool laurent() const noexcept { return laurent_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool same_as(const Ring& other) const noexcept {
    return this == &other || (laurent_ == other.laurent_ && variables_ == other.variables_);
  }

 private:
  std::vector<std::string> variables_;
  bool laurent_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> variables, bool laurent = false);

class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, Exponent exponent, const Rational& c);
  static Polynomial parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const noexcept { return ring_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const Exponent& e) const;

  // Sum of exponents weighted per variable; empty weights means total degree.
  std::optional<long> homogeneous_degree(std::span<const long> weights) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  Polynomial pow(unsigned k) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  // Replace variable i by images[i]; negative exponents need monomial images.
  Polynomial substitute(const RingPtr& target, std::span<const Polynomial> images) const;

  Complex evaluate(std::span<const Complex> point) const;

  std::string to_string() const;

  void add_term(const Exponent& e, const Rational& c);

 private:
  void check_ring(const Polynomial& other) const;
  void check_exponent(const Exponent& e) const;

  RingPtr ring_;
  Terms terms_;
};

// Polynomial with double-precision complex coefficients, used for fibers and
// numerics. Text form uses `[re, im]` coefficients.
class ComplexPolynomial {
 public:
  using Terms = std::map<Exponent, Complex>;

  explicit ComplexPolynomial(RingPtr ring) : ring_(std::move(ring)) {}
  static ComplexPolynomial from(const Polynomial& p);
  static ComplexPolynomial parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const noexcept { return ring_; }
  const Terms& terms() const noexcept { return terms_; }
  void add_term(const Exponent& e, Complex c);

  Complex evaluate(std::span<const Complex> point) const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  Terms terms_;
};

// Flattened form for repeated evaluation with gradients.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const ComplexPolynomial& p);

  std::size_t variables() const noexcept { return nvars_; }
  Complex value(std::span<const Complex> x) const;
  // Writes dp/dx_i into grad (resized) and returns the value.
  Complex value_and_gradient(std::span<const Complex> x, std::vector<Complex>& grad) const;
  // Sum of |term| at x: scale for relative residuals.
  double magnitude(std::span<const Complex> x) const;

 private:
  struct Term {
    Complex coefficient;
    std::vector<std::pair<std::size_t, int>> powers;
  };
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

}  // namespace okkit::algebra
