#pragma once

#include <gmpxx.h>

#include <complex>
#include <concepts>
#include <string>
#include <string_view>

namespace steklov {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

/// Complex number with exact rational parts.
struct RationalComplex {
  Rational re;
  Rational im;

  RationalComplex() = default;
  RationalComplex(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  RationalComplex(long r) : re(r) {}  // NOLINT(implicit)

  static RationalComplex i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  RationalComplex& operator*=(const Rational& s) {
    re *= s;
    im *= s;
    return *this;
  }

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }
  friend RationalComplex operator*(RationalComplex a, const RationalComplex& b) { return a *= b; }
  friend RationalComplex operator*(RationalComplex a, const Rational& s) { return a *= s; }
  friend RationalComplex operator*(const Rational& s, RationalComplex a) { return a *= s; }
  friend RationalComplex operator-(const RationalComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

inline RationalComplex conj(const RationalComplex& z) { return {z.re, -z.im}; }

/// Per-backend glue. `real_type` is the parameter type used alongside the
/// scalar (Moebius parameters, rotation angles, ...).
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<RationalComplex> {
  using real_type = Rational;
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static RationalComplex from_rational(const Rational& q) { return RationalComplex(q); }
  static RationalComplex from_real(const Rational& q) { return RationalComplex(q); }
  static RationalComplex imag_unit() { return RationalComplex::i(); }
  static bool is_zero(const RationalComplex& z) { return z.is_zero(); }
  static RationalComplex conj(const RationalComplex& z) { return steklov::conj(z); }
  static Complex to_complex(const RationalComplex& z) { return {z.re.get_d(), z.im.get_d()}; }
};

template <>
struct scalar_traits<Complex> {
  using real_type = double;
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static Complex from_real(double x) { return {x, 0.0}; }
  static Complex imag_unit() { return {0.0, 1.0}; }
  static bool is_zero(const Complex& z) { return z == Complex{}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static Complex to_complex(const Complex& z) { return z; }
};

template <class S>
concept SeriesScalar = std::same_as<S, RationalComplex> || std::same_as<S, Complex>;

/// Parses "p/q", an integer, or a finite decimal ("-1.25", "3e-2") exactly.
Rational parse_rational(std::string_view text);

/// Parses the same syntax into a double ("p/q" is evaluated as p/q).
double parse_real(std::string_view text);

/// Canonical exact string: "p" or "p/q".
std::string to_string(const Rational& q);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace steklov
