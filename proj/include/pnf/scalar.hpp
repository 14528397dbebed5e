#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace pnf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class for all errors raised by the engine.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Arithmetic mode of a scalar or series.  Exact scalars live in the field
/// Q[sqrt(2)]; numeric scalars are doubles with an absolute zero threshold.
enum class Mode { exact, numeric };

/// Absolute threshold below which a numeric coefficient is treated as zero.
inline constexpr double kNumericZeroThreshold = 1e-14;

inline constexpr double kSqrt2 = 1.41421356237309515;

/// Coefficient scalar: either an exact element a + b*sqrt(2) of Q[sqrt(2)]
/// with arbitrary-precision rational a, b, or a plain double.  Binary
/// operations between the two modes are an error.
class Scalar {
 public:
  Scalar() : mode_(Mode::exact) {}

  static Scalar exact(Rational a, Rational b = Rational(0)) {
    Scalar s;
    s.mode_ = Mode::exact;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    return s;
  }

  static Scalar exact_int(long long n) { return exact(Rational(n)); }

  static Scalar exact_frac(long long num, long long den) {
    if (den == 0) throw Error("Scalar: zero denominator");
    return exact(Rational(BigInt(num), BigInt(den)));
  }

  /// n/d * sqrt(2)
  static Scalar exact_sqrt2_frac(long long num, long long den) {
    if (den == 0) throw Error("Scalar: zero denominator");
    return exact(Rational(0), Rational(BigInt(num), BigInt(den)));
  }

  static Scalar numeric(double v) {
    Scalar s;
    s.mode_ = Mode::numeric;
    s.v_ = v;
    return s;
  }

  static Scalar zero(Mode m) {
    return m == Mode::exact ? exact(Rational(0)) : numeric(0.0);
  }

  static Scalar one(Mode m) {
    return m == Mode::exact ? exact(Rational(1)) : numeric(1.0);
  }

  Mode mode() const { return mode_; }
  const Rational& rat_a() const { return a_; }
  const Rational& rat_b() const { return b_; }
  double value() const { return v_; }

  bool is_zero() const {
    return mode_ == Mode::exact ? (a_ == 0 && b_ == 0) : v_ == 0.0;
  }

  /// True when the coefficient should be dropped from a series.
  bool negligible() const {
    if (mode_ == Mode::exact) return a_ == 0 && b_ == 0;
    return v_ > -kNumericZeroThreshold && v_ < kNumericZeroThreshold;
  }

  double to_double() const {
    if (mode_ == Mode::numeric) return v_;
    return a_.convert_to<double>() + b_.convert_to<double>() * kSqrt2;
  }

  Scalar operator-() const {
    Scalar s(*this);
    if (mode_ == Mode::exact) {
      s.a_ = -s.a_;
      s.b_ = -s.b_;
    } else {
      s.v_ = -s.v_;
    }
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    check_mode(o);
    if (mode_ == Mode::exact) {
      a_ += o.a_;
      b_ += o.b_;
    } else {
      v_ += o.v_;
    }
    return *this;
  }

  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar& operator*=(const Scalar& o) {
    check_mode(o);
    if (mode_ == Mode::exact) {
      // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s, s^2 = 2
      Rational a = a_ * o.a_ + 2 * b_ * o.b_;
      Rational b = a_ * o.b_ + b_ * o.a_;
      a_ = std::move(a);
      b_ = std::move(b);
    } else {
      v_ *= o.v_;
    }
    return *this;
  }

  Scalar& operator/=(const Scalar& o) {
    check_mode(o);
    if (o.is_zero()) throw Error("Scalar: division by zero");
    if (mode_ == Mode::exact) {
      // multiply by the conjugate: 1/(c + d s) = (c - d s)/(c^2 - 2 d^2)
      Rational n = o.a_ * o.a_ - 2 * o.b_ * o.b_;
      Rational a = (a_ * o.a_ - 2 * b_ * o.b_) / n;
      Rational b = (b_ * o.a_ - a_ * o.b_) / n;
      a_ = std::move(a);
      b_ = std::move(b);
    } else {
      v_ /= o.v_;
    }
    return *this;
  }

  Scalar& div_int(long long n) {
    if (n == 0) throw Error("Scalar: division by zero");
    if (mode_ == Mode::exact) {
      a_ /= n;
      b_ /= n;
    } else {
      v_ /= static_cast<double>(n);
    }
    return *this;
  }

  Scalar& mul_int(long long n) {
    if (mode_ == Mode::exact) {
      a_ *= n;
      b_ *= n;
    } else {
      v_ *= static_cast<double>(n);
    }
    return *this;
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    if (x.mode_ != y.mode_) return false;
    if (x.mode_ == Mode::exact) return x.a_ == y.a_ && x.b_ == y.b_;
    return x.v_ == y.v_;
  }

  /// "3/8", "-1/2*sqrt2", "1/4+3/8*sqrt2", or the double value.
  std::string str() const;

 private:
  void check_mode(const Scalar& o) const {
    if (mode_ != o.mode_)
      throw Error("Scalar: mixing exact and numeric operands");
  }

  Mode mode_;
  Rational a_, b_;
  double v_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace pnf
