#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>

#include "lienf/errors.hpp"

namespace lienf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Exact element of Q(i), stored as two arbitrary-precision rationals.  The
/// rational backend keeps both parts in lowest terms with a positive
/// denominator after every operation, so values have a unique representation
/// and operator== is structural equality.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT: implicit by design
  explicit GaussianRational(BigRat re) : re_(std::move(re)) {}
  GaussianRational(BigRat re, BigRat im) : re_(std::move(re)), im_(std::move(im)) {}

  /// The imaginary unit.
  static GaussianRational i() { return GaussianRational(BigRat(0), BigRat(1)); }

  /// Convenience builder: (num/den) + (inum/iden) i.  Throws DivisionByZero
  /// on a zero denominator.
  static GaussianRational of(long num, long den, long inum = 0, long iden = 1);

  const BigRat& re() const { return re_; }
  const BigRat& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }

  /// re^2 + im^2, a nonnegative rational that vanishes only at zero.
  BigRat norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    BigRat re = re_ * o.re_ - im_ * o.im_;
    BigRat im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  /// Multiplicative inverse; DivisionByZero on zero.
  GaussianRational inverse() const;

  bool operator==(const GaussianRational& o) const = default;

  /// Deterministic total order (real part, then imaginary part).  Used to
  /// canonicalize output and eigenvalue enumeration; it is not compatible
  /// with the field operations and nothing treats it as such.
  static int compare(const GaussianRational& a, const GaussianRational& b);

  /// Canonical text form, e.g. "0", "-1", "3/2", "1i", "-2/3i", "3/2-1i".
  /// parse(str()) round-trips exactly.
  std::string str() const;

  /// Strict parser for the canonical grammar (no whitespace, '/' only inside
  /// a rational, trailing 'i' for the imaginary part).  ParseError carries
  /// the byte offset of the offending character.
  static GaussianRational parse(const std::string& text);

 private:
  BigRat re_{0};
  BigRat im_{0};
};

struct GaussianRationalLess {
  bool operator()(const GaussianRational& a, const GaussianRational& b) const {
    return GaussianRational::compare(a, b) < 0;
  }
};

}  // namespace lienf
