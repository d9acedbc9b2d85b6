#include "lienf/scalar.hpp"

#include <cstddef>
#include <sstream>

namespace lienf {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::SingularLinearPart: return "SingularLinearPart";
    case ErrorKind::EigenvalueNotGaussianRational: return "EigenvalueNotGaussianRational";
    case ErrorKind::RootSearchOverflow: return "RootSearchOverflow";
    case ErrorKind::NotSimultaneouslyTriangularizable: return "NotSimultaneouslyTriangularizable";
    case ErrorKind::NotTriangular: return "NotTriangular";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::StraighteningResidue: return "StraighteningResidue";
    case ErrorKind::ShapeViolation: return "ShapeViolation";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::SingularHomologicalSystem: return "SingularHomologicalSystem";
    case ErrorKind::NonResonantResidue: return "NonResonantResidue";
    case ErrorKind::ConstrainedCocycleInfeasible: return "ConstrainedCocycleInfeasible";
    case ErrorKind::RepresentationBroken: return "RepresentationBroken";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::IoError: return "IoError";
  }
  return "UnknownError";
}

GaussianRational GaussianRational::of(long num, long den, long inum, long iden) {
  if (den == 0 || iden == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
  return GaussianRational(BigRat(num, den), BigRat(inum, iden));
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  BigRat n = norm();
  return GaussianRational(re_ / n, -im_ / n);
}

int GaussianRational::compare(const GaussianRational& a, const GaussianRational& b) {
  if (a.re_ != b.re_) return a.re_ < b.re_ ? -1 : 1;
  if (a.im_ != b.im_) return a.im_ < b.im_ ? -1 : 1;
  return 0;
}

namespace {

std::string rat_str(const BigRat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

/// Cursor over the scalar grammar.  Kept deliberately strict: any character
/// the grammar does not call for is a ParseError at its byte offset.
struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  [[noreturn]] void error(const std::string& expected) const {
    std::ostringstream os;
    os << "at position " << pos << ": expected " << expected;
    if (done())
      os << ", found end of input";
    else
      os << ", found '" << text[pos] << "'";
    fail(ErrorKind::ParseError, os.str());
  }

  int sign() {
    if (!done() && (peek() == '+' || peek() == '-')) {
      int s = peek() == '-' ? -1 : 1;
      ++pos;
      return s;
    }
    return 1;
  }

  BigInt digits() {
    if (done() || peek() < '0' || peek() > '9') error("digit");
    std::size_t start = pos;
    while (!done() && peek() >= '0' && peek() <= '9') ++pos;
    return BigInt(text.substr(start, pos - start));
  }

  BigRat rational() {
    BigInt num = digits();
    if (!done() && peek() == '/') {
      ++pos;
      std::size_t den_pos = pos;
      BigInt den = digits();
      if (den == 0) {
        std::ostringstream os;
        os << "at position " << den_pos << ": zero denominator";
        fail(ErrorKind::ParseError, os.str());
      }
      return BigRat(num, den);
    }
    return BigRat(num);
  }
};

}  // namespace

std::string GaussianRational::str() const {
  if (is_zero()) return "0";
  std::string out;
  if (re_ != 0) out += rat_str(re_);
  if (im_ != 0) {
    if (re_ != 0) out += im_ > 0 ? "+" : "-";
    else if (im_ < 0) out += "-";
    out += rat_str(boost::multiprecision::abs(im_));
    out += "i";
  }
  return out;
}

GaussianRational GaussianRational::parse(const std::string& text) {
  Cursor c{text};
  if (c.done()) c.error("digit or sign");
  int s1 = c.sign();
  BigRat first = c.rational();
  first *= s1;
  if (c.done()) return GaussianRational(first);
  if (c.peek() == 'i') {
    ++c.pos;
    if (!c.done()) c.error("end of input");
    return GaussianRational(BigRat(0), first);
  }
  if (c.peek() != '+' && c.peek() != '-') c.error("'+', '-' or 'i'");
  int s2 = c.sign();
  BigRat second = c.rational();
  second *= s2;
  if (c.done() || c.peek() != 'i') c.error("'i'");
  ++c.pos;
  if (!c.done()) c.error("end of input");
  return GaussianRational(first, second);
}

}  // namespace lienf
