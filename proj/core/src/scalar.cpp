#include "semik/scalar.hpp"

#include "semik/errors.hpp"

namespace semik {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NonTerminating: return "NonTerminating";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::ActionUndefined: return "ActionUndefined";
    case ErrorKind::TagMismatch: return "TagMismatch";
    case ErrorKind::NotIdempotentPure: return "NotIdempotentPure";
    case ErrorKind::NotInvariantBasis: return "NotInvariantBasis";
    case ErrorKind::WindowEscape: return "WindowEscape";
    case ErrorKind::IndependenceUnknown: return "IndependenceUnknown";
    case ErrorKind::PrerequisiteFailed: return "PrerequisiteFailed";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string Scalar::str() const {
  if (im_ == 0) return re_.str();
  if (re_ == 0) return im_.str() + "i";
  std::string sign = im_ < 0 ? "-" : "+";
  Rational a = im_ < 0 ? Rational(-im_) : im_;
  return re_.str() + sign + a.str() + "i";
}

}  // namespace semik
