#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace infbf {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow. Either argument may be -inf.
inline double log_sum_exp(double a, double b) noexcept {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

inline double log_sum_exp(std::span<const double> xs) noexcept {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

// log(exp(a) - exp(b)) for a >= b.
inline double log_diff_exp(double a, double b) noexcept {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + std::log1p(-std::exp(b - a));
}

/// Real number stored as an exact sign and the natural log of its magnitude.
///
/// Products of Gamma functions and 1F1 values overflow a double long before
/// the ratios we care about do; carrying them in this form keeps every
/// intermediate finite. Multiplication is exact in sign and adds logs;
/// addition of like signs is a log-sum-exp.
class SignedLogValue {
 public:
  constexpr SignedLogValue() = default;

  static SignedLogValue from_log(double log_magnitude, int sign = 1) noexcept {
    SignedLogValue v;
    if (sign == 0 || log_magnitude == kNegInf) return v;
    v.sign_ = sign > 0 ? 1 : -1;
    v.log_magnitude_ = log_magnitude;
    return v;
  }

  static SignedLogValue from_linear(double x) noexcept {
    if (x == 0.0) return {};
    return from_log(std::log(std::fabs(x)), x > 0.0 ? 1 : -1);
  }

  int sign() const noexcept { return sign_; }
  double log_magnitude() const noexcept { return sign_ == 0 ? kNegInf : log_magnitude_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  double to_linear() const noexcept {
    return sign_ == 0 ? 0.0 : sign_ * std::exp(log_magnitude_);
  }

  SignedLogValue operator-() const noexcept { return from_log(log_magnitude_, -sign_); }

  friend SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) noexcept {
    if (a.is_zero() || b.is_zero()) return {};
    return from_log(a.log_magnitude_ + b.log_magnitude_, a.sign_ * b.sign_);
  }

  friend SignedLogValue operator/(const SignedLogValue& a, const SignedLogValue& b) noexcept {
    if (a.is_zero()) return {};
    if (b.is_zero()) {
      return from_log(std::numeric_limits<double>::infinity(), a.sign_);
    }
    return from_log(a.log_magnitude_ - b.log_magnitude_, a.sign_ * b.sign_);
  }

  friend SignedLogValue operator+(const SignedLogValue& a, const SignedLogValue& b) noexcept {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.sign_ == b.sign_) {
      return from_log(log_sum_exp(a.log_magnitude_, b.log_magnitude_), a.sign_);
    }
    if (a.log_magnitude_ == b.log_magnitude_) return {};
    const bool a_larger = a.log_magnitude_ > b.log_magnitude_;
    const SignedLogValue& big = a_larger ? a : b;
    const SignedLogValue& small = a_larger ? b : a;
    return from_log(log_diff_exp(big.log_magnitude_, small.log_magnitude_), big.sign_);
  }

  friend SignedLogValue operator-(const SignedLogValue& a, const SignedLogValue& b) noexcept {
    return a + (-b);
  }

 private:
  int sign_ = 0;
  double log_magnitude_ = kNegInf;
};

}  // namespace infbf
