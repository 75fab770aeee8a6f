#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdio>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nilprob {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always fully reduced with a positive denominator.
class ExactFraction {
 public:
  ExactFraction() : num_(0), den_(1) {}
  ExactFraction(BigInt num, BigInt den = 1) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("zero denominator");
    normalize();
  }
  ExactFraction(std::int64_t num, std::int64_t den = 1) : ExactFraction(BigInt(num), BigInt(den)) {}
  ExactFraction(int num) : ExactFraction(BigInt(num), BigInt(1)) {}

  /// "p/q" or "p".
  static ExactFraction parse(std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) return ExactFraction(BigInt(std::string(text)), BigInt(1));
      BigInt n(std::string(text.substr(0, slash)));
      BigInt d(std::string(text.substr(slash + 1)));
      return ExactFraction(std::move(n), std::move(d));
    } catch (const std::domain_error&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad fraction '" + std::string(text) + "'");
    }
  }

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  /// Always "p/q", reduced.
  std::string to_string() const { return num_.str() + "/" + den_.str(); }

  double to_double() const {
    return static_cast<double>(boost::multiprecision::cpp_bin_float_double(num_) /
                               boost::multiprecision::cpp_bin_float_double(den_));
  }

  friend ExactFraction operator+(const ExactFraction& a, const ExactFraction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend ExactFraction operator-(const ExactFraction& a, const ExactFraction& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend ExactFraction operator*(const ExactFraction& a, const ExactFraction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend ExactFraction operator/(const ExactFraction& a, const ExactFraction& b) {
    if (b.num_ == 0) throw std::domain_error("division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  ExactFraction operator-() const { return {-num_, den_}; }

  friend bool operator==(const ExactFraction& a, const ExactFraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExactFraction& a, const ExactFraction& b) {
    BigInt l = a.num_ * b.den_;
    BigInt r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_, den_;
};

/// Four significant figures, e.g. 0.05357.
inline std::string decimal_string(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace nilprob
