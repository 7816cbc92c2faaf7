#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace phasekit {

// Small exact rational with normalized sign (den > 0) and reduced terms.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  long long floor() const;
  long long ceil() const;
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Rational& a, const Rational& b);
  friend int sign(const Rational& a) { return (a.num > 0) - (a.num < 0); }
};

// Continued-fraction snap of x to p/q with q <= max_den; returns false if |x - p/q| > tol.
bool rationalize(double x, long long max_den, double tol, Rational& out);

}  // namespace phasekit
