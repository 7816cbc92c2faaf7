#include "phasekit/special.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "phasekit/errors.hpp"
#include "phasekit/rational.hpp"

namespace phasekit {

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (d == 0) fail(ErrorCode::kInvalidArgument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

long long Rational::floor() const {
  long long q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

long long Rational::ceil() const {
  long long q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
}
Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }

bool rationalize(double x, long long max_den, double tol, Rational& out) {
  // Convergents of the continued fraction of x.
  long long h0 = 1, h1 = static_cast<long long>(std::floor(x));
  long long k0 = 0, k1 = 1;
  double frac = x - std::floor(x);
  Rational best(h1, k1);
  double best_err = std::abs(x - best.value());
  for (int it = 0; it < 64 && frac > 1e-15; ++it) {
    double inv = 1.0 / frac;
    long long a = static_cast<long long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    long long h2 = a * h1 + h0;
    long long k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    Rational r(h1, k1);
    double err = std::abs(x - r.value());
    if (err < best_err) {
      best = r;
      best_err = err;
    }
    if (err <= 1e-15) break;
  }
  out = best;
  return best_err <= tol;
}

namespace {

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log Gamma(z) for Re z >= 1/2.
cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

}  // namespace

cplx gamma_fn(cplx z) {
  if (is_nonpositive_integer(z)) fail(ErrorCode::kInvalidArgument, "Gamma pole at non-positive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(log_gamma_right(1.0 - z)));
  return std::exp(log_gamma_right(z));
}

cplx recip_gamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return std::sin(kPi * z) * std::exp(log_gamma_right(1.0 - z)) / kPi;
  return std::exp(-log_gamma_right(z));
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

namespace {

// zeta(n) for n >= 2 by direct summation with an Euler-Maclaurin tail.
double zeta_positive(int n) {
  const int big_n = 24;
  double s = 0.0;
  for (int k = big_n - 1; k >= 1; --k) s += std::pow(static_cast<double>(k), -n);
  const double nn = big_n;
  double tail = std::pow(nn, 1 - n) / (n - 1) + 0.5 * std::pow(nn, -n);
  // Bernoulli corrections B_2, B_4, B_6, B_8.
  const double b[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0};
  double rising = n;  // n (n+1) ... (n + 2j - 2)
  double fact = 2.0;  // (2j)!
  for (int j = 1; j <= 4; ++j) {
    tail += b[j - 1] / fact * rising * std::pow(nn, -n - 2 * j + 1);
    rising *= static_cast<double>(n + 2 * j - 1) * static_cast<double>(n + 2 * j);
    fact *= static_cast<double>(2 * j + 1) * static_cast<double>(2 * j + 2);
  }
  return s + tail;
}

}  // namespace

double zeta_int(int n) {
  if (n == 1) fail(ErrorCode::kInvalidArgument, "zeta pole at 1");
  if (n >= 2) return zeta_positive(n);
  if (n == 0) return -0.5;
  const int m = -n;
  if (m % 2 == 0) return 0.0;
  // zeta(1 - 2k) = 2 (2 pi)^{-2k} (-1)^k (2k-1)! zeta(2k)
  const int k = (m + 1) / 2;
  double v = 2.0 * zeta_positive(2 * k);
  for (int j = 1; j <= 2 * k - 1; ++j) v *= static_cast<double>(j) / (2.0 * kPi);
  v /= 2.0 * kPi;
  return (k % 2 == 0) ? v : -v;
}

}  // namespace phasekit
