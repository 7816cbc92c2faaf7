#include "phasekit/polylog.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

#include "phasekit/errors.hpp"
#include "phasekit/special.hpp"

namespace phasekit {

namespace {

using boost::multiprecision::cpp_rational;

// Bernoulli polynomial coefficients: row p holds the coefficients of x^0..x^p.
const std::vector<std::vector<double>>& bernoulli_table() {
  static const std::vector<std::vector<double>> table = [] {
    const int n = kMaxBernoulliOrder;
    // B_m from sum_{k<=m} C(m+1,k) B_k = 0 (B_1 = -1/2).
    std::vector<cpp_rational> b(n + 1);
    b[0] = 1;
    for (int m = 1; m <= n; ++m) {
      cpp_rational acc = 0;
      cpp_rational c = 1;  // C(m+1, k)
      for (int k = 0; k < m; ++k) {
        acc += c * b[k];
        c = c * (m + 1 - k) / (k + 1);
      }
      b[m] = -acc / (m + 1);
    }
    std::vector<std::vector<double>> rows(n + 1);
    for (int p = 0; p <= n; ++p) {
      rows[p].assign(p + 1, 0.0);
      cpp_rational c = 1;  // C(p, k)
      for (int k = 0; k <= p; ++k) {
        rows[p][p - k] = static_cast<double>(c * b[k]);
        c = c * (p - k) / (k + 1);
      }
    }
    return rows;
  }();
  return table;
}

cplx horner(const std::vector<cplx>& coeffs, cplx x) {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx li_series(int p, cplx x) {
  cplx sum = 0.0, xk = 1.0;
  for (int k = 1; k < 2000; ++k) {
    xk *= x;
    cplx term = xk / std::pow(static_cast<double>(k), p);
    sum += term;
    if (std::abs(term) <= 1e-18 * std::max(1e-300, std::abs(sum))) break;
  }
  return sum;
}

// Expansion around x = 1 in L = log x, valid for |L| < 2 pi.
cplx li_log_series(int p, cplx x) {
  const cplx l = std::log(x);
  cplx sum = 0.0, lk = 1.0;  // L^k / k!
  int small = 0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) lk *= l / static_cast<double>(k);
    if (k == p - 1) continue;
    const int n = p - k;
    double z = (n < 0 && n % 2 == 0) ? 0.0 : zeta_int(n);
    cplx term = z * lk;
    sum += term;
    if (k > p && n % 2 != 0) {
      small = std::abs(term) <= 1e-18 * std::max(1.0, std::abs(sum)) ? small + 1 : 0;
      if (small >= 2) break;
    }
  }
  double harmonic = 0.0;
  cplx lp = 1.0;
  for (int j = 1; j <= p - 1; ++j) {
    harmonic += 1.0 / j;
    lp *= l / static_cast<double>(j);
  }
  return sum + lp * (harmonic - std::log(-l));
}

}  // namespace

cplx bernoulli_poly(int p, cplx x, int max_order) {
  if (p < 0) fail(ErrorCode::kInvalidArgument, "negative Bernoulli order");
  if (p > max_order || p > kMaxBernoulliOrder) fail(ErrorCode::kOrderTooLarge, "Bernoulli order too large");
  const auto& row = bernoulli_table()[p];
  cplx acc = 0.0;
  for (int k = p; k >= 0; --k) acc = acc * x + row[k];
  return acc;
}

cplx li_principal(int p, cplx x) {
  if (p < 1) fail(ErrorCode::kInvalidArgument, "polylog order must be positive");
  if (x == cplx(1.0) && p == 1) fail(ErrorCode::kPathTooClose, "Li_1 is singular at 1");
  if (p == 1) return -std::log(cplx(1.0 - x.real(), -x.imag()));
  const double r = std::abs(x);
  if (r <= 0.5) return li_series(p, x);
  if (r >= 2.0) {
    const double sgn = (p % 2 == 0) ? -1.0 : 1.0;  // -(-1)^p
    cplx fac = std::pow(kTwoPiI, p);
    for (int k = 2; k <= p; ++k) fac /= static_cast<double>(k);
    return sgn * li_series(p, 1.0 / x) - fac * bernoulli_poly(p, 0.5 + std::log(-x) / kTwoPiI);
  }
  if (x == cplx(1.0)) return zeta_int(p);
  return li_log_series(p, x);
}

BranchedValue li_scalar(int p, cplx x) {
  if (std::abs(x) >= 1.0) fail(ErrorCode::kOutsideDomain, "principal Li_p requires |x| < 1 without a path");
  return {li_principal(p, x), std::log(x)};
}

BranchedValue li_scalar(int p, const ComplexPath& path, double clearance) {
  LiContinuation c = continue_polylogs(p, path, clearance);
  return {c.value(p), c.log_end};
}

cplx LiContinuation::value(int p) const {
  if (p < 1 || p > static_cast<int>(q.size())) fail(ErrorCode::kInvalidArgument, "order outside continuation");
  return li_principal(p, end) + horner(q[p - 1], log_end);
}

namespace {

double segment_distance(cplx a, cplx b, cplx z) {
  cplx d = b - a;
  double len2 = std::norm(d);
  double s = len2 == 0.0 ? 0.0 : std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(a + s * d - z);
}

int side_of(cplx z, int previous) {
  if (z.imag() > 0.0) return 1;
  if (z.imag() < 0.0) return -1;
  if (std::signbit(z.imag()) && previous == 0) return -1;
  return previous == 0 ? 1 : previous;
}

struct Walk {
  cplx end;
  int winding = 0;  // continued log = Log(end) + 2 pi i winding
  std::vector<std::vector<cplx>> q;
};

Walk walk_path(int pmax, const ComplexPath& path, double clearance) {
  if (path.points.empty()) fail(ErrorCode::kPathInvalid, "empty path");
  const cplx start = path.points.front();
  if (std::abs(start) >= 1.0) fail(ErrorCode::kPathInvalid, "continuation path must start inside the unit disk");
  Walk w;
  w.q.resize(pmax);
  for (int p = 1; p <= pmax; ++p) w.q[p - 1].assign(p, 0.0);
  int side = side_of(start, 0);
  if (std::abs(start) < clearance || std::abs(start - 1.0) < clearance)
    fail(ErrorCode::kPathTooClose, "path start too close to a singular point");
  for (size_t s = 1; s < path.points.size(); ++s) {
    const cplx a = path.points[s - 1], b = path.points[s];
    if (segment_distance(a, b, 0.0) < clearance || segment_distance(a, b, 1.0) < clearance)
      fail(ErrorCode::kPathTooClose, "path passes too close to 0 or 1");
    if (b.imag() == 0.0 && b.real() > 1.0) fail(ErrorCode::kAmbiguousCrossing, "vertex on the branch cut");
    int next = side_of(b, side);
    if (next != side) {
      const double ia = a.imag(), ib = b.imag();
      const double cr = (a + (b - a) * (ia / (ia - ib))).real();
      const bool downward = next < 0;
      if (cr > 1.0) {
        // Jump of the principal sheet across (1, inf): (2 pi i / Gamma(p)) (l - 2 pi i w)^{p-1}.
        const cplx shift = -kTwoPiI * static_cast<double>(w.winding);
        for (int p = 1; p <= pmax; ++p) {
          double inv_fact = 1.0;
          for (int k = 2; k < p; ++k) inv_fact /= k;
          for (int k = 0; k < p; ++k) {
            cplx c = kTwoPiI * inv_fact * binomial(p - 1, k) * std::pow(shift, p - 1 - k);
            w.q[p - 1][k] += downward ? c : -c;
          }
        }
      } else if (cr < 0.0) {
        w.winding += downward ? 1 : -1;
      }
    }
    side = next;
  }
  w.end = path.points.back();
  if (w.end.imag() == 0.0) w.end = cplx(w.end.real(), side < 0 ? -0.0 : 0.0);
  return w;
}

}  // namespace

LiContinuation continue_polylogs(int pmax, const ComplexPath& path, double clearance) {
  if (pmax < 1) fail(ErrorCode::kInvalidArgument, "polylog order must be positive");
  Walk w = walk_path(pmax, path, clearance);
  LiContinuation c;
  c.end = w.end;
  c.log_end = std::log(w.end) + kTwoPiI * static_cast<double>(w.winding);
  c.q = std::move(w.q);
  return c;
}

cplx continued_log(const ComplexPath& path) {
  if (path.points.empty()) fail(ErrorCode::kPathInvalid, "empty path");
  cplx l = std::log(path.points.front());
  for (size_t s = 1; s < path.points.size(); ++s) {
    const cplx a = path.points[s - 1], b = path.points[s];
    if (segment_distance(a, b, 0.0) <= 0.0) fail(ErrorCode::kPathTooClose, "path passes through 0");
    // Split so that each piece turns by less than pi/2 around the origin.
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / segment_distance(a, b, 0.0) * 2.0)));
    cplx prev = a;
    for (int j = 1; j <= n; ++j) {
      cplx z = a + (b - a) * (static_cast<double>(j) / n);
      l += std::log(z / prev);
      prev = z;
    }
  }
  return l;
}

bool one_on_left(const ComplexPath& path) {
  int crossings = 0;
  bool left = false;
  for (size_t s = 1; s < path.points.size(); ++s) {
    const cplx a = path.points[s - 1], b = path.points[s];
    if (b.imag() == 0.0 || (s == 1 && a.imag() == 0.0))
      fail(ErrorCode::kAmbiguousCrossing, "path vertex on the real axis");
    if ((a.imag() > 0.0) != (b.imag() > 0.0)) {
      ++crossings;
      const cplx c = a + (b - a) * (a.imag() / (a.imag() - b.imag()));
      left = (std::conj(b - a) * (1.0 - c)).imag() > 0.0;
    }
  }
  if (crossings != 1) fail(ErrorCode::kAmbiguousCrossing, "path must cross the real axis exactly once");
  return left;
}

ComplexPath jonquiere_path(cplx x, double crossing, double offset) {
  if (x.imag() == 0.0) fail(ErrorCode::kAmbiguousCrossing, "base point on the real axis");
  const double s = x.imag() > 0.0 ? 1.0 : -1.0;
  return {{x, cplx(crossing, s * offset), cplx(crossing, -s * offset), 1.0 / x}, "jonquiere"};
}

double jonquiere_invert(int p, cplx x, const ComplexPath& path) {
  if (!(std::abs(x) > 0.0 && std::abs(x) < 1.0)) fail(ErrorCode::kOutsideDomain, "inversion requires 0 < |x| < 1");
  if (path.points.size() < 2 || std::abs(path.points.front() - x) > 1e-12 * std::abs(x) ||
      std::abs(path.points.back() - 1.0 / x) > 1e-12 / std::abs(x))
    fail(ErrorCode::kPathInvalid, "path must run from x to 1/x");
  const cplx lhs = li_scalar(p, path).value;
  const cplx logx = std::log(x) + (one_on_left(path) ? cplx(0.0) : kTwoPiI);
  cplx fac = std::pow(kTwoPiI, p);
  for (int k = 2; k <= p; ++k) fac /= static_cast<double>(k);
  const double sgn = (p % 2 == 1) ? 1.0 : -1.0;
  const cplx rhs = sgn * (li_principal(p, x) + fac * bernoulli_poly(p, logx / kTwoPiI));
  return std::abs(lhs - rhs);
}

namespace {

CMat nil_exp(const CMat& nil, int order, cplx l) {
  const int n = static_cast<int>(nil.rows());
  CMat out = CMat::Identity(n, n), pw = CMat::Identity(n, n);
  for (int j = 1; j < order; ++j) {
    pw = pw * nil * (l / static_cast<double>(j));
    out += pw;
  }
  return out;
}

// Refine the path so that consecutive points differ by a small multiplicative step.
std::vector<cplx> refine(const ComplexPath& path, std::vector<cplx>& logs) {
  std::vector<cplx> pts{path.points.front()};
  logs.assign(1, std::log(path.points.front()));
  for (size_t s = 1; s < path.points.size(); ++s) {
    const cplx a = path.points[s - 1], b = path.points[s];
    const double d0 = std::max(segment_distance(a, b, 0.0), 1e-12);
    const int n = std::clamp(static_cast<int>(std::ceil(std::abs(b - a) / (0.02 * d0))), 1, 200000);
    for (int j = 1; j <= n; ++j) {
      cplx z = a + (b - a) * (static_cast<double>(j) / n);
      logs.push_back(logs.back() + std::log(z / pts.back()));
      pts.push_back(z);
    }
  }
  return pts;
}

CMat li_sigma_direct(const NormalizedLog& nlog, cplx x) {
  if (std::abs(x) >= 1.0) fail(ErrorCode::kOutsideDomain, "direct series requires |x| < 1");
  if (x == cplx(0.0)) fail(ErrorCode::kZeroBase, "Li_sigma at x = 0");
  const cplx l = std::log(x);
  return nlog.N.apply([l, x](cplx v, int order) {
    std::vector<cplx> c(order, 0.0);
    const double r = std::abs(x);
    for (int k = 1; k < 100000; ++k) {
      const cplx u = static_cast<double>(k) + v;
      const cplx e = std::exp(u * l);
      cplx la = 1.0;
      std::vector<cplx> lpow(order), upow(order);
      for (int a = 0; a < order; ++a) {
        lpow[a] = la;
        la *= l / static_cast<double>(a + 1);
        upow[a] = std::pow(-1.0, a) / std::pow(u, a + 1);
      }
      for (int j = 0; j < order; ++j) {
        cplx acc = 0.0;
        for (int a = 0; a <= j; ++a) acc += lpow[a] * upow[j - a];
        c[j] += e * acc;
      }
      if (std::pow(r, k) * std::pow(static_cast<double>(k), order) < 1e-18) break;
    }
    return c;
  });
}

}  // namespace

CMat li_sigma(const NormalizedLog& nlog, cplx x, const ComplexPath* path, LiRoute route) {
  if (x == cplx(0.0)) fail(ErrorCode::kZeroBase, "Li_sigma at x = 0");
  if (route == LiRoute::kDirect) {
    if (path != nullptr) fail(ErrorCode::kInvalidArgument, "direct series route has no continuation");
    return li_sigma_direct(nlog, x);
  }
  const int n = nlog.N.dim();
  const int m = nlog.order;
  const int d = nlog.N.nil_order();
  const CMat& nil = nlog.N.nil();
  const CMat& sig_s = nlog.sigma.ss();
  const cplx eta = std::exp(kTwoPiI / static_cast<double>(m));

  std::vector<cplx> xs, logs;
  if (path != nullptr) {
    if (path->points.empty() || std::abs(path->points.back() - x) > 1e-12 * std::max(1.0, std::abs(x)))
      fail(ErrorCode::kPathInvalid, "path must end at x");
    xs = refine(*path, logs);
  } else {
    if (std::abs(x) >= 1.0) fail(ErrorCode::kOutsideDomain, "Li_sigma without a path requires |x| < 1");
    xs = {x};
    logs = {std::log(x)};
  }
  const cplx lx = logs.back();

  std::vector<CMat> npow{CMat::Identity(n, n)};
  for (int p = 1; p < d; ++p) npow.push_back(npow.back() * (-nil * static_cast<double>(m)));
  CMat sum = CMat::Zero(n, n), srow = CMat::Identity(n, n);
  for (int r = 1; r <= m; ++r) {
    srow = srow * sig_s;
    const cplx er = std::pow(eta, r);
    std::vector<cplx> li(d);
    if (path != nullptr) {
      ComplexPath ypath;
      ypath.points.reserve(xs.size());
      for (cplx l : logs) ypath.points.push_back(er * std::exp(l / static_cast<double>(m)));
      LiContinuation cont = continue_polylogs(d, ypath);
      for (int p = 1; p <= d; ++p) li[p - 1] = cont.value(p);
    } else {
      const cplx y = er * std::exp(lx / static_cast<double>(m));
      for (int p = 1; p <= d; ++p) li[p - 1] = li_principal(p, y);
    }
    CMat inner = CMat::Zero(n, n);
    for (int p = 1; p <= d; ++p) inner += li[p - 1] * npow[p - 1];
    sum += inner * srow;
  }
  return nil_exp(nil, d, lx) * sum;
}

CMat li_sigma(const CMat& sigma, cplx x, const ComplexPath* path, LiRoute route) {
  return li_sigma(normalized_log(sigma), x, path, route);
}

CMat li_sigma_branch(const NormalizedLog& nlog, cplx x, cplx log_x) {
  const CMat principal = li_sigma(nlog, x);
  const cplx shift = log_x - std::log(x);
  if (shift == cplx(0.0)) return principal;
  return operator_power(std::exp(shift), shift, nlog.N).mat() * principal;
}

double li_sigma_inversion_check(const CMat& sigma, cplx x, const ComplexPath& path, int chi0) {
  if (chi0 != 0 && chi0 != 1) fail(ErrorCode::kInvalidArgument, "chi0 must be 0 or 1");
  if (!(std::abs(x) > 0.0 && std::abs(x) < 1.0)) fail(ErrorCode::kOutsideDomain, "inversion requires 0 < |x| < 1");
  if (path.points.empty() || std::abs(path.points.front() - x) > 1e-12)
    fail(ErrorCode::kPathInvalid, "path must start at x");
  const int n = static_cast<int>(sigma.rows());
  const NormalizedLog nlog = normalized_log(sigma);
  const CMat lhs = li_sigma(nlog, path.points.back(), &path);

  const CMat id = CMat::Identity(n, n);
  const CMat inv = li_sigma(CMat(sigma.inverse()), x);
  CMat p1 = CMat::Zero(n, n);
  for (size_t k = 0; k < nlog.nu.size(); ++k)
    if (nlog.nu[k].num == 0) p1 += nlog.N.spectral()[k].projector;
  const CMat qp = id - p1;
  const CMat pow_sigma = chi0 == 0 ? sigma : id;
  const CMat jump = -kTwoPiI * qp * pow_sigma * (sigma - id + p1).inverse();

  // Unipotent block: sum_p [B_p(1 - chi0)(-2 pi i)^p - (-Log x)^p] N_n^{p-1} / p!.
  const CMat& nil = nlog.N.nil();
  const int d = nlog.N.nil_order();
  const cplx lx = std::log(x);
  CMat h = CMat::Zero(n, n), npow = id;
  double fact = 1.0;
  for (int p = 1; p <= d; ++p) {
    fact *= p;
    const cplx coeff = (bernoulli_poly(p, 1.0 - chi0) * std::pow(-kTwoPiI, p) - std::pow(-lx, p)) / fact;
    h += coeff * npow;
    npow = npow * nil;
  }
  const CMat rhs = inv + jump + p1 * h;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace phasekit
