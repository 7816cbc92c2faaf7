#include "phasekit/opcalc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phasekit/errors.hpp"
#include "phasekit/special.hpp"

namespace phasekit {

namespace {

CMat identity(int n) { return CMat::Identity(n, n); }

// Semisimple part by Newton iteration S <- S - p(S) p'(S)^{-1}, p = prod (x - v_k).
CMat newton_semisimple(const CMat& a, const std::vector<cplx>& eig) {
  const int n = static_cast<int>(a.rows());
  const double scale = std::max(1.0, a.norm());
  CMat s = a;
  for (int it = 0; it < 60; ++it) {
    CMat p = identity(n);
    for (cplx v : eig) p = p * (s - v * identity(n));
    CMat dp = CMat::Zero(n, n);
    for (size_t k = 0; k < eig.size(); ++k) {
      CMat prod = identity(n);
      for (size_t j = 0; j < eig.size(); ++j)
        if (j != k) prod = prod * (s - eig[j] * identity(n));
      dp += prod;
    }
    CMat step = dp.partialPivLu().solve(p);
    s -= step;
    if (step.norm() <= 1e-15 * scale) break;
  }
  return s;
}

std::vector<SpectralPart> projectors(const CMat& s, const std::vector<cplx>& eig) {
  const int n = static_cast<int>(s.rows());
  std::vector<SpectralPart> parts;
  for (size_t k = 0; k < eig.size(); ++k) {
    CMat p = identity(n);
    for (size_t j = 0; j < eig.size(); ++j)
      if (j != k) p = p * (s - eig[j] * identity(n)) / (eig[k] - eig[j]);
    parts.push_back({eig[k], p});
  }
  return parts;
}

int nilpotency(const CMat& nil, double scale) {
  const int n = static_cast<int>(nil.rows());
  CMat pw = identity(n);
  for (int d = 1; d <= n; ++d) {
    pw = pw * nil;
    if (pw.norm() <= 1e-10 * std::pow(scale, d)) return d;
  }
  return n;
}

}  // namespace

OperatorH::OperatorH(CMat mat) : mat_(std::move(mat)) {}

OperatorH OperatorH::with_eigenvalues(const CMat& mat, const std::vector<cplx>& eigenvalues) {
  OperatorH op(mat);
  op.ss_ = newton_semisimple(mat, eigenvalues);
  op.nil_ = mat - op.ss_;
  op.nil_order_ = nilpotency(op.nil_, std::max(1.0, mat.norm()));
  for (auto& part : projectors(op.ss_, eigenvalues))
    if (part.projector.norm() > 1e-12) op.spectral_.push_back(std::move(part));
  op.split_ = true;
  return op;
}

OperatorH OperatorH::split_numeric(const CMat& mat, double cluster_tol) {
  Eigen::ComplexEigenSolver<CMat> solver(mat, false);
  std::vector<cplx> raw(solver.eigenvalues().data(), solver.eigenvalues().data() + mat.rows());
  const double tol = cluster_tol * std::max(1.0, mat.norm());
  std::vector<std::vector<cplx>> clusters;
  for (cplx v : raw) {
    bool placed = false;
    for (auto& c : clusters) {
      for (cplx w : c)
        if (std::abs(v - w) <= tol) {
          c.push_back(v);
          placed = true;
          break;
        }
      if (placed) break;
    }
    if (!placed) clusters.push_back({v});
  }
  std::vector<cplx> centers;
  for (auto& c : clusters) centers.push_back(std::accumulate(c.begin(), c.end(), cplx(0.0)) / static_cast<double>(c.size()));
  return with_eigenvalues(mat, centers);
}

const CMat& OperatorH::ss() const {
  if (!split_) fail(ErrorCode::kInvalidArgument, "operator has no semisimple/nilpotent split");
  return ss_;
}

const CMat& OperatorH::nil() const {
  if (!split_) fail(ErrorCode::kInvalidArgument, "operator has no semisimple/nilpotent split");
  return nil_;
}

int OperatorH::nil_order() const {
  if (!split_) fail(ErrorCode::kInvalidArgument, "operator has no semisimple/nilpotent split");
  return nil_order_;
}

const std::vector<SpectralPart>& OperatorH::spectral() const {
  if (!split_) fail(ErrorCode::kInvalidArgument, "operator has no semisimple/nilpotent split");
  return spectral_;
}

CMat OperatorH::apply(const JetFunction& jet) const {
  if (!split_) return split_numeric(mat_).apply(jet);
  const int n = dim();
  std::vector<CMat> powers{identity(n)};
  for (int j = 1; j < nil_order_; ++j) powers.push_back(powers.back() * nil_);
  CMat out = CMat::Zero(n, n);
  for (const auto& part : spectral_) {
    std::vector<cplx> c = jet(part.value, nil_order_);
    CMat poly = CMat::Zero(n, n);
    for (int j = 0; j < nil_order_ && j < static_cast<int>(c.size()); ++j) poly += c[j] * powers[j];
    out += part.projector * poly;
  }
  return out;
}

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

CMat matrix_power(const CMat& m, int k) {
  CMat out = CMat::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

CMat exp_minus_two_pi_i(const OperatorH& N) {
  return N.apply([](cplx v, int order) {
    std::vector<cplx> c(order);
    cplx base = std::exp(-kTwoPiI * v), f = 1.0;
    for (int j = 0; j < order; ++j) {
      c[j] = base * f;
      f *= -kTwoPiI / static_cast<double>(j + 1);
    }
    return c;
  });
}

NormalizedLog normalized_log(const CMat& sigma, long long max_den, double tol) {
  const int n = static_cast<int>(sigma.rows());
  Eigen::ComplexEigenSolver<CMat> solver(sigma, false);
  std::vector<Rational> distinct;
  for (int k = 0; k < n; ++k) {
    cplx e = solver.eigenvalues()(k);
    if (std::abs(std::abs(e) - 1.0) > tol) fail(ErrorCode::kNotRootOfUnity, "eigenvalue off the unit circle");
    Rational r;
    if (!rationalize(std::arg(e) / (2.0 * kPi), max_den, tol, r))
      fail(ErrorCode::kNotRootOfUnity, "eigenvalue argument not rational within the denominator bound");
    Rational frac = r - Rational(r.floor());
    Rational nu = frac.num == 0 ? Rational(0) : -frac;  // exp(-2 pi i nu) = e, nu in (-1, 0]
    if (std::find(distinct.begin(), distinct.end(), nu) == distinct.end()) distinct.push_back(nu);
  }
  std::vector<cplx> lambdas;
  long long order = 1;
  for (const auto& nu : distinct) {
    lambdas.push_back(std::exp(-kTwoPiI * nu.value()));
    order = lcm_ll(order, nu.den);
  }
  OperatorH sig = OperatorH::with_eigenvalues(sigma, lambdas);
  // Keep nu aligned with the surviving spectral parts.
  std::vector<Rational> nus;
  CMat ns = CMat::Zero(n, n);
  for (const auto& part : sig.spectral()) {
    size_t idx = 0;
    double best = 1e300;
    for (size_t k = 0; k < lambdas.size(); ++k)
      if (std::abs(lambdas[k] - part.value) < best) {
        best = std::abs(lambdas[k] - part.value);
        idx = k;
      }
    nus.push_back(distinct[idx]);
    ns += distinct[idx].value() * part.projector;
  }
  CMat unip = sig.ss().partialPivLu().solve(sigma) - identity(n);
  CMat logu = CMat::Zero(n, n), pw = identity(n);
  for (int j = 1; j <= n; ++j) {
    pw = pw * unip;
    logu += ((j % 2 == 1) ? 1.0 : -1.0) / static_cast<double>(j) * pw;
  }
  CMat nn = -logu / kTwoPiI;

  NormalizedLog out;
  std::vector<cplx> nu_values;
  for (const auto& r : nus) nu_values.push_back(r.value());
  out.N = OperatorH::with_eigenvalues(ns + nn, nu_values);
  out.sigma = sig;
  out.order = static_cast<int>(order);
  out.nu.clear();
  for (const auto& part : out.N.spectral()) {
    for (const auto& r : nus)
      if (std::abs(r.value() - part.value) < 1e-12) {
        out.nu.push_back(r);
        break;
      }
  }
  out.residual = (exp_minus_two_pi_i(out.N) - sigma).norm();
  return out;
}

OperatorH operator_power(cplx x, cplx log_x, const OperatorH& N) {
  if (x == cplx(0.0)) fail(ErrorCode::kZeroBase, "operator power with zero base");
  CMat m = N.apply([log_x](cplx v, int order) {
    std::vector<cplx> c(order);
    cplx f = std::exp(log_x * v);
    for (int j = 0; j < order; ++j) {
      c[j] = f;
      f *= log_x / static_cast<double>(j + 1);
    }
    return c;
  });
  return OperatorH(m);
}

GammaJet recip_gamma_jet(cplx s, int nil_order) {
  if (nil_order < 1) fail(ErrorCode::kInvalidArgument, "jet order must be positive");
  GammaJet jet;
  jet.coefficients.assign(nil_order, 0.0);
  jet.coefficients[0] = recip_gamma(s + 1.0);
  if (nil_order == 1) return jet;
  // Cauchy integral on |e| = 1; 1/Gamma is entire so the trapezoid rule converges geometrically.
  const int m = 64;
  std::vector<cplx> samples(m), nodes(m);
  for (int k = 0; k < m; ++k) {
    nodes[k] = std::exp(kTwoPiI * (static_cast<double>(k) / m));
    samples[k] = recip_gamma(s + 1.0 + nodes[k]);
  }
  for (int j = 1; j < nil_order; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < m; ++k) acc += samples[k] * std::pow(nodes[k], -j);
    jet.coefficients[j] = acc / static_cast<double>(m);
  }
  return jet;
}

CMat sharp_map(const CMat& T, const CMat& basis_pairing) {
  Eigen::FullPivLU<CMat> lu(basis_pairing);
  if (!lu.isInvertible()) fail(ErrorCode::kSingularPairing, "pairing matrix is singular");
  return (basis_pairing * T * lu.inverse()).transpose();
}

}  // namespace phasekit
