#include "phasekit/phase.hpp"

#include <cmath>

#include "phasekit/errors.hpp"
#include "phasekit/special.hpp"

namespace phasekit {

namespace {

void require_cycle(const SingularityModel& model, const CVec& v) {
  if (v.size() != model.rank()) fail(ErrorCode::kInvalidArgument, "cycle length does not match rank");
}

// sum_n (-1)^{n+1} a^T eta^{-1} b-weighted terms; the phi^i components are a_i lambda^{s_i-l-n}/Gamma(...).
cplx oracle_term(const CVec& a, const CVec& b, int n, cplx log_lambda, cplx log_mu, const SingularityModel& model) {
  const int r = model.rank();
  const int ell = model.lattice.ell;
  const CMat& g = model.frobenius.eta_inv;
  cplx acc = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (g(i, j) == cplx(0.0)) continue;
      const double e1 = model.s(i) - ell - n;
      const double e2 = model.s(j) - ell + n + 1;
      cplx w;
      if (-e1 > 0.0 && e2 + 1.0 > 0.0) {
        // 1/Gamma(e1+1) = sin(pi (e1+1)) Gamma(-e1) / pi keeps large n free of overflow.
        const double ratio = std::exp(std::lgamma(-e1) - std::lgamma(e2 + 1.0));
        const double sine = ((n % 2 == 0) ? 1.0 : -1.0) * std::sin(kPi * (model.s(i) - ell + 1.0));
        w = sine / kPi * ratio * std::exp(e1 * log_lambda + e2 * log_mu);
      } else {
        w = std::exp(e1 * log_lambda) * recip_gamma(e1 + 1.0) * std::exp(e2 * log_mu) * recip_gamma(e2 + 1.0);
      }
      acc += a(i) * g(i, j) * b(j) * w;
    }
  const double sgn = (n % 2 == 0) ? -1.0 : 1.0;
  return sgn * acc;
}

cplx default_log_mu(cplx lambda, cplx mu, cplx log_lambda) { return log_lambda + std::log(mu / lambda); }

cplx log_from(cplx start_log, const std::vector<cplx>& pts) {
  ComplexPath p{pts, "log"};
  return start_log + (continued_log(p) - std::log(pts.front()));
}

}  // namespace

OracleValue omega_oracle(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu, const SingularityModel& model,
                         int n_max, std::optional<cplx> log_lambda) {
  require_cycle(model, alpha);
  require_cycle(model, beta);
  if (!(std::abs(lambda) > std::abs(mu)) || mu == cplx(0.0))
    fail(ErrorCode::kOutsideDomain, "oracle requires |lambda| > |mu| > 0");
  const cplx ll = log_lambda.value_or(std::log(lambda));
  const cplx lm = default_log_mu(lambda, mu, ll);
  const CVec a = model.a_coords(alpha), b = model.a_coords(beta);
  OracleValue out;
  cplx last = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    last = oracle_term(a, b, n, ll, lm, model);
    out.value += last;
  }
  const double x = std::abs(mu / lambda);
  out.terms = n_max + 1;
  out.tail_bound = std::abs(last) * x / (1.0 - x);
  return out;
}

cplx p_discrepancy(const CVec& alpha, const CVec& beta, cplx /*lambda*/, cplx mu, cplx log_lambda, cplx log_mu,
                   const SingularityModel& model) {
  require_cycle(model, alpha);
  require_cycle(model, beta);
  const CVec a = model.a_coords(alpha);
  cplx acc = 0.0;
  for (int i = 0; i < model.rank(); ++i) {
    const Rational shift = model.lattice.spectrum[i] - Rational(model.lattice.ell);  // e(k,i) = k - shift
    const long long f = shift.floor();
    auto slot = [&](int k) {
      const double e1 = shift.value() - k;
      const cplx c = a(i) * std::exp(e1 * log_lambda) * recip_gamma(e1 + 1.0);
      const CVec g = period_vector_t0(beta, -k - 1, mu, log_mu, model);
      const double sgn = ((k + 1) % 2 == 0) ? 1.0 : -1.0;
      return sgn * c * g(i);
    };
    // k >= 0 with e <= 0 counts in f_+ only; k < 0 with e > 0 counts in f_{>0} only.
    for (long long k = 0; k <= f; ++k) acc += slot(static_cast<int>(k));
    for (long long k = f + 1; k <= -1; ++k) acc -= slot(static_cast<int>(k));
  }
  return acc;
}

PhaseValue omega_closed_form(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                             const SingularityModel& model, std::optional<cplx> log_lambda,
                             std::optional<cplx> log_mu) {
  require_cycle(model, alpha);
  require_cycle(model, beta);
  if (lambda == cplx(0.0) || mu == cplx(0.0)) fail(ErrorCode::kDegenerateRatio, "zero spectral parameter");
  const cplx x = mu / lambda;
  if (std::abs(x - 1.0) < 1e-12) fail(ErrorCode::kDegenerateRatio, "mu/lambda = 1");
  PhaseValue out;
  out.log_lambda = log_lambda.value_or(std::log(lambda));
  out.log_mu = log_mu.value_or(default_log_mu(lambda, mu, out.log_lambda));
  if (std::abs(x) >= 1.0) fail(ErrorCode::kOutsideDomain, "closed form without a path requires |mu| < |lambda|");
  const CMat li = li_sigma_branch(model.nlog, x, out.log_mu - out.log_lambda);
  out.li_term = -((li * alpha).transpose() * model.gram * beta)(0, 0);
  out.p_term = p_discrepancy(alpha, beta, lambda, mu, out.log_lambda, out.log_mu, model);
  out.omega = out.li_term + out.p_term;
  return out;
}

CMat omega_closed_matrix(cplx lambda, cplx mu, cplx log_lambda, const SingularityModel& model) {
  const int n = model.rank();
  CMat out(n, n);
  const cplx lm = default_log_mu(lambda, mu, log_lambda);
  const CMat li = li_sigma_branch(model.nlog, mu / lambda, lm - log_lambda);
  const CMat base = -li.transpose() * model.gram;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out(a, b) = base(a, b) + p_discrepancy(CVec::Unit(n, a), CVec::Unit(n, b), lambda, mu, log_lambda, lm, model);
  return out;
}

double p_antisymmetry_residual(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                               const SingularityModel& model) {
  const cplx ll = std::log(lambda);
  const cplx lm = default_log_mu(lambda, mu, ll);
  const cplx lhs = p_discrepancy(alpha, beta, lambda, mu, ll, lm, model) -
                   p_discrepancy(beta, alpha, mu, lambda, lm, ll, model);
  // Projection onto Ker N_s and the operator ((e^{-2 pi i N} - 1)/N)(mu/lambda)^N there.
  const int n = model.rank();
  CMat p1 = CMat::Zero(n, n);
  for (size_t k = 0; k < model.nlog.nu.size(); ++k)
    if (model.nlog.nu[k].num == 0) p1 += model.nlog.N.spectral()[k].projector;
  const cplx lx = lm - ll;
  const CMat op = model.nlog.N.apply([lx](cplx v, int order) {
    // Taylor jet of g(v) = (e^{-2 pi i v} - 1)/v * e^{v lx} via the series of (e^{-2 pi i v} - 1)/v.
    std::vector<cplx> g(order + 1, 0.0), e(order, 0.0), out(order, 0.0);
    const int terms = order + 30;
    // h(v) = sum_{m>=1} (-2 pi i)^m v^{m-1}/m! expanded about v.
    for (int j = 0; j < order; ++j) {
      cplx acc = 0.0, fact = 1.0;
      for (int m = 1; m < terms; ++m) {
        fact *= -kTwoPiI / static_cast<double>(m);
        if (m - 1 < j) continue;
        acc += fact * binomial(m - 1, j) * std::pow(v, m - 1 - j);
      }
      g[j] = acc;
      cplx ej = std::exp(v * lx);
      for (int q = 1; q <= j; ++q) ej *= lx / static_cast<double>(q);
      e[j] = ej;
    }
    for (int j = 0; j < order; ++j)
      for (int q = 0; q <= j; ++q) out[j] += g[q] * e[j - q];
    return out;
  });
  const CVec a1 = p1 * alpha;
  const cplx rhs = ((op * a1).transpose() * to_complex(model.lattice.seifert) * beta)(0, 0);
  return std::abs(lhs - rhs);
}

LocalityResult locality_check(const IVec& alpha, const IVec& beta, cplx lambda, cplx mu,
                              const SingularityModel& model, int winding, int steps) {
  if (winding % 2 == 0) fail(ErrorCode::kPathInvalid, "swap path needs an odd number of half turns");
  if (!(std::abs(lambda) > std::abs(mu))) fail(ErrorCode::kOutsideDomain, "locality requires |lambda| > |mu|");
  const CVec a = to_complex(alpha), b = to_complex(beta);
  const cplx m = 0.5 * (lambda + mu), d = 0.5 * (lambda - mu);
  if (std::abs(d) >= 0.5 * std::abs(m)) fail(ErrorCode::kPathInvalid, "|lambda - mu| too large for the swap path");
  std::vector<cplx> lp, mp, xp;
  for (int j = 0; j <= steps; ++j) {
    const cplx e = std::exp(kI * kPi * (static_cast<double>(winding) * j / steps));
    lp.push_back(m + d * e);
    mp.push_back(m - d * e);
    xp.push_back(mp.back() / lp.back());
  }
  xp.back() = lambda / mu;
  lp.back() = mu;
  mp.back() = lambda;
  const cplx ll = std::log(lambda);
  const cplx lm = default_log_mu(lambda, mu, ll);
  const PhaseValue first = omega_closed_form(a, b, lambda, mu, model, ll, lm);

  ComplexPath xpath{xp, "swap"};
  const CMat li = li_sigma(model.nlog, xp.back(), &xpath);
  const cplx ll_end = log_from(ll, lp), lm_end = log_from(lm, mp);
  const cplx second = -((li * b).transpose() * model.gram * a)(0, 0) +
                      p_discrepancy(b, a, lp.back(), mp.back(), ll_end, lm_end, model);

  LocalityResult out;
  out.difference = first.omega - second;
  out.quotient = out.difference / (-kTwoPiI);
  out.seifert = alpha.dot(model.lattice.seifert * beta);
  out.intersection = alpha.dot(intersection_form(model.lattice) * beta);
  const cplx rest = out.quotient - static_cast<double>(out.seifert);
  if (out.intersection != 0) {
    out.k_real = rest.real() / static_cast<double>(out.intersection);
    out.k = std::llround(out.k_real);
    out.k_residual = std::abs(rest / static_cast<double>(out.intersection) - static_cast<double>(out.k));
  } else {
    out.k = 0;
    out.k_residual = std::abs(rest);
  }
  out.b_residual = std::abs(1.0 - std::exp(-out.difference));
  if (out.k_residual > 1e-3) fail(ErrorCode::kNotInteger, "locality integer k is not an integer");
  return out;
}

DLambdaResult dlambda_identity_check(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                                     const SingularityModel& model) {
  const double gap = std::abs(lambda) - std::abs(mu);
  if (!(gap > 0.0)) fail(ErrorCode::kOutsideDomain, "identity requires |lambda| > |mu|");
  const double h = 1e-3 * std::min(gap, std::abs(lambda - mu));
  if (2.0 * h >= 0.5 * gap) fail(ErrorCode::kStepTooLarge, "finite-difference step leaves the domain");
  // Truncation so that the tail is negligible at the widest stencil point.
  const double x = std::abs(mu) / (std::abs(lambda) - 2.0 * h);
  const int n_max = std::clamp(static_cast<int>(std::ceil(std::log(1e-17) / std::log(x))) + 10, 20, 4000);
  const cplx ll = std::log(lambda);
  const cplx lm = std::log(mu);
  auto omega_at = [&](cplx l) {
    const cplx log_l = ll + std::log(l / lambda);
    const CVec a = model.a_coords(alpha), b = model.a_coords(beta);
    cplx acc = 0.0;
    for (int n = 0; n <= n_max; ++n) acc += oracle_term(a, b, n, log_l, lm, model);
    return acc;
  };
  auto central = [&](double step) { return (omega_at(lambda + step) - omega_at(lambda - step)) / (2.0 * step); };
  DLambdaResult out;
  out.n_max = n_max;
  out.derivative = (4.0 * central(h / 2.0) - central(h)) / 3.0;
  const CVec i0 = period_vector_t0(alpha, 0, lambda, ll, model);
  const CVec im1 = period_vector_t0(beta, -1, mu, lm, model);
  const CMat th = model.frobenius.theta_mat() + 0.5 * CMat::Identity(model.rank(), model.rank());
  out.rhs = (i0.transpose() * model.frobenius.eta * th * im1)(0, 0) / (lambda - mu);
  out.residual = std::abs(out.derivative - out.rhs);
  return out;
}

std::vector<cplx> omega_around_diagonal(const CVec& alpha, const CVec& beta, cplx mu, cplx log_mu,
                                        const SingularityModel& model, double radius, int samples) {
  if (radius <= 0.0 || radius >= 0.5) fail(ErrorCode::kInvalidArgument, "radius must be in (0, 1/2)");
  if (samples < 4) fail(ErrorCode::kInvalidArgument, "need at least 4 samples");
  const cplx u = mu / std::abs(mu);
  const double r = radius * std::abs(mu);
  const cplx lambda0 = mu + r * u;
  const cplx ll0 = log_mu + std::log(lambda0 / mu);
  std::vector<cplx> values;
  std::vector<cplx> xs;
  for (int m = 0; m < samples; ++m) {
    const double th = 2.0 * kPi * m / samples;
    const cplx lambda = mu + r * u * std::exp(kI * th);
    // Fine polyline of x = mu/lambda along the arc from theta = 0.
    xs.clear();
    const int sub = std::max(1, 8 * m);
    for (int j = 0; j <= sub; ++j) xs.push_back(mu / (mu + r * u * std::exp(kI * (th * j / sub))));
    const cplx ll = ll0 + std::log(lambda / lambda0);
    CMat li;
    if (m == 0) {
      li = li_sigma_branch(model.nlog, xs.back(), log_mu - ll);
    } else {
      ComplexPath p{xs, "diagonal"};
      li = li_sigma(model.nlog, xs.back(), &p);
    }
    values.push_back(-((li * alpha).transpose() * model.gram * beta)(0, 0) +
                     p_discrepancy(alpha, beta, lambda, mu, ll, log_mu, model));
  }
  return values;
}

PoleResult pole_order_at_diagonal(const CVec& alpha, const CVec& beta, cplx mu, const SingularityModel& model,
                                  double radius, int samples) {
  const cplx u = mu / std::abs(mu);
  const double r = radius * std::abs(mu);
  std::vector<cplx> values = omega_around_diagonal(alpha, beta, mu, std::log(mu), model, radius, samples);
  for (cplx& v : values) v = std::exp(v);
  // Laurent coefficients in (lambda - mu) by the trapezoid rule.
  PoleResult out;
  const int lo = -8, hi = 8;
  std::vector<cplx> c;
  double biggest = 0.0;
  for (int n = lo; n <= hi; ++n) {
    cplx acc = 0.0;
    for (int m = 0; m < samples; ++m) {
      const cplx z = r * u * std::exp(kI * (2.0 * kPi * m / samples));
      acc += values[m] * std::pow(z, -n);
    }
    c.push_back(acc / static_cast<double>(samples));
    biggest = std::max(biggest, std::abs(c.back()) * std::pow(r, n));
  }
  out.leading_exponent = hi + 1;
  for (int n = lo; n <= hi; ++n) {
    if (std::abs(c[n - lo]) * std::pow(r, n) > 1e-6 * biggest) {
      out.leading_exponent = n;
      break;
    }
  }
  double below = 0.0;
  for (int n = lo; n < out.leading_exponent; ++n) below = std::max(below, std::abs(c[n - lo]) * std::pow(r, n));
  out.regular_residual = biggest > 0.0 ? below / biggest : 0.0;
  out.pole_order = -out.leading_exponent;
  return out;
}

}  // namespace phasekit
