#include "phasekit/continuation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "phasekit/errors.hpp"
#include "phasekit/phase.hpp"

namespace phasekit {

namespace {

constexpr double kNoCeiling = std::numeric_limits<double>::infinity();

CVec flatten(const std::vector<const CMat*>& blocks) {
  Eigen::Index n = 0;
  for (const CMat* b : blocks) n += b->size();
  CVec out(n);
  Eigen::Index pos = 0;
  for (const CMat* b : blocks) {
    out.segment(pos, b->size()) = Eigen::Map<const CVec>(b->data(), b->size());
    pos += b->size();
  }
  return out;
}

CMat block(const CVec& y, int index, int n) {
  return Eigen::Map<const CMat>(y.data() + static_cast<Eigen::Index>(index) * n * n, n, n);
}

CMat shifted_theta(const FrobeniusData& f, int k) {
  const int n = f.dim;
  return f.theta_mat() - (k + 0.5) * CMat::Identity(n, n);
}

// Derivative of lambda - u_i(t) along (dt, dlambda), with du_i/dt_j = P_j(x_i).
double min_ratio_to_discriminant(const FrobeniusData& f, const CVec& t, cplx lambda, const CVec& dt, cplx dlambda,
                                 double clearance) {
  const auto xs = f.model.critical_points(t);
  const poly::Poly pot = f.model.potential(t);
  double best = kNoCeiling;
  for (cplx x : xs) {
    const cplx u = poly::eval(pot, x);
    const double dist = std::abs(lambda - u);
    if (dist < clearance) fail(ErrorCode::kNearDiscriminant, "path comes within clearance of a critical value");
    cplx speed = dlambda;
    for (int j = 0; j < f.dim; ++j) speed -= dt(j) * poly::eval(f.model.basis_poly(j, t), x);
    if (std::abs(speed) > 0.0) best = std::min(best, 0.2 * dist / std::abs(speed));
  }
  return best;
}

// Connection matrix A(s) with dY/ds = A Y for the order-k period along a straight segment.
CMat connection(const FrobeniusData& f, int k, const CVec& t, cplx lambda, const CVec& dt, cplx dlambda) {
  const int n = f.dim;
  const auto c = f.structure(t);
  CMat dir = dlambda * CMat::Identity(n, n);
  for (int j = 0; j < n; ++j) dir -= dt(j) * c[j];
  const CMat resolvent = (lambda * CMat::Identity(n, n) - f.euler_product(t)).partialPivLu().solve(shifted_theta(f, k));
  return dir * resolvent;
}

OdeOptions transport_options() {
  OdeOptions o;
  o.rtol = 1e-12;
  o.atol = 1e-14;
  return o;
}

void merge(OdeStats& into, const OdeStats& s) {
  into.accepted += s.accepted;
  into.rejected += s.rejected;
  into.max_local_error = std::max(into.max_local_error, s.max_local_error);
}

}  // namespace

double discriminant_distance(const FrobeniusData& f, const CVec& t, cplx lambda) {
  double best = kNoCeiling;
  for (cplx u : f.model.critical_values(t)) best = std::min(best, std::abs(lambda - u));
  return best;
}

CMat pf_continue(const CMat& y, int k, const ParamPath& path, const FrobeniusData& f, OdeStats* stats) {
  if (path.points.empty()) fail(ErrorCode::kPathInvalid, "empty path");
  const int n = f.dim;
  CMat cur = y;
  OdeStats total;
  for (size_t seg = 0; seg + 1 < path.points.size(); ++seg) {
    const CVec t0 = path.points[seg].t;
    const cplx l0 = path.points[seg].lambda;
    const CVec dt = path.points[seg + 1].t - t0;
    const cplx dl = path.points[seg + 1].lambda - l0;
    if (dt.norm() == 0.0 && dl == cplx(0.0)) continue;
    auto rhs = [&](double s, const CVec& v, CVec& dv) {
      const CMat a = connection(f, k, t0 + s * dt, l0 + s * dl, dt, dl);
      const CMat d = a * Eigen::Map<const CMat>(v.data(), n, v.size() / n);
      dv = Eigen::Map<const CVec>(d.data(), d.size());
    };
    auto ceiling = [&](double s, const CVec&) {
      return min_ratio_to_discriminant(f, t0 + s * dt, l0 + s * dl, dt, dl, path.clearance);
    };
    OdeStats st;
    const CVec out = integrate_dopri5(rhs, 0.0, 1.0, flatten({&cur}), transport_options(), ceiling, &st);
    cur = Eigen::Map<const CMat>(out.data(), n, cur.cols());
    merge(total, st);
  }
  if (stats) merge(*stats, total);
  return cur;
}

CVec pf_continue_lambda(const CVec& period, int k, const CVec& t, const std::vector<cplx>& lambda_path,
                        const FrobeniusData& f, double clearance) {
  ParamPath p;
  p.clearance = clearance;
  for (cplx l : lambda_path) p.points.push_back({t, l});
  return pf_continue(period, k, p, f);
}

CVec pf_continue_t(const CVec& period, int k, const std::vector<CVec>& t_path, cplx lambda, const FrobeniusData& f,
                   double clearance) {
  ParamPath p;
  p.clearance = clearance;
  for (const CVec& t : t_path) p.points.push_back({t, lambda});
  return pf_continue(period, k, p, f);
}

ParamPath standard_route(cplx lambda0, const CVec& t, cplx lambda) {
  ParamPath p;
  p.points.push_back({CVec::Zero(t.size()), lambda0});
  p.points.push_back({t, lambda0});
  p.points.push_back({t, lambda});
  return p;
}

CMat periods_along(const SingularityModel& model, int k, const ParamPath& path, cplx log_lambda0) {
  if (path.points.empty()) fail(ErrorCode::kPathInvalid, "empty path");
  if (path.points.front().t.norm() != 0.0) fail(ErrorCode::kPathInvalid, "path must start at t = 0");
  const CMat y0 = period_matrix_t0(k, path.points.front().lambda, log_lambda0, model);
  return pf_continue(y0, k, path, model.frobenius);
}

// ---------------------------------------------------------------- roots

RootTracker::RootTracker(OneVariableModel model, CVec t, cplx lambda, std::vector<cplx> roots)
    : model_(model), t_(std::move(t)), lambda_(lambda), roots_(std::move(roots)) {
  if (static_cast<int>(roots_.size()) != model_.mu + 1) fail(ErrorCode::kInvalidArgument, "wrong number of roots");
}

RootTracker RootTracker::reference(const OneVariableModel& model, cplx lambda, cplx log_lambda) {
  const int m = model.mu + 1;
  const cplx base = std::exp((std::log(static_cast<double>(m)) + log_lambda) / static_cast<double>(m));
  std::vector<cplx> roots;
  for (int a = 0; a < m; ++a) roots.push_back(base * std::exp(kTwoPiI * (static_cast<double>(a) / m)));
  return RootTracker(model, CVec::Zero(model.mu), lambda, roots);
}

void RootTracker::move_to(const CVec& t, cplx lambda) { step(t, lambda, 0); }

void RootTracker::follow(const ParamPath& path) {
  for (const auto& p : path.points) move_to(p.t, p.lambda);
}

void RootTracker::step(const CVec& t, cplx lambda, int depth) {
  const auto fresh = model_.fiber(t, lambda);
  double sep = kNoCeiling;
  for (size_t a = 0; a < roots_.size(); ++a)
    for (size_t b = a + 1; b < roots_.size(); ++b) sep = std::min(sep, std::abs(roots_[a] - roots_[b]));
  std::vector<cplx> next(roots_.size());
  std::vector<bool> used(fresh.size(), false);
  bool ok = true;
  for (size_t a = 0; a < roots_.size() && ok; ++a) {
    size_t best = 0;
    double dist = kNoCeiling;
    for (size_t j = 0; j < fresh.size(); ++j) {
      const double d = std::abs(fresh[j] - roots_[a]);
      if (d < dist) {
        dist = d;
        best = j;
      }
    }
    if (used[best] || dist > 0.25 * sep) ok = false;
    used[best] = true;
    next[a] = fresh[best];
  }
  if (ok) {
    roots_ = next;
    t_ = t;
    lambda_ = lambda;
    return;
  }
  if (depth > 40 || sep < 1e-12) fail(ErrorCode::kMultipleRoot, "roots collide while tracking");
  const CVec tm = 0.5 * (t_ + t);
  const cplx lm = 0.5 * (lambda_ + lambda);
  step(tm, lm, depth + 1);
  step(t, lambda, depth + 1);
}

std::pair<int, int> RootTracker::closest_pair() const {
  std::pair<int, int> best{-1, -1};
  double dist = kNoCeiling;
  for (int a = 0; a < static_cast<int>(roots_.size()); ++a)
    for (int b = 0; b < a; ++b) {
      const double d = std::abs(roots_[a] - roots_[b]);
      if (d < dist) {
        dist = d;
        best = {a, b};
      }
    }
  return best;
}

std::vector<double> root_coefficients(const CVec& cycle) {
  const int mu = static_cast<int>(cycle.size());
  std::vector<double> c(mu + 1, 0.0);
  auto coeff = [&](int j) { return (j >= 1 && j <= mu) ? cycle(j - 1).real() : 0.0; };
  for (int a = 0; a <= mu; ++a) c[a] = coeff(a) - coeff(a + 1);
  return c;
}

CVec pair_to_cycle(int a, int b, int mu) {
  CVec out = CVec::Zero(mu);
  const double sgn = a > b ? 1.0 : -1.0;
  const int lo = std::min(a, b), hi = std::max(a, b);
  for (int j = lo + 1; j <= hi; ++j) out(j - 1) = sgn;
  return out;
}

namespace {

// Covector (I^{(k)}, phi_i) for k >= 0 from sum_a c_a (d/dlambda)^k (P_i/F')(x_a).
CVec root_covector(const FrobeniusData& f, const std::vector<cplx>& roots, const std::vector<cplx>& c, int k,
                   const CVec& t) {
  const int n = f.dim;
  const poly::Poly fp = f.model.fprime(t);
  const poly::Poly fpp = poly::derivative(fp);
  CVec cov(n);
  for (int i = 0; i < n; ++i) {
    // h = num / F'^m, d/dlambda h(x) = h'(x)/F'(x).
    poly::Poly num = f.model.basis_poly(i, t);
    int m = 1;
    for (int d = 0; d < k; ++d) {
      num = poly::add(poly::mul(poly::derivative(num), fp), poly::scale(poly::mul(num, fpp), -static_cast<double>(m)));
      m += 2;
    }
    cplx acc = 0.0;
    for (size_t a = 0; a < roots.size(); ++a) {
      if (c[a] == cplx(0.0)) continue;
      const cplx d = poly::eval(fp, roots[a]);
      if (std::abs(d) < 1e-14) fail(ErrorCode::kMultipleRoot, "fiber has a multiple root");
      acc += c[a] * poly::eval(num, roots[a]) / std::pow(d, m);
    }
    cov(i) = acc;
  }
  return cov;
}

CVec root_oracle_coeffs(const FrobeniusData& f, const std::vector<cplx>& roots, const std::vector<cplx>& c, int k,
                        const CVec& t, cplx lambda) {
  const int n = f.dim;
  if (static_cast<int>(roots.size()) != n + 1) fail(ErrorCode::kInvalidArgument, "wrong number of roots");
  if (k >= 0) return f.eta_inv * root_covector(f, roots, c, k, t);
  CVec v = f.eta_inv * root_covector(f, roots, c, 0, t);
  const CMat e = lambda * CMat::Identity(n, n) - f.euler_product(t);
  for (int j = 0; j > k; --j) v = shifted_theta(f, j - 1).partialPivLu().solve(e * v);
  return v;
}

}  // namespace

CVec root_oracle(const FrobeniusData& f, const std::vector<cplx>& roots, const CVec& cycle, int k, const CVec& t,
                 cplx lambda) {
  if (cycle.size() != f.dim) fail(ErrorCode::kInvalidArgument, "cycle length does not match rank");
  const auto rc = root_coefficients(cycle);
  return root_oracle_coeffs(f, roots, std::vector<cplx>(rc.begin(), rc.end()), k, t, lambda);
}

CVec root_oracle_pair(const FrobeniusData& f, const std::vector<cplx>& roots, int a, int b, int k, const CVec& t,
                      cplx lambda) {
  std::vector<cplx> c(roots.size(), 0.0);
  c.at(a) += 1.0;
  c.at(b) -= 1.0;
  return root_oracle_coeffs(f, roots, c, k, t, lambda);
}

// ---------------------------------------------------------------- canonical coordinates

CanonicalCoordinates canonical_coordinates(const CVec& t, const FrobeniusData& f) {
  const int n = f.dim;
  Eigen::ComplexEigenSolver<CMat> es(f.euler_product(t));
  CanonicalCoordinates out;
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(es.eigenvalues()(i)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(es.eigenvalues()(i) - es.eigenvalues()(j)) < 1e-8 * scale)
        fail(ErrorCode::kNonSemisimplePoint, "canonical coordinates need distinct critical values");
  out.units.resize(n, n);
  std::vector<CVec> pis;
  for (int i = 0; i < n; ++i) {
    const CVec v = es.eigenvectors().col(i);
    const CVec vv = f.product(v, v, t);
    Eigen::Index piv;
    v.cwiseAbs().maxCoeff(&piv);
    const cplx c = vv(piv) / v(piv);
    const CVec pi = v / c;
    const cplx inv_delta = (pi.transpose() * f.eta * pi)(0, 0);
    const cplx delta = 1.0 / inv_delta;
    out.u.push_back(es.eigenvalues()(i));
    out.delta.push_back(delta);
    out.units.col(i) = std::sqrt(delta) * pi;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const CVec lhs = f.product(out.units.col(i), out.units.col(j), t);
      const CVec rhs = i == j ? CVec(std::sqrt(out.delta[j]) * out.units.col(j)) : CVec(CVec::Zero(n));
      out.residual = std::max(out.residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return out;
}

// ---------------------------------------------------------------- phase form

CVec phase_form(const CVec& a, const CVec& b, const CVec& t, const FrobeniusData& f) {
  return f.eta * f.product(a, b, t);
}

CVec phase_form(const SingularityModel& model, const CVec& alpha, const CVec& beta, const CVec& t, cplx xi,
                cplx lambda0) {
  const cplx ll = std::log(lambda0);
  const CMat yxi = periods_along(model, 0, standard_route(lambda0, t, xi), ll);
  const CMat y0 = periods_along(model, 0, standard_route(lambda0, t, 0.0), ll);
  return phase_form(yxi * alpha, y0 * beta, t, model.frobenius);
}

std::vector<CVec> phase_form_taylor(const SingularityModel& model, const CVec& alpha, const CVec& beta,
                                    const CVec& t, int m_count, cplx lambda0) {
  const auto& f = model.frobenius;
  const int n = f.dim;
  const CMat y0 = periods_along(model, 0, standard_route(lambda0, t, 0.0), std::log(lambda0));
  const CVec ib = y0 * beta;
  CVec ia = y0 * alpha;
  const CMat minus_e = -f.euler_product(t);
  std::vector<CVec> out;
  for (int m = 0; m < m_count; ++m) {
    if (m > 0) ia = minus_e.partialPivLu().solve(shifted_theta(f, m - 1) * ia);
    out.push_back(phase_form(ia, ib, t, f));
  }
  (void)n;
  return out;
}

PhaseIntegral integrate_phase_form(const FrobeniusData& f, const std::vector<CVec>& b_path, cplx xi,
                                   const CMat& y0, const CMat& yxi, double clearance) {
  const int n = f.dim;
  PhaseIntegral out;
  CMat a0 = y0, ax = yxi, k = CMat::Zero(n, n);
  const CMat th = shifted_theta(f, 0);
  const CMat id = CMat::Identity(n, n);
  for (size_t seg = 0; seg + 1 < b_path.size(); ++seg) {
    const CVec b0 = b_path[seg];
    const CVec db = b_path[seg + 1] - b0;
    if (db.norm() == 0.0) continue;
    auto rhs = [&](double s, const CVec& v, CVec& dv) {
      const CVec b = b0 + s * db;
      const auto c = f.structure(b);
      CMat m = CMat::Zero(n, n);
      for (int j = 0; j < n; ++j) m += db(j) * c[j];
      const CMat e = f.euler_product(b);
      const CMat r0 = (-e).partialPivLu().solve(th);
      const CMat rx = (xi * id - e).partialPivLu().solve(th);
      const CMat p0 = block(v, 0, n), px = block(v, 1, n);
      const CMat d0 = -m * r0 * p0;
      const CMat dx = -m * rx * px;
      const CMat dk = px.transpose() * m.transpose() * f.eta * p0;
      dv = flatten({&d0, &dx, &dk});
    };
    auto ceiling = [&](double s, const CVec&) {
      const CVec b = b0 + s * db;
      return std::min(min_ratio_to_discriminant(f, b, 0.0, db, 0.0, clearance),
                      min_ratio_to_discriminant(f, b, xi, db, 0.0, clearance));
    };
    OdeStats st;
    const CVec res = integrate_dopri5(rhs, 0.0, 1.0, flatten({&a0, &ax, &k}), transport_options(), ceiling, &st);
    a0 = block(res, 0, n);
    ax = block(res, 1, n);
    k = block(res, 2, n);
    merge(out.stats, st);
  }
  out.k = k;
  out.y0_end = a0;
  out.yxi_end = ax;
  return out;
}

std::vector<CVec> to_bprime(const CVec& t, const std::vector<cplx>& xs) {
  std::vector<CVec> out;
  for (cplx x : xs) {
    CVec b = t;
    b(0) -= x;
    out.push_back(b);
  }
  return out;
}

std::vector<cplx> critical_value_loop(cplx base, cplx u, double rho, int sides) {
  if (sides < 3 || rho <= 0.0) fail(ErrorCode::kPathInvalid, "loop needs rho > 0 and at least 3 sides");
  if (std::abs(base - u) <= rho) fail(ErrorCode::kPathInvalid, "base point inside the loop circle");
  const cplx dir = (base - u) / std::abs(base - u);
  std::vector<cplx> out{base};
  for (int j = 0; j <= sides; ++j)
    out.push_back(u + rho * dir * std::exp(kTwoPiI * (static_cast<double>(j) / sides)));
  out.push_back(base);
  return out;
}

std::vector<cplx> big_circle_loop(cplx base, int sides) {
  std::vector<cplx> out;
  for (int j = 0; j <= sides; ++j) out.push_back(base * std::exp(kTwoPiI * (static_cast<double>(j) / sides)));
  return out;
}

// ---------------------------------------------------------------- loop integrality

PhaseBase prepare_phase_base(const SingularityModel& model, const CVec& t, cplx lambda, cplx xi) {
  const auto& f = model.frobenius;
  const int n = f.dim;
  if (t.size() != n) fail(ErrorCode::kInvalidArgument, "t has the wrong dimension");
  const cplx mu = lambda + xi;
  if (!(std::abs(mu) < std::abs(lambda))) fail(ErrorCode::kOutsideDomain, "phase base needs |lambda + xi| < |lambda|");
  const cplx ll = std::log(lambda);
  const cplx lm = ll + std::log(mu / lambda);
  const CMat y0 = period_matrix_t0(0, lambda, ll, model);
  const CMat yxi = period_matrix_t0(0, mu, lm, model);
  CVec start = CVec::Zero(n);
  start(0) = -lambda;
  CVec end = t;
  end(0) -= lambda;
  const PhaseIntegral straight = integrate_phase_form(f, {start, end}, xi, y0, yxi);
  RootTracker roots = RootTracker::reference(f.model, lambda, ll);
  roots.move_to(t, lambda);
  PhaseBase out{t, lambda, xi, ll, straight.y0_end, straight.yxi_end,
                omega_closed_matrix(lambda, mu, ll, model) + straight.k.transpose(), roots};
  return out;
}

LoopRun run_loop(const SingularityModel& model, const PhaseBase& base, const std::vector<cplx>& loop,
                 int inner_vertex) {
  if (loop.size() < 2 || std::abs(loop.front() - base.lambda) > 1e-12 * std::abs(base.lambda) ||
      std::abs(loop.back() - base.lambda) > 1e-12 * std::abs(base.lambda))
    fail(ErrorCode::kPathInvalid, "loop must start and end at the base lambda");
  const auto& f = model.frobenius;
  const PhaseIntegral pi = integrate_phase_form(f, to_bprime(base.t, loop), base.xi, base.y0, base.yxi);
  LoopRun out;
  out.k = pi.k;
  out.w = base.y0.partialPivLu().solve(pi.y0_end);
  out.w_integer = out.w.real().array().round().cast<long long>().matrix();
  out.w_residual = (out.w - to_complex(out.w_integer)).cwiseAbs().maxCoeff();
  if (inner_vertex >= 0 && inner_vertex < static_cast<int>(loop.size())) {
    RootTracker tracker = base.roots;
    for (int j = 0; j <= inner_vertex; ++j) tracker.move_to(base.t, loop[j]);
    out.vanishing_pair = tracker.closest_pair();
    out.vanishing_cycle = pair_to_cycle(out.vanishing_pair.first, out.vanishing_pair.second, model.rank());
  }
  return out;
}

IntegerCheck loop_integrality_value(const PhaseBase& base, const LoopRun& run, const CVec& alpha, const CVec& beta) {
  // The loop integral of dOmega_{alpha,beta} carries beta at xi.
  const CVec wa = run.w * alpha, wb = run.w * beta;
  const cplx integral = (beta.transpose() * run.k * alpha)(0, 0);
  const cplx total = integral - (wa.transpose() * base.omega * wb)(0, 0) + (alpha.transpose() * base.omega * beta)(0, 0);
  IntegerCheck out;
  out.value = total / kTwoPiI;
  out.nearest = std::llround(out.value.real());
  out.residual = std::abs(out.value - static_cast<double>(out.nearest));
  return out;
}

long long loop_integrality_check(const PhaseBase& base, const LoopRun& run, const CVec& alpha, const CVec& beta,
                         double tol) {
  const IntegerCheck c = loop_integrality_value(base, run, alpha, beta);
  if (c.residual > tol) fail(ErrorCode::kNotInteger, "loop phase combination is not an integer");
  return c.nearest;
}

VanishingCheck vanishing_cycle_check(const SingularityModel& model, const PhaseBase& base, int critical_index) {
  const auto start = std::chrono::steady_clock::now();
  const auto us = model.frobenius.model.critical_values(base.t);
  if (critical_index < 0 || critical_index >= static_cast<int>(us.size()))
    fail(ErrorCode::kInvalidArgument, "critical index out of range");
  double gap = kNoCeiling;
  for (size_t a = 0; a < us.size(); ++a)
    for (size_t b = 0; b < a; ++b) gap = std::min(gap, std::abs(us[a] - us[b]));
  if (us.size() == 1) gap = 1.0;
  const double rho = 0.1 * gap;
  if (std::abs(base.xi) > 0.2 * rho) fail(ErrorCode::kOutsideDomain, "|xi| too large for the loop radius");
  const auto loop = critical_value_loop(base.lambda, us[critical_index], rho);
  const LoopRun run = run_loop(model, base, loop, 1);
  VanishingCheck out;
  out.phi = run.vanishing_cycle;
  out.integral = (out.phi.transpose() * run.k * out.phi)(0, 0);
  out.ratio = out.integral / (-2.0 * kTwoPiI);
  out.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace phasekit
