#include "phasekit/frobenius.hpp"

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

void require_t(const OneVariableModel& m, const CVec& t) {
  if (t.size() != m.mu) fail(ErrorCode::kInvalidArgument, "deformation vector has wrong length");
}

}  // namespace

OneVariableModel a_mu_model(int mu) {
  if (mu < 1 || mu > 3) fail(ErrorCode::kUnsupported, "one-variable models are built in for mu = 1..3");
  return OneVariableModel{mu};
}

poly::Poly OneVariableModel::potential(const CVec& t) const {
  require_t(*this, t);
  poly::Poly f(mu + 2, 0.0);
  f[mu + 1] = 1.0 / static_cast<double>(mu + 1);
  for (int j = 0; j < mu; ++j) f[j] += t(j);
  if (mu == 3) f[0] += 0.5 * t(2) * t(2);
  return f;
}

poly::Poly OneVariableModel::basis_poly(int i, const CVec& t) const {
  require_t(*this, t);
  if (i < 0 || i >= mu) fail(ErrorCode::kInvalidArgument, "basis index out of range");
  poly::Poly p(i + 1, 0.0);
  p[i] = 1.0;
  if (mu == 3 && i == 2) p[0] += t(2);
  return p;
}

poly::Poly OneVariableModel::fprime(const CVec& t) const { return poly::derivative(potential(t)); }

std::vector<cplx> OneVariableModel::fiber(const CVec& t, cplx lambda) const {
  poly::Poly f = potential(t);
  f[0] -= lambda;
  return poly::roots(f);
}

std::vector<cplx> OneVariableModel::critical_points(const CVec& t) const {
  if (mu == 1) return {0.0};
  return poly::roots(fprime(t));
}

std::vector<cplx> OneVariableModel::critical_values(const CVec& t) const {
  poly::Poly f = potential(t);
  std::vector<cplx> out;
  for (cplx x : critical_points(t)) out.push_back(poly::eval(f, x));
  return out;
}

FrobeniusData a_mu_frobenius(int mu) {
  FrobeniusData f;
  f.dim = mu;
  f.model = a_mu_model(mu);
  const CVec t0 = CVec::Zero(mu);
  f.eta = CMat::Zero(mu, mu);
  const poly::Poly fp = f.model.fprime(t0);
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < mu; ++j) {
      poly::Poly r = poly::mod_monic(poly::mul(f.model.basis_poly(i, t0), f.model.basis_poly(j, t0)), fp);
      f.eta(i, j) = r[mu - 1];
    }
  f.eta_inv = f.eta.inverse();
  for (int l = 1; l <= mu; ++l) f.theta.push_back(Rational(1, 2) - Rational(l, mu + 1));
  return f;
}

CMat FrobeniusData::theta_mat() const {
  CMat m = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = theta[i].value();
  return m;
}

CVec FrobeniusData::to_basis(const poly::Poly& p, const CVec& t) const {
  poly::Poly r(p);
  r.resize(dim, 0.0);
  CVec out = CVec::Zero(dim);
  for (int k = dim - 1; k >= 0; --k) {
    cplx c = r[k];
    out(k) = c;
    poly::Poly b = model.basis_poly(k, t);
    for (int j = 0; j <= k; ++j) r[j] -= c * b[j];
  }
  return out;
}

std::vector<CMat> FrobeniusData::structure(const CVec& t) const {
  const poly::Poly fp = model.fprime(t);
  std::vector<poly::Poly> basis;
  for (int i = 0; i < dim; ++i) basis.push_back(model.basis_poly(i, t));
  std::vector<CMat> c(dim, CMat::Zero(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) c[i].col(j) = to_basis(poly::mod_monic(poly::mul(basis[i], basis[j]), fp), t);
  return c;
}

CMat FrobeniusData::multiplication(const CVec& a, const CVec& t) const {
  std::vector<CMat> c = structure(t);
  CMat m = CMat::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) m += a(i) * c[i];
  return m;
}

CVec FrobeniusData::product(const CVec& a, const CVec& b, const CVec& t) const {
  return multiplication(a, t) * b;
}

CVec FrobeniusData::euler_coefficients(const CVec& t) const {
  return to_basis(poly::mod_monic(model.potential(t), model.fprime(t)), t);
}

CMat FrobeniusData::euler_product(const CVec& t) const { return multiplication(euler_coefficients(t), t); }

double associativity_residual(const FrobeniusData& f, const CVec& t) {
  std::vector<CMat> c = f.structure(t);
  double worst = 0.0;
  for (int i = 0; i < f.dim; ++i)
    for (int j = 0; j < f.dim; ++j) {
      worst = std::max(worst, (c[i] * c[j] - c[j] * c[i]).cwiseAbs().maxCoeff());
      // (phi_i . phi_j) . x = phi_i . (phi_j . x) for all x.
      CMat cij = f.multiplication(c[i].col(j), t);
      worst = std::max(worst, (cij - c[i] * c[j]).cwiseAbs().maxCoeff());
    }
  return worst;
}

}  // namespace phasekit
