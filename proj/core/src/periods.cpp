#include "phasekit/periods.hpp"

#include <cmath>

#include "phasekit/errors.hpp"
#include "phasekit/special.hpp"

namespace phasekit {

SingularityModel make_model(int mu) {
  SingularityModel m;
  m.lattice = a_mu_lattice(mu);
  m.frobenius = a_mu_frobenius(mu);
  const int n = mu;
  const double h = static_cast<double>(mu + 1);
  const cplx zeta = std::exp(kTwoPiI / h);
  m.a_basis = CMat::Zero(n, n);
  for (int i = 1; i <= n; ++i) {
    const double q = i / h;
    const double kappa = std::pow(h, q - 1.0) * std::tgamma(q);
    for (int j = 1; j <= n; ++j) {
      // e_j = [x_j] - [x_{j-1}]
      m.a_basis(i - 1, j - 1) = kappa * (std::pow(zeta, j * i) - std::pow(zeta, (j - 1) * i));
    }
  }
  for (const auto& s : m.lattice.spectrum) {
    m.p_exponents.push_back(s.ceil());
    m.alpha.push_back(s - Rational(s.ceil()));
  }
  OperatorH sig = classical_monodromy(m.lattice);
  m.sigma = sig.mat();
  m.gram = to_complex(intersection_form(m.lattice));
  m.nlog = normalized_log(m.sigma);
  const CMat linv = to_complex(m.lattice.seifert).inverse();
  m.seifert_h = m.a_basis * linv * m.a_basis.transpose();
  m.residue_gram = m.frobenius.eta;
  return m;
}

SingularityModel builtin_model(const std::string& name) {
  if (!is_builtin_name(name)) fail(ErrorCode::kInvalidArgument, "unknown builtin dataset: " + name);
  return make_model(name[1] - '0');
}

CMat SingularityModel::n_h() const {
  CMat d = CMat::Zero(rank(), rank());
  for (int i = 0; i < rank(); ++i) d(i, i) = alpha[i].value();
  return d;
}

CMat SingularityModel::p_h() const {
  CMat d = CMat::Zero(rank(), rank());
  for (int i = 0; i < rank(); ++i) d(i, i) = static_cast<double>(p_exponents[i]);
  return d;
}

cplx SingularityModel::cohomology_pairing(const CVec& a, const CVec& b) const {
  const double sign = (lattice.ell % 2 == 0) ? -1.0 : 1.0;  // (-1)^{l+1}
  return sign * (b.transpose() * seifert_h * a)(0, 0);
}

CVec TruncatedSeries::coefficient(int k) const {
  auto it = coefficients.find(k);
  if (it == coefficients.end()) return CVec();
  return it->second;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& other) const {
  TruncatedSeries out;
  out.variable = variable;
  out.k_min = std::max(k_min, other.k_min);
  out.k_max = std::min(k_max, other.k_max);
  for (int k = out.k_min; k <= out.k_max; ++k) {
    CVec a = coefficient(k), b = other.coefficient(k);
    if (a.size() == 0 && b.size() == 0) continue;
    if (a.size() == 0) a = CVec::Zero(b.size());
    if (b.size() == 0) b = CVec::Zero(a.size());
    out.coefficients[k] = a + b;
  }
  return out;
}

cplx ScalarSeries::coefficient(const Rational& e) const {
  auto it = terms.find(e);
  return it == terms.end() ? cplx(0.0) : it->second;
}

OperatorH fundamental_solution(int m, cplx lambda, cplx log_lambda, const SingularityModel& model) {
  if (lambda == cplx(0.0)) fail(ErrorCode::kZeroLambda, "fundamental solution at lambda = 0");
  const int n = model.rank();
  CMat d = CMat::Zero(n, n);
  for (int l = 0; l < n; ++l) {
    const double th = model.frobenius.theta[l].value();
    const double e = th + m - 0.5;
    d(l, l) = std::exp(e * log_lambda) * recip_gamma_jet(e + 0.0, 1).coefficients[0];
  }
  return OperatorH::with_eigenvalues(d, [&] {
    std::vector<cplx> v;
    for (int l = 0; l < n; ++l) {
      bool seen = false;
      for (cplx w : v) seen = seen || std::abs(w - d(l, l)) <= 1e-14 * std::abs(w);
      if (!seen) v.push_back(d(l, l));
    }
    return v;
  }());
}

CVec period_vector_t0(const CVec& cycle, int k, cplx lambda, cplx log_lambda, const SingularityModel& model) {
  if (lambda == cplx(0.0)) fail(ErrorCode::kZeroLambda, "period vector at lambda = 0");
  if (cycle.size() != model.rank()) fail(ErrorCode::kInvalidArgument, "cycle length does not match rank");
  const CVec a = model.a_coords(cycle);
  CVec c(model.rank());
  for (int i = 0; i < model.rank(); ++i) {
    const double e = model.s(i) - model.lattice.ell - k;
    c(i) = a(i) * std::exp(e * log_lambda) * recip_gamma(e + 1.0);
  }
  return model.frobenius.eta_inv * c;
}

CMat period_matrix_t0(int k, cplx lambda, cplx log_lambda, const SingularityModel& model) {
  const int n = model.rank();
  CMat y(n, n);
  for (int j = 0; j < n; ++j) y.col(j) = period_vector_t0(CVec::Unit(n, j), k, lambda, log_lambda, model);
  return y;
}

TruncatedSeries f_series_t0(const CVec& cycle, cplx lambda, cplx log_lambda, const SingularityModel& model,
                            int k_min, int k_max) {
  if (k_min > k_max) fail(ErrorCode::kInvalidArgument, "empty series window");
  TruncatedSeries f;
  f.k_min = k_min;
  f.k_max = k_max;
  for (int k = k_min; k <= k_max; ++k) f.coefficients[k] = period_vector_t0(cycle, k, lambda, log_lambda, model);
  return f;
}

Rational grading_eigenvalue(const SingularityModel& model, int k, int i) {
  return Rational(k + model.lattice.ell) - model.lattice.spectrum[i];
}

TruncatedSeries project(const TruncatedSeries& f, Projection which, const SingularityModel& model) {
  TruncatedSeries out;
  out.variable = f.variable;
  out.k_min = f.k_min;
  out.k_max = f.k_max;
  const CMat& eta = model.frobenius.eta;
  const CMat& eta_inv = model.frobenius.eta_inv;
  for (const auto& [k, v] : f.coefficients) {
    if (which == Projection::kPlus || which == Projection::kMinus) {
      if ((k >= 0) == (which == Projection::kPlus)) out.coefficients[k] = v;
      continue;
    }
    // Components on phi^i are eta * v.
    CVec c = eta * v;
    for (int i = 0; i < model.rank(); ++i) {
      const int sgn = sign(grading_eigenvalue(model, k, i));
      const bool keep = (which == Projection::kPositive && sgn > 0) || (which == Projection::kZero && sgn == 0) ||
                        (which == Projection::kNegative && sgn < 0);
      if (!keep) c(i) = 0.0;
    }
    out.coefficients[k] = eta_inv * c;
  }
  return out;
}

cplx symplectic_pairing(const TruncatedSeries& f, const TruncatedSeries& g, const SingularityModel& model) {
  cplx acc = 0.0;
  for (const auto& [k, v] : f.coefficients) {
    CVec w = g.coefficient(-k - 1);
    if (w.size() == 0) continue;
    const double sgn = ((k + 1) % 2 == 0) ? 1.0 : -1.0;
    acc += sgn * (v.transpose() * model.frobenius.eta * w)(0, 0);
  }
  return acc;
}

ScalarSeries higher_residue_pairing(int i, int j, const SingularityModel& model) {
  const int n = model.rank();
  if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorCode::kInvalidArgument, "basis index out of range");
  const int ell = model.lattice.ell;
  const int dim_n = 2 * ell;
  const Rational c_i = model.lattice.spectrum[i] - Rational(ell) + Rational(1, 2);
  const cplx value = std::exp(kI * kPi * c_i.value()) * model.seifert_h(i, j) / (2.0 * kPi);
  ScalarSeries out;
  if (std::abs(value) > 1e-14) {
    Rational e = model.lattice.spectrum[i] + model.lattice.spectrum[j] - Rational(2 * ell) + Rational(1) +
                 Rational(dim_n + 1);
    out.terms[e] = value;
  }
  return out;
}

CMat residue_gram_from_seifert(const SingularityModel& model) {
  const int n = model.rank();
  CMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx phase = std::exp(kI * kPi * (model.alpha[j].value() + static_cast<double>(model.p_exponents[j])));
      g(i, j) = model.cohomology_pairing(CVec::Unit(n, i), phase * CVec::Unit(n, j)) / kTwoPiI;
    }
  return g;
}

CMat residue_transpose(const CMat& r, const SingularityModel& model) {
  const CMat& g = model.residue_gram;
  return g.inverse() * r.transpose() * g;
}

CMat seifert_transpose(const CMat& r, const SingularityModel& model) {
  const int n = model.rank();
  CMat m = CMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = std::exp(kI * kPi * (model.alpha[i].value() + static_cast<double>(model.p_exponents[i])));
  return m * residue_transpose(r, model) * m.inverse();
}

CMat seifert_transpose_direct(const CMat& r, const SingularityModel& model) {
  const int n = model.rank();
  CMat q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = model.cohomology_pairing(CVec::Unit(n, i), CVec::Unit(n, j));
  return q.inverse() * r.transpose() * q;
}

}  // namespace phasekit
