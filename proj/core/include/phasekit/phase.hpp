#pragma once

#include <optional>
#include <vector>

#include "phasekit/periods.hpp"
#include "phasekit/polylog.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

struct PhaseValue {
  cplx omega;
  cplx log_lambda;
  cplx log_mu;
  std::optional<long long> k_integer;
  cplx li_term;
  cplx p_term;
};

struct OracleValue {
  cplx value;
  double tail_bound = 0.0;
  int terms = 0;
};

// Partial sum of sum_n (-1)^{n+1} (I^{(n)}_alpha(0, lambda), I^{(-n-1)}_beta(0, mu)), n <= n_max.
// log_mu = log_lambda + Log(mu/lambda).
OracleValue omega_oracle(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu, const SingularityModel& model,
                         int n_max, std::optional<cplx> log_lambda = std::nullopt);

// Finite slot discrepancy Omega(f_+, f) - Omega(f_{>0}, f).
cplx p_discrepancy(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu, cplx log_lambda, cplx log_mu,
                   const SingularityModel& model);

// -(Li_sigma(mu/lambda) alpha | beta) + P with log(mu/lambda) = log_mu - log_lambda.
PhaseValue omega_closed_form(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                             const SingularityModel& model, std::optional<cplx> log_lambda = std::nullopt,
                             std::optional<cplx> log_mu = std::nullopt);
// Matrix Omega_{e_a, e_b}(0, lambda, mu) on the distinguished basis.
CMat omega_closed_matrix(cplx lambda, cplx mu, cplx log_lambda, const SingularityModel& model);

// |P_{a,b}(l,m) - P_{b,a}(m,l) - SF(((e^{-2 pi i N} - 1)/N)(m/l)^N a_1, b)|.
double p_antisymmetry_residual(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                               const SingularityModel& model);

struct LocalityResult {
  cplx difference;  // Omega_{a,b}(l,m) - Omega_{b,a}(m,l) continued along C
  cplx quotient;    // difference / (-2 pi i)
  long long seifert = 0;
  long long intersection = 0;
  double k_real = 0.0;
  long long k = 0;
  double k_residual = 0.0;
  double b_residual = 0.0;  // |B_{a,b} - B_{b,a} o C| / |B_{a,b}|
};

// Swap path (m + d e^{i pi s w}, m - d e^{i pi s w}), s in [0, 1], w odd.
LocalityResult locality_check(const IVec& alpha, const IVec& beta, cplx lambda, cplx mu,
                              const SingularityModel& model, int winding = 1, int steps = 256);

struct DLambdaResult {
  double residual = 0.0;
  cplx derivative;  // finite-difference d/d lambda of the oracle
  cplx rhs;
  int n_max = 0;
};

DLambdaResult dlambda_identity_check(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                                     const SingularityModel& model);

struct PoleResult {
  int leading_exponent = 0;  // of e^Omega in (lambda - mu)
  int pole_order = 0;        // = -leading_exponent
  double regular_residual = 0.0;  // size of the coefficients below the leading one
};

// Omega_{a,b}(lambda_j, mu) at lambda_j = mu + r u e^{2 pi i j/samples}, u = mu/|mu|, r = radius |mu|,
// continued along the circle from j = 0 where |lambda_0| > |mu|.
std::vector<cplx> omega_around_diagonal(const CVec& alpha, const CVec& beta, cplx mu, cplx log_mu,
                                        const SingularityModel& model, double radius, int samples);

// Laurent expansion of e^Omega around lambda = mu on a small circle (closed form continued).
PoleResult pole_order_at_diagonal(const CVec& alpha, const CVec& beta, cplx mu, const SingularityModel& model,
                                  double radius = 0.05, int samples = 64);

}  // namespace phasekit
