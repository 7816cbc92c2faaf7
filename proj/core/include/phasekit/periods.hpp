#pragma once

#include <map>
#include <string>
#include <vector>

#include "phasekit/frobenius.hpp"
#include "phasekit/lattice.hpp"
#include "phasekit/opcalc.hpp"
#include "phasekit/rational.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

struct SingularityModel {
  MilnorLatticeData lattice;
  FrobeniusData frobenius;
  CMat a_basis;                      // row i: <A_i, e_j> on the distinguished basis
  std::vector<long long> p_exponents;  // p_i = ceil(s_i)
  std::vector<Rational> alpha;       // alpha_i = s_i - p_i in (-1, 0]
  CMat residue_gram;                 // (A_i, A_j)
  CMat seifert_h;                    // cohomological Seifert form SF(A_i, A_j)
  CMat sigma;                        // classical monodromy on cycle coordinates
  CMat gram;                         // intersection form on cycle coordinates
  NormalizedLog nlog;                // N = -(1/2 pi i) log sigma on cycles

  int rank() const { return lattice.rank; }
  double s(int i) const { return lattice.spectrum[i].value(); }
  // a_i(alpha) = <A_i, alpha>.
  CVec a_coords(const CVec& cycle) const { return a_basis * cycle; }
  // N and p on h in the A-basis.
  CMat n_h() const;
  CMat p_h() const;
  // <A, B> on h in A-coordinates.
  cplx cohomology_pairing(const CVec& a, const CVec& b) const;
};

SingularityModel make_model(int mu);
SingularityModel builtin_model(const std::string& name);

// Laurent polynomial in one variable with vector coefficients and an explicit window.
struct TruncatedSeries {
  std::string variable = "z";
  int k_min = -12;
  int k_max = 12;
  std::map<int, CVec> coefficients;

  CVec coefficient(int k) const;
  TruncatedSeries operator+(const TruncatedSeries& other) const;
};

// Scalar series with rational exponents (higher residue pairings).
struct ScalarSeries {
  std::map<Rational, cplx> terms;
  cplx coefficient(const Rational& e) const;
};

// Phi_m(lambda) = lambda^{theta + m - 1/2} / Gamma(theta + m + 1/2) on H.
OperatorH fundamental_solution(int m, cplx lambda, cplx log_lambda, const SingularityModel& model);

// I^{(k)}_alpha(0, lambda) in the phi basis.
CVec period_vector_t0(const CVec& cycle, int k, cplx lambda, cplx log_lambda, const SingularityModel& model);
// Columns: period vectors of the distinguished basis cycles.
CMat period_matrix_t0(int k, cplx lambda, cplx log_lambda, const SingularityModel& model);

// Coefficient of (-z)^k is I^{(k)}; k in [k_min, k_max].
TruncatedSeries f_series_t0(const CVec& cycle, cplx lambda, cplx log_lambda, const SingularityModel& model,
                            int k_min = -12, int k_max = 12);

enum class Projection { kPlus, kMinus, kPositive, kZero, kNegative };

// Eigenvalue of l_0 on the slot (k, i): k + l - s_i.
Rational grading_eigenvalue(const SingularityModel& model, int k, int i);
TruncatedSeries project(const TruncatedSeries& f, Projection which, const SingularityModel& model);

// Omega(f, g) = sum_k (-1)^{k+1} (f_k, g_{-k-1}).
cplx symplectic_pairing(const TruncatedSeries& f, const TruncatedSeries& g, const SingularityModel& model);

// K_W(omega_i, omega_j) as a series in z.
ScalarSeries higher_residue_pairing(int i, int j, const SingularityModel& model);

// (1/2 pi i) <A_i, e^{pi i N} e^{pi i p} A_j>.
CMat residue_gram_from_seifert(const SingularityModel& model);

// R^T with respect to the residue pairing; R^SF = M R^T M^{-1}.
CMat residue_transpose(const CMat& r, const SingularityModel& model);
CMat seifert_transpose(const CMat& r, const SingularityModel& model);
// Same transpose computed from the Seifert pairing <.,.> directly.
CMat seifert_transpose_direct(const CMat& r, const SingularityModel& model);

}  // namespace phasekit
