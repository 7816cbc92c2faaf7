#pragma once

#include <functional>
#include <vector>

#include "phasekit/rational.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

struct SpectralPart {
  cplx value;
  CMat projector;
};

// Taylor jet of a scalar function: returns f^{(j)}(v)/j! for j < order.
using JetFunction = std::function<std::vector<cplx>(cplx v, int order)>;

// Complex operator on H or h with an optional semisimple/nilpotent split.
class OperatorH {
 public:
  OperatorH() = default;
  explicit OperatorH(CMat mat);

  // Jordan-Chevalley split when the distinct eigenvalues are known exactly.
  static OperatorH with_eigenvalues(const CMat& mat, const std::vector<cplx>& eigenvalues);
  // Split from numerically clustered eigenvalues (Schur form).
  static OperatorH split_numeric(const CMat& mat, double cluster_tol = 1e-7);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const CMat& mat() const { return mat_; }
  bool has_split() const { return split_; }
  const CMat& ss() const;
  const CMat& nil() const;
  int nil_order() const;
  const std::vector<SpectralPart>& spectral() const;

  // f(A) = sum_k P_k sum_j c_j(v_k) nil^j.
  CMat apply(const JetFunction& jet) const;

 private:
  CMat mat_;
  bool split_ = false;
  CMat ss_;
  CMat nil_;
  int nil_order_ = 1;
  std::vector<SpectralPart> spectral_;
};

// Result of normalized_log: N = -(1/2 pi i) log sigma with spectrum in (-1, 0].
struct NormalizedLog {
  OperatorH N;              // split: ss = N_s, nil = N_n
  OperatorH sigma;          // split: ss = sigma_s (multiplicative part), spectral projectors shared with N
  int order = 1;            // |sigma| = lcm of eigenvalue denominators
  std::vector<Rational> nu; // exact eigenvalues of N_s, aligned with N.spectral()
  double residual = 0.0;    // |exp(-2 pi i N) - sigma|
};

NormalizedLog normalized_log(const CMat& sigma, long long max_den = 64, double tol = 1e-6);

// exp(-2 pi i N) from the split of N.
CMat exp_minus_two_pi_i(const OperatorH& N);

// exp(log_x N); finite sum on the nilpotent part.
OperatorH operator_power(cplx x, cplx log_x, const OperatorH& N);

struct GammaJet {
  std::vector<cplx> coefficients;  // c_j = (1/j!) d^j/ds^j [1/Gamma(s+1)]
};

GammaJet recip_gamma_jet(cplx s, int nil_order);

// T^# on h in the A-basis: (T^#)_{ji} = (T phi^j, phi_i), given the Gram matrix of (phi_i, phi_j).
CMat sharp_map(const CMat& T, const CMat& basis_pairing);

// Helpers.
CMat matrix_power(const CMat& m, int k);
long long lcm_ll(long long a, long long b);

}  // namespace phasekit
