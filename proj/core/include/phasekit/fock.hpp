#pragma once

#include <map>
#include <utility>
#include <vector>

#include "phasekit/periods.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

inline constexpr int kMaxTruncation = 16;

// hbar^{hbar2/2} times a product of insertions phi_i z^{-m-1}, stored as sorted slots q = m * dim + i.
struct FockKey {
  int hbar2 = 0;
  std::vector<int> slots;
  auto operator<=>(const FockKey&) const = default;
};

// Finite linear combination of Fock monomials with total weight sum(m + 1) <= truncation.
class FockElement {
 public:
  FockElement(int dim, int truncation);
  static FockElement vacuum(int dim, int truncation);

  int dim() const { return dim_; }
  int truncation() const { return truncation_; }
  const std::map<FockKey, cplx>& terms() const { return terms_; }
  int weight(const FockKey& key) const;

  void add(const FockKey& key, cplx c);
  cplx coefficient(const FockKey& key) const;
  cplx vacuum_coefficient() const { return coefficient(FockKey{}); }
  // Part of total weight exactly w.
  FockElement homogeneous(int w) const;
  double max_abs() const;

  FockElement& operator+=(const FockElement& other);
  FockElement operator+(const FockElement& other) const;
  FockElement operator-(const FockElement& other) const;
  FockElement operator*(cplx c) const;

 private:
  int dim_;
  int truncation_;
  std::map<FockKey, cplx> terms_;
};

// Mode coefficients of a field: creation[q] multiplies by x_q (hbar^{-1/2}), annihilation[q] is the
// coefficient of hbar^{1/2} d/dx_q.
struct FieldModes {
  CVec creation;
  CVec annihilation;
};

// Modes of hbar^{-1/2} d_lambda^order f_cycle(t, lambda; z) at the given truncation.
FieldModes field_modes(const SingularityModel& model, const CVec& cycle, const CVec& t, cplx lambda,
                       cplx log_lambda, int truncation, int order = 0);

FockElement multiply_creation(const FockElement& v, const CVec& creation);
FockElement apply_annihilation(const FockElement& v, const CVec& annihilation);
FockElement exp_creation(const FockElement& v, const CVec& creation);
FockElement exp_annihilation(const FockElement& v, const CVec& annihilation);

// Gamma^alpha(t, lambda) v = e^{f_-} e^{f_+} v.
FockElement apply_vertex_operator(const CVec& alpha, const CVec& t, cplx lambda, cplx log_lambda,
                                  const FockElement& v, const SingularityModel& model);
// phi_a(t, lambda) v.
FockElement apply_heisenberg(const CVec& a, const CVec& t, cplx lambda, cplx log_lambda, const FockElement& v,
                             const SingularityModel& model);

struct CompositionResult {
  cplx scalar;                  // ratio of vacuum coefficients
  cplx product_vacuum;          // of Gamma^alpha Gamma^beta |0>
  cplx normal_vacuum;           // of :Gamma^alpha Gamma^beta: |0>
  std::vector<cplx> graded;     // contribution of each weight 0..truncation to the product vacuum coefficient
};

// Gamma^alpha(t, lambda) Gamma^beta(t, mu) on the vacuum; requires |lambda| > |mu|.
CompositionResult compose_and_extract_phase(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                                            const SingularityModel& model, int truncation,
                                            const CVec& t = CVec());

// exp(sum_n c_n eps^{n+1}) truncated at eps^truncation, as coefficients by degree.
std::vector<cplx> graded_exp(const std::vector<cplx>& terms, int truncation);

struct VoaGenerator {
  enum class Kind { kHeisenberg, kLattice };
  Kind kind = Kind::kHeisenberg;
  CVec vec;
  static VoaGenerator heisenberg(const CVec& a) { return {Kind::kHeisenberg, a}; }
  static VoaGenerator lattice(const CVec& alpha) { return {Kind::kLattice, alpha}; }
};

struct OpeOptions {
  double radius = 0.05;  // circle radius relative to |lambda|
  int samples = 64;
  double tolerance = 1e-9;
};

struct OpeResult {
  FockElement value;
  double stability_residual = 0.0;   // (M, k) versus (M + 1, k + 1) on a second circle
  double regularity_residual = 0.0;  // negative-power coefficients of (mu - lambda)^M X X v
};

// X_t(a_{(M-k-1)} b, lambda) v at t = 0 via the k-th mu-derivative of the regularized product.
OpeResult ope_product(const VoaGenerator& a, const VoaGenerator& b, int k, int m, cplx lambda, cplx log_lambda,
                      const SingularityModel& model, const FockElement& v, const OpeOptions& options = {});

struct TameMonomial {
  int g = 1;
  std::vector<int> negative;  // k_1..k_{m'}
  std::vector<int> positive;  // l_1..l_{m''}
};

// k_1 + ... + k_{m'} - m' <= 3 (g - 1 + m''/2), evaluated doubled in integers.
bool tame_predicate(const TameMonomial& m);
// Monomials in the normally ordered Weyl product a * b for generic vectors (contractions need l = k).
std::vector<TameMonomial> weyl_product_support(const TameMonomial& a, const TameMonomial& b);

}  // namespace phasekit
