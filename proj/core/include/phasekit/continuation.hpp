#pragma once

#include <vector>

#include "phasekit/frobenius.hpp"
#include "phasekit/ode.hpp"
#include "phasekit/periods.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

struct ParamPoint {
  CVec t;
  cplx lambda;
};

// Polyline in (t, lambda) space; B' paths use lambda = 0.
struct ParamPath {
  std::vector<ParamPoint> points;
  double clearance = 1e-6;
};

// min_i |lambda - u_i(t)|.
double discriminant_distance(const FrobeniusData& f, const CVec& t, cplx lambda);

// Continue period vectors (columns, phi basis) of order k along the path.
CMat pf_continue(const CMat& y, int k, const ParamPath& path, const FrobeniusData& f, OdeStats* stats = nullptr);
CVec pf_continue_lambda(const CVec& period, int k, const CVec& t, const std::vector<cplx>& lambda_path,
                        const FrobeniusData& f, double clearance = 1e-6);
CVec pf_continue_t(const CVec& period, int k, const std::vector<CVec>& t_path, cplx lambda, const FrobeniusData& f,
                   double clearance = 1e-6);

// (0, lambda0) -> (t, lambda0) -> (t, lambda).
ParamPath standard_route(cplx lambda0, const CVec& t, cplx lambda);
// Period matrix of order k at the end of a path starting at t = 0 (closed-form start values).
CMat periods_along(const SingularityModel& model, int k, const ParamPath& path, cplx log_lambda0);

// Roots of F(x, t) = lambda carried continuously along paths; index a labels [x_a].
class RootTracker {
 public:
  RootTracker(OneVariableModel model, CVec t, cplx lambda, std::vector<cplx> roots);
  // Labelled reference roots x_a = ((mu+1) lambda)^{1/(mu+1)} zeta^a at t = 0.
  static RootTracker reference(const OneVariableModel& model, cplx lambda, cplx log_lambda);

  void move_to(const CVec& t, cplx lambda);
  void follow(const ParamPath& path);
  const std::vector<cplx>& roots() const { return roots_; }
  const CVec& t() const { return t_; }
  cplx lambda() const { return lambda_; }
  // Pair (a, b), a > b, of the two closest roots.
  std::pair<int, int> closest_pair() const;

 private:
  void step(const CVec& t, cplx lambda, int depth);
  OneVariableModel model_;
  CVec t_;
  cplx lambda_;
  std::vector<cplx> roots_;
};

// Root coefficients c_a of a cycle: alpha = sum_a c_a [x_a].
std::vector<double> root_coefficients(const CVec& cycle);
// Cycle coordinates of [x_a] - [x_b].
CVec pair_to_cycle(int a, int b, int mu);

// I^{(k)}_alpha(t, lambda) in the phi basis from labelled roots.
CVec root_oracle(const FrobeniusData& f, const std::vector<cplx>& roots, const CVec& cycle, int k, const CVec& t,
                 cplx lambda);
CVec root_oracle_pair(const FrobeniusData& f, const std::vector<cplx>& roots, int a, int b, int k, const CVec& t,
                      cplx lambda);

struct CanonicalCoordinates {
  std::vector<cplx> u;
  std::vector<cplx> delta;  // 1/Delta_i = (d/du_i, d/du_i)
  CMat units;               // columns e_i = sqrt(Delta_i) pi_i
  double residual = 0.0;    // max |e_i . e_j - delta_ij sqrt(Delta_j) e_j|
};

CanonicalCoordinates canonical_coordinates(const CVec& t, const FrobeniusData& f);

// Covector (phi_i, a . b) at t.
CVec phase_form(const CVec& a, const CVec& b, const CVec& t, const FrobeniusData& f);
// W_{alpha,beta}(t, xi) with periods continued along standard routes from (0, lambda0).
CVec phase_form(const SingularityModel& model, const CVec& alpha, const CVec& beta, const CVec& t, cplx xi,
                cplx lambda0);
// Taylor coefficients W^{(m)}(t) = I^{(m)}_alpha(t, 0) . I^{(0)}_beta(t, 0), m < m_count.
std::vector<CVec> phase_form_taylor(const SingularityModel& model, const CVec& alpha, const CVec& beta,
                                    const CVec& t, int m_count, cplx lambda0);

struct PhaseIntegral {
  CMat k;        // K_ab = int (phi_i, Y_xi[a] . Y_0[b]) db_i
  CMat y0_end;   // I(b, 0) at the end
  CMat yxi_end;  // I(b, xi) at the end
  OdeStats stats;
};

// Line integral of the phase form along a B' polyline, transporting both period matrices.
PhaseIntegral integrate_phase_form(const FrobeniusData& f, const std::vector<CVec>& b_path, cplx xi,
                                   const CMat& y0, const CMat& yxi, double clearance = 1e-6);

// B' points t - x 1 for x on a lambda-plane polyline.
std::vector<CVec> to_bprime(const CVec& t, const std::vector<cplx>& xs);

// base -> ray toward u -> polygon of radius rho counterclockwise around u -> back to base.
std::vector<cplx> critical_value_loop(cplx base, cplx u, double rho, int sides = 48);
// Counterclockwise circle |x| = |base| through base.
std::vector<cplx> big_circle_loop(cplx base, int sides = 96);

// Phase data at (t, lambda, mu = lambda + xi): periods at t - lambda 1 and Omega_{e_a,e_b}(t, lambda, mu).
struct PhaseBase {
  CVec t;
  cplx lambda;
  cplx xi;
  cplx log_lambda;
  CMat y0;     // I(t - lambda 1, 0) = I(t, lambda)
  CMat yxi;    // I(t - lambda 1, xi)
  CMat omega;  // Omega_{e_a, e_b}(t, lambda, lambda + xi)
  RootTracker roots;
};

PhaseBase prepare_phase_base(const SingularityModel& model, const CVec& t, cplx lambda, cplx xi);

struct LoopRun {
  CMat k;
  CMat w;              // monodromy on cycle coordinates
  IMat w_integer;
  double w_residual = 0.0;
  std::pair<int, int> vanishing_pair{-1, -1};  // closest roots at the innermost vertex
  CVec vanishing_cycle;
};

// Integrate around a lambda-plane loop based at base.lambda; inner_vertex marks where roots are inspected.
LoopRun run_loop(const SingularityModel& model, const PhaseBase& base, const std::vector<cplx>& loop,
                 int inner_vertex = -1);

struct IntegerCheck {
  cplx value;        // combination divided by 2 pi i
  long long nearest = 0;
  double residual = 0.0;
};

// [beta^T K alpha - Omega_{w alpha, w beta} + Omega_{alpha,beta}] / 2 pi i.
IntegerCheck loop_integrality_value(const PhaseBase& base, const LoopRun& run, const CVec& alpha, const CVec& beta);
// Throws NotInteger when the residual exceeds tol.
long long loop_integrality_check(const PhaseBase& base, const LoopRun& run, const CVec& alpha, const CVec& beta,
                         double tol = 1e-5);

struct VanishingCheck {
  cplx integral;  // loop integral of W_{phi,phi}
  cplx ratio;     // integral / (-4 pi i)
  CVec phi;
  double runtime_s = 0.0;
};

VanishingCheck vanishing_cycle_check(const SingularityModel& model, const PhaseBase& base, int critical_index);

}  // namespace phasekit
