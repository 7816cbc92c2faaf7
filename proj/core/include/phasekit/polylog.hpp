#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasekit/opcalc.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

// Polyline in the complex plane; the first vertex is the base point.
struct ComplexPath {
  std::vector<cplx> points;
  std::string purpose;
};

struct BranchedValue {
  cplx value;
  cplx log_branch;  // logarithm of the end point along the path
};

inline constexpr int kMaxBernoulliOrder = 32;
inline constexpr double kDefaultClearance = 1e-3;

// B_p(x) from exact rational coefficients.
cplx bernoulli_poly(int p, cplx x, int max_order = kMaxBernoulliOrder);

// Principal branch of Li_p (cut along [1, inf)); signed zero selects the side on the cut.
cplx li_principal(int p, cplx x);

// Li_p(x) on the principal sheet; requires |x| < 1.
BranchedValue li_scalar(int p, cplx x);
// Li_p continued along path from a start point inside the unit disk.
BranchedValue li_scalar(int p, const ComplexPath& path, double clearance = kDefaultClearance);

// Continuation state of all Li_1..Li_pmax along one path: value = principal + sum_k q[p][k] log^k.
struct LiContinuation {
  cplx end;
  cplx log_end;
  std::vector<std::vector<cplx>> q;  // q[p-1] polynomial coefficients in log_end
  cplx value(int p) const;
};

LiContinuation continue_polylogs(int pmax, const ComplexPath& path, double clearance = kDefaultClearance);

// Continued logarithm of the end point of a path starting on the principal sheet.
cplx continued_log(const ComplexPath& path);

// Side of 1 when the path from x to 1/x crosses the real axis: true when 1 is on the left.
bool one_on_left(const ComplexPath& path);

// Path x -> c + i d -> c - i d -> 1/x (or mirrored) crossing the real axis once at c.
ComplexPath jonquiere_path(cplx x, double crossing, double offset = 0.3);

// |LHS - RHS| of the inversion formula with the branch of log x chosen by the left/right rule.
double jonquiere_invert(int p, cplx x, const ComplexPath& path);

enum class LiRoute { kDirect, kPolylog };

// Li_sigma(x) = sum_k x^{k+N}/(k+N).
CMat li_sigma(const CMat& sigma, cplx x, const ComplexPath* path = nullptr, LiRoute route = LiRoute::kPolylog);
CMat li_sigma(const NormalizedLog& nlog, cplx x, const ComplexPath* path = nullptr,
              LiRoute route = LiRoute::kPolylog);

// Li_sigma(x) for |x| < 1 with x^N taken as exp(log_x N) for the supplied logarithm.
CMat li_sigma_branch(const NormalizedLog& nlog, cplx x, cplx log_x);

// Residual of the operator inversion formula; the path runs from x to 1/x.
double li_sigma_inversion_check(const CMat& sigma, cplx x, const ComplexPath& path, int chi0);

}  // namespace phasekit
