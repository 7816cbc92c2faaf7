#include "phasekit/poly.hpp"

#include <algorithm>

#include "phasekit/errors.hpp"

namespace phasekit::poly {

Poly trim(Poly p) {
  while (p.size() > 1 && p.back() == cplx(0.0)) p.pop_back();
  return p;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly scale(const Poly& a, cplx c) {
  Poly out(a);
  for (auto& v : out) v *= c;
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly derivative(const Poly& a) {
  if (a.size() <= 1) return {0.0};
  Poly out(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * static_cast<double>(i);
  return out;
}

Poly mod_monic(const Poly& a, const Poly& m) {
  const size_t d = m.size() - 1;
  Poly r(a);
  for (size_t k = r.size(); k-- > d;) {
    cplx c = r[k];
    if (c == cplx(0.0)) continue;
    for (size_t j = 0; j <= d; ++j) r[k - d + j] -= c * m[j];
  }
  r.resize(std::min(r.size(), d));
  r.resize(d, 0.0);
  return r;
}

cplx eval(const Poly& a, cplx x) {
  cplx acc = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<cplx> roots(const Poly& a) {
  Poly p = trim(a);
  const int d = static_cast<int>(p.size()) - 1;
  if (d < 1) fail(ErrorCode::kInvalidArgument, "roots of a constant polynomial");
  CMat comp = CMat::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[i] / p[d];
  Eigen::ComplexEigenSolver<CMat> solver(comp, false);
  std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  // One Newton polish step per root.
  Poly dp = derivative(p);
  for (auto& z : out) {
    for (int it = 0; it < 2; ++it) {
      cplx f = eval(p, z), g = eval(dp, z);
      if (g == cplx(0.0)) break;
      cplx next = z - f / g;
      if (std::abs(eval(p, next)) >= std::abs(f)) break;
      z = next;
    }
  }
  return out;
}

}  // namespace phasekit::poly
