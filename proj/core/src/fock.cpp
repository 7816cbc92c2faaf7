#include "phasekit/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "phasekit/continuation.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/phase.hpp"

namespace phasekit {

// ---------------------------------------------------------------- Fock elements

FockElement::FockElement(int dim, int truncation) : dim_(dim), truncation_(truncation) {
  if (dim <= 0) fail(ErrorCode::kInvalidArgument, "Fock space needs a positive rank");
  if (truncation < 0 || truncation > kMaxTruncation)
    fail(ErrorCode::kTruncationOverflow, "truncation order outside [0, " + std::to_string(kMaxTruncation) + "]");
}

FockElement FockElement::vacuum(int dim, int truncation) {
  FockElement v(dim, truncation);
  v.add(FockKey{}, 1.0);
  return v;
}

int FockElement::weight(const FockKey& key) const {
  int w = 0;
  for (int q : key.slots) w += q / dim_ + 1;
  return w;
}

void FockElement::add(const FockKey& key, cplx c) {
  if (c == cplx(0.0)) return;
  if (weight(key) > truncation_) fail(ErrorCode::kTruncationOverflow, "monomial exceeds the truncation weight");
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
}

cplx FockElement::coefficient(const FockKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

FockElement FockElement::homogeneous(int w) const {
  FockElement out(dim_, truncation_);
  for (const auto& [k, c] : terms_)
    if (weight(k) == w) out.terms_.emplace(k, c);
  return out;
}

double FockElement::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

FockElement& FockElement::operator+=(const FockElement& other) {
  if (other.dim_ != dim_ || other.truncation_ != truncation_)
    fail(ErrorCode::kInvalidArgument, "Fock elements with different shapes");
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

FockElement FockElement::operator+(const FockElement& other) const {
  FockElement out = *this;
  out += other;
  return out;
}

FockElement FockElement::operator-(const FockElement& other) const { return *this + other * cplx(-1.0); }

FockElement FockElement::operator*(cplx c) const {
  FockElement out(dim_, truncation_);
  if (c == cplx(0.0)) return out;
  for (const auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
  return out;
}

// ---------------------------------------------------------------- field modes

namespace {

// I^{(k)}_cycle(t, lambda) for k in [kmin, kmax], indexed by k - kmin.
std::vector<CVec> period_tower(const SingularityModel& model, const CVec& cycle, const CVec& t, cplx lambda,
                               cplx log_lambda, int kmin, int kmax) {
  const int n = model.rank();
  std::vector<CVec> out(kmax - kmin + 1);
  const bool at_origin = t.size() == 0 || t.norm() == 0.0;
  if (at_origin) {
    for (int k = kmin; k <= kmax; ++k) out[k - kmin] = period_vector_t0(cycle, k, lambda, log_lambda, model);
    return out;
  }
  const auto& f = model.frobenius;
  const CMat y = periods_along(model, 0, standard_route(lambda, t, lambda), log_lambda);
  const CVec i0 = y * cycle;
  const CMat id = CMat::Identity(n, n);
  const CMat le = lambda * id - f.euler_product(t);
  auto shifted = [&](int k) { return CMat(f.theta_mat() - (k + 0.5) * id); };
  CVec cur = i0;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) cur = le.partialPivLu().solve(shifted(k - 1) * cur);
    if (k >= kmin) out[k - kmin] = cur;
  }
  cur = i0;
  for (int k = -1; k >= kmin; --k) {
    cur = shifted(k).partialPivLu().solve(le * cur);
    if (k <= kmax) out[k - kmin] = cur;
  }
  return out;
}

bool insert_slot(std::vector<int>& slots, int q) {
  slots.insert(std::upper_bound(slots.begin(), slots.end(), q), q);
  return true;
}

}  // namespace

FieldModes field_modes(const SingularityModel& model, const CVec& cycle, const CVec& t, cplx lambda,
                       cplx log_lambda, int truncation, int order) {
  const int n = model.rank();
  if (cycle.size() != n) fail(ErrorCode::kInvalidArgument, "cycle length does not match rank");
  if (truncation < 0 || truncation > kMaxTruncation) fail(ErrorCode::kTruncationOverflow, "truncation too large");
  const int kmin = -truncation + order;
  const int kmax = truncation - 1 + order;
  const auto tower = period_tower(model, cycle, t, lambda, log_lambda, std::min(kmin, 0), std::max(kmax, 0));
  const int base = std::min(kmin, 0);
  FieldModes out{CVec::Zero(n * truncation), CVec::Zero(n * truncation)};
  const CMat& eta = model.frobenius.eta;
  for (int m = 0; m < truncation; ++m) {
    // f_- = sum_m (-1)^{m+1} I^{(-m-1)} z^{-m-1}; f_+ contracts z^{-m-1} phi_i through (I^{(m)}, phi_i).
    const double sgn = (m % 2 == 0) ? -1.0 : 1.0;
    const CVec cr = sgn * tower[-m - 1 + order - base];
    const CVec an = eta * tower[m + order - base];
    for (int i = 0; i < n; ++i) {
      out.creation(m * n + i) = cr(i);
      out.annihilation(m * n + i) = an(i);
    }
  }
  return out;
}

FockElement multiply_creation(const FockElement& v, const CVec& creation) {
  FockElement out(v.dim(), v.truncation());
  const int n = v.dim();
  for (const auto& [key, c] : v.terms()) {
    const int w = v.weight(key);
    for (int q = 0; q < creation.size(); ++q) {
      if (creation(q) == cplx(0.0) || w + q / n + 1 > v.truncation()) continue;
      FockKey k2{key.hbar2 - 1, key.slots};
      insert_slot(k2.slots, q);
      out.add(k2, c * creation(q));
    }
  }
  return out;
}

FockElement apply_annihilation(const FockElement& v, const CVec& annihilation) {
  FockElement out(v.dim(), v.truncation());
  for (const auto& [key, c] : v.terms()) {
    for (size_t j = 0; j < key.slots.size(); ++j) {
      if (j > 0 && key.slots[j] == key.slots[j - 1]) continue;
      const int q = key.slots[j];
      if (q >= annihilation.size() || annihilation(q) == cplx(0.0)) continue;
      const auto mult = std::count(key.slots.begin(), key.slots.end(), q);
      FockKey k2{key.hbar2 + 1, key.slots};
      k2.slots.erase(k2.slots.begin() + static_cast<long>(j));
      out.add(k2, c * annihilation(q) * static_cast<double>(mult));
    }
  }
  return out;
}

namespace {

FockElement exp_of(const FockElement& v, const std::function<FockElement(const FockElement&)>& op) {
  FockElement out = v;
  FockElement term = v;
  for (int j = 1; !term.terms().empty(); ++j) {
    if (j > 4 * kMaxTruncation + 64) fail(ErrorCode::kTruncationOverflow, "exponential series did not terminate");
    term = op(term) * cplx(1.0 / j);
    out += term;
  }
  return out;
}

}  // namespace

FockElement exp_creation(const FockElement& v, const CVec& creation) {
  return exp_of(v, [&](const FockElement& x) { return multiply_creation(x, creation); });
}

FockElement exp_annihilation(const FockElement& v, const CVec& annihilation) {
  return exp_of(v, [&](const FockElement& x) { return apply_annihilation(x, annihilation); });
}

FockElement apply_vertex_operator(const CVec& alpha, const CVec& t, cplx lambda, cplx log_lambda,
                                  const FockElement& v, const SingularityModel& model) {
  if (v.dim() != model.rank()) fail(ErrorCode::kInvalidArgument, "Fock element rank mismatch");
  const FieldModes f = field_modes(model, alpha, t, lambda, log_lambda, v.truncation());
  return exp_creation(exp_annihilation(v, f.annihilation), f.creation);
}

FockElement apply_heisenberg(const CVec& a, const CVec& t, cplx lambda, cplx log_lambda, const FockElement& v,
                             const SingularityModel& model) {
  if (v.dim() != model.rank()) fail(ErrorCode::kInvalidArgument, "Fock element rank mismatch");
  const FieldModes f = field_modes(model, a, t, lambda, log_lambda, v.truncation(), 1);
  return multiply_creation(v, f.creation) + apply_annihilation(v, f.annihilation);
}

// ---------------------------------------------------------------- composition

std::vector<cplx> graded_exp(const std::vector<cplx>& terms, int truncation) {
  std::vector<cplx> a(truncation + 1, 0.0);
  for (size_t n = 0; n < terms.size() && static_cast<int>(n) + 1 <= truncation; ++n) a[n + 1] = terms[n];
  std::vector<cplx> b(truncation + 1, 0.0);
  b[0] = 1.0;
  for (int j = 1; j <= truncation; ++j) {
    cplx acc = 0.0;
    for (int i = 1; i <= j; ++i) acc += static_cast<double>(i) * a[i] * b[j - i];
    b[j] = acc / static_cast<double>(j);
  }
  return b;
}

CompositionResult compose_and_extract_phase(const CVec& alpha, const CVec& beta, cplx lambda, cplx mu,
                                            const SingularityModel& model, int truncation, const CVec& t) {
  if (!(std::abs(lambda) > std::abs(mu))) fail(ErrorCode::kOutsideDomain, "composition requires |lambda| > |mu|");
  const int n = model.rank();
  const CVec tt = t.size() == 0 ? CVec(CVec::Zero(n)) : t;
  const cplx ll = std::log(lambda);
  const cplx lm = ll + std::log(mu / lambda);
  const FieldModes fa = field_modes(model, alpha, tt, lambda, ll, truncation);
  const FieldModes fb = field_modes(model, beta, tt, mu, lm, truncation);
  const FockElement vac = FockElement::vacuum(n, truncation);

  const FockElement right = exp_creation(exp_annihilation(vac, fb.annihilation), fb.creation);
  CompositionResult out;
  out.graded.assign(truncation + 1, 0.0);
  for (int w = 0; w <= truncation; ++w) {
    const FockElement part = exp_annihilation(right.homogeneous(w), fa.annihilation);
    out.graded[w] = part.vacuum_coefficient();
  }
  const FockElement product = exp_creation(exp_annihilation(right, fa.annihilation), fa.creation);
  out.product_vacuum = product.vacuum_coefficient();

  CVec cr = fa.creation + fb.creation, an = fa.annihilation + fb.annihilation;
  const FockElement normal = exp_creation(exp_annihilation(vac, an), cr);
  out.normal_vacuum = normal.vacuum_coefficient();
  if (std::abs(out.normal_vacuum) < 1e-300) fail(ErrorCode::kZeroNormalOrderedTerm, "normally ordered term vanishes");
  out.scalar = out.product_vacuum / out.normal_vacuum;
  return out;
}

// ---------------------------------------------------------------- OPE

namespace {

// (x - y)^{-1} (I^{(0)}_a(x), (theta + 1/2) I^{(-1)}_b(y)).
cplx pf_partial(const CVec& i0_a, const CVec& im1_b, cplx x, cplx y, const SingularityModel& model) {
  const int n = model.rank();
  const CMat th = model.frobenius.theta_mat() + 0.5 * CMat::Identity(n, n);
  return (i0_a.transpose() * model.frobenius.eta * th * im1_b)(0, 0) / (x - y);
}

// Normally ordered X(a, mu) X(b, lambda) v plus the contraction term, at one point mu.
FockElement product_at(const VoaGenerator& a, const VoaGenerator& b, cplx mu, cplx log_mu, cplx lambda,
                       cplx log_lambda, cplx omega_ab, const SingularityModel& model, const FockElement& v) {
  using K = VoaGenerator::Kind;
  const int tr = v.truncation();
  const CVec t0 = CVec::Zero(model.rank());
  const int oa = a.kind == K::kHeisenberg ? 1 : 0;
  const int ob = b.kind == K::kHeisenberg ? 1 : 0;
  const FieldModes fa = field_modes(model, a.vec, t0, mu, log_mu, tr, oa);
  const FieldModes fb = field_modes(model, b.vec, t0, lambda, log_lambda, tr, ob);
  auto i0 = [&](const CVec& c, cplx x, cplx lx) { return period_vector_t0(c, 0, x, lx, model); };
  auto im1 = [&](const CVec& c, cplx x, cplx lx) { return period_vector_t0(c, -1, x, lx, model); };

  if (a.kind == K::kLattice && b.kind == K::kLattice) {
    const FockElement normal = exp_creation(exp_annihilation(v, fa.annihilation + fb.annihilation),
                                            fa.creation + fb.creation);
    return normal * std::exp(omega_ab);
  }
  if (a.kind == K::kHeisenberg && b.kind == K::kHeisenberg) {
    // :phi_a phi_b: = M_a M_b + M_a D_b + M_b D_a + D_b D_a.
    FockElement normal = multiply_creation(multiply_creation(v, fb.creation) + apply_annihilation(v, fb.annihilation),
                                           fa.creation);
    const FockElement da = apply_annihilation(v, fa.annihilation);
    normal += multiply_creation(da, fb.creation) + apply_annihilation(da, fb.annihilation);
    const cplx x = mu, y = lambda;
    const CVec ia0 = i0(a.vec, x, log_mu);
    const cplx c = pf_partial(ia0, im1(b.vec, y, log_lambda), x, y, model) / (x - y) +
                   pf_partial(ia0, i0(b.vec, y, log_lambda), x, y, model);
    return normal + v * c;
  }
  if (a.kind == K::kHeisenberg) {
    // :phi_a Gamma^b: = M_a Gamma^b + e^{M_b} D_a e^{D_b}; contraction d_mu Omega_{a,b}(mu, lambda).
    const FockElement eb = exp_annihilation(v, fb.annihilation);
    const FockElement gamma_b = exp_creation(eb, fb.creation);
    FockElement normal = multiply_creation(gamma_b, fa.creation);
    normal += exp_creation(apply_annihilation(eb, fa.annihilation), fb.creation);
    const cplx c = pf_partial(i0(a.vec, mu, log_mu), im1(b.vec, lambda, log_lambda), mu, lambda, model);
    return normal + gamma_b * c;
  }
  // :Gamma^a phi_b: = e^{M_a} (M_b + D_b) e^{D_a}; contraction d_lambda Omega_{a,b}(mu, lambda).
  const FockElement ea = exp_annihilation(v, fa.annihilation);
  const FockElement inner = multiply_creation(ea, fb.creation) + apply_annihilation(ea, fb.annihilation);
  const FockElement normal = exp_creation(inner, fa.creation);
  const FockElement gamma_a = exp_creation(ea, fa.creation);
  const cplx c = pf_partial(i0(b.vec, lambda, log_lambda), im1(a.vec, mu, log_mu), lambda, mu, model);
  return normal + gamma_a * c;
}

struct LaurentRun {
  FockElement coefficient;
  double negative = 0.0;
};

LaurentRun laurent_extract(const VoaGenerator& a, const VoaGenerator& b, int k, int m, cplx lambda, cplx log_lambda,
                           const SingularityModel& model, const FockElement& v, double radius, int samples) {
  const double r = radius * std::abs(lambda);
  const cplx u = lambda / std::abs(lambda);
  std::vector<cplx> omegas(samples, 0.0);
  if (a.kind == VoaGenerator::Kind::kLattice && b.kind == VoaGenerator::Kind::kLattice)
    omegas = omega_around_diagonal(a.vec, b.vec, lambda, log_lambda, model, radius, samples);
  const int probes = 4;
  LaurentRun out{FockElement(v.dim(), v.truncation()), 0.0};
  std::vector<FockElement> neg(probes, FockElement(v.dim(), v.truncation()));
  for (int j = 0; j < samples; ++j) {
    const cplx d = r * u * std::exp(kTwoPiI * (static_cast<double>(j) / samples));
    const cplx mu = lambda + d;
    const cplx log_mu = log_lambda + std::log(mu / lambda);
    const FockElement h = product_at(a, b, mu, log_mu, lambda, log_lambda, omegas[j], model, v) * std::pow(d, m);
    out.coefficient += h * (std::pow(d, -k) / static_cast<double>(samples));
    for (int p = 1; p <= probes; ++p) neg[p - 1] += h * (std::pow(d, p) / static_cast<double>(samples));
  }
  for (int p = 1; p <= probes; ++p) out.negative = std::max(out.negative, neg[p - 1].max_abs() * std::pow(r, -p));
  return out;
}

double difference(const FockElement& x, const FockElement& y) { return (x - y).max_abs(); }

}  // namespace

OpeResult ope_product(const VoaGenerator& a, const VoaGenerator& b, int k, int m, cplx lambda, cplx log_lambda,
                      const SingularityModel& model, const FockElement& v, const OpeOptions& options) {
  if (k < 0) fail(ErrorCode::kInvalidArgument, "derivative order k must be >= 0");
  if (a.vec.size() != model.rank() || b.vec.size() != model.rank())
    fail(ErrorCode::kInvalidArgument, "generator vector length does not match rank");
  if (lambda == cplx(0.0)) fail(ErrorCode::kZeroLambda, "OPE base point at lambda = 0");
  const LaurentRun first = laurent_extract(a, b, k, m, lambda, log_lambda, model, v, options.radius, options.samples);
  const LaurentRun second =
      laurent_extract(a, b, k + 1, m + 1, lambda, log_lambda, model, v, 0.7 * options.radius, options.samples);
  OpeResult out{first.coefficient, 0.0, 0.0};
  const double scale = std::max(1.0, first.coefficient.max_abs());
  out.stability_residual = difference(first.coefficient, second.coefficient) / scale;
  out.regularity_residual = first.negative / scale;
  if (out.stability_residual > options.tolerance || out.regularity_residual > options.tolerance)
    fail(ErrorCode::kRegularizationFailure, "(mu - lambda)^M X X v is not regular at mu = lambda");
  return out;
}

// ---------------------------------------------------------------- tame monomials

bool tame_predicate(const TameMonomial& m) {
  long long lhs = 0;
  for (int k : m.negative) lhs += k;
  lhs -= static_cast<long long>(m.negative.size());
  const long long rhs = 3LL * 2 * (m.g - 1) + 3LL * static_cast<long long>(m.positive.size());
  return 2 * lhs <= rhs;
}

std::vector<TameMonomial> weyl_product_support(const TameMonomial& a, const TameMonomial& b) {
  // Normal ordering a.positive past b.negative: every partial matching with l = k contracts, gaining hbar.
  std::vector<TameMonomial> out;
  const size_t np = a.positive.size(), nn = b.negative.size();
  std::vector<int> match(np, -1);
  std::vector<bool> used(nn, false);
  std::function<void(size_t, int)> rec = [&](size_t i, int contracted) {
    if (i == np) {
      TameMonomial r;
      r.g = a.g + b.g - 1 + contracted;
      r.negative = a.negative;
      for (size_t j = 0; j < nn; ++j)
        if (!used[j]) r.negative.push_back(b.negative[j]);
      for (size_t p = 0; p < np; ++p)
        if (match[p] < 0) r.positive.push_back(a.positive[p]);
      r.positive.insert(r.positive.end(), b.positive.begin(), b.positive.end());
      out.push_back(r);
      return;
    }
    rec(i + 1, contracted);
    for (size_t j = 0; j < nn; ++j) {
      if (used[j] || b.negative[j] != a.positive[i]) continue;
      used[j] = true;
      match[i] = static_cast<int>(j);
      rec(i + 1, contracted + 1);
      used[j] = false;
      match[i] = -1;
    }
  };
  rec(0, 0);
  return out;
}

}  // namespace phasekit
