#include "suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

#include "phasekit/continuation.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/fock.hpp"
#include "phasekit/phase.hpp"
#include "phasekit/polylog.hpp"

namespace phasekit::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json vjson(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(std::llround(v(i).real()));
  return out;
}

json mjson(const IMat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  cplx polar(double r0, double r1) { return std::polar(uniform(r0, r1), uniform(-kPi, kPi)); }
  std::uint64_t next() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(worker_count(), std::max(n, 1));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

double min_gap(const std::vector<cplx>& us) {
  double gap = 1.0;
  bool any = false;
  for (size_t a = 0; a < us.size(); ++a)
    for (size_t b = 0; b < a; ++b) {
      gap = any ? std::min(gap, std::abs(us[a] - us[b])) : std::abs(us[a] - us[b]);
      any = true;
    }
  return gap;
}

// Deformation with well separated critical values.
CVec generic_t(const SingularityModel& model, Sampler& s) {
  const int n = model.rank();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CVec t(n);
    for (int j = 0; j < n; ++j) t(j) = s.polar(0.0, 0.5);
    if (n >= 2) t(1) += cplx(-0.6, 0.0);
    const auto us = model.frobenius.model.critical_values(t);
    double big = 0.0;
    for (cplx u : us) big = std::max(big, std::abs(u));
    if ((n == 1 || min_gap(us) > 0.3) && big < 2.0) return t;
  }
  fail(ErrorCode::kOutsideDomain, "could not sample a generic deformation");
}

struct LoopSetup {
  CVec t;
  std::vector<cplx> us;
  double rho = 0.0;
  cplx lambda;
  cplx xi;
};

// Base point from which every straight ray to a critical value clears the others.
LoopSetup loop_setup(const SingularityModel& model, Sampler& s) {
  LoopSetup out;
  out.t = generic_t(model, s);
  out.us = model.frobenius.model.critical_values(out.t);
  out.rho = 0.1 * min_gap(out.us);
  double big = 0.0;
  for (cplx u : out.us) big = std::max(big, std::abs(u));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const cplx lambda = std::polar(3.0 + 2.0 * big, s.uniform(-kPi, kPi));
    const cplx xi = -0.15 * out.rho * (lambda / std::abs(lambda)) * std::exp(kI * s.uniform(-1.0, 1.0));
    bool clear = true;
    for (size_t i = 0; i < out.us.size() && clear; ++i)
      for (size_t j = 0; j < out.us.size() && clear; ++j) {
        if (i == j) continue;
        const double d1 = segment_distance(out.us[j], lambda, out.us[i]);
        const double d2 = segment_distance(out.us[j] - xi, lambda, out.us[i]);
        if (std::min(d1, d2) < 3.0 * out.rho) clear = false;
      }
    if (clear) {
      out.lambda = lambda;
      out.xi = xi;
      return out;
    }
  }
  fail(ErrorCode::kOutsideDomain, "could not place a loop base point");
}

std::vector<cplx> concatenate(const std::vector<std::vector<cplx>>& loops) {
  std::vector<cplx> out;
  for (const auto& l : loops) {
    if (out.empty()) {
      out = l;
    } else {
      out.insert(out.end(), l.begin() + 1, l.end());
    }
  }
  return out;
}

std::vector<CVec> small_cycles(int rank, int bound) {
  std::vector<CVec> out;
  std::vector<int> v(rank, -bound);
  while (true) {
    bool zero = std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
    if (!zero) {
      CVec c(rank);
      for (int i = 0; i < rank; ++i) c(i) = static_cast<double>(v[i]);
      out.push_back(c);
    }
    int i = 0;
    while (i < rank && v[i] == bound) v[i++] = -bound;
    if (i == rank) break;
    ++v[i];
  }
  return out;
}

long long pairing(const MilnorLatticeData& data, const CVec& a, const CVec& b) {
  const IVec ia = a.real().array().round().cast<long long>().matrix();
  const IVec ib = b.real().array().round().cast<long long>().matrix();
  return intersection(data, ia, ib);
}

CVec random_cycle(int rank, Sampler& s) {
  CVec c = CVec::Zero(rank);
  while (c.norm() == 0.0)
    for (int i = 0; i < rank; ++i) c(i) = static_cast<double>(s.integer(-2, 2));
  return c;
}

json error_record(const std::string& what, const Error& e) {
  return json{{"item", what}, {"error", e.what()}, {"ok", false}};
}

}  // namespace

// ---------------------------------------------------------------- plumbing

const SingularityModel& Target::require_model() const {
  if (!model) fail(ErrorCode::kUnsupported, "dataset '" + label + "' has no built-in Frobenius model");
  return *model;
}

Target builtin_target(const std::string& name) {
  if (!is_builtin_name(name)) fail(ErrorCode::kParse, "unknown built-in '" + name + "' (expected A1, A2 or A3)");
  Target t;
  t.label = name;
  t.lattice = builtin_lattice(name);
  t.model = builtin_model(name);
  return t;
}

Target dataset_target(const MilnorLatticeData& data) {
  Target t;
  t.label = data.label.empty() ? "dataset" : data.label;
  t.lattice = data;
  if (data.rank >= 1 && data.rank <= 3) {
    const MilnorLatticeData ref = a_mu_lattice(data.rank);
    if (ref.seifert == data.seifert && ref.spectrum == data.spectrum && ref.ell == data.ell)
      t.model = make_model(data.rank);
  }
  return t;
}

bool SuiteReport::observe(double residual) { return observe(residual, tolerance); }

bool SuiteReport::observe(double residual, double tol) {
  if (!std::isfinite(residual)) {
    ok = false;
    max_residual = std::numeric_limits<double>::infinity();
    return false;
  }
  max_residual = std::max(max_residual, residual);
  const bool pass = residual <= tol;
  if (!pass) ok = false;
  return pass;
}

json SuiteReport::to_json(std::uint64_t seed) const {
  return json{{"schema", "report.v1"}, {"command", command},     {"dataset", dataset},
              {"seed", seed},          {"tolerance", tolerance}, {"ok", ok},
              {"max_residual", max_residual}, {"runtime_s", runtime_s}, {"summary", summary},
              {"records", records}};
}

int worker_count() {
  const int hw = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("PHASEKIT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) return std::min(cap, hw);
  }
  return hw;
}

// ---------------------------------------------------------------- validate

SuiteReport run_validate(const Target& target, const SuiteOptions& options) {
  const auto start = Clock::now();
  SuiteReport r{"validate", target.label, options.tolerance.value_or(1e-10)};
  auto add = [&](const std::string& check, double residual, const std::string& note = "") {
    json rec{{"check", check}, {"residual", residual}, {"ok", r.observe(residual)}};
    if (!note.empty()) rec["note"] = note;
    r.records.push_back(rec);
  };
  const auto problems = validate_lattice(target.lattice);
  for (const auto& p : problems) {
    r.records.push_back(json{{"check", "structure"}, {"note", p}, {"ok", false}});
    r.ok = false;
  }
  if (!problems.empty()) {
    r.runtime_s = seconds_since(start);
    return r;
  }
  const OperatorH sigma = classical_monodromy(target.lattice, false);
  add("monodromy_spectrum", spectrum_residual(target.lattice, sigma.mat()));
  const NormalizedLog nlog = normalized_log(sigma.mat());
  double outside = 0.0;
  for (const Rational& nu : nlog.nu) {
    const double v = nu.value();
    if (v > 0.0) outside = std::max(outside, v);
    if (v <= -1.0) outside = std::max(outside, 1.0);
  }
  Eigen::ComplexEigenSolver<CMat> es(nlog.N.mat());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const cplx v = es.eigenvalues()(i);
    outside = std::max(outside, std::abs(v.imag()));
    if (v.real() > 1e-12) outside = std::max(outside, v.real());
    if (v.real() <= -1.0 - 1e-12) outside = std::max(outside, 1.0);
  }
  add("normalized_log_spectrum_in_(-1,0]", outside);
  add("normalized_log_exp_residual", nlog.residual);
  const IMat g = intersection_form(target.lattice);
  long long diag_bad = 0;
  for (int i = 0; i < target.lattice.rank; ++i) diag_bad += std::llabs(g(i, i) - 2);
  add("vanishing_self_intersection", static_cast<double>(diag_bad));
  if (target.model) {
    const auto& m = *target.model;
    Sampler s(options.seed);
    double assoc = 0.0;
    for (int k = 0; k < 5; ++k) {
      CVec t(m.rank());
      for (int j = 0; j < m.rank(); ++j) t(j) = s.polar(0.0, 1.0);
      assoc = std::max(assoc, associativity_residual(m.frobenius, t));
    }
    add("frobenius_associativity", assoc);
    add("residue_gram_symmetry", (m.frobenius.eta - m.frobenius.eta.transpose()).cwiseAbs().maxCoeff());
    add("residue_gram_from_seifert", (residue_gram_from_seifert(m) - m.residue_gram).cwiseAbs().maxCoeff());
    const CMat e_n = exp_minus_two_pi_i(m.nlog.N);
    add("exp_normalized_log_vs_monodromy", (e_n - m.sigma).cwiseAbs().maxCoeff());
  }
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- omega

SuiteReport run_omega_grid(const Target& target, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"omega", target.label, options.tolerance.value_or(1e-8)};
  const int n = m.rank();
  const double offsets[5] = {0.4, -0.9, 1.7, -2.5, 3.0};
  const int n_max = 60;
  for (int ri = 0; ri < 5; ++ri) {
    const double ratio = 2.0 + 1.5 * ri;
    for (int ai = 0; ai < 5; ++ai) {
      const cplx mu = std::polar(1.0, 2.0 * kPi * ai / 5.0 + 0.3);
      const cplx lambda = ratio * mu * std::exp(kI * offsets[(ai + ri) % 5]);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const CVec ea = CVec::Unit(n, a), eb = CVec::Unit(n, b);
          const OracleValue o = omega_oracle(ea, eb, lambda, mu, m, n_max);
          const PhaseValue c = omega_closed_form(ea, eb, lambda, mu, m);
          const double res = std::abs(o.value - c.omega);
          r.records.push_back(json{{"ratio", ratio},
                                   {"lambda", cjson(lambda)},
                                   {"mu", cjson(mu)},
                                   {"alpha", a},
                                   {"beta", b},
                                   {"closed", cjson(c.omega)},
                                   {"oracle", cjson(o.value)},
                                   {"tail_bound", o.tail_bound},
                                   {"residual", res},
                                   {"ok", r.observe(res)}});
        }
    }
  }
  r.summary = json{{"grid", "5x5"}, {"n_max", n_max}, {"pairs", n * n}};
  r.runtime_s = seconds_since(start);
  return r;
}

SuiteReport run_omega_point(const Target& target, cplx lambda, cplx mu, const std::vector<long long>& alpha,
                            const std::vector<long long>& beta, int n_max, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"omega", target.label, options.tolerance.value_or(1e-8)};
  const int n = m.rank();
  std::vector<std::pair<CVec, CVec>> pairs;
  auto to_vec = [&](const std::vector<long long>& v) {
    if (static_cast<int>(v.size()) != n) fail(ErrorCode::kParse, "cycle length does not match the rank");
    CVec c(n);
    for (int i = 0; i < n; ++i) c(i) = static_cast<double>(v[i]);
    return c;
  };
  if (alpha.empty() || beta.empty()) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) pairs.emplace_back(CVec::Unit(n, a), CVec::Unit(n, b));
  } else {
    pairs.emplace_back(to_vec(alpha), to_vec(beta));
  }
  for (const auto& [a, b] : pairs) {
    const PhaseValue c = omega_closed_form(a, b, lambda, mu, m);
    const OracleValue o = omega_oracle(a, b, lambda, mu, m, n_max);
    const double res = std::abs(o.value - c.omega);
    r.records.push_back(json{{"alpha", vjson(a)},
                             {"beta", vjson(b)},
                             {"closed", cjson(c.omega)},
                             {"li_term", cjson(c.li_term)},
                             {"p_term", cjson(c.p_term)},
                             {"oracle", cjson(o.value)},
                             {"tail_bound", o.tail_bound},
                             {"residual", res},
                             {"ok", r.observe(std::max(0.0, res - o.tail_bound))}});
  }
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- locality

SuiteReport run_locality(const Target& target, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"locality", target.label, options.tolerance.value_or(1e-6)};
  const int n = m.rank();
  const int configs = options.count > 0 ? options.count : 10;
  Sampler s(options.seed);
  const int windings[4] = {1, -1, 3, -3};
  for (int c = 0; c < configs; ++c) {
    const cplx mu = s.polar(0.5, 2.0);
    const cplx lambda = mu * (1.0 + std::polar(s.uniform(0.05, 0.4), s.uniform(-1.2, 1.2)));
    const int w = windings[s.integer(0, 3)];
    std::vector<std::pair<CVec, CVec>> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) pairs.emplace_back(CVec::Unit(n, a), CVec::Unit(n, b));
    pairs.emplace_back(random_cycle(n, s), random_cycle(n, s));
    for (const auto& [a, b] : pairs) {
      const IVec ia = a.real().array().round().cast<long long>().matrix();
      const IVec ib = b.real().array().round().cast<long long>().matrix();
      try {
        const LocalityResult l = locality_check(ia, ib, lambda, mu, m, w);
        r.records.push_back(json{{"config", c},
                                 {"lambda", cjson(lambda)},
                                 {"mu", cjson(mu)},
                                 {"winding", w},
                                 {"alpha", vjson(a)},
                                 {"beta", vjson(b)},
                                 {"quotient", cjson(l.quotient)},
                                 {"seifert", l.seifert},
                                 {"intersection", l.intersection},
                                 {"k", l.k},
                                 {"k_real", l.k_real},
                                 {"residual", l.k_residual},
                                 {"b_residual", l.b_residual},
                                 {"ok", r.observe(std::max(l.k_residual, l.b_residual))}});
      } catch (const Error& e) {
        json rec = error_record("config " + std::to_string(c), e);
        rec["alpha"] = vjson(a);
        rec["beta"] = vjson(b);
        r.records.push_back(rec);
        r.ok = false;
      }
    }
  }
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- integrality

SuiteReport run_integrality(const Target& target, const SuiteOptions& options,
                            const std::optional<std::vector<cplx>>& loop) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"integrality", target.label, options.tolerance.value_or(1e-5)};
  const int n = m.rank();
  Sampler s(options.seed);
  LoopSetup setup;
  std::vector<std::vector<cplx>> loops;
  std::vector<json> words;
  if (loop) {
    if (loop->size() < 3) fail(ErrorCode::kPathInvalid, "loop needs at least three points");
    setup.t = CVec::Zero(n);
    setup.lambda = loop->front();
    setup.us = m.frobenius.model.critical_values(setup.t);
    double clearance = 1e300;
    for (size_t j = 0; j + 1 < loop->size(); ++j)
      for (cplx u : setup.us) clearance = std::min(clearance, segment_distance(u, (*loop)[j], (*loop)[j + 1]));
    setup.xi = -0.1 * clearance * (setup.lambda / std::abs(setup.lambda));
    std::vector<cplx> closed = *loop;
    if (std::abs(closed.back() - closed.front()) > 1e-12) closed.push_back(closed.front());
    loops.push_back(closed);
    words.push_back("path.v1");
  } else {
    setup = loop_setup(m, s);
    std::vector<std::vector<cplx>> gens;
    for (cplx u : setup.us) gens.push_back(critical_value_loop(setup.lambda, u, setup.rho));
    const int count = options.count > 0 ? options.count : 20;
    for (int j = 0; j < count; ++j) {
      std::vector<std::vector<cplx>> parts;
      json word = json::array();
      const int len = j < static_cast<int>(gens.size()) ? 1 : s.integer(1, 3);
      for (int q = 0; q < len; ++q) {
        const int g = j < static_cast<int>(gens.size()) ? j : s.integer(0, static_cast<int>(gens.size()) - 1);
        const bool inverse = j >= static_cast<int>(gens.size()) && s.integer(0, 1) == 1;
        auto piece = gens[g];
        if (inverse) std::reverse(piece.begin(), piece.end());
        parts.push_back(piece);
        word.push_back((inverse ? "-" : "+") + std::to_string(g));
      }
      loops.push_back(concatenate(parts));
      words.push_back(word);
    }
  }
  const PhaseBase base = prepare_phase_base(m, setup.t, setup.lambda, setup.xi);
  const auto candidates = small_cycles(n, 1);
  std::vector<json> recs(loops.size());
  std::vector<double> residuals(loops.size(), 0.0);
  std::vector<double> w_residuals(loops.size(), 0.0);
  std::vector<std::string> errors(loops.size());
  parallel_for(static_cast<int>(loops.size()), [&](int j) {
    try {
      const LoopRun run = run_loop(m, base, loops[j]);
      double worst = 0.0;
      json values = json::array();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const IntegerCheck c = loop_integrality_value(base, run, CVec::Unit(n, a), CVec::Unit(n, b));
          worst = std::max(worst, c.residual);
          values.push_back(json{{"alpha", a},
                                {"beta", b},
                                {"value_re", c.value.real()},
                                {"value_im", c.value.imag()},
                                {"integer", c.nearest},
                                {"residual", c.residual}});
        }
      json invariant = json::array();
      std::vector<CVec> inv;
      for (const CVec& v : candidates)
        if ((to_complex(run.w_integer) * v - v).norm() == 0.0 && inv.size() < 3) inv.push_back(v);
      for (const CVec& a : inv)
        for (const CVec& b : inv) {
          const cplx val = (b.transpose() * run.k * a)(0, 0) / kTwoPiI;
          const double res = std::abs(val - std::round(val.real()));
          worst = std::max(worst, res);
          invariant.push_back(json{{"alpha", vjson(a)},
                                   {"beta", vjson(b)},
                                   {"value_re", val.real()},
                                   {"value_im", val.imag()},
                                   {"integer", std::llround(val.real())},
                                   {"residual", res}});
        }
      residuals[j] = worst;
      w_residuals[j] = run.w_residual;
      recs[j] = json{{"loop", j},
                     {"word", words[j]},
                     {"vertices", loops[j].size()},
                     {"monodromy", mjson(run.w_integer)},
                     {"monodromy_residual", run.w_residual},
                     {"values", values},
                     {"invariant", invariant},
                     {"residual", worst}};
    } catch (const Error& e) {
      errors[j] = e.what();
    }
  });
  for (size_t j = 0; j < loops.size(); ++j) {
    if (!errors[j].empty()) {
      r.records.push_back(json{{"loop", j}, {"error", errors[j]}, {"ok", false}});
      r.ok = false;
      continue;
    }
    recs[j]["ok"] = r.observe(residuals[j]) && r.observe(w_residuals[j], 1e-6);
    r.records.push_back(recs[j]);
  }
  r.summary = json{{"t", json::array()}, {"lambda", cjson(setup.lambda)}, {"xi", cjson(setup.xi)}, {"loops", loops.size()}};
  for (Eigen::Index i = 0; i < setup.t.size(); ++i) r.summary["t"].push_back(cjson(setup.t(i)));
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- vv

SuiteReport run_vv(const Target& target, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"vv", target.label, options.tolerance.value_or(1e-6)};
  Sampler s(options.seed);
  const LoopSetup setup = loop_setup(m, s);
  const PhaseBase base = prepare_phase_base(m, setup.t, setup.lambda, setup.xi);
  for (int i = 0; i < static_cast<int>(setup.us.size()); ++i) {
    try {
      const VanishingCheck v = vanishing_cycle_check(m, base, i);
      const double res = std::abs(v.ratio - 1.0);
      const bool fast = v.runtime_s < 30.0;
      if (!fast) r.ok = false;
      r.records.push_back(json{{"critical_value", cjson(setup.us[i])},
                               {"phi", vjson(v.phi)},
                               {"integral", cjson(v.integral)},
                               {"ratio", cjson(v.ratio)},
                               {"residual", res},
                               {"runtime_s", v.runtime_s},
                               {"ok", r.observe(res) && fast}});
    } catch (const Error& e) {
      r.records.push_back(error_record("critical value " + std::to_string(i), e));
      r.ok = false;
    }
  }
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- periods

SuiteReport run_periods(const Target& target, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  const auto& f = m.frobenius;
  SuiteReport r{"periods", target.label, options.tolerance.value_or(1e-7)};
  const int n = m.rank();
  const int count = options.count > 0 ? options.count : 50;
  Sampler s(options.seed);

  // Random discriminant-avoiding paths, alternating lambda-paths and t-paths.
  struct Job {
    ParamPath path;
    cplx log0;
    std::string kind;
  };
  std::vector<Job> jobs;
  auto clear_lambda = [&](const CVec& t, cplx a, cplx b) {
    for (cplx u : f.model.critical_values(t))
      if (segment_distance(u, a, b) < 0.08) return false;
    return true;
  };
  auto clear_t = [&](const CVec& t0, const CVec& t1, cplx lambda) {
    for (int q = 0; q <= 200; ++q)
      if (discriminant_distance(f, t0 + (q / 200.0) * (t1 - t0), lambda) < 0.08) return false;
    return true;
  };
  while (static_cast<int>(jobs.size()) < count) {
    const bool lambda_kind = jobs.size() % 2 == 0;
    const cplx lambda0 = std::polar(4.0, s.uniform(-kPi, kPi));
    ParamPath p;
    p.clearance = 1e-3;
    CVec t(n);
    for (int j = 0; j < n; ++j) t(j) = s.polar(0.0, 0.6);
    bool ok = true;
    if (lambda_kind) {
      p.points = {{CVec::Zero(n), lambda0}, {t, lambda0}};
      cplx prev = lambda0;
      for (int q = 0; q < 3 && ok; ++q) {
        const cplx next = s.polar(0.3, 3.0);
        ok = clear_lambda(t, prev, next);
        p.points.push_back({t, next});
        prev = next;
      }
    } else {
      const cplx lambda1 = s.polar(1.0, 2.0);
      ok = segment_distance(0.0, lambda0, lambda1) > 0.2;
      p.points = {{CVec::Zero(n), lambda0}, {CVec::Zero(n), lambda1}};
      CVec prev = CVec::Zero(n);
      for (int q = 0; q < 3 && ok; ++q) {
        CVec next(n);
        for (int j = 0; j < n; ++j) next(j) = s.polar(0.0, 0.6);
        ok = clear_t(prev, next, lambda1);
        p.points.push_back({next, lambda1});
        prev = next;
      }
    }
    if (ok) jobs.push_back({p, std::log(lambda0), lambda_kind ? "lambda" : "t"});
  }
  std::vector<json> recs(jobs.size());
  std::vector<double> res(jobs.size(), 0.0);
  std::vector<std::string> errs(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), [&](int j) {
    try {
      const Job& job = jobs[j];
      RootTracker tracker = RootTracker::reference(f.model, job.path.points.front().lambda, job.log0);
      tracker.follow(job.path);
      const CVec& t_end = job.path.points.back().t;
      const cplx l_end = job.path.points.back().lambda;
      double worst = 0.0;
      for (int k = -1; k <= 1; ++k) {
        const CMat y = periods_along(m, k, job.path, job.log0);
        for (int a = 0; a < n; ++a) {
          const CVec o = root_oracle(f, tracker.roots(), CVec::Unit(n, a), k, t_end, l_end);
          worst = std::max(worst, (y.col(a) - o).norm() / std::max(1.0, o.norm()));
        }
      }
      res[j] = worst;
      recs[j] = json{{"path", j}, {"kind", job.kind}, {"vertices", job.path.points.size()}, {"residual", worst}};
    } catch (const Error& e) {
      errs[j] = e.what();
    }
  });
  for (size_t j = 0; j < jobs.size(); ++j) {
    if (!errs[j].empty()) {
      r.records.push_back(json{{"path", j}, {"error", errs[j]}, {"ok", false}});
      r.ok = false;
      continue;
    }
    recs[j]["ok"] = r.observe(res[j]);
    r.records.push_back(recs[j]);
  }

  // Translation symmetry I(t - d 1, lambda) = I(t, lambda + d).
  for (int q = 0; q < 5; ++q) {
    CVec t(n);
    for (int j = 0; j < n; ++j) t(j) = s.polar(0.0, 0.4);
    const cplx delta = s.polar(0.1, 0.5);
    const cplx lambda = s.polar(2.0, 3.0);
    const cplx lambda0 = 4.0 * lambda / std::abs(lambda);
    CVec shifted = t;
    shifted(0) -= delta;
    try {
      const CMat a = periods_along(m, 0, standard_route(lambda0, shifted, lambda), std::log(lambda0));
      const CMat b = periods_along(m, 0, standard_route(lambda0, t, lambda + delta), std::log(lambda0));
      const double d = (a - b).cwiseAbs().maxCoeff();
      r.records.push_back(json{{"translation", q}, {"delta", cjson(delta)}, {"residual", d}, {"ok", r.observe(d, 1e-8)}});
    } catch (const Error& e) {
      r.records.push_back(error_record("translation " + std::to_string(q), e));
      r.ok = false;
    }
  }

  // Loop continuation: single critical values give Picard-Lefschetz reflections, the big circle gives sigma.
  const LoopSetup setup = loop_setup(m, s);
  const cplx log0 = std::log(setup.lambda);
  const CMat y = periods_along(m, 0, standard_route(setup.lambda, setup.t, setup.lambda), log0);
  RootTracker base_roots = RootTracker::reference(f.model, setup.lambda, log0);
  base_roots.move_to(setup.t, setup.lambda);
  auto continue_loop = [&](const std::vector<cplx>& loop) {
    CMat out(n, n);
    for (int a = 0; a < n; ++a) out.col(a) = pf_continue_lambda(y.col(a), 0, setup.t, loop, f);
    return CMat(y.partialPivLu().solve(out));
  };
  for (int i = 0; i < static_cast<int>(setup.us.size()); ++i) {
    const auto loop = critical_value_loop(setup.lambda, setup.us[i], setup.rho);
    const CMat w = continue_loop(loop);
    const IMat wi = w.real().array().round().cast<long long>().matrix();
    const double round_res = (w - to_complex(wi)).cwiseAbs().maxCoeff();
    RootTracker tr = base_roots;
    tr.move_to(setup.t, loop[1]);
    const auto pair = tr.closest_pair();
    const CVec phi = pair_to_cycle(pair.first, pair.second, n);
    const IVec iphi = phi.real().array().round().cast<long long>().matrix();
    const IMat refl = reflection(target.lattice, iphi);
    const double mismatch = static_cast<double>((wi - refl).cwiseAbs().sum());
    const bool pass = r.observe(round_res, 1e-6) && r.observe(mismatch, 0.0);
    r.records.push_back(json{{"loop", "critical " + std::to_string(i)},
                             {"vanishing_cycle", vjson(phi)},
                             {"monodromy", mjson(wi)},
                             {"reflection", mjson(refl)},
                             {"rounding_residual", round_res},
                             {"residual", mismatch},
                             {"ok", pass}});
  }
  {
    const CMat w = continue_loop(big_circle_loop(setup.lambda));
    const IMat wi = w.real().array().round().cast<long long>().matrix();
    const double round_res = (w - to_complex(wi)).cwiseAbs().maxCoeff();
    const IMat sigma = classical_monodromy_integer(target.lattice);
    const double mismatch = static_cast<double>((wi - sigma).cwiseAbs().sum());
    const bool pass = r.observe(round_res, 1e-6) && r.observe(mismatch, 0.0);
    r.records.push_back(json{{"loop", "all critical values"},
                             {"monodromy", mjson(wi)},
                             {"classical_monodromy", mjson(sigma)},
                             {"rounding_residual", round_res},
                             {"residual", mismatch},
                             {"ok", pass}});
  }
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- residue

SuiteReport run_residue(const Target& target, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"residue", target.label, options.tolerance.value_or(1e-10)};
  const int n = m.rank();
  const int dim_n = 2 * m.lattice.ell;
  const Rational k4_exponent(dim_n + 1);
  double k1 = 0.0, k4 = 0.0;
  int terms = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const ScalarSeries a = higher_residue_pairing(i, j, m);
      const ScalarSeries b = higher_residue_pairing(j, i, m);
      const double sign = (dim_n + 1) % 2 == 0 ? 1.0 : -1.0;
      // K_ij(z) = (-1)^{n+1} K_ji(-z), with (-z)^e = e^{pi i e} z^e.
      auto check = [&](const Rational& e) {
        const cplx lhs = a.coefficient(e);
        const cplx rhs = sign * std::exp(kI * kPi * e.value()) * b.coefficient(e);
        k1 = std::max(k1, std::abs(lhs - rhs));
      };
      for (const auto& [e, c] : a.terms) check(e), ++terms;
      for (const auto& [e, c] : b.terms) check(e);
      k4 = std::max(k4, std::abs(a.coefficient(k4_exponent) - m.residue_gram(i, j)));
    }
  r.records.push_back(json{{"check", "K4"}, {"residual", k4}, {"ok", r.observe(k4)}});
  r.records.push_back(json{{"check", "K1"}, {"residual", k1}, {"terms", terms}, {"ok", r.observe(k1)}});
  const double seif = (residue_gram_from_seifert(m) - m.residue_gram).cwiseAbs().maxCoeff();
  r.records.push_back(json{{"check", "residue_gram_from_seifert"}, {"residual", seif}, {"ok", r.observe(seif)}});
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- fock

SuiteReport run_fock(const Target& target, const std::vector<int>& orders, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"fock", target.label, options.tolerance.value_or(1e-8)};
  const double ope_tol = 1e-9;
  const int n = m.rank();
  Sampler s(options.seed);
  for (int cfg = 0; cfg < 3; ++cfg) {
    const cplx mu = s.polar(0.6, 1.4);
    const cplx lambda = mu * std::polar(s.uniform(2.0, 5.0), s.uniform(-kPi, kPi));
    for (int order : orders) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const CVec ea = CVec::Unit(n, a), eb = CVec::Unit(n, b);
          const CompositionResult c = compose_and_extract_phase(ea, eb, lambda, mu, m, order);
          std::vector<cplx> terms;
          cplx prev = 0.0;
          for (int q = 0; q < order; ++q) {
            const cplx cur = omega_oracle(ea, eb, lambda, mu, m, q).value;
            terms.push_back(cur - prev);
            prev = cur;
          }
          const auto graded = graded_exp(terms, order);
          cplx expected = 0.0;
          double degree_res = 0.0;
          for (int d = 0; d <= order; ++d) {
            expected += graded[d];
            degree_res = std::max(degree_res, std::abs(graded[d] - c.graded[d]));
          }
          const double res = std::abs(c.scalar - expected) / std::max(1.0, std::abs(expected));
          r.records.push_back(json{{"config", cfg},
                                   {"order", order},
                                   {"alpha", a},
                                   {"beta", b},
                                   {"lambda", cjson(lambda)},
                                   {"mu", cjson(mu)},
                                   {"scalar", cjson(c.scalar)},
                                   {"oracle_graded_exp", cjson(expected)},
                                   {"exp_oracle_full", cjson(std::exp(prev))},
                                   {"degree_residual", degree_res},
                                   {"residual", res},
                                   {"ok", r.observe(std::max(res, degree_res))}});
        }
    }
  }
  // OPE M-stability on generator pairs at the smallest regular M and one above.
  const cplx lambda = s.polar(1.5, 2.5);
  const cplx log_lambda = std::log(lambda);
  FockElement v = FockElement::vacuum(n, 4);
  v.add(FockKey{-1, {0}}, 0.5);
  struct Case {
    std::string name;
    VoaGenerator a, b;
    int m0;
  };
  std::vector<Case> cases;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const long long ab = intersection(target.lattice, IVec::Unit(n, a), IVec::Unit(n, b));
      cases.push_back({"lattice e" + std::to_string(a) + " e" + std::to_string(b),
                       VoaGenerator::lattice(CVec::Unit(n, a)), VoaGenerator::lattice(CVec::Unit(n, b)),
                       static_cast<int>(std::max(0LL, -ab))});
    }
  cases.push_back({"heisenberg-heisenberg", VoaGenerator::heisenberg(CVec::Unit(n, 0)),
                   VoaGenerator::heisenberg(CVec::Unit(n, n - 1)), 2});
  cases.push_back({"heisenberg-lattice", VoaGenerator::heisenberg(CVec::Unit(n, 0)),
                   VoaGenerator::lattice(CVec::Unit(n, n - 1)), 1});
  cases.push_back({"lattice-heisenberg", VoaGenerator::lattice(CVec::Unit(n, 0)),
                   VoaGenerator::heisenberg(CVec::Unit(n, n - 1)), 1});
  for (const auto& c : cases)
    for (int extra = 0; extra <= 1; ++extra) {
      try {
        const OpeResult o = ope_product(c.a, c.b, 0, c.m0 + extra, lambda, log_lambda, m, v);
        const double res = std::max(o.stability_residual, o.regularity_residual);
        r.records.push_back(json{{"ope", c.name},
                                 {"M", c.m0 + extra},
                                 {"stability_residual", o.stability_residual},
                                 {"regularity_residual", o.regularity_residual},
                                 {"residual", res},
                                 {"ok", r.observe(res, ope_tol)}});
      } catch (const Error& e) {
        r.records.push_back(error_record("ope " + c.name, e));
        r.ok = false;
      }
    }
  r.summary = json{{"truncation", "total mode weight sum(m+1) <= order"}, {"ope_tolerance", ope_tol}};
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- derivative identity and pole order

SuiteReport run_derivative(const Target& target, const SuiteOptions& options) {
  const auto start = Clock::now();
  const auto& m = target.require_model();
  SuiteReport r{"derivative", target.label, options.tolerance.value_or(1e-6)};
  const int n = m.rank();
  const int count = options.count > 0 ? options.count : 20;
  Sampler s(options.seed);
  for (int q = 0; q < count; ++q) {
    const CVec a = random_cycle(n, s), b = random_cycle(n, s);
    const cplx mu = s.polar(0.5, 1.5);
    const cplx lambda = mu * std::polar(s.uniform(1.5, 4.0), s.uniform(-kPi, kPi));
    try {
      const DLambdaResult d = dlambda_identity_check(a, b, lambda, mu, m);
      r.records.push_back(json{{"sample", q},
                               {"alpha", vjson(a)},
                               {"beta", vjson(b)},
                               {"lambda", cjson(lambda)},
                               {"mu", cjson(mu)},
                               {"derivative", cjson(d.derivative)},
                               {"rhs", cjson(d.rhs)},
                               {"n_max", d.n_max},
                               {"residual", d.residual},
                               {"ok", r.observe(d.residual)}});
    } catch (const Error& e) {
      r.records.push_back(error_record("sample " + std::to_string(q), e));
      r.ok = false;
    }
  }
  const auto cycles = small_cycles(n, 2);
  for (long long want : {2LL, -1LL, 0LL}) {
    bool found = false;
    for (size_t i = 0; i < cycles.size() && !found; ++i)
      for (size_t j = 0; j < cycles.size() && !found; ++j) {
        if (pairing(target.lattice, cycles[i], cycles[j]) != want) continue;
        found = true;
        const cplx mu = s.polar(0.8, 1.2);
        const PoleResult p = pole_order_at_diagonal(cycles[i], cycles[j], mu, m);
        const double res = p.pole_order == -want ? 0.0 : 1.0;
        r.records.push_back(json{{"pole_pair", json::array({vjson(cycles[i]), vjson(cycles[j])})},
                                 {"intersection", want},
                                 {"pole_order", p.pole_order},
                                 {"leading_exponent", p.leading_exponent},
                                 {"residual", res},
                                 {"ok", r.observe(res, 0.0)}});
      }
    if (!found)
      r.records.push_back(json{{"intersection", want}, {"note", "no cycle pair with this intersection number"}});
  }
  r.runtime_s = seconds_since(start);
  return r;
}

// ---------------------------------------------------------------- polylog

SuiteReport run_polylog(const SuiteOptions& options) {
  const auto start = Clock::now();
  SuiteReport r{"polylog", "scalar", options.tolerance.value_or(1e-10)};
  const int per_case = options.count > 0 ? options.count : 20;
  Sampler s(options.seed);
  for (int upper = 0; upper <= 1; ++upper)
    for (int left = 0; left <= 1; ++left)
      for (int q = 0; q < per_case; ++q) {
        const double arg = s.uniform(0.15, kPi - 0.15) * (upper ? 1.0 : -1.0);
        const cplx x = std::polar(s.uniform(0.2, 0.9), arg);
        const double crossing = left ? s.uniform(0.2, 0.8) : s.uniform(1.3, 3.0);
        const ComplexPath path = jonquiere_path(x, crossing);
        const bool side = one_on_left(path);
        double worst = 0.0;
        for (int p = 1; p <= 6; ++p) worst = std::max(worst, jonquiere_invert(p, x, path));
        const bool pass = r.observe(worst);
        r.records.push_back(json{{"x", cjson(x)},
                                 {"upper_half_plane", static_cast<bool>(upper)},
                                 {"crossing", crossing},
                                 {"crossing_left_of_one", static_cast<bool>(left)},
                                 {"one_on_left", side},
                                 {"residual", worst},
                                 {"ok", pass}});
      }
  r.summary = json{{"orders", "1..6"}, {"per_case", per_case}};
  r.runtime_s = seconds_since(start);
  return r;
}

}  // namespace phasekit::cli
