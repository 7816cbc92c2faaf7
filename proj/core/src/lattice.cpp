#include "phasekit/lattice.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

using boost::multiprecision::cpp_int;

// Fraction-free Gaussian elimination; exact for small integer matrices.
long long integer_det(const IMat& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  std::vector<std::vector<cpp_int>> a(n, std::vector<cpp_int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  cpp_int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1].convert_to<long long>();
}

void require_shape(const MilnorLatticeData& data) {
  if (data.rank < 1 || data.seifert.rows() != data.rank || data.seifert.cols() != data.rank)
    fail(ErrorCode::kInvalidArgument, "Seifert matrix shape does not match rank");
}

void require_vector(const MilnorLatticeData& data, const IVec& v) {
  if (v.size() != data.rank) fail(ErrorCode::kInvalidArgument, "cycle length does not match rank");
}

}  // namespace

MilnorLatticeData a_mu_lattice(int mu) {
  if (mu < 1) fail(ErrorCode::kInvalidArgument, "A_mu requires mu >= 1");
  MilnorLatticeData d;
  d.rank = mu;
  d.seifert = IMat::Identity(mu, mu);
  for (int i = 0; i + 1 < mu; ++i) d.seifert(i + 1, i) = -1;
  d.ell = 0;
  for (int i = 1; i <= mu; ++i) d.spectrum.push_back(Rational(i, mu + 1) - Rational(1));
  d.label = "A" + std::to_string(mu);
  return d;
}

bool is_builtin_name(const std::string& name) { return name == "A1" || name == "A2" || name == "A3"; }

MilnorLatticeData builtin_lattice(const std::string& name) {
  if (!is_builtin_name(name)) fail(ErrorCode::kInvalidArgument, "unknown builtin dataset: " + name);
  return a_mu_lattice(name[1] - '0');
}

std::vector<std::string> validate_lattice(const MilnorLatticeData& data) {
  std::vector<std::string> problems;
  if (data.rank < 1) problems.push_back("rank must be positive");
  if (data.seifert.rows() != data.rank || data.seifert.cols() != data.rank) {
    problems.push_back("Seifert matrix shape does not match rank");
    return problems;
  }
  if (data.ell < 0) problems.push_back("ell must be nonnegative");
  if (static_cast<int>(data.spectrum.size()) != data.rank) problems.push_back("spectrum length does not match rank");
  if (integer_det(data.seifert) == 0) {
    problems.push_back("Seifert matrix is singular");
    return problems;
  }
  IMat g = intersection_form(data);
  for (int i = 0; i < data.rank; ++i)
    if (g(i, i) != 2) problems.push_back("intersection form diagonal entry " + std::to_string(i) + " is not 2");
  if (static_cast<int>(data.spectrum.size()) == data.rank) {
    CMat sigma = -to_complex(IMat(data.seifert.transpose())).partialPivLu().solve(to_complex(data.seifert));
    if (spectrum_residual(data, sigma) > 1e-8) problems.push_back("monodromy eigenvalues disagree with spectrum");
  }
  return problems;
}

IMat intersection_form(const MilnorLatticeData& data) {
  require_shape(data);
  return data.seifert + data.seifert.transpose();
}

long long intersection(const MilnorLatticeData& data, const IVec& a, const IVec& b) {
  require_vector(data, a);
  require_vector(data, b);
  return a.dot(intersection_form(data) * b);
}

long long seifert_pairing(const MilnorLatticeData& data, const IVec& a, const IVec& b) {
  require_shape(data);
  require_vector(data, a);
  require_vector(data, b);
  return a.dot(data.seifert * b);
}

double spectrum_residual(const MilnorLatticeData& data, const CMat& sigma) {
  Eigen::ComplexEigenSolver<CMat> solver(sigma, false);
  std::vector<cplx> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + sigma.rows());
  if (eig.size() != data.spectrum.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(eig.size(), false);
  double worst = 0.0;
  for (const auto& s : data.spectrum) {
    cplx target = std::exp(-kTwoPiI * s.value());
    size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < eig.size(); ++k)
      if (!used[k] && std::abs(eig[k] - target) < dist) {
        dist = std::abs(eig[k] - target);
        best = k;
      }
    used[best] = true;
    worst = std::max(worst, dist);
  }
  return worst;
}

OperatorH classical_monodromy(const MilnorLatticeData& data, bool check_spectrum) {
  require_shape(data);
  if (integer_det(data.seifert) == 0) fail(ErrorCode::kSingularSeifert, "det(L) = 0");
  CMat l = to_complex(data.seifert);
  CMat sigma = -CMat(l.transpose()).partialPivLu().solve(l);
  const bool have_spectrum = static_cast<int>(data.spectrum.size()) == data.rank;
  if (check_spectrum && have_spectrum && spectrum_residual(data, sigma) > 1e-8)
    fail(ErrorCode::kSpectrumMismatch, "eigenvalues of sigma disagree with exp(-2 pi i s)");
  if (!have_spectrum) return OperatorH::split_numeric(sigma);
  std::vector<cplx> distinct;
  for (const auto& s : data.spectrum) {
    cplx v = std::exp(-kTwoPiI * s.value());
    bool seen = false;
    for (cplx w : distinct) seen = seen || std::abs(v - w) < 1e-9;
    if (!seen) distinct.push_back(v);
  }
  return OperatorH::with_eigenvalues(sigma, distinct);
}

IMat classical_monodromy_integer(const MilnorLatticeData& data) {
  require_shape(data);
  long long det = integer_det(data.seifert);
  if (det == 0) fail(ErrorCode::kSingularSeifert, "det(L) = 0");
  if (det != 1 && det != -1) fail(ErrorCode::kInvalidArgument, "integer monodromy requires det(L) = +-1");
  const IMat lt = data.seifert.transpose();
  Eigen::MatrixXd inv = lt.cast<double>().inverse();
  IMat lt_inv = inv.array().round().cast<long long>().matrix();
  if (lt_inv * lt != IMat::Identity(data.rank, data.rank))
    fail(ErrorCode::kInvalidArgument, "integer inverse of L could not be recovered");
  return -lt_inv * data.seifert;
}

IMat reflection(const MilnorLatticeData& data, const IVec& alpha) {
  require_vector(data, alpha);
  IMat g = intersection_form(data);
  if (alpha.dot(g * alpha) != 2) fail(ErrorCode::kNotVanishing, "(alpha|alpha) != 2");
  return IMat::Identity(data.rank, data.rank) - alpha * (alpha.transpose() * g);
}

}  // namespace phasekit
