#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace phasekit {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using IMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

inline CVec to_complex(const IVec& v) { return v.cast<double>().cast<cplx>(); }
inline CMat to_complex(const IMat& m) { return m.cast<double>().cast<cplx>(); }

// Principal logarithm, Arg in (-pi, pi].
inline cplx principal_log(cplx z) { return std::log(z); }

}  // namespace phasekit
