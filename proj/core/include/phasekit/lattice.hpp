#pragma once

#include <string>
#include <vector>

#include "phasekit/opcalc.hpp"
#include "phasekit/rational.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

struct MilnorLatticeData {
  int rank = 0;
  IMat seifert;  // L[i][j] = SF(e_i, e_j)
  int ell = 0;
  std::vector<Rational> spectrum;
  std::string label;
};

// Built-in A_mu datasets ("A1", "A2", "A3"); a_mu_lattice accepts any mu >= 1.
MilnorLatticeData a_mu_lattice(int mu);
MilnorLatticeData builtin_lattice(const std::string& name);
bool is_builtin_name(const std::string& name);

// Structural problems of a dataset; empty when valid.
std::vector<std::string> validate_lattice(const MilnorLatticeData& data);

IMat intersection_form(const MilnorLatticeData& data);
long long intersection(const MilnorLatticeData& data, const IVec& a, const IVec& b);
long long seifert_pairing(const MilnorLatticeData& data, const IVec& a, const IVec& b);

// sigma = -L^{-T} L acting on cycle coordinates, so that SF(sigma b, a) = -SF(a, b); eigenvalues checked against the spectrum.
OperatorH classical_monodromy(const MilnorLatticeData& data, bool check_spectrum = true);
// Integer form of sigma; requires det(L) = +-1.
IMat classical_monodromy_integer(const MilnorLatticeData& data);

// s_a(x) = x - (a|x) a; requires (a|a) = 2.
IMat reflection(const MilnorLatticeData& data, const IVec& alpha);

// Multiset distance between eig(sigma) and {exp(-2 pi i s_k)}.
double spectrum_residual(const MilnorLatticeData& data, const CMat& sigma);

}  // namespace phasekit
