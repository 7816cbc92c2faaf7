#pragma once

#include <vector>

#include "phasekit/poly.hpp"
#include "phasekit/rational.hpp"
#include "phasekit/types.hpp"

namespace phasekit {

// F(x, t) = x^{mu+1}/(mu+1) + sum_j c_j(t) x^{j-1} in flat coordinates t (mu <= 3).
struct OneVariableModel {
  int mu = 1;

  poly::Poly potential(const CVec& t) const;
  // P_i = dF/dt_i, i = 0..mu-1; P_i is monic of degree i.
  poly::Poly basis_poly(int i, const CVec& t) const;
  poly::Poly fprime(const CVec& t) const;
  // Roots of F(x, t) = lambda (unordered).
  std::vector<cplx> fiber(const CVec& t, cplx lambda) const;
  std::vector<cplx> critical_points(const CVec& t) const;
  std::vector<cplx> critical_values(const CVec& t) const;
};

OneVariableModel a_mu_model(int mu);

// Flat Frobenius structure of the Jacobi algebra C[x]/(F') with the residue pairing.
struct FrobeniusData {
  int dim = 1;
  OneVariableModel model;
  int unit_index = 0;          // flat identity direction t_1
  CMat eta;                    // (phi_i, phi_j), constant
  CMat eta_inv;
  std::vector<Rational> theta; // grading operator, diagonal in the phi basis

  CMat theta_mat() const;
  // C_i with (C_i)_{kj} = coefficient of phi_k in phi_i . phi_j.
  std::vector<CMat> structure(const CVec& t) const;
  CMat multiplication(const CVec& a, const CVec& t) const;
  CVec product(const CVec& a, const CVec& b, const CVec& t) const;
  // Coefficients of the Euler field; E. is multiplication by the class of F.
  CVec euler_coefficients(const CVec& t) const;
  CMat euler_product(const CVec& t) const;
  // Coordinates of a polynomial class (degree < dim) in the phi basis.
  CVec to_basis(const poly::Poly& p, const CVec& t) const;
};

FrobeniusData a_mu_frobenius(int mu);

// max |(a.b).c - a.(b.c)| + |a.b - b.a| over basis triples.
double associativity_residual(const FrobeniusData& f, const CVec& t);

}  // namespace phasekit
