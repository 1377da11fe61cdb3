#pragma once

#include "momap/action.hpp"
#include "momap/quadrature.hpp"

namespace momap {

// Equivariant contraction Lambda(m0, m, t) with Lambda(., ., 0) = m0,
// Lambda(., ., 1) = m and Lambda(m0, m0, t) = m0.
struct ContractionSpec {
  std::string name;
  std::function<Vec(const Vec& m0, const Vec& m, double t)> lambda;
  QuadratureRule quadrature;
  double t_step = 1e-5;   // central-difference step in t
  double m_step = 1e-5;   // relative step in the manifold slots
  // Relative change allowed when the node count doubles.
  double convergence_tol = 1e-8;
  bool check_convergence = true;
};

// Lambda(x0, x, t) = x0 + t (x - x0).
ContractionSpec straight_line_contraction();

// First term of the momentum integrand integrated over t:
//   int_0^1 omega_{Lambda}(d_t Lambda, D_m Lambda[X]) dt, X tangent at m.
double contraction_primitive_moving(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                    const Vec& m0, const Vec& m, const Vec& X);
// Second term: int_0^1 omega_{Lambda}(d_t Lambda, D_{m0} Lambda[X0]) dt, X0 tangent at m0.
double contraction_primitive_base(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                  const Vec& m0, const Vec& m, const Vec& X0);

// kappa(J(m), xi) for the momentum map normalized by J(m0) = 0.
double momentum_via_quadrature(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec, const Vec& m0,
                               const Vec& m, const Vec& xi);
// J(m) as an algebra vector.
Vec momentum_vector_via_quadrature(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                   const Vec& m0, const Vec& m);
// Copy of `aspec` whose momentum map is evaluated by quadrature (and whose
// analytic differential is dropped).
HamiltonianActionSpec with_quadrature_momentum(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                               const Vec& m0);

// nu_{g1,g2}: double integral of chi^* omega (contracted with d_t then d_s)
// where chi(s, t) = Lambda(g2^{-1} g1^{-1} m0, Lambda(g2^{-1} m0, m0, s), t).
double triangle_area(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec, const GroupElement& g1,
                     const GroupElement& g2, const Vec& m0);

// Group 2-cocycle c(g1, g2) = nu_{g1,g2} - nu_{e,g2}; integrates Sigma and
// agrees with the affine tau-form cocycle.
double triangle_cocycle(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec, const GroupElement& g1,
                        const GroupElement& g2, const Vec& m0);

// |Lambda(g m0, g m, t) - g Lambda(m0, m, t)|.
double contraction_equivariance_defect(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                       const GroupElement& g, const Vec& m0, const Vec& m, double t);

// max |Lambda(m0,m,0) - m0|, |Lambda(m0,m,1) - m|, |Lambda(m0,m0,t) - m0|.
double contraction_endpoint_defect(const ContractionSpec& cspec, const Vec& m0, const Vec& m);

}  // namespace momap
