#include "momap/contraction.hpp"

#include <cmath>
#include <memory>

namespace momap {

ContractionSpec straight_line_contraction() {
  ContractionSpec c;
  c.name = "straight-line";
  c.lambda = [](const Vec& m0, const Vec& m, double t) { return Vec(m0 + t * (m - m0)); };
  return c;
}

namespace {

template <class F>
double integrate_1d(const QuadratureRule& rule, const F& f) {
  NodesWeights nw = composite_unit_interval(rule);
  std::vector<double> terms(nw.x.size());
  for (size_t i = 0; i < nw.x.size(); ++i) terms[i] = nw.w[i] * f(nw.x[i]);
  return pairwise_sum(terms);
}

template <class F>
double integrate_2d(const QuadratureRule& rule, const F& f) {
  NodesWeights nw = composite_unit_interval(rule);
  std::vector<double> terms;
  terms.reserve(nw.x.size() * nw.x.size());
  for (size_t i = 0; i < nw.x.size(); ++i)
    for (size_t k = 0; k < nw.x.size(); ++k) terms.push_back(nw.w[i] * nw.w[k] * f(nw.x[i], nw.x[k]));
  return pairwise_sum(terms);
}

QuadratureRule doubled(QuadratureRule r) {
  r.nodes *= 2;
  return r;
}

void check_converged(const ContractionSpec& c, double coarse, double fine, const char* what) {
  if (!std::isfinite(fine)) throw NumericalRefusal(std::string(what) + ": non-finite quadrature value");
  if (std::abs(coarse - fine) > c.convergence_tol * std::max(1.0, std::abs(fine))) {
    throw NumericalRefusal(std::string(what) + ": quadrature did not converge (change " +
                           std::to_string(std::abs(coarse - fine)) + " on doubling the nodes)");
  }
}

template <class F>
double integrate_checked_1d(const ContractionSpec& c, const F& f, const char* what) {
  double v = integrate_1d(c.quadrature, f);
  if (!c.check_convergence) return v;
  double fine = integrate_1d(doubled(c.quadrature), f);
  check_converged(c, v, fine, what);
  return fine;
}

template <class F>
double integrate_checked_2d(const ContractionSpec& c, const F& f, const char* what) {
  double v = integrate_2d(c.quadrature, f);
  if (!c.check_convergence) return v;
  double fine = integrate_2d(doubled(c.quadrature), f);
  check_converged(c, v, fine, what);
  return fine;
}

Vec d_dt(const ContractionSpec& c, const Vec& m0, const Vec& m, double t) {
  const double h = c.t_step;
  return (c.lambda(m0, m, t + h) - c.lambda(m0, m, t - h)) / (2 * h);
}

double m_step(const ContractionSpec& c, const Vec& m) { return c.m_step * std::max(1.0, m.norm()); }

}  // namespace

double contraction_primitive_moving(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                    const Vec& m0, const Vec& m, const Vec& X) {
  const double h = m_step(cspec, m);
  const Vec mp = retract(aspec, m, h * X);
  const Vec mm = retract(aspec, m, -h * X);
  auto integrand = [&](double t) {
    Vec dm = (cspec.lambda(m0, mp, t) - cspec.lambda(m0, mm, t)) / (2 * h);
    return aspec.omega_at(cspec.lambda(m0, m, t), d_dt(cspec, m0, m, t), dm);
  };
  return integrate_checked_1d(cspec, integrand, "contraction integral");
}

double contraction_primitive_base(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                  const Vec& m0, const Vec& m, const Vec& X0) {
  const double h = m_step(cspec, m0);
  const Vec p = retract(aspec, m0, h * X0);
  const Vec q = retract(aspec, m0, -h * X0);
  auto integrand = [&](double t) {
    Vec dm0 = (cspec.lambda(p, m, t) - cspec.lambda(q, m, t)) / (2 * h);
    return aspec.omega_at(cspec.lambda(m0, m, t), d_dt(cspec, m0, m, t), dm0);
  };
  return integrate_checked_1d(cspec, integrand, "contraction integral");
}

double momentum_via_quadrature(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec, const Vec& m0,
                               const Vec& m, const Vec& xi) {
  return contraction_primitive_moving(cspec, aspec, m0, m, aspec.inf_action(xi, m)) +
         contraction_primitive_base(cspec, aspec, m0, m, aspec.inf_action(xi, m0));
}

Vec momentum_vector_via_quadrature(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                   const Vec& m0, const Vec& m) {
  const int d = aspec.algebra.dim;
  Vec pairing(d);
  for (int a = 0; a < d; ++a) {
    pairing(a) = momentum_via_quadrature(cspec, aspec, m0, m, aspec.algebra.basis_vector(a));
  }
  return aspec.algebra.gram.partialPivLu().solve(pairing);
}

HamiltonianActionSpec with_quadrature_momentum(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                               const Vec& m0) {
  HamiltonianActionSpec out = aspec;
  auto base = std::make_shared<const HamiltonianActionSpec>(aspec);
  out.name = aspec.name + " (quadrature momentum)";
  out.momentum = [cspec, base, m0](const Vec& m) { return momentum_vector_via_quadrature(cspec, *base, m0, m); };
  out.momentum_tangent = nullptr;
  out.base_point = m0;
  return out;
}

double triangle_area(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec, const GroupElement& g1,
                     const GroupElement& g2, const Vec& m0) {
  if (!aspec.group || !aspec.group_act) throw std::invalid_argument(aspec.name + ": no group action");
  const GroupModel& G = *aspec.group;
  const GroupElement g2inv = G.inverse(g2);
  const Vec a = aspec.group_act(G.multiply(g2inv, G.inverse(g1)), m0);
  const Vec b = aspec.group_act(g2inv, m0);
  auto chi = [&](double s, double t) { return cspec.lambda(a, cspec.lambda(b, m0, s), t); };
  const double h = cspec.t_step;
  auto integrand = [&](double s, double t) {
    Vec dt = (chi(s, t + h) - chi(s, t - h)) / (2 * h);
    Vec ds = (chi(s + h, t) - chi(s - h, t)) / (2 * h);
    return aspec.omega_at(chi(s, t), dt, ds);
  };
  return integrate_checked_2d(cspec, integrand, "triangle integral");
}

double triangle_cocycle(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec, const GroupElement& g1,
                        const GroupElement& g2, const Vec& m0) {
  const GroupElement& e = aspec.group->identity;
  return triangle_area(cspec, aspec, g1, g2, m0) - triangle_area(cspec, aspec, e, g2, m0);
}

double contraction_equivariance_defect(const ContractionSpec& cspec, const HamiltonianActionSpec& aspec,
                                       const GroupElement& g, const Vec& m0, const Vec& m, double t) {
  Vec lhs = cspec.lambda(aspec.group_act(g, m0), aspec.group_act(g, m), t);
  Vec rhs = aspec.group_act(g, cspec.lambda(m0, m, t));
  return (lhs - rhs).norm();
}

double contraction_endpoint_defect(const ContractionSpec& cspec, const Vec& m0, const Vec& m) {
  double d = (cspec.lambda(m0, m, 0.0) - m0).norm();
  d = std::max(d, (cspec.lambda(m0, m, 1.0) - m).norm());
  d = std::max(d, (cspec.lambda(m0, m0, 0.37) - m0).norm());
  return d;
}

}  // namespace momap
