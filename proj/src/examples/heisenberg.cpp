#include "momap/examples/heisenberg.hpp"

namespace momap::heisenberg {

GroupModel translations(int dim, double sample_scale) {
  GroupModel G;
  G.name = "translations";
  G.identity = GroupElement{Vec::Zero(dim)};
  G.multiply = [](const GroupElement& a, const GroupElement& b) { return GroupElement{a.data + b.data}; };
  G.inverse = [](const GroupElement& a) { return GroupElement{-a.data}; };
  G.exp = [](const Vec& xi) { return GroupElement{xi}; };
  G.adjoint = [dim](const GroupElement&) { return Mat(Mat::Identity(dim, dim)); };
  G.sample = [dim, sample_scale](std::mt19937_64& rng) {
    return GroupElement{sample_scale * random_gaussian(rng, dim)};
  };
  return G;
}

AffineActionSpec affine(const SymplecticSpace& space, const CompatibleStructure& j) {
  const int dim = space.dim;
  AffineActionSpec s;
  s.name = "heisenberg";
  s.space = space;
  s.algebra = make_lie_algebra(dim, std::vector<double>(static_cast<size_t>(dim) * dim * dim, 0.0),
                               compatible_metric(space, j));
  s.rho_prime = [dim](const Vec&) { return Mat(Mat::Zero(dim, dim)); };
  s.tau_prime = [](const Vec& xi) { return xi; };
  s.group = translations(dim);
  s.rho = [dim](const GroupElement&) { return Mat(Mat::Identity(dim, dim)); };
  s.tau = [](const GroupElement& g) { return g.data; };
  s.complex_structure = j;
  s.sample_point = [dim](std::mt19937_64& rng) { return random_gaussian(rng, dim); };
  return s;
}

AffineActionSpec affine(int n) {
  SymplecticSpace space = make_standard_symplectic(n);
  return affine(space, standard_complex_structure(space));
}

double heisenberg_cocycle(const SymplecticSpace& space, const Vec& v1, const Vec& v2) {
  return 0.5 * space.form(v1, v2);
}

}  // namespace momap::heisenberg
