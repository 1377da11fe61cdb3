#pragma once

#include "momap/affine.hpp"

#include <vector>

namespace momap::virasoro {

// Circle R/Z. Classes [f] are stored by their first N Fourier modes,
// f = sum_k a_k cos(2 pi k t) + b_k sin(2 pi k t), coefficients interleaved
// (a_1, b_1, ..., a_N, b_N). Vector fields X d/dt and densities alpha dt^2
// keep the constant mode: (c_0, c_1, d_1, ..., c_N, d_N).
struct Params {
  int modes = 8;   // N
  int grid = 128;  // M, power of two, M >= 8N
};

void validate(const Params& p);

int class_dim(const Params& p);  // 2N
int field_dim(const Params& p);  // 2N + 1

// Samples on the uniform grid t_n = n / M.
Vec class_samples(const Params& p, const Vec& f);
Vec field_samples(const Params& p, const Vec& X);
// L2 projection of grid samples onto the first N modes.
Vec project_class(const Params& p, const Vec& samples);
Vec project_field(const Params& p, const Vec& samples);

// Spectral derivative of periodic samples (any grid size).
Vec spectral_derivative(const Vec& samples, int order = 1);
// Mean over the grid (trapezoid rule on the circle).
double grid_mean(const Vec& samples);

// Vector fields with [X, Y] = X'Y - XY', Galerkin-truncated; kappa is the L2
// pairing of densities with fields.
LieAlgebraSpec algebra(const Params& p);

// omega([f], [g]) = int f dg, xi.[f] = -[X f'] - [X'], both truncated.
AffineActionSpec affine(const Params& p);
// Same action with the spectral momentum map and finite-difference dJ.
HamiltonianActionSpec hamiltonian(const Params& p);

// J([f]) = -f'' + (1/2) f'^2 as a density (field coordinates).
Vec momentum(const Params& p, const Vec& f);
// f''' - (1/2) f'^3 with the mean removed, as a class; equals J([f]).[f].
Vec euler_lagrange_residual(const Params& p, const Vec& f);
// -int X Y''' evaluated spectrally.
double gelfand_fuchs(const Params& p, const Vec& X, const Vec& Y);

// Random class with modes up to `band` and coefficients decaying like 1/k.
Vec random_class(const Params& p, std::mt19937_64& rng, int band, double scale = 1.0);

// Orientation-preserving diffeomorphism t -> t + u(t) with u periodic,
// represented by samples of u on a uniform grid of size M.
struct CircleDiffeo {
  Vec u;

  int grid() const { return static_cast<int>(u.size()); }
  Vec derivative() const;  // 1 + u'
  double min_derivative() const;
  // t + u(t) by trigonometric interpolation of u.
  double operator()(double t) const;
};

CircleDiffeo identity_diffeo(int M);
// u = sum over k <= modes of random coefficients scaled so that min(1 + u') > 0.
CircleDiffeo random_diffeo(int M, std::mt19937_64& rng, int modes, double amplitude);
CircleDiffeo diffeo_from_function(int M, const std::function<double(double)>& u);

// Trigonometric interpolant of periodic samples evaluated at the points t.
Vec interpolate(const Vec& samples, const Vec& t);

CircleDiffeo compose(const CircleDiffeo& a, const CircleDiffeo& b);  // a o b
// Newton on each grid node with a monotonicity guard; throws
// NumericalRefusal when it does not converge.
CircleDiffeo inverse(const CircleDiffeo& phi, double tol = 1e-13, int max_iterations = 50);

// Samples of f o phi^{-1} + log((phi^{-1})').
Vec act(const CircleDiffeo& phi, const Vec& f_samples);
// Samples of -f'' + (1/2) f'^2.
Vec momentum_density(const Vec& f_samples);
// phi'''/phi' - (3/2) (phi''/phi')^2.
Vec schwarzian(const CircleDiffeo& phi);
// (1/2) int log((a o b)') d(log b').
double bott_thurston(const CircleDiffeo& a, const CircleDiffeo& b);
// Root-mean-square over the grid.
double grid_l2(const Vec& samples);

}  // namespace momap::virasoro
