#pragma once

#include "momap/normsq.hpp"

#include <vector>

namespace momap {

struct StabilizerOptions {
  double rank_tol = 1e-8;    // relative SVD cut for the kernel of C+
  double min_gap = 1e2;      // required ratio between kept and dropped singular values
  double angle_tol = 1e-6;   // agreement with the kernel of Upsilon
};

struct ComplexStabilizer {
  CMat basis;   // kappa_C-orthonormal columns spanning (g_C)_m
  int dimension = 0;
  int upsilon_dimension = 0;
  double gap_ratio = 0;
  double upsilon_angle = 0;  // largest principal angle between the two kernels
  std::vector<Diagnostic> diagnostics;
};

// Kernel of C+_m, cross-checked against the kernel of Upsilon_m. Requires a
// positive definite pairing (otherwise the kappa_C-orthonormal basis does not
// exist) and throws NumericalRefusal on an ill-separated spectrum.
ComplexStabilizer complex_stabilizer(const HamiltonianActionSpec& spec, const Vec& m,
                                     const StabilizerOptions& opt = {});
ComplexStabilizer complex_stabilizer(const OperatorBundle& bundle, const StabilizerOptions& opt = {});

// |zeta.m| with zeta.m = Upsilon_m(zeta), normalized by |zeta|.
double stabilizer_residual(const HamiltonianActionSpec& spec, const Vec& m, const CVec& zeta);

struct EigenCluster {
  double value = 0;
  int multiplicity = 0;
  CMat basis;  // kappa_C-orthonormal
};

enum class DecompositionMode {
  strict,       // refuses unless kappa is ad_mu-invariant (Hermitian eigenproblem)
  generalized,  // Schur form; clusters are generalized eigenspaces
};

struct StabilizerDecomposition {
  Vec m;
  Vec mu;
  Mat K;
  CMat basis;
  Vec eigenvalues;  // sorted ascending, with repetition
  std::vector<EigenCluster> clusters;
  std::vector<Diagnostic> diagnostics;
  DecompositionMode mode = DecompositionMode::strict;

  // Cluster whose value is within the clustering tolerance of `value`, or null.
  const EigenCluster* cluster(double value) const;
  double cluster_tolerance() const;
  bool all_pass() const;
};

struct DecompositionOptions {
  StabilizerOptions stabilizer;
  DecompositionMode mode = DecompositionMode::strict;
  double cluster_rel = 1e-6;       // clusters merge below cluster_rel * max(1, spectral radius)
  double precondition_tol = 1e-8;  // mu in g_m, kappa and j invariance (relative)
  double orthogonality_tol = 1e-8;
};

// Eigenspaces of i ad_mu on (g_C)_m.
StabilizerDecomposition eigendecompose_stabilizer(const HamiltonianActionSpec& spec, const Vec& m, const Vec& mu,
                                                  const DecompositionOptions& opt = {});

// Max over basis pairs of k_lambda x k_nu of the part of the stabilizer-projected
// bracket orthogonal to k_{lambda+nu} (the whole projected bracket when
// lambda+nu is not an eigenvalue).
double grading_defect(const HamiltonianActionSpec& spec, const StabilizerDecomposition& d, double lambda,
                      double nu);

// Residual of v against the cluster: |v - P v| / |v| with P the
// kappa_C-orthogonal projection onto the cluster.
double membership_residual(const StabilizerDecomposition& d, double lambda, const CVec& v);

// Largest kappa_C inner product between unit vectors of distinct clusters.
double cluster_orthogonality_defect(const StabilizerDecomposition& d);

struct RefinementCertificate {
  double max_eigenvalue = 0;
  double equivariance_defect = 0;   // |Sigma_kappa|
  double zero_cluster_angle = 0;    // angle between c_m and (g_m) tensor C
  int real_stabilizer_dimension = 0;
  bool nonpositive = false;
};

struct RefinedDecomposition {
  StabilizerDecomposition decomposition;
  RefinementCertificate certificate;
};

// mu = J(m) for an equivariant momentum map at a critical point: all
// eigenvalues <= 0 and the zero cluster is the complexified real stabilizer.
RefinedDecomposition equivariant_refinement(const HamiltonianActionSpec& spec, const Vec& m,
                                            const DecompositionOptions& opt = {});

}  // namespace momap
