#include "momap/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace momap {

namespace {

CMat as_complex(const Mat& A) { return A.cast<cplx>(); }

void add(std::vector<Diagnostic>& out, const std::string& name, double value, double tol) {
  out.push_back({name, value, tol, std::isfinite(value) && value <= tol});
}

// Columns made kappa_C-orthonormal (B^H K B = I).
CMat kappa_orthonormalize(const Mat& K, const CMat& B) {
  if (B.cols() == 0) return B;
  CMat G = B.adjoint() * as_complex(K) * B;
  G = 0.5 * (G + G.adjoint()).eval();
  Eigen::LLT<CMat> llt(G);
  if (llt.info() != Eigen::Success) throw NumericalRefusal("kappa_C Gram matrix is not positive definite");
  CMat Linv = llt.matrixL().solve(CMat::Identity(G.rows(), G.cols()));
  return B * Linv.adjoint();
}

CVec complex_bracket(const LieAlgebraSpec& alg, const CVec& a, const CVec& b) {
  Vec ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
  Vec re = bracket(alg, ar, br) - bracket(alg, ai, bi);
  Vec im = bracket(alg, ar, bi) + bracket(alg, ai, br);
  CVec out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

CMat projector(const Mat& K, const CMat& Q) { return Q * Q.adjoint() * as_complex(K); }

bool positive_definite(const Mat& K) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (K + K.transpose()));
  return es.eigenvalues().minCoeff() > 0;
}

}  // namespace

ComplexStabilizer complex_stabilizer(const OperatorBundle& b, const StabilizerOptions& opt) {
  if (!positive_definite(b.K)) {
    throw NumericalRefusal("complex stabilizer: pairing is not positive definite");
  }
  const Eigen::Index d = b.K.rows();
  ComplexStabilizer out;

  ComplexKernel kc = null_space(b.Cplus.complex_matrix(), opt.rank_tol);
  out.gap_ratio = kc.gap_ratio;
  out.basis = kappa_orthonormalize(b.K, kc.basis);
  out.dimension = static_cast<int>(kc.basis.cols());

  // Kernel of Upsilon as a real map R^{2d} -> T_m M; singular values of C+
  // are squares of those of Upsilon, hence the square-root cut.
  Kernel ku = null_space(b.upsilon, std::sqrt(opt.rank_tol));
  CMat cu(d, ku.basis.cols());
  cu.real() = ku.basis.topRows(d);
  cu.imag() = ku.basis.bottomRows(d);
  CMat cu_basis = orthonormal_basis(cu, 1e-8);
  out.upsilon_dimension = static_cast<int>(cu_basis.cols());
  out.upsilon_angle = max_principal_angle(CMat(kc.basis), cu_basis);

  add(out.diagnostics, "stabilizer spectral gap", out.gap_ratio >= opt.min_gap ? 0.0 : opt.min_gap / out.gap_ratio,
      1.0);
  add(out.diagnostics, "kernel dimensions agree", std::abs(out.dimension - out.upsilon_dimension), 0.0);
  add(out.diagnostics, "kernel principal angle", out.upsilon_angle, opt.angle_tol);
  if (out.gap_ratio < opt.min_gap) {
    std::ostringstream os;
    os << "complex stabilizer: singular values ill-separated (gap ratio " << out.gap_ratio << " < " << opt.min_gap
       << ")";
    throw NumericalRefusal(os.str());
  }
  return out;
}

ComplexStabilizer complex_stabilizer(const HamiltonianActionSpec& spec, const Vec& m, const StabilizerOptions& opt) {
  return complex_stabilizer(build_operators(spec, m), opt);
}

double stabilizer_residual(const HamiltonianActionSpec& spec, const Vec& m, const CVec& zeta) {
  ComplexVector z = ComplexVector::from_eigen(zeta);
  double n = zeta.norm();
  if (n == 0) return 0;
  return upsilon_apply(spec, m, z).norm() / n;
}

const EigenCluster* StabilizerDecomposition::cluster(double value) const {
  double tol = cluster_tolerance();
  for (const auto& c : clusters)
    if (std::abs(c.value - value) <= tol) return &c;
  return nullptr;
}

double StabilizerDecomposition::cluster_tolerance() const {
  double radius = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return 1e-6 * std::max(1.0, radius);
}

bool StabilizerDecomposition::all_pass() const {
  for (const auto& d : diagnostics)
    if (!d.pass) return false;
  return true;
}

StabilizerDecomposition eigendecompose_stabilizer(const HamiltonianActionSpec& spec, const Vec& m, const Vec& mu,
                                                  const DecompositionOptions& opt) {
  const double scale = std::max(1.0, mu.norm());
  StabilizerDecomposition out;
  out.m = m;
  out.mu = mu;
  out.mode = opt.mode;
  out.K = spec.algebra.gram;

  double fixes = spec.inf_action(mu, m).norm();
  double kinv = invariance_defect(spec.algebra, mu);
  double jinv = acs_invariance_defect(spec, m, mu);
  add(out.diagnostics, "mu fixes m", fixes, opt.precondition_tol * scale);
  add(out.diagnostics, "kappa ad_mu-invariance", kinv, opt.precondition_tol * scale);
  // The j-invariance defect goes through a finite-difference linearization.
  add(out.diagnostics, "j mu-invariance", jinv, 1e-6 * scale);
  if (fixes > opt.precondition_tol * scale) {
    throw NumericalRefusal(spec.name + ": mu does not fix the point (residual " + std::to_string(fixes) + ")");
  }
  if (opt.mode == DecompositionMode::strict && kinv > opt.precondition_tol * scale) {
    throw NumericalRefusal(spec.name + ": pairing is not ad_mu-invariant (defect " + std::to_string(kinv) +
                           "); use the generalized mode");
  }
  if (jinv > 1e-6 * scale) {
    throw NumericalRefusal(spec.name + ": complex structure is not mu-invariant (defect " + std::to_string(jinv) + ")");
  }

  OperatorBundle bundle = build_operators(spec, m);
  ComplexStabilizer stab = complex_stabilizer(bundle, opt.stabilizer);
  for (const auto& dg : stab.diagnostics) out.diagnostics.push_back(dg);
  out.basis = stab.basis;
  const CMat& Q = out.basis;
  const Eigen::Index r = Q.cols();
  const CMat Kc = as_complex(out.K);
  const CMat A = cplx(0, 1) * as_complex(ad_matrix(spec.algebra, mu));

  {
    CMat AQ = A * Q;
    CMat leak = AQ - projector(out.K, Q) * AQ;
    add(out.diagnostics, "stabilizer ad_mu-invariance", leak.norm() / scale, opt.precondition_tol);
  }

  CMat M = Q.adjoint() * Kc * A * Q;
  std::vector<std::pair<double, CVec>> pairs;  // eigenvalue, coefficient vector
  if (r > 0 && opt.mode == DecompositionMode::strict) {
    add(out.diagnostics, "restricted operator hermitian", (M - M.adjoint()).norm() / std::max(1.0, M.norm()),
        opt.precondition_tol);
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (M + M.adjoint()));
    for (Eigen::Index i = 0; i < r; ++i) pairs.emplace_back(es.eigenvalues()(i), es.eigenvectors().col(i));
  } else if (r > 0) {
    Eigen::ComplexSchur<CMat> schur(M);
    double max_imag = 0;
    for (Eigen::Index i = 0; i < r; ++i) {
      cplx ev = schur.matrixT()(i, i);
      max_imag = std::max(max_imag, std::abs(ev.imag()));
      pairs.emplace_back(ev.real(), CVec());
    }
    add(out.diagnostics, "eigenvalues real", max_imag / scale, 1e-6);
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.eigenvalues.resize(static_cast<Eigen::Index>(pairs.size()));
  for (size_t i = 0; i < pairs.size(); ++i) out.eigenvalues(static_cast<Eigen::Index>(i)) = pairs[i].first;

  const double tol = out.cluster_tolerance();
  size_t start = 0;
  while (start < pairs.size()) {
    size_t end = start + 1;
    while (end < pairs.size() && pairs[end].first - pairs[end - 1].first <= tol) ++end;
    EigenCluster c;
    c.multiplicity = static_cast<int>(end - start);
    double sum = 0;
    for (size_t i = start; i < end; ++i) sum += pairs[i].first;
    c.value = sum / c.multiplicity;
    if (opt.mode == DecompositionMode::strict) {
      CMat W(r, c.multiplicity);
      for (size_t i = start; i < end; ++i) W.col(static_cast<Eigen::Index>(i - start)) = pairs[i].second;
      c.basis = Q * W;
    } else {
      CMat shifted = M - c.value * CMat::Identity(r, r);
      CMat power = CMat::Identity(r, r);
      for (int k = 0; k < c.multiplicity; ++k) power = power * shifted;
      ComplexKernel ker = null_space(power, 1e-6);
      if (ker.basis.cols() != c.multiplicity) {
        std::ostringstream os;
        os << spec.name << ": generalized eigenspace for " << c.value << " has dimension " << ker.basis.cols()
           << ", expected " << c.multiplicity;
        throw NumericalRefusal(os.str());
      }
      c.basis = kappa_orthonormalize(out.K, Q * ker.basis);
    }
    out.clusters.push_back(std::move(c));
    start = end;
  }

  int total = 0;
  for (const auto& c : out.clusters) total += c.multiplicity;
  add(out.diagnostics, "cluster dimensions sum to stabilizer", std::abs(total - stab.dimension), 0.0);
  add(out.diagnostics, "clusters kappa_C-orthogonal", cluster_orthogonality_defect(out), opt.orthogonality_tol);

  Vec J = spec.momentum(m);
  if ((J - mu).norm() <= 1e-12 * scale && J.norm() > 0) {
    add(out.diagnostics, "J(m) in zero cluster", membership_residual(out, 0.0, as_complex(J)), 1e-8);
  }
  return out;
}

double membership_residual(const StabilizerDecomposition& d, double lambda, const CVec& v) {
  double n = v.norm();
  if (n == 0) return 0;
  const EigenCluster* c = d.cluster(lambda);
  if (!c) return 1.0;
  CVec r = v - projector(d.K, c->basis) * v;
  return r.norm() / n;
}

double cluster_orthogonality_defect(const StabilizerDecomposition& d) {
  double worst = 0;
  const CMat Kc = as_complex(d.K);
  for (size_t a = 0; a < d.clusters.size(); ++a)
    for (size_t b = a + 1; b < d.clusters.size(); ++b) {
      CMat G = d.clusters[b].basis.adjoint() * Kc * d.clusters[a].basis;
      if (G.size()) worst = std::max(worst, G.cwiseAbs().maxCoeff());
    }
  return worst;
}

double grading_defect(const HamiltonianActionSpec& spec, const StabilizerDecomposition& d, double lambda,
                      double nu) {
  const EigenCluster* a = d.cluster(lambda);
  const EigenCluster* b = d.cluster(nu);
  if (!a || !b) throw std::invalid_argument("grading_defect: no cluster at the requested eigenvalue");
  const EigenCluster* target = d.cluster(lambda + nu);
  const CMat Pstab = projector(d.K, d.basis);
  double worst = 0;
  for (Eigen::Index i = 0; i < a->basis.cols(); ++i)
    for (Eigen::Index k = 0; k < b->basis.cols(); ++k) {
      CVec w = Pstab * complex_bracket(spec.algebra, a->basis.col(i), b->basis.col(k));
      if (target) w -= projector(d.K, target->basis) * w;
      worst = std::max(worst, w.norm());
    }
  return worst;
}

RefinedDecomposition equivariant_refinement(const HamiltonianActionSpec& spec, const Vec& m,
                                            const DecompositionOptions& opt) {
  Vec J = spec.momentum(m);
  const double scale = std::max(1.0, J.norm());
  RefinedDecomposition out;
  out.certificate.equivariance_defect = sigma_kappa_map(spec, m).norm();
  if (out.certificate.equivariance_defect > opt.precondition_tol * scale) {
    throw NumericalRefusal(spec.name + ": momentum map is not equivariant (|Sigma| = " +
                           std::to_string(out.certificate.equivariance_defect) + ")");
  }
  out.decomposition = eigendecompose_stabilizer(spec, m, J, opt);
  const auto& dec = out.decomposition;
  out.certificate.max_eigenvalue = dec.eigenvalues.size() ? dec.eigenvalues.maxCoeff() : 0.0;
  out.certificate.nonpositive = out.certificate.max_eigenvalue <= dec.cluster_tolerance();

  Kernel real_stab = null_space(action_matrix(spec, m), 1e-8);
  out.certificate.real_stabilizer_dimension = static_cast<int>(real_stab.basis.cols());
  const EigenCluster* zero = dec.cluster(0.0);
  CMat zb = zero ? zero->basis : CMat(J.size(), 0);
  CMat rb = as_complex(real_stab.basis);
  if (zb.cols() == 0 && rb.cols() == 0) {
    out.certificate.zero_cluster_angle = 0;
  } else if (zb.cols() != rb.cols()) {
    out.certificate.zero_cluster_angle = M_PI / 2;
  } else {
    out.certificate.zero_cluster_angle = max_principal_angle(zb, rb);
  }
  add(out.decomposition.diagnostics, "eigenvalues nonpositive", std::max(0.0, out.certificate.max_eigenvalue),
      dec.cluster_tolerance());
  add(out.decomposition.diagnostics, "zero cluster is complexified stabilizer", out.certificate.zero_cluster_angle,
      1e-6);
  return out;
}

}  // namespace momap
