#include "momap/normsq.hpp"

#include <cmath>
#include <sstream>

namespace momap {

double norm_squared(const HamiltonianActionSpec& spec, const Vec& m) {
  Vec J = spec.momentum(m);
  return kappa(spec.algebra, J, J);
}

Vec momentum_action(const HamiltonianActionSpec& spec, const Vec& m) { return spec.inf_action(spec.momentum(m), m); }

namespace {

Vec raw_gradient(const HamiltonianActionSpec& spec, const Vec& m) {
  return -2.0 * spec.acs_at(m, momentum_action(spec, m));
}

double metric_at(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X, const Vec& Y) {
  return spec.omega_at(m, X, spec.acs_at(m, Y));
}

Vec probe_point(const HamiltonianActionSpec& spec, std::mt19937_64& rng) {
  if (spec.sample_point) return spec.sample_point(rng);
  Vec b = spec.base_point.size() ? spec.base_point : Vec::Zero(spec.point_dim);
  return retract(spec, b, 0.5 * random_tangent(spec, b, rng));
}

}  // namespace

GradientCalibration calibrate_gradient(const HamiltonianActionSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vec m = probe_point(spec, rng);
    Vec X = random_tangent(spec, m, rng);
    double h = 1e-4 * std::max(1.0, m.norm());
    double dF = (norm_squared(spec, retract(spec, m, h * X)) - norm_squared(spec, retract(spec, m, -h * X))) / (2 * h);
    double realized = metric_at(spec, m, raw_gradient(spec, m), X);
    if (std::abs(dF) < 1e-6 * std::max(1.0, norm_squared(spec, m))) continue;  // nearly critical probe
    GradientCalibration cal;
    cal.sign = realized * dF >= 0 ? 1.0 : -1.0;
    cal.relative_error = std::abs(cal.sign * realized - dF) / std::abs(dF);
    cal.directional_derivative = dF;
    if (cal.relative_error > 1e-4) {
      std::ostringstream os;
      os << spec.name << ": gradient realization disagrees with finite differences (relative error "
         << cal.relative_error << ")";
      throw NumericalRefusal(os.str());
    }
    return cal;
  }
  // Every probe was critical (e.g. trivial action); the sign is irrelevant.
  return GradientCalibration{};
}

void calibrate(HamiltonianActionSpec& spec) { spec.gradient_sign = calibrate_gradient(spec).sign; }

NormSquaredValue norm_squared_and_gradient(const HamiltonianActionSpec& spec, const Vec& m) {
  double sign = spec.gradient_sign != 0 ? spec.gradient_sign : calibrate_gradient(spec).sign;
  NormSquaredValue r;
  r.value = norm_squared(spec, m);
  r.gradient = sign * raw_gradient(spec, m);
  if (!std::isfinite(r.value) || !r.gradient.allFinite()) {
    throw std::runtime_error(spec.name + ": non-finite norm-squared or gradient");
  }
  return r;
}

double criticality_residual(const HamiltonianActionSpec& spec, const Vec& m) {
  Vec V = momentum_action(spec, m);
  return std::sqrt(std::max(0.0, metric_at(spec, m, V, V)));
}

double critical_tolerance(const HamiltonianActionSpec& spec, const Vec& m) {
  return 1e-7 * (1.0 + spec.momentum(m).norm());
}

void require_critical(const HamiltonianActionSpec& spec, const Vec& m) {
  double r = criticality_residual(spec, m);
  double tol = critical_tolerance(spec, m);
  if (!(r <= tol)) {
    std::ostringstream os;
    os << spec.name << ": point is not critical (residual " << r << " > " << tol << ")";
    throw NumericalRefusal(os.str());
  }
}

Vec upsilon_apply(const HamiltonianActionSpec& spec, const Vec& m, const ComplexVector& zeta) {
  return spec.inf_action(zeta.re, m) + spec.acs_at(m, spec.inf_action(zeta.im, m));
}

bool OperatorBundle::all_pass() const {
  for (const auto& d : diagnostics)
    if (!d.pass) return false;
  return true;
}

const Diagnostic& OperatorBundle::diagnostic(const std::string& name) const {
  for (const auto& d : diagnostics)
    if (d.name == name) return d;
  throw std::out_of_range("no diagnostic named " + name);
}

namespace {

Mat block_diag(const Mat& K) {
  const Eigen::Index d = K.rows();
  Mat out = Mat::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = K;
  out.bottomRightCorner(d, d) = K;
  return out;
}

void add(std::vector<Diagnostic>& out, const std::string& name, double value, double tol) {
  out.push_back({name, value, tol, std::isfinite(value) && value <= tol});
}

Mat differential_columns(const HamiltonianActionSpec& spec, const Vec& m, const Mat& X, Differential mode,
                         double step = 0) {
  Mat out(spec.algebra.dim, X.cols());
  for (Eigen::Index a = 0; a < X.cols(); ++a) out.col(a) = momentum_differential(spec, m, X.col(a), mode, step);
  return out;
}

}  // namespace

OperatorBundle build_operators(const HamiltonianActionSpec& spec, const Vec& m, const OperatorTolerances& tol) {
  const int d = spec.algebra.dim;
  OperatorBundle b;
  b.m = m;
  b.J = spec.momentum(m);
  b.K = spec.algebra.gram;
  b.adJ = ad_matrix(spec.algebra, b.J);

  Mat A = action_matrix(spec, m);
  Mat jA(A.rows(), A.cols());
  for (int a = 0; a < d; ++a) jA.col(a) = spec.acs_at(m, A.col(a));
  b.Z = differential_columns(spec, m, A, Differential::analytic);
  b.L = differential_columns(spec, m, jA, Differential::analytic);
  b.Cplus = BlockOperator::from_complex(b.L, b.Z);
  b.Cminus = BlockOperator::from_complex(b.L, -b.Z);
  b.R = BlockOperator{Mat::Zero(d, d), -b.adJ, b.adJ + b.Z, b.L};

  b.tangent = tangent_basis(spec, m);
  const Eigen::Index k = b.tangent.cols();
  b.metric.resize(k, k);
  b.acs.resize(k, k);
  for (Eigen::Index p = 0; p < k; ++p) {
    Vec jp = spec.acs_at(m, b.tangent.col(p));
    b.acs.col(p) = b.tangent.transpose() * jp;
    for (Eigen::Index q = 0; q < k; ++q) b.metric(q, p) = spec.omega_at(m, b.tangent.col(q), jp);
  }
  Mat ups(A.rows(), 2 * d);
  ups << A, jA;
  b.upsilon = b.tangent.transpose() * ups;
  Mat KK = block_diag(b.K);
  b.upsilon_adjoint = KK.partialPivLu().solve(Mat(b.upsilon.transpose() * b.metric));

  // --- diagnostics ---
  const Mat KL = b.K * b.L;
  const Mat KZ = b.K * b.Z;
  add(b.diagnostics, "L kappa-symmetry", symmetry_defect(KL), tol.symmetry);
  add(b.diagnostics, "Z kappa-skewness", skew_defect(KZ), tol.symmetry);
  add(b.diagnostics, "metric symmetry", symmetry_defect(b.metric), tol.symmetry);

  const Mat Cp = b.Cplus.real_matrix();
  const Mat Cm = b.Cminus.real_matrix();
  const double cscale = std::max(1.0, Cp.norm());
  add(b.diagnostics, "C+ hermitian", symmetry_defect(KK * Cp), tol.hermitian);
  add(b.diagnostics, "C- hermitian", symmetry_defect(KK * Cm), tol.hermitian);
  {
    Mat form = KK * Cp;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (form + form.transpose()));
    add(b.diagnostics, "C+ negative semidefinite", es.eigenvalues().maxCoeff() / std::max(1.0, form.norm()),
        tol.negativity);
  }

  // Z = Sigma_kappa - (xi -> ad*_xi J(m)).
  {
    Mat S = sigma_kappa_map(spec, m);
    Mat adstarJ(d, d);
    for (int a = 0; a < d; ++a) adstarJ.col(a) = ad_star_matrix(spec.algebra, spec.algebra.basis_vector(a)) * b.J;
    add(b.diagnostics, "Z cross-check", (b.Z - (S - adstarJ)).norm() / std::max(1.0, b.Z.norm()),
        tol.z_cross_check);
  }

  add(b.diagnostics, "C+ = -Upsilon* Upsilon", (Cp + b.upsilon_adjoint * b.upsilon).norm() / cscale,
      tol.factorization);

  // Im C+ = T_m J o Upsilon, with the differential taken the other way
  // (finite differences when L, Z were analytic; a coarser step otherwise).
  {
    const Differential fd = Differential::finite_difference;
    double step = spec.momentum_tangent ? 0.0 : 2 * spec.fd_step;
    Mat TJ(d, 2 * d);
    TJ << differential_columns(spec, m, A, fd, step), differential_columns(spec, m, jA, fd, step);
    Mat im(d, 2 * d);
    im << b.Cplus.t21, b.Cplus.t22;
    add(b.diagnostics, "Im C+ = dJ o Upsilon", (im - TJ).norm() / cscale, tol.imaginary_part);
  }
  return b;
}

CommutationDefects commutation_defects(const HamiltonianActionSpec& spec, const OperatorBundle& b, const Vec& mu) {
  const int d = spec.algebra.dim;
  Mat ad = ad_matrix(spec.algebra, mu);
  Mat ads = ad_star_matrix(spec.algebra, mu);
  double scale = std::max(1.0, std::max(b.L.norm(), b.Z.norm()) * std::max(1.0, ad.norm()));

  // dJ(tau'_j(mu)(xi.m)) with tau'_j(mu) = [tau_m mu*, j_m].
  Mat tau = isotropy_matrix(spec, mu, b.m);
  Mat comm = tau * b.acs - b.acs * tau;
  Mat A = action_matrix(spec, b.m);
  Mat corr(d, d);
  for (int a = 0; a < d; ++a) {
    Vec X = b.tangent * (comm * (b.tangent.transpose() * A.col(a)));
    corr.col(a) = momentum_differential(spec, b.m, X);
  }
  CommutationDefects c;
  c.L_commutator = (b.L * ad - ad * b.L).norm() / scale;
  c.Z_commutator = (b.Z * ad - ad * b.Z).norm() / scale;
  c.L_signed = (b.L * ad + ads * b.L + corr).norm() / scale;
  c.Z_signed = (b.Z * ad + ads * b.Z).norm() / scale;
  return c;
}

Vec linearize_isotropy(const HamiltonianActionSpec& spec, const Vec& sigma, const Vec& m, const Vec& X) {
  if (spec.linearize_isotropy) return spec.linearize_isotropy(sigma, m, X);
  double h = spec.fd_step * std::max(1.0, m.norm());
  Vec plus = spec.inf_action(sigma, retract(spec, m, h * X));
  Vec minus = spec.inf_action(sigma, retract(spec, m, -h * X));
  return tangent_project(spec, m, (plus - minus) / (2 * h));
}

Mat isotropy_matrix(const HamiltonianActionSpec& spec, const Vec& sigma, const Vec& m) {
  Mat B = tangent_basis(spec, m);
  Mat out(B.cols(), B.cols());
  for (Eigen::Index a = 0; a < B.cols(); ++a) out.col(a) = B.transpose() * linearize_isotropy(spec, sigma, m, B.col(a));
  return out;
}

double acs_invariance_defect(const HamiltonianActionSpec& spec, const Vec& m, const Vec& sigma) {
  Mat B = tangent_basis(spec, m);
  Mat j(B.cols(), B.cols());
  for (Eigen::Index a = 0; a < B.cols(); ++a) j.col(a) = B.transpose() * spec.acs_at(m, B.col(a));
  Mat tau = isotropy_matrix(spec, sigma, m);
  return (tau * j - j * tau).norm();
}

double isotropy_momentum(const HamiltonianActionSpec& spec, const Vec& m, const Vec& sigma, const Vec& X) {
  double resid = spec.inf_action(sigma, m).norm();
  if (resid > 1e-8 * std::max(1.0, sigma.norm())) {
    throw NumericalRefusal(spec.name + ": sigma does not fix the point (residual " + std::to_string(resid) + ")");
  }
  return 0.5 * spec.omega_at(m, X, linearize_isotropy(spec, sigma, m, X));
}

double hessian_bilinear(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X, const Vec& Y) {
  require_critical(spec, m);
  Vec J = spec.momentum(m);
  Vec dX = momentum_differential(spec, m, X);
  Vec dY = momentum_differential(spec, m, Y);
  return 2 * kappa(spec.algebra, dX, dY) + 2 * spec.omega_at(m, X, linearize_isotropy(spec, J, m, Y));
}

double hessian_quadratic(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X) {
  return hessian_bilinear(spec, m, X, X);
}

double curve_hessian(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X, double step) {
  const double f0 = norm_squared(spec, m);
  auto second = [&](double h) {
    return (norm_squared(spec, retract(spec, m, h * X)) - 2 * f0 + norm_squared(spec, retract(spec, m, -h * X))) /
           (h * h);
  };
  const double h = step * std::max(1.0, m.norm());
  return (4 * second(h / 2) - second(h)) / 3;
}

void require_orbit_hessian_preconditions(const HamiltonianActionSpec& spec, const Vec& m) {
  require_critical(spec, m);
  Vec J = spec.momentum(m);
  double scale = std::max(1.0, J.norm());
  double inv = invariance_defect(spec.algebra, J);
  if (inv > 1e-8 * scale) {
    throw NumericalRefusal(spec.name + ": pairing is not ad_J(m)-invariant (defect " + std::to_string(inv) + ")");
  }
  double acs = acs_invariance_defect(spec, m, J);
  if (acs > 1e-6 * scale) {
    throw NumericalRefusal(spec.name + ": complex structure is not J(m)-invariant (defect " + std::to_string(acs) +
                           ")");
  }
}

Mat orbit_hessian_form(const OperatorBundle& b) {
  return block_diag(b.K) * (b.Cplus * b.R).real_matrix();
}

Mat orbit_hessian_form(const HamiltonianActionSpec& spec, const Vec& m) {
  require_orbit_hessian_preconditions(spec, m);
  return orbit_hessian_form(build_operators(spec, m));
}

double hessian_complex_orbit(const HamiltonianActionSpec& spec, const Vec& m, const ComplexVector& zeta,
                             const ComplexVector& gamma) {
  Mat H = orbit_hessian_form(spec, m);
  return zeta.stacked().dot(H * gamma.stacked());
}

}  // namespace momap
