#include "momap/cli/runners.hpp"

#include "momap/contraction.hpp"
#include "momap/decompose.hpp"
#include "momap/examples/galilean.hpp"
#include "momap/examples/heisenberg.hpp"
#include "momap/examples/siegel.hpp"
#include "momap/examples/so3.hpp"
#include "momap/examples/unitary.hpp"
#include "momap/examples/virasoro.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

namespace momap::cli {

namespace {

using Checks = std::vector<Check>;
using Task = std::function<Checks(std::mt19937_64&)>;

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

// Independent tasks run on a small pool; task i draws from its own stream
// seeded by (seed, i), so the merged result does not depend on scheduling.
Checks run_tasks(const std::vector<Task>& tasks, std::uint64_t seed, int threads) {
  const size_t n = tasks.size();
  std::vector<Checks> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < n; i = next++) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      try {
        results[i] = tasks[i](rng);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int count = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  count = std::min<int>(count, static_cast<int>(std::max<size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  Checks merged;
  for (auto& r : results) merged.insert(merged.end(), r.begin(), r.end());
  return merged;
}

// ---------------------------------------------------------------- examples

struct Example {
  std::string id;
  HamiltonianActionSpec h;
  std::optional<AffineActionSpec> affine;
  bool equivariant = false;
  bool positive_pairing = true;
  galilean::Params gal;
  virasoro::Params vir;
  unitary::Params uni;
  int n = 0;
};

Example make_example(const ExperimentConfig& cfg) {
  Example e;
  e.id = cfg.example;
  const auto& p = cfg.parameters;
  if (e.id == "galilean") {
    e.gal = {p.mass, p.spin};
    galilean::validate(e.gal);
    e.h = galilean::hamiltonian(e.gal);
    e.affine = galilean::affine(e.gal);
  } else if (e.id == "heisenberg") {
    e.n = p.n;
    e.affine = heisenberg::affine(p.n);
    e.h = as_hamiltonian(*e.affine);
    e.h.group = heisenberg::translations(2 * p.n);
  } else if (e.id == "virasoro") {
    e.vir = {p.modes, p.grid};
    virasoro::validate(e.vir);
    e.affine = virasoro::affine(e.vir);
    e.h = virasoro::hamiltonian(e.vir);
  } else if (e.id == "siegel") {
    e.n = p.n;
    e.h = siegel::hamiltonian(p.n);
    e.positive_pairing = false;
  } else if (e.id == "unitary") {
    e.uni = {p.n, p.radius};
    e.h = unitary::hamiltonian(e.uni);
    e.equivariant = true;
  } else if (e.id == "so3") {
    e.h = so3::hamiltonian(p.spin);
    e.equivariant = true;
  } else {
    throw ConfigError("example '" + e.id + "' has no action");
  }
  calibrate(e.h);
  return e;
}

CVec random_complex(std::mt19937_64& rng, Eigen::Index n) {
  return random_gaussian(rng, n).cast<cplx>() + cplx(0, 1) * random_gaussian(rng, n).cast<cplx>();
}

// A critical point with the example's natural choice.
Vec critical_point(const Example& e, std::mt19937_64& rng, const std::string& family = "first") {
  if (e.id == "galilean") {
    Eigen::Vector3d x = random_unit(rng, 3);
    if (family == "second") {
      Eigen::Vector3d d = random_unit(rng, 3);
      d = (d - x * x.dot(d)).normalized();
      return galilean::second_family(e.gal, d, x).point;
    }
    return galilean::first_family(x);
  }
  if (e.id == "unitary") return unitary::critical_point(e.uni, random_complex(rng, e.uni.n));
  if (e.id == "so3") return e.h.sample_point(rng);
  return e.h.base_point.size() ? e.h.base_point : Vec(Vec::Zero(e.h.point_dim));
}

// Band-limited Virasoro field with modes up to `band`.
Vec random_field(const virasoro::Params& p, std::mt19937_64& rng, int band) {
  Vec X = Vec::Zero(virasoro::field_dim(p));
  std::normal_distribution<double> n01;
  X(0) = n01(rng);
  for (int k = 1; k <= band; ++k) {
    X(2 * k - 1) = n01(rng) / k;
    X(2 * k) = n01(rng) / k;
  }
  return X;
}

// ---------------------------------------------------------------- suites

void add_sigma_independence(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto& h = e.h;
  const int points = cfg.samples.points;
  if (e.id == "virasoro") {
    // Only band-limited pairs are free of truncation error.
    const virasoro::Params vp = e.vir;
    const int band = std::max(1, vp.modes / 3);
    tasks.push_back([&h, vp, band, points](std::mt19937_64& rng) {
      double worst = 0;
      for (int i = 0; i < points; ++i) {
        Vec xi = random_field(vp, rng, band), eta = random_field(vp, rng, band);
        double s0 = sigma_two_cocycle(h, xi, eta, h.sample_point(rng));
        double s1 = sigma_two_cocycle(h, xi, eta, h.sample_point(rng));
        worst = std::max(worst, std::abs(s1 - s0) / std::max(1.0, std::abs(s0)));
      }
      return Checks{make_check("two-cocycle point independence (band-limited)", "sigma-point-independence", worst,
                               1e-8)};
    });
  } else {
    tasks.push_back([&h, points](std::mt19937_64& rng) {
      Vec m0 = h.sample_point(rng);
      Mat S0 = sigma_two_matrix(h, m0);
      double worst = 0;
      for (int i = 1; i < std::min(points, 10); ++i) {
        Mat S = sigma_two_matrix(h, h.sample_point(rng));
        worst = std::max(worst, (S - S0).norm() / std::max(1.0, S0.norm()));
      }
      return Checks{make_check("two-cocycle point independence", "sigma-point-independence", worst, 1e-8)};
    });
  }
}

void add_common(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const auto& h = e.h;
  const int points = cfg.samples.points, dirs = cfg.samples.directions;
  const bool analytic = static_cast<bool>(h.momentum_tangent);
  tasks.push_back([&h, points, dirs, analytic](std::mt19937_64& rng) {
    double worst = 0;
    for (int i = 0; i < points; ++i) {
      Vec m = h.sample_point(rng);
      worst = std::max(worst, momentum_defect(h, m, dirs, h.fd_step, rng(),
                                              analytic ? Differential::analytic : Differential::finite_difference));
    }
    return Checks{make_check("momentum identity", "momentum-identity", worst, analytic ? 1e-9 : 1e-5,
                             analytic ? "analytic differential" : "finite-difference differential")};
  });
  tasks.push_back([&h, points](std::mt19937_64& rng) {
    double worst = 0;
    for (int i = 0; i < points; ++i) worst = std::max(worst, acs_defect(h, h.sample_point(rng), 10, rng()));
    return Checks{make_check("compatible complex structure", "complex-structure", worst, 1e-9)};
  });
  tasks.push_back([&h](std::mt19937_64& rng) {
    GradientCalibration c = calibrate_gradient(h, rng());
    return Checks{make_check("gradient realization", "gradient-calibration", c.relative_error, 1e-4,
                             "sign " + fmt(c.sign))};
  });
  // The Galerkin-truncated Virasoro bracket only satisfies Jacobi on
  // band-limited elements; that suite checks it separately.
  if (e.id != "virasoro") tasks.push_back([&h](std::mt19937_64&) {
    const auto& alg = h.algebra;
    JacobiReport jr = jacobi_defect(alg);
    std::string note;
    if (jr.i >= 0 && !alg.labels.empty())
      note = "worst triple (" + alg.labels[jr.i] + ", " + alg.labels[jr.j] + ", " + alg.labels[jr.k] + ")";
    return Checks{make_check("jacobi identity", "jacobi-identity", jr.defect, 1e-10, note)};
  });
  add_sigma_independence(e, cfg, tasks);
  if (h.group && h.group_act) {
    tasks.push_back([&h, points](std::mt19937_64& rng) {
      const GroupModel& G = *h.group;
      double law = 0, indep = 0;
      for (int i = 0; i < std::min(points, 20); ++i) {
        GroupElement g1 = G.sample(rng), g2 = G.sample(rng);
        Vec m = h.sample_point(rng), m2 = h.sample_point(rng);
        Vec s1 = sigma_one_cocycle(h, g1, m), s2 = sigma_one_cocycle(h, g2, m);
        Vec s12 = sigma_one_cocycle(h, G.multiply(g1, g2), m);
        Vec expect = s1 + coadjoint_inverse(h, g1) * s2;
        double scale = std::max(1.0, s12.norm());
        law = std::max(law, (s12 - expect).norm() / scale);
        indep = std::max(indep, (sigma_one_cocycle(h, g1, m2) - s1).norm() / std::max(1.0, s1.norm()));
      }
      return Checks{make_check("one-cocycle law", "sigma-cocycle-law", law, 1e-8),
                    make_check("one-cocycle point independence", "sigma-cocycle-law", indep, 1e-8)};
    });
  }
  if (e.equivariant) {
    tasks.push_back([&h, points](std::mt19937_64& rng) {
      double worst = 0;
      for (int i = 0; i < points; ++i)
        worst = std::max(worst, sigma_kappa_map(h, h.sample_point(rng)).norm());
      return Checks{make_check("equivariance (Sigma = 0)", "sigma-point-independence", worst, 1e-9)};
    });
  }
}

void add_bargmann(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const AffineActionSpec& A = *e.affine;
  const galilean::Params gp = e.gal;
  const int pairs = cfg.samples.pairs, triples = cfg.samples.triples;
  const QuadratureRule rule{cfg.quadrature.nodes, cfg.quadrature.panels};
  tasks.push_back([&A, gp, pairs, rule](std::mt19937_64& rng) {
    HamiltonianActionSpec ha = as_hamiltonian(A);
    ContractionSpec cs = straight_line_contraction();
    cs.quadrature = rule;
    const Vec x0 = Vec::Zero(6);
    double ab = 0, aq = 0, bq = 0;
    for (int i = 0; i < pairs; ++i) {
      GroupElement g1 = A.group->sample(rng), g2 = A.group->sample(rng);
      double ca = group_cocycle_c(A, g1, g2);
      double cb = galilean::bargmann(gp, g1, g2);
      double cq = triangle_cocycle(cs, ha, g1, g2, x0);
      ab = std::max(ab, std::abs(ca - cb));
      aq = std::max(aq, std::abs(ca - cq));
      bq = std::max(bq, std::abs(cb - cq));
    }
    return Checks{make_check("affine cocycle vs closed form", "bargmann", ab, 1e-6),
                  make_check("affine cocycle vs contraction quadrature", "contraction-cocycle", aq, 1e-6),
                  make_check("closed form vs contraction quadrature", "bargmann", bq, 1e-6)};
  });
  tasks.push_back([&A, gp, triples](std::mt19937_64& rng) {
    const GroupModel& G = *A.group;
    auto c = [&](const GroupElement& a, const GroupElement& b) { return galilean::bargmann(gp, a, b); };
    double worst = 0, worst_affine = 0;
    for (int i = 0; i < triples; ++i) {
      GroupElement g1 = G.sample(rng), g2 = G.sample(rng), g3 = G.sample(rng);
      worst = std::max(worst, cocycle_identity_defect_of<GroupElement>(c, G.multiply, g1, g2, g3));
      worst_affine = std::max(worst_affine, cocycle_identity_defect(A, g1, g2, g3));
    }
    return Checks{make_check("closed-form cocycle identity", "bargmann", worst, 1e-9),
                  make_check("affine cocycle identity", "affine-cocycle", worst_affine, 1e-9)};
  });
}

void add_heisenberg(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const AffineActionSpec& A = *e.affine;
  const HamiltonianActionSpec& h = e.h;
  const int pairs = cfg.samples.pairs, triples = cfg.samples.triples;
  tasks.push_back([&A, &h, pairs](std::mt19937_64& rng) {
    const GroupModel& G = *A.group;
    double worst = 0;
    for (int i = 0; i < pairs; ++i) {
      GroupElement g1 = G.sample(rng), g2 = G.sample(rng);
      worst = std::max(worst, std::abs(group_cocycle_c(A, g1, g2) -
                                       heisenberg::heisenberg_cocycle(A.space, g1.data, g2.data)));
    }
    Mat S = sigma_two_matrix(h, h.sample_point(rng));
    double sig = (S - A.space.omega).norm();
    return Checks{make_check("affine cocycle is the Heisenberg cocycle", "heisenberg", worst, 1e-12),
                  make_check("Sigma equals omega", "heisenberg", sig, 1e-12)};
  });
  tasks.push_back([&A, triples](std::mt19937_64& rng) {
    const GroupModel& G = *A.group;
    double worst = 0;
    for (int i = 0; i < triples; ++i)
      worst = std::max(worst, cocycle_identity_defect(A, G.sample(rng), G.sample(rng), G.sample(rng)));
    return Checks{make_check("Heisenberg cocycle identity", "affine-cocycle", worst, 1e-12)};
  });
  tasks.push_back([&h](std::mt19937_64& rng) {
    OperatorBundle b = build_operators(h, h.sample_point(rng));
    const Eigen::Index d = b.L.rows();
    return Checks{make_check("Lichnerowicz operator is -identity", "heisenberg", (b.L + Mat::Identity(d, d)).norm(),
                             1e-12)};
  });
}

void add_virasoro(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const AffineActionSpec& A = *e.affine;
  const HamiltonianActionSpec& h = e.h;
  const virasoro::Params vp = e.vir;
  const int pairs = cfg.samples.pairs, diffeos = cfg.samples.diffeos, points = cfg.samples.points;
  const int dgrid = cfg.parameters.diffeo_grid, sgrid = cfg.parameters.schwarzian_grid;
  const int band = std::max(1, vp.modes / 3);
  tasks.push_back([&A, &h, vp, band, pairs](std::mt19937_64& rng) {
    double gf_sigma = 0, gf_tau = 0;
    for (int i = 0; i < pairs; ++i) {
      Vec X = random_field(vp, rng, band), Y = random_field(vp, rng, band);
      Vec m = h.sample_point(rng);
      double gf = virasoro::gelfand_fuchs(vp, X, Y);
      double sig = sigma_two_cocycle(h, X, Y, m);
      double tau = A.space.form(A.tau_prime(X), A.tau_prime(Y));
      double scale = std::max(1.0, std::abs(gf));
      gf_sigma = std::max(gf_sigma, std::abs(sig - gf) / scale);
      gf_tau = std::max(gf_tau, std::abs(tau - gf) / scale);
    }
    // Sigma(sin, cos) = -4 pi^3 on the unit circle.
    Vec s = Vec::Zero(virasoro::field_dim(vp)), c = s;
    s(2) = 1;
    c(1) = 1;
    double unit = std::abs(virasoro::gelfand_fuchs(vp, s, c) + 4 * std::pow(M_PI, 3));
    return Checks{make_check("Gelfand-Fuchs vs Sigma", "gelfand-fuchs", gf_sigma, 1e-8),
                  make_check("Gelfand-Fuchs vs omega(tau', tau')", "gelfand-fuchs", gf_tau, 1e-8),
                  make_check("Gelfand-Fuchs on (sin, cos)", "gelfand-fuchs", unit, 1e-9)};
  });
  tasks.push_back([dgrid, diffeos](std::mt19937_64& rng) {
    using namespace virasoro;
    double worst = 0;
    for (int i = 0; i < diffeos; ++i) {
      CircleDiffeo a = random_diffeo(dgrid, rng, 4, 0.3), b = random_diffeo(dgrid, rng, 4, 0.3),
                   c = random_diffeo(dgrid, rng, 4, 0.3);
      double v = bott_thurston(a, b) + bott_thurston(compose(a, b), c) - bott_thurston(b, c) -
                 bott_thurston(a, compose(b, c));
      worst = std::max(worst, std::abs(v));
    }
    return Checks{make_check("Bott-Thurston cocycle identity", "bott-thurston", worst, 1e-6,
                             "grid " + std::to_string(dgrid))};
  });
  tasks.push_back([sgrid, diffeos](std::mt19937_64& rng) {
    using namespace virasoro;
    double worst = 0;
    const Vec zero = Vec::Zero(sgrid);
    for (int i = 0; i < diffeos; ++i) {
      CircleDiffeo phi = random_diffeo(sgrid, rng, 4, 0.3);
      // sigma(phi^{-1}) = J(phi^{-1} . 0) since J vanishes at the base point.
      Vec sigma = momentum_density(act(inverse(phi), zero));
      worst = std::max(worst, grid_l2(sigma + schwarzian(phi)));
    }
    return Checks{make_check("Schwarzian non-equivariance", "schwarzian", worst, 1e-6,
                             "grid " + std::to_string(sgrid))};
  });
  tasks.push_back([&h, vp, band, points](std::mt19937_64& rng) {
    double worst = 0, jac = 0;
    for (int i = 0; i < points; ++i) {
      Vec f = virasoro::random_class(vp, rng, band, 0.5);
      Vec lhs = virasoro::euler_lagrange_residual(vp, f);
      Vec rhs = h.inf_action(h.momentum(f), f);
      worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
      Vec a = random_field(vp, rng, band), b = random_field(vp, rng, band), c = random_field(vp, rng, band);
      jac = std::max(jac, jacobi_defect(h.algebra, a, b, c));
    }
    return Checks{make_check("Euler-Lagrange form of J(f).f", "virasoro-critical", worst, 1e-8),
                  make_check("Jacobi identity on band-limited fields", "jacobi-identity", jac, 1e-9)};
  });
}

void add_siegel(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const int n = e.n;
  const int points = std::min(cfg.samples.points, 10);
  const QuadratureRule rule{cfg.quadrature.nodes, cfg.quadrature.panels};
  tasks.push_back([n, points, rule](std::mt19937_64& rng) {
    const Mat j0 = siegel::standard_j0(n);
    HamiltonianActionSpec h = siegel::hamiltonian(n, j0);
    ContractionSpec cs = siegel::cayley_contraction();
    cs.quadrature = rule;
    double mom = 0, moving = 0, base = 0;
    for (int i = 0; i < points; ++i) {
      Mat j = siegel::random_compatible(rng, n, j0);
      Vec jf = siegel::flatten(j);
      Vec q = momentum_vector_via_quadrature(cs, h, siegel::flatten(j0), jf);
      mom = std::max(mom, (q - h.momentum(jf)).norm());
      Vec A = random_tangent(h, jf, rng);
      double closed = siegel::contraction_integral_closed_form(j0, j, siegel::to_matrix(A));
      moving = std::max(moving, std::abs(contraction_primitive_moving(cs, h, siegel::flatten(j0), jf, A) - closed));
      Vec A0 = random_tangent(h, siegel::flatten(j0), rng);
      double closed0 = siegel::contraction_integral_closed_form(j0, j, siegel::to_matrix(A0));
      base = std::max(base, std::abs(contraction_primitive_base(cs, h, siegel::flatten(j0), jf, A0) - closed0));
    }
    return Checks{make_check("quadrature momentum equals j - j0", "siegel-momentum", mom, 1e-6),
                  make_check("moving-slot contraction integral", "contraction-integrals", moving, 1e-7),
                  make_check("base-slot contraction integral", "contraction-integrals", base, 1e-7)};
  });
}

void add_families(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks) {
  const HamiltonianActionSpec& h = e.h;
  const galilean::Params gp = e.gal;
  const int points = cfg.samples.points;
  tasks.push_back([&h, points](std::mt19937_64& rng) {
    double worst = 0;
    for (int i = 0; i < std::max(points, 50); ++i)
      worst = std::max(worst, criticality_residual(h, galilean::first_family(random_unit(rng, 3))));
    return Checks{make_check("first critical family", "critical-first-family", worst, 1e-12)};
  });
  if (gp.spin * gp.spin > 4 * gp.mass * gp.mass) {
    tasks.push_back([&h, gp, points](std::mt19937_64& rng) {
      double worst = 0;
      for (int i = 0; i < points; ++i) {
        Eigen::Vector3d x = random_unit(rng, 3), d = random_unit(rng, 3);
        galilean::SecondFamily f = galilean::second_family(gp, (d - x * x.dot(d)).normalized(), x);
        worst = std::max(worst, criticality_residual(h, f.point));
      }
      return Checks{make_check("second critical family", "critical-second-family", worst, 1e-8)};
    });
  }
}

void add_operator_checks(const HamiltonianActionSpec& h, const Vec& m, bool equivariant, const std::string& where,
                         Checks& out) {
  OperatorBundle b = build_operators(h, m);
  auto diag = [&](const std::string& name, const std::string& anchor) {
    const Diagnostic& d = b.diagnostic(name);
    out.push_back(make_check(name + " " + where, anchor, d.value, d.tolerance));
  };
  diag("L kappa-symmetry", "operator-symmetry");
  diag("Z kappa-skewness", "operator-symmetry");
  diag("C+ hermitian", "calabi-hermitian");
  diag("C- hermitian", "calabi-hermitian");
  diag("C+ negative semidefinite", "calabi-negative");
  diag("C+ = -Upsilon* Upsilon", "calabi-factorization");
  diag("Im C+ = dJ o Upsilon", "calabi-imaginary-part");
  ComplexStabilizer st = complex_stabilizer(b);
  out.push_back(make_check("ker C+ = ker Upsilon " + where, "kernel-identity", st.upsilon_angle, 1e-6,
                           "dimension " + std::to_string(st.dimension)));
  if (equivariant) {
    const CMat Cp = b.Cplus.complex_matrix(), Cm = b.Cminus.complex_matrix();
    double comm = operator_norm(CMat(Cp * Cm - Cm * Cp)) / std::max(1.0, operator_norm(Cp) * operator_norm(Cm));
    out.push_back(make_check("[C+, C-] " + where, "calabi-commutator", comm, 1e-8));
  }
}

void add_operators(const Example& e, const ExperimentConfig&, std::vector<Task>& tasks) {
  if (!e.positive_pairing) return;
  const HamiltonianActionSpec& h = e.h;
  const Example* ep = &e;
  tasks.push_back([&h, ep](std::mt19937_64& rng) {
    Checks out;
    add_operator_checks(h, h.sample_point(rng), false, "(sampled point)", out);
    if (ep->id == "galilean" || ep->equivariant) {
      add_operator_checks(h, critical_point(*ep, rng), ep->equivariant, "(critical point)", out);
    }
    return out;
  });
}

void add_galilean_decomposition(const Example& e, std::vector<Task>& tasks, ExperimentReport& report) {
  const HamiltonianActionSpec& h = e.h;
  const galilean::Params gp = e.gal;
  ExperimentReport* rep = &report;
  tasks.push_back([&h, gp, rep](std::mt19937_64& rng) {
    using Eigen::Vector3cd;
    const Eigen::Vector3d x = random_unit(rng, 3);
    const Vec m = galilean::first_family(x);
    const double s = gp.spin, mass = gp.mass;
    StabilizerDecomposition d = eigendecompose_stabilizer(h, m, h.momentum(m));
    Checks out;
    out.push_back(make_check("complex stabilizer dimension 6", "stabilizer-decomposition",
                             std::abs(d.basis.cols() - 6.0), 0.5,
                             "real dimension " + std::to_string(2 * d.basis.cols())));
    double off = 0;
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
      double v = d.eigenvalues(i);
      off = std::max(off, std::min({std::abs(v), std::abs(v - s / 2), std::abs(v + s / 2)}));
    }
    out.push_back(make_check("eigenvalues in {0, +s/2, -s/2}", "stabilizer-decomposition", off, 1e-8));
    auto mult = [&](double v) {
      const EigenCluster* c = d.cluster(v);
      return c ? c->multiplicity : 0;
    };
    const int m0 = mult(0), mminus = mult(-s / 2), mplus = mult(s / 2);
    out.push_back(make_check("cluster multiplicities (0: 3, -s/2: 2, +s/2: 1)", "stabilizer-decomposition",
                             std::abs(m0 - 3) + std::abs(mminus - 2) + std::abs(mplus - 1), 0.5,
                             "0: " + std::to_string(m0) + ", -s/2: " + std::to_string(mminus) +
                                 ", +s/2: " + std::to_string(mplus)));
    out.push_back(make_check("cluster orthogonality", "stabilizer-decomposition", cluster_orthogonality_defect(d),
                             1e-8));

    // The three explicit families at (0, 0, x).
    const Eigen::Vector3cd xc = x.cast<cplx>();
    const cplx I(0, 1);
    auto perp = [&]() {
      Vector3cd a = random_complex(rng, 3);
      return Vector3cd(a - xc * xc.dot(a));
    };
    double stab = 0, in0 = 0, in_first = 0, in_second = 0;
    for (int k = 0; k < 4; ++k) {
      cplx a(random_gaussian(rng, 2)(0), random_gaussian(rng, 2)(1));
      cplx bb(random_gaussian(rng, 2)(0), random_gaussian(rng, 2)(1));
      cplx th(random_gaussian(rng, 2)(0), random_gaussian(rng, 2)(1));
      CVec c = galilean::complex_element(a * xc, bb * xc, I * mass * bb * xc, th);
      Vector3cd al = perp(), be = perp();
      CVec k1 = galilean::complex_element(galilean::cross(al, xc) + I * al, galilean::cross(be, xc) + I * be,
                                          I * mass * (galilean::cross(be, xc) + I * be), 0);
      Vector3cd be2 = perp();
      CVec k2 = galilean::complex_element(Vector3cd::Zero(), galilean::cross(be2, xc) - I * be2,
                                          I * mass * (galilean::cross(be2, xc) - I * be2), 0);
      stab = std::max({stab, stabilizer_residual(h, m, c), stabilizer_residual(h, m, k1),
                       stabilizer_residual(h, m, k2)});
      in0 = std::max(in0, membership_residual(d, 0, c));
      in_first = std::max(in_first, membership_residual(d, -s / 2, k1));
      in_second = std::max(in_second, membership_residual(d, s / 2, k2));
    }
    out.push_back(make_check("explicit families lie in the stabilizer", "stabilizer-families", stab, 1e-8));
    out.push_back(make_check("family (ax, bx, imbx, theta) in the 0 cluster", "stabilizer-families", in0, 1e-8));
    out.push_back(make_check("family (a x x + ia, b x x + ib, ...) in the -s/2 cluster", "stabilizer-families",
                             in_first, 1e-8, "displayed with label +s/2"));
    out.push_back(make_check("family (0, b x x - ib, ...) in the +s/2 cluster", "stabilizer-families", in_second,
                             1e-8, "displayed with label -s/2"));

    // Brackets inside the zero family leave the stabilizer.
    ComplexLieAlgebra gc = complexify(h.algebra);
    const cplx b1(0.7, -0.2), t1(0.3, 0.5), b2(-0.4, 0.9), t2(1.1, 0.1);
    CVec c1 = galilean::complex_element(0.5 * xc, b1 * xc, I * mass * b1 * xc, t1);
    CVec c2 = galilean::complex_element(-1.3 * xc, b2 * xc, I * mass * b2 * xc, t2);
    CVec br = gc.bracket(c1, c2);
    CVec expect = galilean::complex_element(Vector3cd::Zero(), Vector3cd::Zero(), (b1 * t2 - b2 * t1) * xc, 0);
    out.push_back(make_check("bracket of zero-family elements is (0, 0, (b1 t2 - b2 t1) x, 0)",
                             "stabilizer-families", (br - expect).norm(), 1e-12));
    const double leave = stabilizer_residual(h, m, br);
    out.push_back(make_check("bracket leaves the stabilizer", "stabilizer-families", leave > 1e-6 ? 0.0 : 1.0, 0.5,
                             "residual " + fmt(leave)));
    double grading = 0;
    for (const auto& ca : d.clusters)
      for (const auto& cb : d.clusters) grading = std::max(grading, grading_defect(h, d, ca.value, cb.value));
    out.push_back(make_check("projected grading", "grading", grading, 1e-8));

    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) rep->spectra["stabilizer eigenvalues"].push_back(d.eigenvalues(i));
    rep->dimensions["complex stabilizer"] = static_cast<double>(d.basis.cols());
    rep->dimensions["real stabilizer"] = 2.0 * static_cast<double>(d.basis.cols());
    for (const auto& c : d.clusters) rep->dimensions["cluster " + fmt(c.value)] = c.multiplicity;
    return out;
  });
}

void add_equivariant_decomposition(const Example& e, std::vector<Task>& tasks, ExperimentReport& report) {
  const HamiltonianActionSpec& h = e.h;
  const Example* ep = &e;
  ExperimentReport* rep = &report;
  tasks.push_back([&h, ep, rep](std::mt19937_64& rng) {
    const Vec m = critical_point(*ep, rng);
    RefinedDecomposition r = equivariant_refinement(h, m);
    const auto& d = r.decomposition;
    Checks out;
    out.push_back(make_check("eigenvalues nonpositive", "equivariant-refinement",
                             std::max(0.0, r.certificate.max_eigenvalue), 1e-9));
    out.push_back(make_check("zero cluster = complexified stabilizer", "equivariant-refinement",
                             r.certificate.zero_cluster_angle, 1e-6,
                             "real stabilizer dimension " + std::to_string(r.certificate.real_stabilizer_dimension)));
    out.push_back(make_check("cluster orthogonality", "stabilizer-decomposition", cluster_orthogonality_defect(d),
                             1e-8));
    double grading = 0;
    for (const auto& ca : d.clusters)
      for (const auto& cb : d.clusters) grading = std::max(grading, grading_defect(h, d, ca.value, cb.value));
    out.push_back(make_check("projected grading", "grading", grading, 1e-8));
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) rep->spectra["stabilizer eigenvalues"].push_back(d.eigenvalues(i));
    rep->dimensions["complex stabilizer"] = static_cast<double>(d.basis.cols());
    rep->dimensions["real stabilizer"] = r.certificate.real_stabilizer_dimension;
    for (const auto& c : d.clusters) rep->dimensions["cluster " + fmt(c.value)] = c.multiplicity;
    return out;
  });
}

void add_generic_decomposition(const Example& e, std::vector<Task>& tasks, ExperimentReport& report) {
  const HamiltonianActionSpec& h = e.h;
  const Example* ep = &e;
  ExperimentReport* rep = &report;
  tasks.push_back([&h, ep, rep](std::mt19937_64& rng) {
    const Vec m = critical_point(*ep, rng);
    DecompositionOptions opt;
    opt.mode = DecompositionMode::generalized;
    StabilizerDecomposition d = eigendecompose_stabilizer(h, m, h.momentum(m), opt);
    Checks out;
    for (const auto& dg : d.diagnostics)
      out.push_back(make_check(dg.name, "stabilizer-decomposition", dg.value, dg.tolerance));
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) rep->spectra["stabilizer eigenvalues"].push_back(d.eigenvalues(i));
    rep->dimensions["complex stabilizer"] = static_cast<double>(d.basis.cols());
    for (const auto& c : d.clusters) rep->dimensions["cluster " + fmt(c.value)] = c.multiplicity;
    return out;
  });
}

void add_decomposition(const Example& e, std::vector<Task>& tasks, ExperimentReport& report) {
  if (e.id == "galilean") {
    add_galilean_decomposition(e, tasks, report);
  } else if (e.equivariant) {
    add_equivariant_decomposition(e, tasks, report);
  } else if (e.id == "heisenberg") {
    add_generic_decomposition(e, tasks, report);
  }
}

// Hessian checks at one critical point.
Checks hessian_checks(const Example& e, const Vec& m, int directions, const std::string& where, bool positivity,
                      std::mt19937_64& rng, ExperimentReport* rep) {
  const HamiltonianActionSpec& h = e.h;
  Checks out;
  require_critical(h, m);
  double worst = 0;
  for (int i = 0; i < directions; ++i) {
    Vec X = random_tangent(h, m, rng);
    worst = std::max(worst, rel(hessian_quadratic(h, m, X), curve_hessian(h, m, X)));
  }
  out.push_back(make_check("Hessian formula vs curve second derivative " + where, "hessian-formula", worst, 1e-4));
  bool orbit_ok = true;
  std::string why;
  try {
    require_orbit_hessian_preconditions(h, m);
  } catch (const NumericalRefusal& ex) {
    orbit_ok = false;
    why = ex.what();
  }
  if (!orbit_ok) {
    if (rep) rep->notes.push_back("complex-orbit Hessian skipped " + where + ": " + why);
    return out;
  }
  OperatorBundle b = build_operators(h, m);
  Mat H = orbit_hessian_form(b);
  const Eigen::Index k = h.algebra.dim;
  double orbit = 0;
  for (int i = 0; i < directions; ++i) {
    ComplexVector z(random_gaussian(rng, k), random_gaussian(rng, k));
    ComplexVector g(random_gaussian(rng, k), random_gaussian(rng, k));
    double form = z.stacked().dot(H * g.stacked());
    Vec X = upsilon_apply(h, m, z), Y = upsilon_apply(h, m, g);
    double fd = (curve_hessian(h, m, X + Y) - curve_hessian(h, m, X - Y)) / 8.0;
    orbit = std::max(orbit, rel(form, fd));
  }
  out.push_back(make_check("Re kappa_C(zeta, C+ R gamma) vs finite differences " + where, "hessian-complex-orbit",
                           orbit, 1e-4));
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (H + H.transpose()));
  if (rep) {
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      rep->spectra["orbit Hessian " + where].push_back(es.eigenvalues()(i));
  }
  if (positivity) {
    out.push_back(make_check("orbit Hessian positive semidefinite " + where, "hessian-positivity",
                             std::max(0.0, -es.eigenvalues().minCoeff()), 1e-8,
                             "min eigenvalue " + fmt(es.eigenvalues().minCoeff())));
  }
  return out;
}

void add_hessian(const Example& e, const ExperimentConfig& cfg, std::vector<Task>& tasks, ExperimentReport& report) {
  const Example* ep = &e;
  ExperimentReport* rep = &report;
  const int dirs = cfg.samples.hessian_directions;
  tasks.push_back([ep, dirs, rep](std::mt19937_64& rng) {
    Checks out = hessian_checks(*ep, critical_point(*ep, rng), dirs, "(first family)", ep->equivariant, rng, rep);
    if (ep->id != "galilean") {
      for (auto& c : out) {
        auto pos = c.name.find(" (first family)");
        if (pos != std::string::npos) c.name.replace(pos, 15, " (critical point)");
      }
    }
    return out;
  });
  if (e.id == "galilean" && e.gal.spin * e.gal.spin > 4 * e.gal.mass * e.gal.mass) {
    tasks.push_back([ep, dirs, rep](std::mt19937_64& rng) {
      return hessian_checks(*ep, critical_point(*ep, rng, "second"), dirs, "(second family)", false, rng, rep);
    });
  }
}

// ---------------------------------------------------------------- driver

ExperimentReport new_report(const std::string& experiment, const ExperimentConfig& cfg) {
  ExperimentReport r;
  r.experiment = experiment;
  r.example = cfg.example;
  r.seed = cfg.seed;
  r.tolerance_scale = cfg.tolerance_scale;
  return r;
}

void apply_scale(ExperimentReport& r, Checks checks) {
  for (auto& c : checks) {
    c.tolerance *= r.tolerance_scale;
    c.pass = std::isfinite(c.value) && c.value <= c.tolerance;
  }
  r.checks = std::move(checks);
}

void finish(ExperimentReport& r) {
  if (r.tolerance_scale == 0) {
    for (auto& c : r.checks) c.pass = false;
    r.status = "invalid-tolerance";
    r.notes.push_back("tolerance scale 0: every check is reported as failed");
    return;
  }
  r.finalize(false);
}

template <class Body>
ExperimentReport guarded(const std::string& experiment, const ExperimentConfig& cfg, Body body) {
  validate(cfg);
  ExperimentReport r = new_report(experiment, cfg);
  try {
    body(r);
  } catch (const NumericalRefusal& ex) {
    r.checks.clear();
    r.spectra.clear();
    r.dimensions.clear();
    r.trajectory.clear();
    r.notes.push_back(std::string("refused: ") + ex.what());
    r.finalize(true);
    return r;
  }
  finish(r);
  return r;
}

ExperimentReport verify_user_algebra(const ExperimentConfig& cfg) {
  return guarded("verify", cfg, [&](ExperimentReport& r) {
    LieAlgebraSpec alg;
    try {
      alg = load_lie_algebra(cfg.algebra_file);
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(ex.what());
    }
    JacobiReport jr = jacobi_defect(alg);
    std::string note;
    if (jr.i >= 0) {
      auto label = [&](int i) { return alg.labels.empty() ? "e" + std::to_string(i) : alg.labels[i]; };
      note = "worst triple (" + label(jr.i) + ", " + label(jr.j) + ", " + label(jr.k) + ") at indices (" +
             std::to_string(jr.i) + ", " + std::to_string(jr.j) + ", " + std::to_string(jr.k) + ")";
    }
    Checks checks{make_check("antisymmetry", "jacobi-identity", antisymmetry_defect(alg), 1e-12),
                  make_check("jacobi identity", "jacobi-identity", jr.defect, 1e-10, note)};
    r.dimensions["algebra"] = alg.dim;
    apply_scale(r, std::move(checks));
  });
}

}  // namespace

ExperimentReport run_verify(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.example == "user-algebra") return verify_user_algebra(cfg);
  return guarded("verify", cfg, [&](ExperimentReport& r) {
    Example e = make_example(cfg);
    std::vector<Task> tasks;
    add_common(e, cfg, tasks);
    if (e.id == "galilean") {
      add_bargmann(e, cfg, tasks);
      add_families(e, cfg, tasks);
    } else if (e.id == "heisenberg") {
      add_heisenberg(e, cfg, tasks);
    } else if (e.id == "virasoro") {
      add_virasoro(e, cfg, tasks);
      r.notes.push_back("no stabilizer decomposition: the pairing and the complex structure are not equivariant");
    } else if (e.id == "siegel") {
      add_siegel(e, cfg, tasks);
      r.notes.push_back("operator and decomposition suites need a positive definite pairing; skipped");
    }
    add_operators(e, cfg, tasks);
    // Spectra and dimensions are written by the tasks below; keep a local
    // report per task slot to avoid shared writes.
    ExperimentReport side;
    std::vector<Task> extra;
    add_decomposition(e, extra, side);
    add_hessian(e, cfg, extra, side);
    Checks checks = run_tasks(tasks, cfg.seed, cfg.threads);
    // Tasks writing into `side` run sequentially to keep the merge deterministic.
    Checks more = run_tasks(extra, cfg.seed + 0x9e3779b97f4a7c15ULL, 1);
    checks.insert(checks.end(), more.begin(), more.end());
    r.spectra = side.spectra;
    r.dimensions = side.dimensions;
    r.notes.insert(r.notes.end(), side.notes.begin(), side.notes.end());
    apply_scale(r, std::move(checks));
  });
}

ExperimentReport run_cocycle(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.example == "user-algebra") throw ConfigError("cocycle needs an example with an action");
  return guarded("cocycle", cfg, [&](ExperimentReport& r) {
    Example e = make_example(cfg);
    std::vector<Task> tasks;
    if (e.id == "galilean") add_bargmann(e, cfg, tasks);
    if (e.id == "heisenberg") add_heisenberg(e, cfg, tasks);
    if (e.id == "virasoro") add_virasoro(e, cfg, tasks);
    if (e.id == "siegel") add_siegel(e, cfg, tasks);
    add_sigma_independence(e, cfg, tasks);
    Checks checks = run_tasks(tasks, cfg.seed, cfg.threads);
    apply_scale(r, std::move(checks));
  });
}

ExperimentReport run_decompose(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.example == "user-algebra") throw ConfigError("decompose needs an example with an action");
  return guarded("decompose", cfg, [&](ExperimentReport& r) {
    Example e = make_example(cfg);
    if (e.id == "virasoro") {
      throw NumericalRefusal("virasoro: the pairing and the complex structure are not equivariant, so the "
                             "stabilizer decomposition hypotheses fail");
    }
    if (!e.positive_pairing) {
      throw NumericalRefusal(e.id + ": the pairing is indefinite; no kappa_C-orthonormal stabilizer basis");
    }
    std::vector<Task> tasks;
    add_decomposition(e, tasks, r);
    Checks checks = run_tasks(tasks, cfg.seed, 1);
    apply_scale(r, std::move(checks));
  });
}

ExperimentReport run_hessian(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.example == "user-algebra") throw ConfigError("hessian needs an example with an action");
  return guarded("hessian", cfg, [&](ExperimentReport& r) {
    Example e = make_example(cfg);
    std::vector<Task> tasks;
    add_hessian(e, cfg, tasks, r);
    Checks checks = run_tasks(tasks, cfg.seed, 1);
    apply_scale(r, std::move(checks));
  });
}

namespace {

Vec flow_start(const Example& e, const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const std::string start = cfg.critical.start == "default" ? (e.id == "galilean" ? "second" : "random")
                                                             : cfg.critical.start;
  const double eps = cfg.critical.perturbation;
  const HamiltonianActionSpec& h = e.h;
  if (start == "origin") {
    if (e.id == "galilean") return galilean::first_family(Eigen::Vector3d::UnitZ());
    return e.h.base_point.size() ? e.h.base_point : Vec(Vec::Zero(h.point_dim));
  }
  if (start == "random") return h.sample_point(rng);
  if (e.id == "galilean") {
    if (start == "first") {
      // Perturbing only the sphere factor keeps the start inside the family's
      // stable set; (0, 0, x) is a saddle once s^2 > 4 m^2.
      Eigen::Vector3d x = (Eigen::Vector3d::UnitZ() + eps * Eigen::Vector3d(random_gaussian(rng, 3))).normalized();
      return galilean::first_family(x);
    }
    Vec m = galilean::second_family(e.gal, Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitZ()).point;
    return retract(h, m, eps * random_tangent(h, m, rng));
  }
  Vec m = critical_point(e, rng);
  return retract(h, m, eps * random_tangent(h, m, rng));
}

double metric_norm(const HamiltonianActionSpec& h, const Vec& m, const Vec& X) {
  return std::sqrt(std::max(0.0, h.omega_at(m, X, h.acs_at(m, X))));
}

}  // namespace

ExperimentReport run_critical(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.example == "user-algebra") throw ConfigError("critical needs an example with an action");
  return guarded("critical", cfg, [&](ExperimentReport& r) {
    Example e = make_example(cfg);
    const HamiltonianActionSpec& h = e.h;
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), 0u};
    std::mt19937_64 rng(seq);
    Vec m = flow_start(e, cfg, rng);
    NormSquaredValue f = norm_squared_and_gradient(h, m);
    double step = cfg.critical.initial_step;
    double residual = criticality_residual(h, m);
    const double tol = cfg.critical.tolerance;
    int it = 0;
    r.trajectory.push_back({0.0, f.value, residual});
    Vec previous = m;
    for (; it < cfg.critical.max_iterations && residual > tol; ++it) {
      const double gnorm = metric_norm(h, m, f.gradient);
      bool accepted = false;
      // Near a critical point the Armijo decrease drops below the rounding
      // level of F; there the residual itself serves as merit.
      const double flat = 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f.value));
      for (int halving = 0; halving < 60; ++halving) {
        Vec trial = retract(h, m, -step * f.gradient);
        double ft = norm_squared(h, trial);
        bool ok = std::isfinite(ft) && ft <= f.value - 1e-4 * step * gnorm * gnorm;
        if (!ok && std::isfinite(ft) && 1e-4 * step * gnorm * gnorm < flat && ft <= f.value + flat)
          ok = criticality_residual(h, trial) < residual;
        if (ok) {
          m = trial;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;  // no decrease at machine resolution
      const Vec s_k = m - previous;
      const Vec g_old = f.gradient;
      f = norm_squared_and_gradient(h, m);
      residual = criticality_residual(h, m);
      r.trajectory.push_back({static_cast<double>(it + 1), f.value, residual});
      // Barzilai-Borwein trial step; the line search above still enforces descent.
      const double sy = s_k.dot(f.gradient - g_old);
      step = sy > 0 ? std::clamp(s_k.squaredNorm() / sy, 1e-12, 1e6) : std::min(step * 2.0, 1e6);
      previous = m;
    }
    const bool converged = residual <= tol;
    Checks checks;
    checks.push_back(make_check("criticality residual at endpoint", "critical-criterion", residual, tol,
                                converged ? "converged after " + std::to_string(it) + " iterations"
                                          : "non-converged after " + std::to_string(it) + " iterations"));
    if (!r.trajectory.empty()) {
      double rise = 0;
      for (size_t i = 1; i < r.trajectory.size(); ++i)
        rise = std::max(rise, r.trajectory[i][1] - r.trajectory[i - 1][1]);
      const double f0 = std::max(1.0, std::abs(r.trajectory.front()[1]));
      checks.push_back(make_check("norm square nonincreasing", "gradient-flow", rise,
                                  16 * std::numeric_limits<double>::epsilon() * f0));
    }
    r.dimensions["iterations"] = it;
    r.spectra["endpoint"] = std::vector<double>(m.data(), m.data() + m.size());
    if (!converged) r.notes.push_back("non-converged: final residual " + fmt(residual));
    if (e.id == "galilean") {
      const Eigen::Vector3d q = galilean::q_of(m), p = galilean::p_of(m), x = galilean::x_of(m);
      const double s = e.gal.spin, mass = e.gal.mass;
      if (p.norm() < 1e-4) {
        r.notes.push_back("endpoint classified as first family (0, 0, x)");
        checks.push_back(make_check("|q| + |p| at the first family", "critical-first-family", q.norm() + p.norm(),
                                    1e-6));
        checks.push_back(make_check("norm square equals s^2/2", "critical-first-family",
                                    std::abs(f.value - s * s / 2) / (s * s / 2), 1e-8));
      } else {
        r.notes.push_back("endpoint classified as second family");
        const double expect = galilean::second_family_p_norm_squared(e.gal);
        const double k = std::cbrt(4 * mass * mass * s);
        checks.push_back(make_check("|p|^2 matches the closed form (relative)", "critical-second-family",
                                    std::abs(p.squaredNorm() - expect) / expect, 1e-5));
        checks.push_back(make_check("q = k/(2m^2) p x x", "critical-second-family",
                                    (q - k / (2 * mass * mass) * p.cross(x)).norm() / std::max(1.0, q.norm()), 1e-5));
        r.dimensions["p norm squared"] = p.squaredNorm();
      }
    } else if (e.id == "unitary") {
      const double radius = m.norm();
      if (radius < 1e-8) {
        r.notes.push_back("endpoint at the origin");
      } else {
        checks.push_back(make_check("|v| equals the critical radius", "critical-criterion",
                                    std::abs(radius - e.uni.critical_radius) / std::max(1.0, e.uni.critical_radius),
                                    1e-6));
      }
    } else if (e.id == "virasoro") {
      Vec el = virasoro::euler_lagrange_residual(e.vir, m);
      Vec rhs = h.inf_action(h.momentum(m), m);
      checks.push_back(make_check("Euler-Lagrange residual equals J(f).f", "virasoro-critical",
                                  (el - rhs).norm() / std::max(1.0, el.norm()), 1e-6));
    }
    r.dimensions["final norm square"] = f.value;
    apply_scale(r, std::move(checks));
  });
}

ExperimentReport run_experiment(const std::string& experiment, const ExperimentConfig& cfg) {
  if (experiment == "verify") return run_verify(cfg);
  if (experiment == "critical") return run_critical(cfg);
  if (experiment == "hessian") return run_hessian(cfg);
  if (experiment == "decompose") return run_decompose(cfg);
  if (experiment == "cocycle") return run_cocycle(cfg);
  throw ConfigError("unknown experiment '" + experiment + "'");
}

int exit_code(const ExperimentReport& r) {
  if (r.status == "pass") return 0;
  if (r.status == "invalid-tolerance") return 2;
  if (r.status == "refused") return 3;
  return 1;
}

}  // namespace momap::cli
