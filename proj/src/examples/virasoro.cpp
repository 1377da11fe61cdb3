#include "momap/examples/virasoro.hpp"
#include "momap/quadrature.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>

namespace momap::virasoro {

namespace {

using Spectrum = std::vector<std::complex<double>>;

Spectrum forward(const Vec& samples) {
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.data(), samples.data() + samples.size());
  Spectrum out;
  fft.fwd(out, in);
  return out;
}

Vec backward(const Spectrum& spec) {
  Eigen::FFT<double> fft;
  std::vector<double> out;
  fft.inv(out, spec);
  return Eigen::Map<Vec>(out.data(), static_cast<Eigen::Index>(out.size()));
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Shared per-parameter data: basis samples on the grid.
struct Basis {
  Params p;
  std::vector<Vec> cls, cls_d;      // class basis and derivatives
  std::vector<Vec> fld, fld_d;      // field basis and derivatives
};

std::shared_ptr<const Basis> make_basis(const Params& p) {
  auto b = std::make_shared<Basis>();
  b->p = p;
  for (int i = 0; i < field_dim(p); ++i) {
    Vec e = Vec::Zero(field_dim(p));
    e(i) = 1;
    b->fld.push_back(field_samples(p, e));
    b->fld_d.push_back(spectral_derivative(b->fld.back()));
  }
  for (int i = 0; i < class_dim(p); ++i) {
    b->cls.push_back(b->fld[i + 1]);
    b->cls_d.push_back(b->fld_d[i + 1]);
  }
  return b;
}

}  // namespace

void validate(const Params& p) {
  if (p.modes < 4) throw std::invalid_argument("virasoro: at least 4 modes are required");
  if (!power_of_two(p.grid)) throw std::invalid_argument("virasoro: grid size must be a power of two");
  if (p.grid < 8 * p.modes) throw std::invalid_argument("virasoro: grid size must be at least 8 * modes");
}

int class_dim(const Params& p) { return 2 * p.modes; }
int field_dim(const Params& p) { return 2 * p.modes + 1; }

Vec field_samples(const Params& p, const Vec& X) {
  require_size(X.size(), field_dim(p), "virasoro field");
  const int M = p.grid;
  Vec out = Vec::Constant(M, X(0));
  for (int n = 0; n < M; ++n) {
    const double t = static_cast<double>(n) / M;
    for (int k = 1; k <= p.modes; ++k) {
      const double a = 2 * M_PI * k * t;
      out(n) += X(2 * k - 1) * std::cos(a) + X(2 * k) * std::sin(a);
    }
  }
  return out;
}

Vec class_samples(const Params& p, const Vec& f) {
  require_size(f.size(), class_dim(p), "virasoro class");
  Vec X(field_dim(p));
  X << 0.0, f;
  return field_samples(p, X);
}

Vec project_field(const Params& p, const Vec& samples) {
  require_size(samples.size(), p.grid, "virasoro samples");
  Spectrum C = forward(samples);
  const double M = p.grid;
  Vec X(field_dim(p));
  X(0) = C[0].real() / M;
  for (int k = 1; k <= p.modes; ++k) {
    X(2 * k - 1) = 2 * C[k].real() / M;
    X(2 * k) = -2 * C[k].imag() / M;
  }
  return X;
}

Vec project_class(const Params& p, const Vec& samples) { return project_field(p, samples).tail(class_dim(p)); }

Vec spectral_derivative(const Vec& samples, int order) {
  const int M = static_cast<int>(samples.size());
  Spectrum C = forward(samples);
  for (int k = 0; k < M; ++k) {
    const int kk = k <= M / 2 ? k : k - M;
    if (2 * k == M) {
      C[k] = 0;
      continue;
    }
    C[k] *= std::pow(std::complex<double>(0, 2 * M_PI * kk), order);
  }
  return backward(C);
}

double grid_mean(const Vec& samples) {
  std::vector<double> v(samples.data(), samples.data() + samples.size());
  return pairwise_sum(v) / static_cast<double>(samples.size());
}

LieAlgebraSpec algebra(const Params& p) {
  validate(p);
  auto b = make_basis(p);
  const int d = field_dim(p);
  std::vector<double> c(static_cast<size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Vec br = b->fld_d[i].cwiseProduct(b->fld[j]) - b->fld[i].cwiseProduct(b->fld_d[j]);
      Vec coeff = project_field(p, br);
      for (int k = 0; k < d; ++k) {
        double v = std::abs(coeff(k)) < 1e-12 ? 0.0 : coeff(k);
        c[(static_cast<size_t>(i) * d + j) * d + k] = v;
        c[(static_cast<size_t>(j) * d + i) * d + k] = -v;
      }
    }
  Vec w = Vec::Constant(d, 0.5);
  w(0) = 1;
  std::vector<std::string> labels{"c0"};
  for (int k = 1; k <= p.modes; ++k) {
    labels.push_back("cos" + std::to_string(k));
    labels.push_back("sin" + std::to_string(k));
  }
  return make_lie_algebra(d, std::move(c), Mat(w.asDiagonal()), std::move(labels));
}

AffineActionSpec affine(const Params& p) {
  validate(p);
  auto b = make_basis(p);
  const int n = class_dim(p);
  AffineActionSpec s;
  s.name = "virasoro-affine";
  Mat omega = Mat::Zero(n, n);
  Mat j = Mat::Zero(n, n);
  for (int k = 1; k <= p.modes; ++k) {
    const int a = 2 * (k - 1), c = a + 1;
    omega(a, c) = M_PI * k;
    omega(c, a) = -M_PI * k;
    j(a, c) = -1;
    j(c, a) = 1;
  }
  s.space = make_symplectic(omega);
  s.algebra = algebra(p);
  s.rho_prime = [b](const Vec& xi) {
    Vec X = field_samples(b->p, xi);
    const int n = class_dim(b->p);
    Mat r(n, n);
    for (int l = 0; l < n; ++l) r.col(l) = -project_class(b->p, X.cwiseProduct(b->cls_d[l]));
    return r;
  };
  s.tau_prime = [b](const Vec& xi) { return Vec(-project_class(b->p, spectral_derivative(field_samples(b->p, xi)))); };
  s.complex_structure = make_compatible(s.space, j);
  const int band = std::max(1, p.modes / 3);
  s.sample_point = [p, band](std::mt19937_64& rng) { return random_class(p, rng, band, 0.5); };
  return s;
}

Vec momentum(const Params& p, const Vec& f) {
  Vec s = class_samples(p, f);
  Vec d1 = spectral_derivative(s, 1);
  Vec d2 = spectral_derivative(s, 2);
  return project_field(p, -d2 + 0.5 * d1.cwiseProduct(d1));
}

HamiltonianActionSpec hamiltonian(const Params& p) {
  HamiltonianActionSpec h = as_hamiltonian(affine(p));
  h.name = "virasoro";
  h.momentum = [p](const Vec& f) { return momentum(p, f); };
  h.momentum_tangent = nullptr;
  return h;
}

Vec euler_lagrange_residual(const Params& p, const Vec& f) {
  Vec s = class_samples(p, f);
  Vec d1 = spectral_derivative(s, 1);
  Vec d3 = spectral_derivative(s, 3);
  return project_class(p, d3 - 0.5 * d1.cwiseProduct(d1).cwiseProduct(d1));
}

double gelfand_fuchs(const Params& p, const Vec& X, const Vec& Y) {
  Vec xs = field_samples(p, X);
  Vec y3 = spectral_derivative(field_samples(p, Y), 3);
  return -grid_mean(xs.cwiseProduct(y3));
}

Vec random_class(const Params& p, std::mt19937_64& rng, int band, double scale) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec f = Vec::Zero(class_dim(p));
  for (int k = 1; k <= std::min(band, p.modes); ++k) {
    f(2 * (k - 1)) = scale * nd(rng) / k;
    f(2 * (k - 1) + 1) = scale * nd(rng) / k;
  }
  return f;
}

// ---- grid-level diffeomorphisms ----

Vec interpolate(const Vec& samples, const Vec& t) {
  const int M = static_cast<int>(samples.size());
  Spectrum C = forward(samples);
  Vec out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const std::complex<double> w = std::polar(1.0, 2 * M_PI * t(i));
    std::complex<double> z = w;
    std::complex<double> acc = 0;
    for (int k = 1; k < M / 2; ++k) {
      acc += C[k] * z;
      z *= w;
    }
    double v = C[0].real() + 2 * acc.real();
    if (M % 2 == 0) v += C[M / 2].real() * std::cos(M_PI * M * t(i));
    out(i) = v / M;
  }
  return out;
}

namespace {

Vec grid_points(int M) { return Vec::LinSpaced(M, 0.0, static_cast<double>(M - 1) / M); }

}  // namespace

Vec CircleDiffeo::derivative() const { return Vec::Ones(u.size()) + spectral_derivative(u); }

double CircleDiffeo::min_derivative() const { return derivative().minCoeff(); }

double CircleDiffeo::operator()(double t) const {
  Vec tt(1);
  tt(0) = t;
  return t + interpolate(u, tt)(0);
}

CircleDiffeo identity_diffeo(int M) { return CircleDiffeo{Vec::Zero(M)}; }

CircleDiffeo diffeo_from_function(int M, const std::function<double(double)>& u) {
  Vec t = grid_points(M);
  CircleDiffeo phi{Vec(M)};
  for (int n = 0; n < M; ++n) phi.u(n) = u(t(n));
  if (!(phi.min_derivative() > 0)) throw std::invalid_argument("circle map is not orientation-preserving");
  return phi;
}

CircleDiffeo random_diffeo(int M, std::mt19937_64& rng, int modes, double amplitude) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> a(modes), b(modes);
  double slope = 0;
  for (int k = 1; k <= modes; ++k) {
    a[k - 1] = nd(rng) / k;
    b[k - 1] = nd(rng) / k;
    slope += 2 * M_PI * k * (std::abs(a[k - 1]) + std::abs(b[k - 1]));
  }
  // |u'| <= amplitude < 1 on the whole circle.
  const double scale = amplitude / slope;
  return diffeo_from_function(M, [&](double t) {
    double v = 0;
    for (int k = 1; k <= modes; ++k) v += a[k - 1] * std::cos(2 * M_PI * k * t) + b[k - 1] * std::sin(2 * M_PI * k * t);
    return scale * v;
  });
}

CircleDiffeo compose(const CircleDiffeo& a, const CircleDiffeo& b) {
  require_size(a.u.size(), b.u.size(), "compose grid");
  Vec t = grid_points(b.grid()) + b.u;
  return CircleDiffeo{Vec(b.u + interpolate(a.u, t))};
}

CircleDiffeo inverse(const CircleDiffeo& phi, double tol, int max_iterations) {
  if (!(phi.min_derivative() > 0)) throw NumericalRefusal("circle map is not orientation-preserving");
  const int M = phi.grid();
  const Vec t = grid_points(M);
  const Vec du = spectral_derivative(phi.u);
  Vec y = t - phi.u;
  for (int it = 0; it < max_iterations; ++it) {
    Vec r = y + interpolate(phi.u, y) - t;
    const bool done = r.cwiseAbs().maxCoeff() <= tol;
    Vec slope = Vec::Ones(M) + interpolate(du, y);
    if (!(slope.minCoeff() > 0)) throw NumericalRefusal("circle map inversion lost monotonicity");
    y -= r.cwiseQuotient(slope);
    // One step past the tolerance: the samples are differentiated
    // spectrally later, which amplifies node-to-node noise.
    if (done) return CircleDiffeo{Vec(y - t)};
  }
  std::ostringstream os;
  os << "circle map inversion did not converge in " << max_iterations << " Newton steps";
  throw NumericalRefusal(os.str());
}

Vec act(const CircleDiffeo& phi, const Vec& f_samples) {
  require_size(f_samples.size(), phi.u.size(), "act grid");
  CircleDiffeo psi = inverse(phi);
  Vec t = grid_points(psi.grid()) + psi.u;
  return interpolate(f_samples, t) + psi.derivative().array().log().matrix();
}

Vec momentum_density(const Vec& f) {
  Vec d1 = spectral_derivative(f, 1);
  return -spectral_derivative(f, 2) + 0.5 * d1.cwiseProduct(d1);
}

Vec schwarzian(const CircleDiffeo& phi) {
  Vec d1 = phi.derivative();
  Vec d2 = spectral_derivative(phi.u, 2);
  Vec d3 = spectral_derivative(phi.u, 3);
  Vec r2 = d2.cwiseQuotient(d1);
  return d3.cwiseQuotient(d1) - 1.5 * r2.cwiseProduct(r2);
}

double bott_thurston(const CircleDiffeo& a, const CircleDiffeo& b) {
  require_size(a.u.size(), b.u.size(), "bott_thurston grid");
  Vec bd = b.derivative();
  Vec t = grid_points(b.grid()) + b.u;
  Vec ad_at_b = Vec::Ones(b.grid()) + interpolate(spectral_derivative(a.u), t);
  Vec L = (ad_at_b.cwiseProduct(bd)).array().log().matrix();
  Vec dlogb = spectral_derivative(Vec(bd.array().log().matrix()));
  return 0.5 * grid_mean(L.cwiseProduct(dlogb));
}

double grid_l2(const Vec& samples) { return std::sqrt(grid_mean(samples.cwiseProduct(samples))); }

}  // namespace momap::virasoro
