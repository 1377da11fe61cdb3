#include "momap/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace momap {

NodesWeights gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  NodesWeights r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      double pn = n == 1 ? x : p1;
      double pnm1 = n == 1 ? 1 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

NodesWeights composite_unit_interval(const QuadratureRule& rule) {
  if (rule.panels < 1) throw std::invalid_argument("quadrature: panels must be positive");
  NodesWeights base = gauss_legendre(rule.nodes);
  NodesWeights r;
  const double h = 1.0 / rule.panels;
  for (int p = 0; p < rule.panels; ++p) {
    for (size_t i = 0; i < base.x.size(); ++i) {
      r.x.push_back(h * (p + 0.5 * (base.x[i] + 1)));
      r.w.push_back(0.5 * h * base.w[i]);
    }
  }
  return r;
}

double pairwise_sum(const std::vector<double>& values) {
  if (values.empty()) return 0;
  std::vector<double> level = values;
  while (level.size() > 1) {
    std::vector<double> next((level.size() + 1) / 2);
    for (size_t i = 0; i < next.size(); ++i) {
      next[i] = level[2 * i] + (2 * i + 1 < level.size() ? level[2 * i + 1] : 0.0);
    }
    level.swap(next);
  }
  return level[0];
}

}  // namespace momap
