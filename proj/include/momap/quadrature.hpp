#pragma once

#include <vector>

namespace momap {

struct QuadratureRule {
  int nodes = 32;   // Gauss-Legendre nodes per panel
  int panels = 1;   // composite panels on [0, 1]
};

struct NodesWeights {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
NodesWeights gauss_legendre(int n);

// Composite rule mapped to [0, 1].
NodesWeights composite_unit_interval(const QuadratureRule& rule);

// Pairwise summation of w_i * f_i, fixed order.
double pairwise_sum(const std::vector<double>& values);

}  // namespace momap
