#pragma once

#include <cmath>
#include <random>

#include "qaffine/linalg.hpp"

namespace testing_support {

using qaffine::Complex;
using qaffine::ComplexMatrix;

inline ComplexMatrix random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

/// Deformation parameter away from low-order roots of unity.
inline Complex generic_q(std::mt19937& rng) {
  std::uniform_real_distribution<double> mod(0.6, 1.5), arg(0.15, 1.2);
  return std::polar(mod(rng), arg(rng));
}

/// x = e^theta for a random complex rapidity.
inline Complex generic_x(std::mt19937& rng) {
  std::uniform_real_distribution<double> re(-1.0, 1.0), im(-0.5, 0.5);
  return std::exp(Complex(re(rng), im(rng)));
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testing_support
