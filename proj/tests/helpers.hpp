// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "bellscope/common.hpp"

namespace bellscope::testing {

inline bool complex_close(Complex a, Complex b, double tolerance = 1e-12) {
  return std::abs(a - b) <= tolerance;
}

/// Seeded uniform [-1, 1] real matrix.
inline Eigen::MatrixXcd random_real_matrix(int rows, int cols,
                                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto u = [&gen]() {
    return 2.0 * ((static_cast<double>(gen() >> 11)) * 0x1.0p-53) - 1.0;
  };
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(u(), 0.0);
  return m;
}

/// Seeded complex matrix with entries in the unit square.
inline Eigen::MatrixXcd random_complex_matrix(int rows, int cols,
                                              std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto u = [&gen]() {
    return 2.0 * ((static_cast<double>(gen() >> 11)) * 0x1.0p-53) - 1.0;
  };
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(u(), u());
  return m;
}

}  // namespace bellscope::testing
