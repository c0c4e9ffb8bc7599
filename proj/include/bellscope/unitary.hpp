// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "bellscope/common.hpp"

namespace bellscope {

/// A mode unitary validated at construction: ‖U†U − I‖_max ≤ tol::unitarity.
/// Immutable after construction and safe to share between workers.
class Unitary {
 public:
  explicit Unitary(Eigen::MatrixXcd entries);

  static Unitary identity(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Complex operator()(int row, int col) const { return mat_(row, col); }

  /// Maximum entry magnitude of U†U − I (recomputed; diagnostic only).
  double unitarity_defect() const;

 private:
  Eigen::MatrixXcd mat_;
};

/// Defect of an arbitrary square matrix without constructing a Unitary.
double unitarity_defect(const Eigen::MatrixXcd& m);

}  // namespace bellscope
