// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "bellscope/unitary.hpp"

#include <string>

#include "bellscope/errors.hpp"

namespace bellscope {

double unitarity_defect(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd gram = m.adjoint() * m;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return (gram - id).cwiseAbs().maxCoeff();
}

Unitary::Unitary(Eigen::MatrixXcd entries) : mat_(std::move(entries)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
    throw DimensionError("unitary must be a non-empty square matrix, got " +
                         std::to_string(mat_.rows()) + "x" +
                         std::to_string(mat_.cols()));
  }
  const double defect = bellscope::unitarity_defect(mat_);
  if (defect > tol::unitarity) {
    throw ValidationError(
        "matrix is not unitary: max |U†U - I| entry = " + std::to_string(defect),
        defect);
  }
}

Unitary Unitary::identity(int dim) {
  return Unitary(Eigen::MatrixXcd::Identity(dim, dim));
}

double Unitary::unitarity_defect() const { return bellscope::unitarity_defect(mat_); }

}  // namespace bellscope
