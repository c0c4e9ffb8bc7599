// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "bellscope/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "bellscope/errors.hpp"

namespace bellscope {

Complex ll_matrix_element(const Unitary& u, const StateVector& phi_i,
                          const StateVector& phi_j,
                          const ClickPattern& pattern) {
  const int n = phi_j.photon_count();
  const int m = pattern.click_count();
  if (m < 1 || m > n) {
    throw ArityError("ll_matrix_element: pattern order " + std::to_string(m) +
                     " outside 1..n");
  }
  FockExpansion bra = FockExpansion::of(phi_i);
  FockExpansion ket = FockExpansion::of(phi_j);
  for (int s : pattern.detectors()) {
    bra = apply_output_annihilation(u, bra, s);
    ket = apply_output_annihilation(u, ket, s);
  }
  return bra.inner_product(ket);
}

bool ll_pairwise_distinguishable(const Unitary& u, const StateVector& phi_i,
                                 const StateVector& phi_j, double tolerance) {
  if (std::abs(std::abs(phi_i.inner_product(phi_j)) - 1.0) < 1e-9) {
    throw ContractError("ll_pairwise_distinguishable: states must differ");
  }
  const int n = phi_j.photon_count();
  const Statistics stat = phi_j.statistics();
  for (int m = 1; m <= n; ++m) {
    for (const ClickPattern& pattern :
         enumerate_patterns(u.dim(), m, stat)) {
      if (std::abs(ll_matrix_element(u, phi_i, phi_j, pattern)) > tolerance) {
        return false;
      }
    }
  }
  return true;
}

bool simplified_g1_distinguishable(const Unitary& u, const GroupTag& tag,
                                   const StateVector& phi_i,
                                   const StateVector& phi_j, double tolerance) {
  if (!tag.is_g1()) {
    throw ContractError(
        "simplified_g1_distinguishable: requires a G1 unitary; the reduced "
        "criterion is not necessary-and-sufficient for G2");
  }
  const int n = phi_j.photon_count();
  const Statistics stat = phi_j.statistics();
  for (int s = 0; s < u.dim(); ++s) {
    const int max_power = stat == Statistics::Fermion ? 1 : n;
    for (int m = 1; m <= max_power; ++m) {
      const ClickPattern pattern(std::vector<int>(m, s));
      if (std::abs(ll_matrix_element(u, phi_i, phi_j, pattern)) > tolerance) {
        return false;
      }
    }
  }
  return true;
}

DetectorMode detector_mode(const Unitary& u, int n, int d, int output_mode) {
  if (u.dim() != n * d) {
    throw DimensionError("detector_mode: unitary dimension != n*D");
  }
  if (output_mode < 0 || output_mode >= u.dim()) {
    throw DimensionError("detector_mode: output mode out of range");
  }
  DetectorMode mode;
  mode.index = output_mode;
  mode.per_photon = Eigen::MatrixXcd(n, d);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < d; ++l) {
      mode.per_photon(k, l) = u(output_mode, k * d + l);
    }
  }
  return mode;
}

DetectionSignature detection_signature(const Unitary& u, int n, int d,
                                       const ClickPattern& prefix,
                                       int final_click, Statistics statistics) {
  if (prefix.click_count() != n - 1) {
    throw ArityError("detection_signature: prefix must have n-1 clicks");
  }
  std::vector<DetectorMode> factors;
  factors.reserve(n);
  for (int s : prefix.detectors()) factors.push_back(detector_mode(u, n, d, s));
  factors.push_back(detector_mode(u, n, d, final_click));

  // Component on per-photon levels (l_1..l_n) is the permanent (determinant
  // for fermions) of B with B_{m,k} = factor_m's coefficient on photon k at
  // level l_k: the projector keeps exactly the one-quantum-per-photon terms.
  const int dim = static_cast<int>(std::llround(std::pow(d, n)));
  DetectionSignature sig{prefix, final_click, Eigen::VectorXcd::Zero(dim)};
  std::vector<int> levels(n, 0);
  Eigen::MatrixXcd b(n, n);
  for (int flat = 0; flat < dim; ++flat) {
    int rest = flat;
    for (int k = n - 1; k >= 0; --k) {
      levels[k] = rest % d;
      rest /= d;
    }
    for (int m = 0; m < n; ++m) {
      for (int k = 0; k < n; ++k) {
        b(m, k) = factors[m].per_photon(k, levels[k]);
      }
    }
    sig.vector(flat) = statistics == Statistics::Fermion ? Complex(b.determinant())
                                                         : permanent(b);
  }
  return sig;
}

int signature_rank(const Unitary& u, int n, int d, const ClickPattern& prefix,
                   Statistics statistics, double rank_tolerance) {
  const int modes = n * d;
  const int dim = static_cast<int>(std::llround(std::pow(d, n)));
  Eigen::MatrixXcd stack(modes, dim);
  for (int f = 0; f < modes; ++f) {
    stack.row(f) =
        detection_signature(u, n, d, prefix, f, statistics).vector.transpose();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rank_tolerance * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

LimitValue limits(int n, int d) {
  if (n < 2 || d < 2) {
    throw LabelError("limits: need n ≥ 2 and D ≥ 2");
  }
  LimitValue v;
  v.n = n;
  v.d = d;
  v.n1 = n * d - (n - 1);
  v.n2_lower = 1;
  for (int k = 0; k < n - 1; ++k) v.n2_lower *= d;
  v.cc_bits = std::log2(static_cast<double>(v.n1));
  if (n == 2) {
    v.me = static_cast<double>(2 * d - 1) / (static_cast<double>(d) * d);
  } else {
    v.me = 1.0 / d;  // guaranteed floor for multi-photon systems
  }
  return v;
}

}  // namespace bellscope
