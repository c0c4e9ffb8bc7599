// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

/// Discrimination criteria and distinguishing-limit formulas.
///
/// Two n-photon states are completely discriminable by a linear-optics
/// click measurement iff every matrix element
///   ⟨φ_i| c†_{s1}…c†_{sm} c_{sm}…c_{s1} |φ_j⟩,   m = 1..n,
/// vanishes.  For mode unitaries whose (n−1)-click norms never vanish, the
/// same decision follows from single-mode operator powers alone, which this
/// module exposes as the reduced criterion.

#pragma once

#include <vector>

#include "bellscope/circuits.hpp"
#include "bellscope/fock.hpp"

namespace bellscope {

/// ⟨φ_i| c†_{s1}…c†_{sm} c_{sm}…c_{s1} |φ_j⟩ for the given click pattern
/// (m = pattern size, 1 ≤ m ≤ n), evaluated by exact ladder algebra in the
/// input basis.
Complex ll_matrix_element(const Unitary& u, const StateVector& phi_i,
                          const StateVector& phi_j, const ClickPattern& pattern);

/// Complete-discrimination test: true iff the matrix element vanishes for
/// every click pattern of every order m = 1..n.  The two states must differ.
bool ll_pairwise_distinguishable(const Unitary& u, const StateVector& phi_i,
                                 const StateVector& phi_j,
                                 double tolerance = tol::support);

/// Reduced single-mode criterion, valid only for G1 unitaries: checks
/// ⟨φ_i|(c†_s)^m (c_s)^m|φ_j⟩ = 0 for all modes s and m = 1..n.  Throws
/// ContractError when `tag` classifies the unitary as G2; the reduction is
/// not equivalent there.
bool simplified_g1_distinguishable(const Unitary& u, const GroupTag& tag,
                                   const StateVector& phi_i,
                                   const StateVector& phi_j,
                                   double tolerance = tol::support);

/// Detector mode |D_s⟩: row s of U regrouped into n per-photon blocks of D
/// coefficients.
struct DetectorMode {
  int index = 0;
  Eigen::MatrixXcd per_photon;  // n rows × D columns

  Eigen::VectorXcd photon_component(int photon) const {
    return per_photon.row(photon);
  }
};

DetectorMode detector_mode(const Unitary& u, int n, int d, int output_mode);

/// The (anti)symmetrized projection of |D_{s1}⟩…|D_{s_{n-1}}⟩|D_f⟩ onto the
/// one-quantum-per-photon sector, expanded over the D^n per-photon level
/// basis.  May be the zero vector.
struct DetectionSignature {
  ClickPattern prefix;
  int final_click = 0;
  Eigen::VectorXcd vector;  // dimension D^n
};

DetectionSignature detection_signature(const Unitary& u, int n, int d,
                                       const ClickPattern& prefix,
                                       int final_click, Statistics statistics);

/// Numerical rank (SVD, cutoff tol::rank_rel × σ_max) of the nD signatures
/// obtained by sweeping the final click over all modes.
int signature_rank(const Unitary& u, int n, int d, const ClickPattern& prefix,
                   Statistics statistics, double rank_tolerance = tol::rank_rel);

/// Distinguishing-limit summary for an (n, D) system.
struct LimitValue {
  int n = 0;
  int d = 0;
  int n1 = 0;               // nD − (n−1)
  long long n2_lower = 0;   // D^{n−1}
  double cc_bits = 0.0;     // log2(n1)
  double me = 0.0;          // (2D−1)/D² for n = 2, else the 1/D floor
};

LimitValue limits(int n, int d);

}  // namespace bellscope
