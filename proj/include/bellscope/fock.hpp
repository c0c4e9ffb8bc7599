// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

/// Exact few-photon mode algebra.
///
/// Conventions:
/// - A mode unitary U maps each input creation operator to a linear form over
///   output creation operators, a†_p = Σ_s U_{sp} c†_s, i.e. column p of U is
///   the fate of input mode p.
/// - Bosonic transfer amplitudes are permanents of the sub-matrix of U picked
///   by the (repeated) output/input mode lists, normalized by the square roots
///   of the multiplicity factorials; fermionic amplitudes are determinants
///   over strictly increasing mode lists.
/// - Fermionic amplitudes are always stored relative to strictly increasing
///   mode order; all sign bookkeeping is internal.

#pragma once

#include <map>
#include <span>
#include <vector>

#include "bellscope/common.hpp"
#include "bellscope/unitary.hpp"

namespace bellscope {

/// An n-quantum occupation of modes, stored as a sorted mode list
/// (non-decreasing for bosons, strictly increasing for fermions).
class FockState {
 public:
  FockState(std::vector<int> modes, Statistics statistics);

  int photon_count() const { return static_cast<int>(modes_.size()); }
  const std::vector<int>& modes() const { return modes_; }
  Statistics statistics() const { return stat_; }
  int max_mode() const { return modes_.empty() ? -1 : modes_.back(); }

  /// (mode, multiplicity) pairs in increasing mode order.
  std::vector<std::pair<int, int>> occupations() const;

  /// Π_m occupation(m)!  (1 for all fermionic states).
  double multiplicity_factorial() const;

  friend bool operator==(const FockState& a, const FockState& b) {
    return a.modes_ == b.modes_;
  }
  friend auto operator<=>(const FockState& a, const FockState& b) {
    return a.modes_ <=> b.modes_;
  }

 private:
  std::vector<int> modes_;
  Statistics stat_;
};

/// A multiset of fired detectors: total click count in [1, n], and all
/// detectors distinct in fermionic contexts.
class ClickPattern {
 public:
  explicit ClickPattern(std::vector<int> detectors);

  int click_count() const { return static_cast<int>(detectors_.size()); }
  const std::vector<int>& detectors() const { return detectors_; }
  bool has_repeats() const;
  std::vector<std::pair<int, int>> multiplicities() const;
  double multiplicity_factorial() const;

  /// Threshold-detector view: multiplicities erased.
  ClickPattern support_set() const;

  /// Pattern extended by one extra click (re-sorted).
  ClickPattern extended(int detector) const;

  friend bool operator==(const ClickPattern& a, const ClickPattern& b) {
    return a.detectors_ == b.detectors_;
  }
  friend auto operator<=>(const ClickPattern& a, const ClickPattern& b) {
    return a.detectors_ <=> b.detectors_;
  }

 private:
  std::vector<int> detectors_;
};

/// Normalized amplitude map over same-shape Fock states.  Amplitudes with
/// |amp| ≤ tol::amplitude_rel × max|amp| are dropped at construction; the
/// total norm must be 1 within tol::norm_check.
class StateVector {
 public:
  StateVector(int photon_count, int mode_count, Statistics statistics,
              std::map<FockState, Complex> amplitudes);

  /// Single basis state |F⟩.
  static StateVector basis_state(FockState f, int mode_count);

  int photon_count() const { return photon_count_; }
  int mode_count() const { return mode_count_; }
  Statistics statistics() const { return stat_; }
  const std::map<FockState, Complex>& amplitudes() const { return amps_; }

  Complex amplitude(const FockState& f) const;
  double norm() const;

  /// ⟨this|other⟩.
  Complex inner_product(const StateVector& other) const;

 private:
  int photon_count_;
  int mode_count_;
  Statistics stat_;
  std::map<FockState, Complex> amps_;
};

/// Unnormalized amplitude map for intermediate operator algebra
/// (annihilation chains and matrix elements); no normalization invariant.
struct FockExpansion {
  int photon_count = 0;
  int mode_count = 0;
  Statistics statistics = Statistics::Boson;
  std::map<FockState, Complex> amplitudes;

  static FockExpansion of(const StateVector& psi);

  double norm() const;
  Complex inner_product(const FockExpansion& other) const;  // ⟨this|other⟩
};

/// Column p of U: the coefficients of input creation operator p over output
/// creation operators.  Throws DimensionError if p is out of range.
Eigen::VectorXcd apply_unitary_to_creation(const Unitary& u, int input_mode);

/// Matrix permanent.  Brute-force permutation sum for k ≤ 3, Gray-coded
/// inclusion–exclusion for larger k (intended for k ≤ 8).
Complex permanent(const Eigen::MatrixXcd& m);

/// Transfer amplitude ⟨out|Û|in⟩ for canonical (sorted) states.
/// Bosons: perm(M) / sqrt(Π μ_out! · Π μ_in!) with M_{kl} = U_{s_k p_l};
/// fermions: det(M) over the strictly increasing lists.
Complex outcome_amplitude(const Unitary& u, const FockState& input,
                          const ClickPattern& output, Statistics statistics);

/// As above but over raw ordered mode lists.  Bosonic amplitudes are
/// invariant under reordering; fermionic amplitudes change sign with the
/// transposition parity relative to sorted order.
Complex outcome_amplitude_ordered(const Unitary& u, std::span<const int> input,
                                  std::span<const int> output,
                                  Statistics statistics);

/// Exact state evolution |ψ⟩ → Û|ψ⟩ expressed in the output mode basis.
StateVector apply_mode_unitary(const Unitary& u, const StateVector& psi);

/// Full-pattern click distribution: probability of each size-n detector
/// pattern.  Probabilities ≤ tol::probability_abs are omitted; the kept ones
/// sum to 1 within tol::norm_check.
std::map<ClickPattern, double> evolve(const Unitary& u, const StateVector& psi);

/// Norm of the (n−1)-fold annihilated state,
///   ⟨ψ| c†_{s1}…c†_{s_{n-1}} c_{s_{n-1}}…c_{s1} |ψ⟩,
/// computed as the weighted sum over single-click extensions of the prefix
/// (weight = multiplicity factorial of the extended pattern).
double marginal_prefix_probability(const Unitary& u, const StateVector& psi,
                                   const ClickPattern& prefix);

/// Applies the output-mode annihilation operator c_s = Σ_p U_{sp} a_p to an
/// input-basis expansion; the result has one quantum fewer and is generally
/// sub-normalized.
FockExpansion apply_output_annihilation(const Unitary& u,
                                        const FockExpansion& psi,
                                        int output_mode);

/// All click patterns of `clicks` detectors over `mode_count` modes, in
/// lexicographic order (multisets for bosons, subsets for fermions).
std::vector<ClickPattern> enumerate_patterns(int mode_count, int clicks,
                                             Statistics statistics);

double factorial(int k);

}  // namespace bellscope
