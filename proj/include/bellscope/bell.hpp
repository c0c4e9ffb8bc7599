// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

/// Qudit Bell bases and hyperentangled Bell-like products.
///
/// The n-photon D-level Bell state with label (P, i_1..i_{n-1}) is
///   (1/√D) Σ_j exp(i 2π j P / D) |j, (j+i_1) mod D, ..., (j+i_{n-1}) mod D⟩,
/// photon k occupying global mode k·D + level.  The amplitude on the j = 0
/// term is real positive, which makes state equality directly testable.
///
/// The two-photon eight-level hyperentangled family is the product of three
/// two-level pair states (one per degree of freedom: spin, path, OAM) under
/// the fixed level map  level = 4·path + 2·spin + oam.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bellscope/fock.hpp"

namespace bellscope {

/// Label (P, (i_1..i_{n-1})) of an n-photon D-level Bell state.
struct BellLabel {
  int n = 2;
  int d = 2;
  int phase = 0;            ///< P ∈ [0, D)
  std::vector<int> shifts;  ///< i_1..i_{n-1}, each ∈ [0, D)

  std::string str() const;

  friend bool operator==(const BellLabel&, const BellLabel&) = default;
  friend auto operator<=>(const BellLabel& a, const BellLabel& b) {
    if (auto c = a.n <=> b.n; c != 0) return c;
    if (auto c = a.d <=> b.d; c != 0) return c;
    if (auto c = a.phase <=> b.phase; c != 0) return c;
    return a.shifts <=> b.shifts;
  }
};

/// All D^n labels of an (n, D) system in lexicographic (P, i_1..) order.
std::vector<BellLabel> all_bell_labels(int n, int d);

/// Builds the Bell state for `label`; throws LabelError for out-of-range
/// components and ResourceError above n·D = 20.
StateVector bell_state(const BellLabel& label,
                       Statistics statistics = Statistics::Boson);

/// Gram matrix of the full (n, D) Bell basis (identity for a correct
/// construction).  Capped at D^n ≤ 4096.
Eigen::MatrixXcd bell_gram(int n, int d);

/// Applies a D×D unitary to one photon's level block, identity elsewhere.
StateVector local_unitary(const StateVector& psi, int photon,
                          const Eigen::MatrixXcd& u);

// -- two-photon spin/path/OAM hyperentanglement ------------------------------

enum class Dof { Spin, Path, Oam };

/// Pair-state family names.  Valid combinations per degree of freedom:
/// spin: Phi (HH±VV), Theta (HV±VH); path: Theta (a1a3±a2a4), Psi (a1a4±a2a3);
/// OAM: Psi (++±--), Phi (+-±-+).
enum class PairKind { Phi, Psi, Theta };

struct DofLabel {
  Dof dof = Dof::Spin;
  PairKind kind = PairKind::Phi;
  bool minus = false;

  std::string str() const;  // e.g. "Phi+", "Theta-"
};

DofLabel parse_dof_label(Dof dof, const std::string& text);

/// One of the 64 hyperentangled products.  Sequence numbers are the committed
/// 1..64 enumeration; see data/hyper_labels.json for the full table.
struct HyperLabel {
  DofLabel spin{Dof::Spin, PairKind::Phi, false};
  DofLabel path{Dof::Path, PairKind::Theta, false};
  DofLabel oam{Dof::Oam, PairKind::Psi, false};

  int sequence() const;  // 1..64
  static HyperLabel from_sequence(int sequence);

  std::string str() const;  // e.g. "Phi_49(Theta+_spin Theta+_path Phi+_oam)"

  friend bool operator==(const HyperLabel&, const HyperLabel&) = default;
};

/// Two-photon state on 16 modes (8 levels per photon): the tensor product of
/// the three pair states, 8 nonzero amplitudes of magnitude 1/(2√2).
StateVector hyper_bell_state(const HyperLabel& label);

/// Fixed level map: level = 4·path + 2·spin + oam.
int hyper_level(int path_bit, int spin_bit, int oam_bit);

/// Single-photon 8×8 unitary acting as u_path ⊗ u_spin ⊗ u_oam under the
/// level map (used to hop between hyperentangled states).
Eigen::MatrixXcd hyper_local_unitary(const Eigen::Matrix2cd& u_path,
                                     const Eigen::Matrix2cd& u_spin,
                                     const Eigen::Matrix2cd& u_oam);

/// Serialized label table (sequence ↔ degree-of-freedom triple), matching
/// data/hyper_labels.json.
std::string hyper_label_table_json();

}  // namespace bellscope
