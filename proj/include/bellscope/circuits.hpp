// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

/// Declarative linear-optics device catalog and circuit composition.
///
/// Committed device matrices (acting on the listed ports, identity
/// elsewhere):
///   BS            [[1,1],[1,-1]]/√2 on ports (a, b)
///   PBS           ports (aH, aV, bH, bV): H ports pass, V ports swap
///   HWP(θ)        [[cos2θ, sin2θ],[sin2θ, -cos2θ]] on an (H, V) pair
///   QWP(θ)        R(θ)·diag(1, i)·R(-θ) on an (H, V) pair
///   DovePrism(θ)  [[0, e^{-i2θ}],[e^{i2θ}, 0]] on a (+1, -1) OAM pair
///   BeamDisplacer ports (aH, aV, bH, bV): H ports pass, V ports walk off
///   LC(φ)         diag(1, e^{iφ}) on a (fast, slow) pair
///   OamBS         ports (p0+, p0-, p1+, p1-): Mach–Zehnder of two BS with
///                 Dove prisms at relative 45° (plus the balancing phase),
///                 sorting OAM parity onto separate output ports
///   QPlate        [[0,1],[1,0]] on a (+1, -1) OAM pair
///   PhaseShift(φ) e^{iφ} on one mode
///   Swap          [[0,1],[1,0]] on two modes
///   CustomUnitary explicit matrix over the listed ports

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bellscope/bell.hpp"
#include "bellscope/fock.hpp"

namespace bellscope {

enum class DeviceKind {
  BS,
  PBS,
  HWP,
  QWP,
  DovePrism,
  BeamDisplacer,
  LC,
  OamBS,
  QPlate,
  PhaseShift,
  Swap,
  CustomUnitary,
};

std::string device_kind_name(DeviceKind kind);
DeviceKind parse_device_kind(const std::string& name);

/// One catalog device instance: the ordered port list ties the catalog
/// matrix rows/columns to global modes.  Angles and phases are radians.
struct DeviceSpec {
  DeviceKind kind = DeviceKind::BS;
  std::vector<int> ports;
  std::map<std::string, double> params;  // "theta", "phi"
  Eigen::MatrixXcd custom;               // CustomUnitary only

  double param(const std::string& name) const;
};

struct CircuitSpec {
  int mode_count = 0;
  int photon_count = 0;
  Statistics statistics = Statistics::Boson;
  std::vector<DeviceSpec> devices;
};

/// Embeds one device into the full mode space.  Throws WiringError for
/// overlapping or out-of-range ports.
Unitary device_unitary(const DeviceSpec& device, int mode_count);

/// Ordered product U = U_k ··· U_2 U_1 of the embedded device unitaries.
Unitary compose_circuit(const CircuitSpec& circuit);

/// The reference identity scheme: every photon passes its own block
/// unchanged and meets D dedicated detectors.
CircuitSpec build_fig1_circuit(int n, int d);

/// The committed 16-mode analyzer for two-photon spin/path/OAM
/// hyperentanglement: per-photon basis stages followed by pairwise mixing of
/// the two photons' blocks, with detector relabeling folded into the tail.
CircuitSpec build_fig3_circuit();

/// Haar-distributed unitary, deterministic per seed (bit-stable across
/// platforms: Box–Muller over a fixed mt19937_64 stream, QR with the
/// R-diagonal phase fix).
Unitary haar_random_unitary(int dim, std::uint64_t seed);

/// Mode-unitary classification by the (n−1)-click norms over the full Bell
/// basis: G1 when every norm is positive, G2 with the first vanishing
/// (label, prefix) witness otherwise.
struct GroupTag {
  enum class Group { G1, G2 };
  Group group = Group::G1;
  std::optional<std::pair<BellLabel, ClickPattern>> witness;

  bool is_g1() const { return group == Group::G1; }
};

GroupTag classify_group(const Unitary& u, int n, int d, Statistics statistics,
                        double tolerance = tol::support);

// -- circuit file I/O ---------------------------------------------------------

std::string circuit_to_json(const CircuitSpec& circuit);
CircuitSpec circuit_from_json(const std::string& text);
CircuitSpec read_circuit_file(const std::filesystem::path& path);
void write_circuit_file(const CircuitSpec& circuit,
                        const std::filesystem::path& path);

}  // namespace bellscope
