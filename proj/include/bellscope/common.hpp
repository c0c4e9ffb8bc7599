// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

namespace bellscope {

using Complex = std::complex<double>;

/// Particle exchange statistics of the simulated quanta.
enum class Statistics { Boson, Fermion };

/// Numerical thresholds used throughout the library.  True zeros in this
/// problem class are exact rationals built from roots of unity, so the gap
/// between "zero" and "smallest genuine value" is many orders of magnitude.
namespace tol {
inline constexpr double unitarity = 1e-10;        // max |U†U - I| entry
inline constexpr double amplitude_rel = 1e-9;     // amp pruning, relative to max
inline constexpr double probability_abs = 1e-18;  // probability pruning
inline constexpr double support = 1e-12;          // support membership / G1 norms
inline constexpr double rank_rel = 1e-9;          // singular-value cutoff, relative
inline constexpr double norm_check = 1e-9;        // Σ|amp|² == 1 check
}  // namespace tol

/// Global mode indices decompose as photon_block * levels + level.
inline int mode_block(int mode, int levels) { return mode / levels; }
inline int mode_level(int mode, int levels) { return mode % levels; }

}  // namespace bellscope
