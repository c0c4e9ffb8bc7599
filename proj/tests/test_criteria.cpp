// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>

#include <doctest.h>

#include "bellscope/bell.hpp"
#include "bellscope/circuits.hpp"
#include "bellscope/criteria.hpp"
#include "bellscope/detection.hpp"
#include "bellscope/errors.hpp"
#include "helpers.hpp"

using namespace bellscope;

namespace {

Unitary polarization_bsm() {
  CircuitSpec c;
  c.mode_count = 4;
  c.photon_count = 2;
  DeviceSpec bs_h{DeviceKind::BS, {0, 2}, {}, {}};
  DeviceSpec bs_v{DeviceKind::BS, {1, 3}, {}, {}};
  c.devices = {bs_h, bs_v};
  return compose_circuit(c);
}

bool supports_disjoint(const Unitary& u, const StateVector& a,
                       const StateVector& b) {
  const auto sa =
      outcome_support(u, a, DetectorModel::NumberResolving, tol::support);
  const auto sb =
      outcome_support(u, b, DetectorModel::NumberResolving, tol::support);
  for (const auto& [pattern, prob] : sa.probabilities) {
    if (sb.probabilities.count(pattern)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ll_matrix_element: diagonal elements are norms") {
  const Unitary u = haar_random_unitary(4, 2024);
  const StateVector psi = bell_state(BellLabel{2, 2, 1, {1}});
  for (int m = 1; m <= 2; ++m) {
    for (const ClickPattern& pattern :
         enumerate_patterns(4, m, Statistics::Boson)) {
      const Complex value = ll_matrix_element(u, psi, psi, pattern);
      CHECK(std::abs(value.imag()) < 1e-12);
      CHECK(value.real() >= -1e-12);
    }
  }
}

TEST_CASE("ll_matrix_element: frozen identity-circuit values") {
  const Unitary id4 = Unitary::identity(4);
  const StateVector a = bell_state(BellLabel{2, 2, 0, {0}});
  const StateVector b = bell_state(BellLabel{2, 2, 0, {1}});
  const StateVector c = bell_state(BellLabel{2, 2, 1, {0}});

  // disjoint occupations: one click cannot connect them
  CHECK(std::abs(ll_matrix_element(id4, a, b, ClickPattern({0}))) < 1e-12);
  // same occupation, different phase: the element survives
  CHECK(ll_matrix_element(id4, a, c, ClickPattern({0})).real() ==
        doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(ll_matrix_element(id4, a, b, ClickPattern({0, 1, 2})),
                  ArityError);
}

TEST_CASE("ll_matrix_element is Hermitian in the state pair") {
  const Unitary u = haar_random_unitary(6, 8);
  const StateVector a = bell_state(BellLabel{3, 2, 0, {1, 0}});
  const StateVector b = bell_state(BellLabel{3, 2, 1, {0, 1}});
  for (int m = 1; m <= 3; ++m) {
    for (const ClickPattern& pattern :
         enumerate_patterns(6, m, Statistics::Boson)) {
      const Complex ab = ll_matrix_element(u, a, b, pattern);
      const Complex ba = ll_matrix_element(u, b, a, pattern);
      CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
    }
  }
}

TEST_CASE("ll_pairwise_distinguishable: the classic polarization analyzer") {
  const Unitary u = polarization_bsm();
  const StateVector phi_plus = bell_state(BellLabel{2, 2, 0, {0}});
  const StateVector psi_plus = bell_state(BellLabel{2, 2, 0, {1}});
  const StateVector phi_minus = bell_state(BellLabel{2, 2, 1, {0}});
  const StateVector psi_minus = bell_state(BellLabel{2, 2, 1, {1}});

  CHECK(ll_pairwise_distinguishable(u, psi_plus, psi_minus));
  CHECK_FALSE(ll_pairwise_distinguishable(u, phi_plus, phi_minus));
  CHECK(ll_pairwise_distinguishable(u, phi_plus, psi_minus));

  CHECK_THROWS_AS(ll_pairwise_distinguishable(u, phi_plus, phi_plus),
                  ContractError);
}

TEST_CASE("LL decision matches support disjointness on Haar samples") {
  for (const auto& [n, d] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    const auto labels = all_bell_labels(n, d);
    std::vector<StateVector> states;
    for (const auto& l : labels) states.push_back(bell_state(l));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Unitary u = haar_random_unitary(n * d, 600 + seed);
      for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
          CHECK(ll_pairwise_distinguishable(u, states[i], states[j]) ==
                supports_disjoint(u, states[i], states[j]));
        }
      }
    }
  }
}

TEST_CASE("the reduced criterion agrees with the full one on G1 unitaries") {
  for (const auto& [n, d] : {std::pair{2, 2}, {3, 2}}) {
    const auto labels = all_bell_labels(n, d);
    std::vector<StateVector> states;
    for (const auto& l : labels) states.push_back(bell_state(l));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Unitary u = haar_random_unitary(n * d, 7100 + seed);
      const GroupTag tag = classify_group(u, n, d, Statistics::Boson);
      if (!tag.is_g1()) continue;
      for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
          CHECK(simplified_g1_distinguishable(u, tag, states[i], states[j]) ==
                ll_pairwise_distinguishable(u, states[i], states[j]));
        }
      }
    }
  }
}

TEST_CASE("the reduced criterion refuses G2 unitaries") {
  const Unitary id6 = Unitary::identity(6);
  const GroupTag tag = classify_group(id6, 3, 2, Statistics::Boson);
  REQUIRE_FALSE(tag.is_g1());
  const StateVector a = bell_state(BellLabel{3, 2, 0, {0, 0}});
  const StateVector b = bell_state(BellLabel{3, 2, 0, {0, 1}});
  CHECK_THROWS_AS(simplified_g1_distinguishable(id6, tag, a, b), ContractError);
}

TEST_CASE("detector modes regroup unitary rows by photon") {
  const Unitary u = haar_random_unitary(6, 2718);
  const DetectorMode mode = detector_mode(u, 3, 2, 4);
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 2; ++l) {
      CHECK(mode.per_photon(k, l) == u(4, 2 * k + l));
    }
  }
}

TEST_CASE("detection_signature: identity basis case and boson symmetry") {
  const Unitary id4 = Unitary::identity(4);
  const DetectionSignature sig =
      detection_signature(id4, 2, 2, ClickPattern({0}), 2, Statistics::Boson);
  REQUIRE(sig.vector.size() == 4);
  CHECK(std::abs(sig.vector(0) - Complex(1.0, 0.0)) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(sig.vector(i)) < 1e-12);

  // clicks inside one photon block produce the zero signature
  const DetectionSignature zero =
      detection_signature(id4, 2, 2, ClickPattern({0}), 1, Statistics::Boson);
  CHECK(zero.vector.norm() < 1e-12);

  const Unitary u = haar_random_unitary(4, 333);
  const DetectionSignature ab =
      detection_signature(u, 2, 2, ClickPattern({1}), 3, Statistics::Boson);
  const DetectionSignature ba =
      detection_signature(u, 2, 2, ClickPattern({3}), 1, Statistics::Boson);
  CHECK((ab.vector - ba.vector).norm() < 1e-12);
}

TEST_CASE("fermionic signatures vanish when the final click repeats") {
  const Unitary u = haar_random_unitary(6, 77);
  const DetectionSignature sig = detection_signature(
      u, 3, 2, ClickPattern({2, 4}), 4, Statistics::Fermion);
  CHECK(sig.vector.norm() < 1e-12);
}

TEST_CASE("signature ranks: identity case and Haar-generic counts") {
  // identity at (2,2): only the cross-block finals survive
  CHECK(signature_rank(Unitary::identity(4), 2, 2, ClickPattern({0}),
                       Statistics::Boson) == 2);

  // two-photon Haar samples reach 2D-1
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Unitary u = haar_random_unitary(8, 4100 + seed);
    const int rank = signature_rank(u, 2, 4, ClickPattern({3}),
                                    Statistics::Boson);
    CHECK(rank <= 7);
    CHECK(rank == 7);
  }

  // three-photon samples with a doubled prefix reach 3D-2
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Unitary u = haar_random_unitary(6, 4200 + seed);
    const int rank = signature_rank(u, 3, 2, ClickPattern({1, 1}),
                                    Statistics::Boson);
    CHECK(rank <= 4);
    CHECK(rank == 4);
  }

  // distinct-click prefixes are not the binding record: the constraint
  // construction lives on the repeated-click one, and generic distinct
  // prefixes span the full signature space
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Unitary u = haar_random_unitary(6, 4300 + seed);
    CHECK(signature_rank(u, 3, 2, ClickPattern({0, 3}), Statistics::Boson) ==
          6);
  }
}

TEST_CASE("limits: formula values") {
  CHECK(limits(3, 3).n1 == 7);
  CHECK(limits(4, 4).n1 == 13);
  CHECK(limits(3, 2).n1 == 4);
  CHECK(limits(3, 2).n2_lower == 4);
  CHECK(limits(4, 2).n2_lower == 8);
  CHECK(limits(2, 8).n1 == 15);
  CHECK(limits(2, 8).cc_bits == doctest::Approx(std::log2(15.0)).epsilon(1e-12));
  CHECK(limits(2, 2).me == doctest::Approx(0.75));
  CHECK(limits(2, 8).me == doctest::Approx(15.0 / 64.0));
  CHECK(limits(3, 2).me == doctest::Approx(0.5));
  CHECK_THROWS_AS(limits(1, 2), LabelError);
}
