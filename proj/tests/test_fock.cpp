// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "bellscope/bell.hpp"
#include "bellscope/circuits.hpp"
#include "bellscope/errors.hpp"
#include "bellscope/fock.hpp"
#include "helpers.hpp"

using namespace bellscope;
using bellscope::testing::complex_close;
using bellscope::testing::random_complex_matrix;
using bellscope::testing::random_real_matrix;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Unitary bs50() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 1, 1, -1;
  return Unitary(m * kInvSqrt2);
}

// Permutation-sum permanent oracle, independent of the production
// inclusion–exclusion path.
Complex permanent_oracle(const Eigen::MatrixXcd& m) {
  const int k = static_cast<int>(m.rows());
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total(0.0, 0.0);
  do {
    Complex prod(1.0, 0.0);
    for (int i = 0; i < k; ++i) prod *= m(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Transfer amplitude built only on the permutation-sum oracle.
Complex transfer_amplitude_oracle(const Unitary& u, const FockState& in,
                                  const ClickPattern& out) {
  const int n = in.photon_count();
  Eigen::MatrixXcd sub(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) sub(r, c) = u(out.detectors()[r], in.modes()[c]);
  return permanent_oracle(sub) /
         std::sqrt(in.multiplicity_factorial() * out.multiplicity_factorial());
}

// Ladder-algebra oracle for the (n−1)-click norm: applies
// c_s = Σ_p U_{sp} a_p directly to the amplitude map and takes the norm.
double prefix_norm_oracle(const Unitary& u, const StateVector& psi,
                          const std::vector<int>& prefix) {
  std::map<std::vector<int>, Complex> amps;
  for (const auto& [f, a] : psi.amplitudes()) amps[f.modes()] = a;
  for (int s : prefix) {
    std::map<std::vector<int>, Complex> next;
    for (const auto& [modes, a] : amps) {
      for (std::size_t i = 0; i < modes.size(); ++i) {
        if (i > 0 && modes[i] == modes[i - 1]) continue;
        const int p = modes[i];
        const double mult = static_cast<double>(
            std::count(modes.begin(), modes.end(), p));
        std::vector<int> reduced = modes;
        reduced.erase(reduced.begin() + static_cast<long>(i));
        next[reduced] += a * u(s, p) * std::sqrt(mult);
      }
    }
    amps = std::move(next);
  }
  double norm = 0.0;
  for (const auto& [modes, a] : amps) norm += std::norm(a);
  return norm;
}

}  // namespace

TEST_CASE("permanent: frozen values and shape error") {
  CHECK(complex_close(permanent(Eigen::MatrixXcd::Identity(2, 2)), 1.0));
  Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(2, 2);
  CHECK(complex_close(permanent(ones), 2.0));
  CHECK(complex_close(permanent(Eigen::MatrixXcd::Ones(3, 3)), 6.0));
  CHECK_THROWS_AS(permanent(Eigen::MatrixXcd::Ones(2, 3)), DimensionError);
}

TEST_CASE("permanent matches the permutation-sum oracle up to k = 5") {
  for (int k = 1; k <= 5; ++k) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const Eigen::MatrixXcd m =
          k <= 4 ? random_real_matrix(k, k, 100 * k + seed)
                 : random_complex_matrix(k, k, 100 * k + seed);
      const Complex expected = permanent_oracle(m);
      const Complex actual = permanent(m);
      CHECK(std::abs(actual - expected) <=
            1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("apply_unitary_to_creation reads unitary columns") {
  const Unitary id4 = Unitary::identity(4);
  const Eigen::VectorXcd col = apply_unitary_to_creation(id4, 2);
  CHECK(complex_close(col(2), 1.0));
  CHECK(complex_close(col(0), 0.0));
  CHECK(complex_close(col(1), 0.0));
  CHECK(complex_close(col(3), 0.0));

  const Unitary bs = bs50();
  const Eigen::VectorXcd c0 = apply_unitary_to_creation(bs, 0);
  CHECK(complex_close(c0(0), kInvSqrt2));
  CHECK(complex_close(c0(1), kInvSqrt2));
  const Eigen::VectorXcd c1 = apply_unitary_to_creation(bs, 1);
  CHECK(complex_close(c1(0), kInvSqrt2));
  CHECK(complex_close(c1(1), -kInvSqrt2));

  CHECK_THROWS_AS(apply_unitary_to_creation(bs, 2), DimensionError);
  CHECK(std::abs(c0.squaredNorm() - 1.0) < 1e-12);
}

TEST_CASE("non-unitary matrices are rejected with the measured defect") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(3, 3);
  bad(0, 0) = 1.5;
  try {
    Unitary u(bad);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.defect > 1.0);
  }
}

TEST_CASE("outcome_amplitude: identity and Hong–Ou–Mandel values") {
  const Unitary id4 = Unitary::identity(4);
  const FockState in({0, 3}, Statistics::Boson);
  CHECK(complex_close(
      outcome_amplitude(id4, in, ClickPattern({0, 3}), Statistics::Boson), 1.0));

  const Unitary bs = bs50();
  const FockState two({0, 1}, Statistics::Boson);
  CHECK(complex_close(
      outcome_amplitude(bs, two, ClickPattern({0, 1}), Statistics::Boson), 0.0));
  CHECK(complex_close(
      outcome_amplitude(bs, two, ClickPattern({0, 0}), Statistics::Boson),
      kInvSqrt2));
  CHECK(complex_close(
      outcome_amplitude(bs, two, ClickPattern({1, 1}), Statistics::Boson),
      -kInvSqrt2));

  CHECK_THROWS_AS(
      outcome_amplitude(bs, two, ClickPattern({0}), Statistics::Boson),
      ArityError);
}

TEST_CASE("outcome_amplitude agrees with the permutation-sum oracle") {
  const Unitary u = haar_random_unitary(5, 77);
  const FockState in({0, 1, 1, 4}, Statistics::Boson);
  for (const ClickPattern& out :
       enumerate_patterns(5, 4, Statistics::Boson)) {
    const Complex expected = transfer_amplitude_oracle(u, in, out);
    const Complex actual = outcome_amplitude(u, in, out, Statistics::Boson);
    CHECK(std::abs(actual - expected) < 1e-12);
  }
}

TEST_CASE("exchange symmetry of ordered amplitudes") {
  const Unitary u = haar_random_unitary(4, 11);
  const std::vector<int> in = {0, 2, 3};
  const std::vector<int> out = {1, 2, 3};
  const Complex base = outcome_amplitude_ordered(u, in, out, Statistics::Boson);

  // bosons: any reordering leaves the amplitude unchanged
  const std::vector<int> in_swapped = {2, 0, 3};
  const std::vector<int> out_swapped = {2, 1, 3};
  CHECK(complex_close(
      outcome_amplitude_ordered(u, in_swapped, out, Statistics::Boson), base));
  CHECK(complex_close(
      outcome_amplitude_ordered(u, in, out_swapped, Statistics::Boson), base));

  // fermions: one transposition flips the sign, two restore it
  const Complex fbase =
      outcome_amplitude_ordered(u, in, out, Statistics::Fermion);
  CHECK(complex_close(
      outcome_amplitude_ordered(u, in_swapped, out, Statistics::Fermion),
      -fbase));
  CHECK(complex_close(
      outcome_amplitude_ordered(u, in_swapped, out_swapped, Statistics::Fermion),
      fbase));
}

TEST_CASE("fermionic states reject repeated modes") {
  CHECK_THROWS_AS(FockState({1, 1}, Statistics::Fermion), StatisticsError);
  CHECK_THROWS_AS(
      outcome_amplitude(Unitary::identity(3), FockState({0, 1}, Statistics::Fermion),
                        ClickPattern({2, 2}), Statistics::Fermion),
      StatisticsError);
}

TEST_CASE("evolve: identity keeps the occupation; the splitter bunches") {
  const Unitary id4 = Unitary::identity(4);
  const StateVector psi =
      StateVector::basis_state(FockState({0, 2}, Statistics::Boson), 4);
  const auto probs = evolve(id4, psi);
  REQUIRE(probs.size() == 1);
  CHECK(probs.at(ClickPattern({0, 2})) == doctest::Approx(1.0).epsilon(1e-12));

  const auto hom = evolve(bs50(), StateVector::basis_state(
                                      FockState({0, 1}, Statistics::Boson), 2));
  REQUIRE(hom.size() == 2);
  CHECK(hom.at(ClickPattern({0, 0})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hom.at(ClickPattern({1, 1})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hom.count(ClickPattern({0, 1})) == 0);
}

TEST_CASE("evolve matches the per-pattern oracle on random superpositions") {
  const Unitary u = haar_random_unitary(4, 123);
  std::map<FockState, Complex> amps;
  amps.emplace(FockState({0, 1}, Statistics::Boson), Complex(0.6, 0.0));
  amps.emplace(FockState({1, 3}, Statistics::Boson), Complex(0.0, 0.8));
  const StateVector psi(2, 4, Statistics::Boson, std::move(amps));
  const auto probs = evolve(u, psi);
  double total = 0.0;
  for (const ClickPattern& pattern : enumerate_patterns(4, 2, Statistics::Boson)) {
    Complex amp(0.0, 0.0);
    for (const auto& [f, a] : psi.amplitudes()) {
      amp += a * transfer_amplitude_oracle(u, f, pattern);
    }
    const double expected = std::norm(amp);
    const auto it = probs.find(pattern);
    const double actual = it == probs.end() ? 0.0 : it->second;
    CHECK(actual == doctest::Approx(expected).epsilon(1e-10));
    total += expected;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("three-photon evolve agrees with the oracle") {
  const Unitary u = haar_random_unitary(6, 321);
  const StateVector psi = bell_state(BellLabel{3, 2, 1, {0, 1}});
  const auto probs = evolve(u, psi);
  double total = 0.0;
  for (const ClickPattern& pattern : enumerate_patterns(6, 3, Statistics::Boson)) {
    Complex amp(0.0, 0.0);
    for (const auto& [f, a] : psi.amplitudes()) {
      amp += a * transfer_amplitude_oracle(u, f, pattern);
    }
    const auto it = probs.find(pattern);
    const double actual = it == probs.end() ? 0.0 : it->second;
    CHECK(actual == doctest::Approx(std::norm(amp)).epsilon(1e-10));
    total += std::norm(amp);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fermionic evolution never repeats a detector") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Unitary u = haar_random_unitary(6, 900 + seed);
    const StateVector psi = bell_state(BellLabel{3, 2, 1, {1, 0}},
                                       Statistics::Fermion);
    for (const auto& [pattern, prob] : evolve(u, psi)) {
      CHECK_FALSE(pattern.has_repeats());
    }
  }
}

TEST_CASE("marginal_prefix_probability: frozen cases") {
  // two-photon Bell state under the identity: each mode clicks with p = 1/2
  const StateVector bell22 = bell_state(BellLabel{2, 2, 0, {0}});
  const Unitary id4 = Unitary::identity(4);
  for (int s = 0; s < 4; ++s) {
    CHECK(marginal_prefix_probability(id4, bell22, ClickPattern({s})) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }

  // the identity never sends two photons into one block
  const StateVector bell32 = bell_state(BellLabel{3, 2, 0, {0, 0}});
  const Unitary id6 = Unitary::identity(6);
  CHECK(marginal_prefix_probability(id6, bell32, ClickPattern({0, 1})) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(marginal_prefix_probability(id4, bell22, ClickPattern({0, 1})),
                  ArityError);
}

TEST_CASE("marginal matches the ladder-algebra norm oracle") {
  const Unitary u = haar_random_unitary(6, 4242);
  const StateVector psi = bell_state(BellLabel{3, 2, 1, {1, 1}});
  for (const ClickPattern& prefix : enumerate_patterns(6, 2, Statistics::Boson)) {
    const double expected = prefix_norm_oracle(u, psi, prefix.detectors());
    const double actual = marginal_prefix_probability(u, psi, prefix);
    CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
    CHECK(actual >= 0.0);
  }
}

TEST_CASE("StateVector validates norm, shape, and statistics") {
  std::map<FockState, Complex> bad;
  bad.emplace(FockState({0, 1}, Statistics::Boson), Complex(0.5, 0.0));
  CHECK_THROWS_AS(StateVector(2, 4, Statistics::Boson, bad), ValidationError);

  std::map<FockState, Complex> wrong_count;
  wrong_count.emplace(FockState({0}, Statistics::Boson), Complex(1.0, 0.0));
  CHECK_THROWS_AS(StateVector(2, 4, Statistics::Boson, wrong_count), ArityError);

  std::map<FockState, Complex> outside;
  outside.emplace(FockState({0, 7}, Statistics::Boson), Complex(1.0, 0.0));
  CHECK_THROWS_AS(StateVector(2, 4, Statistics::Boson, outside), DimensionError);
}

TEST_CASE("FockExpansion annihilation chains reduce photon count") {
  const Unitary bs = bs50();
  const StateVector psi =
      StateVector::basis_state(FockState({0, 1}, Statistics::Boson), 2);
  FockExpansion e = FockExpansion::of(psi);
  e = apply_output_annihilation(bs, e, 0);
  CHECK(e.photon_count == 1);
  // c_0 (a†_0 a†_1)|0⟩ with c_0 = (a_0 + a_1)/√2 → (a†_1 + a†_0)|0⟩/√2
  CHECK(complex_close(e.amplitudes.at(FockState({0}, Statistics::Boson)),
                      kInvSqrt2));
  CHECK(complex_close(e.amplitudes.at(FockState({1}, Statistics::Boson)),
                      kInvSqrt2));
  e = apply_output_annihilation(bs, e, 0);
  CHECK(e.photon_count == 0);
  CHECK(complex_close(e.amplitudes.at(FockState({}, Statistics::Boson)), 1.0));
  CHECK_THROWS_AS(apply_output_annihilation(bs, e, 0), ArityError);
}
