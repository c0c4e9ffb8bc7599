// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "bellscope/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "bellscope/errors.hpp"

namespace bellscope {

namespace {

void check_sorted_fermion_free(const std::vector<int>& modes, Statistics stat,
                               const char* what) {
  if (stat == Statistics::Fermion) {
    for (std::size_t i = 1; i < modes.size(); ++i) {
      if (modes[i] == modes[i - 1]) {
        throw StatisticsError(std::string(what) +
                              ": repeated fermionic mode " +
                              std::to_string(modes[i]));
      }
    }
  }
  for (int m : modes) {
    if (m < 0) throw DimensionError(std::string(what) + ": negative mode index");
  }
}

std::vector<std::pair<int, int>> run_lengths(const std::vector<int>& sorted) {
  std::vector<std::pair<int, int>> out;
  for (int m : sorted) {
    if (!out.empty() && out.back().first == m) {
      ++out.back().second;
    } else {
      out.emplace_back(m, 1);
    }
  }
  return out;
}

double multiset_factorial(const std::vector<int>& sorted) {
  double f = 1.0;
  int run = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    run = (sorted[i] == sorted[i - 1]) ? run + 1 : 1;
    f *= run;
  }
  return f;
}

}  // namespace

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

FockState::FockState(std::vector<int> modes, Statistics statistics)
    : modes_(std::move(modes)), stat_(statistics) {
  std::sort(modes_.begin(), modes_.end());
  check_sorted_fermion_free(modes_, stat_, "FockState");
}

std::vector<std::pair<int, int>> FockState::occupations() const {
  return run_lengths(modes_);
}

double FockState::multiplicity_factorial() const {
  return multiset_factorial(modes_);
}

ClickPattern::ClickPattern(std::vector<int> detectors)
    : detectors_(std::move(detectors)) {
  if (detectors_.empty()) {
    throw ArityError("ClickPattern: must contain at least one click");
  }
  std::sort(detectors_.begin(), detectors_.end());
  for (int d : detectors_) {
    if (d < 0) throw DimensionError("ClickPattern: negative detector index");
  }
}

bool ClickPattern::has_repeats() const {
  return std::adjacent_find(detectors_.begin(), detectors_.end()) !=
         detectors_.end();
}

std::vector<std::pair<int, int>> ClickPattern::multiplicities() const {
  return run_lengths(detectors_);
}

double ClickPattern::multiplicity_factorial() const {
  return multiset_factorial(detectors_);
}

ClickPattern ClickPattern::support_set() const {
  std::vector<int> uniq = detectors_;
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  return ClickPattern(std::move(uniq));
}

ClickPattern ClickPattern::extended(int detector) const {
  std::vector<int> ext = detectors_;
  ext.push_back(detector);
  return ClickPattern(std::move(ext));
}

StateVector::StateVector(int photon_count, int mode_count, Statistics statistics,
                         std::map<FockState, Complex> amplitudes)
    : photon_count_(photon_count),
      mode_count_(mode_count),
      stat_(statistics),
      amps_(std::move(amplitudes)) {
  if (photon_count_ < 0 || mode_count_ < 1) {
    throw DimensionError("StateVector: invalid photon/mode count");
  }
  double max_abs = 0.0;
  for (const auto& [f, a] : amps_) {
    if (f.photon_count() != photon_count_) {
      throw ArityError("StateVector: basis state with wrong photon count");
    }
    if (f.statistics() != stat_) {
      throw StatisticsError("StateVector: mixed statistics in amplitude map");
    }
    if (f.max_mode() >= mode_count_) {
      throw DimensionError("StateVector: mode index " +
                           std::to_string(f.max_mode()) + " outside " +
                           std::to_string(mode_count_) + " modes");
    }
    max_abs = std::max(max_abs, std::abs(a));
  }
  const double cutoff = tol::amplitude_rel * max_abs;
  std::erase_if(amps_, [&](const auto& kv) { return std::abs(kv.second) <= cutoff; });
  const double n = norm();
  if (std::abs(n - 1.0) > tol::norm_check) {
    throw ValidationError("StateVector: norm " + std::to_string(n) +
                              " differs from 1",
                          std::abs(n - 1.0));
  }
}

StateVector StateVector::basis_state(FockState f, int mode_count) {
  const int n = f.photon_count();
  const Statistics st = f.statistics();
  std::map<FockState, Complex> amps;
  amps.emplace(std::move(f), Complex(1.0, 0.0));
  return StateVector(n, mode_count, st, std::move(amps));
}

Complex StateVector::amplitude(const FockState& f) const {
  auto it = amps_.find(f);
  return it == amps_.end() ? Complex(0.0, 0.0) : it->second;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& [f, a] : amps_) s += std::norm(a);
  return s;
}

Complex StateVector::inner_product(const StateVector& other) const {
  if (photon_count_ != other.photon_count_ || mode_count_ != other.mode_count_ ||
      stat_ != other.stat_) {
    throw DimensionError("inner_product: mismatched state shapes");
  }
  Complex s(0.0, 0.0);
  for (const auto& [f, a] : amps_) {
    auto it = other.amps_.find(f);
    if (it != other.amps_.end()) s += std::conj(a) * it->second;
  }
  return s;
}

Eigen::VectorXcd apply_unitary_to_creation(const Unitary& u, int input_mode) {
  if (input_mode < 0 || input_mode >= u.dim()) {
    throw DimensionError("apply_unitary_to_creation: mode " +
                         std::to_string(input_mode) + " outside dimension " +
                         std::to_string(u.dim()));
  }
  return u.matrix().col(input_mode);
}

Complex permanent(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("permanent: matrix must be square");
  }
  const int k = static_cast<int>(m.rows());
  if (k == 0) return Complex(1.0, 0.0);
  if (k == 1) return m(0, 0);
  if (k == 2) return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
  if (k == 3) {
    Complex s(0.0, 0.0);
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& p : perms) s += m(0, p[0]) * m(1, p[1]) * m(2, p[2]);
    return s;
  }

  // Ryser's inclusion–exclusion with Gray-code subset iteration:
  // perm(M) = (-1)^k Σ_{S≠∅} (-1)^{|S|} Π_i Σ_{j∈S} M_{ij}.
  Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(k);
  Complex total(0.0, 0.0);
  unsigned gray = 0;
  int popcount = 0;
  const unsigned limit = 1u << k;
  for (unsigned idx = 1; idx < limit; ++idx) {
    const unsigned next = idx ^ (idx >> 1);
    const unsigned changed = next ^ gray;
    const int j = std::countr_zero(changed);
    if (next & changed) {
      row_sums += m.col(j);
      ++popcount;
    } else {
      row_sums -= m.col(j);
      --popcount;
    }
    gray = next;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < k; ++i) prod *= row_sums(i);
    total += ((k - popcount) % 2 == 0) ? prod : -prod;
  }
  return total;
}

namespace {

int sort_with_parity(std::vector<int>& v) {
  // insertion sort counting transpositions; lists here are tiny
  int swaps = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    int x = v[i];
    std::size_t j = i;
    while (j > 0 && v[j - 1] > x) {
      v[j] = v[j - 1];
      --j;
      ++swaps;
    }
    v[j] = x;
  }
  return swaps % 2;
}

Complex amplitude_canonical(const Unitary& u, const std::vector<int>& in,
                            const std::vector<int>& out, Statistics stat) {
  const int n = static_cast<int>(in.size());
  for (int m : in) {
    if (m >= u.dim()) throw DimensionError("outcome_amplitude: input mode outside unitary");
  }
  for (int m : out) {
    if (m >= u.dim()) throw DimensionError("outcome_amplitude: output mode outside unitary");
  }
  Eigen::MatrixXcd sub(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) sub(r, c) = u(out[r], in[c]);
  }
  if (stat == Statistics::Fermion) {
    return sub.determinant();
  }
  const double norm =
      std::sqrt(multiset_factorial(in) * multiset_factorial(out));
  return permanent(sub) / norm;
}

}  // namespace

Complex outcome_amplitude(const Unitary& u, const FockState& input,
                          const ClickPattern& output, Statistics statistics) {
  if (input.photon_count() != output.click_count()) {
    throw ArityError("outcome_amplitude: input has " +
                     std::to_string(input.photon_count()) + " quanta, output " +
                     std::to_string(output.click_count()) + " clicks");
  }
  if (input.statistics() != statistics) {
    throw StatisticsError("outcome_amplitude: input statistics mismatch");
  }
  if (statistics == Statistics::Fermion && output.has_repeats()) {
    throw StatisticsError("outcome_amplitude: repeated fermionic detector");
  }
  return amplitude_canonical(u, input.modes(), output.detectors(), statistics);
}

Complex outcome_amplitude_ordered(const Unitary& u, std::span<const int> input,
                                  std::span<const int> output,
                                  Statistics statistics) {
  if (input.size() != output.size()) {
    throw ArityError("outcome_amplitude_ordered: size mismatch");
  }
  std::vector<int> in(input.begin(), input.end());
  std::vector<int> out(output.begin(), output.end());
  int sign = 0;
  if (statistics == Statistics::Fermion) {
    sign = sort_with_parity(in) ^ sort_with_parity(out);
    check_sorted_fermion_free(in, statistics, "outcome_amplitude_ordered input");
    check_sorted_fermion_free(out, statistics, "outcome_amplitude_ordered output");
  } else {
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
  }
  const Complex a = amplitude_canonical(u, in, out, statistics);
  return sign ? -a : a;
}

namespace {

// Two-photon fast path: with |ψ⟩ = Σ_{pq} A_{pq} a†_p a†_q |0⟩ and A
// (anti)symmetric, evolution is A → U A Uᵀ.
StateVector apply_mode_unitary_two_photon(const Unitary& u,
                                          const StateVector& psi) {
  const int dim = u.dim();
  const Statistics stat = psi.statistics();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [f, amp] : psi.amplitudes()) {
    const int p = f.modes()[0];
    const int q = f.modes()[1];
    if (p == q) {
      a(p, p) += amp * inv_sqrt2;
    } else {
      a(p, q) += amp * 0.5;
      a(q, p) += (stat == Statistics::Fermion ? -amp : amp) * 0.5;
    }
  }
  const Eigen::MatrixXcd evolved = u.matrix() * a * u.matrix().transpose();
  std::map<FockState, Complex> out;
  for (int s = 0; s < dim; ++s) {
    if (stat == Statistics::Boson) {
      const Complex c = evolved(s, s) * std::sqrt(2.0);
      if (c != Complex(0.0, 0.0)) out.emplace(FockState({s, s}, stat), c);
    }
    for (int t = s + 1; t < dim; ++t) {
      const Complex c = stat == Statistics::Fermion
                            ? evolved(s, t) - evolved(t, s)
                            : evolved(s, t) + evolved(t, s);
      if (c != Complex(0.0, 0.0)) out.emplace(FockState({s, t}, stat), c);
    }
  }
  return StateVector(2, dim, stat, std::move(out));
}

}  // namespace

StateVector apply_mode_unitary(const Unitary& u, const StateVector& psi) {
  if (u.dim() != psi.mode_count()) {
    throw DimensionError("apply_mode_unitary: unitary dimension " +
                         std::to_string(u.dim()) + " != mode count " +
                         std::to_string(psi.mode_count()));
  }
  if (psi.photon_count() == 2) {
    return apply_mode_unitary_two_photon(u, psi);
  }
  const Statistics stat = psi.statistics();
  // Distribute quanta one at a time: coefficient maps keyed by the sorted
  // occupied-mode list.  For fermions each insertion tracks the sign of
  // commuting the new operator into ascending position.
  std::map<FockState, Complex> out;
  for (const auto& [f, amp] : psi.amplitudes()) {
    std::map<std::vector<int>, Complex> terms;
    terms.emplace(std::vector<int>{}, amp);
    for (int p : f.modes()) {
      std::map<std::vector<int>, Complex> next;
      for (const auto& [modes, coeff] : terms) {
        for (int s = 0; s < u.dim(); ++s) {
          const Complex c = u(s, p);
          if (c == Complex(0.0, 0.0)) continue;
          std::vector<int> ext = modes;
          auto pos = std::lower_bound(ext.begin(), ext.end(), s);
          double sign = 1.0;
          if (stat == Statistics::Fermion) {
            if (pos != ext.end() && *pos == s) continue;  // Pauli exclusion
            sign = ((ext.end() - pos) % 2 == 0) ? 1.0 : -1.0;
          }
          ext.insert(pos, s);
          next[std::move(ext)] += sign * coeff * c;
        }
      }
      terms = std::move(next);
    }
    const double in_fact = f.multiplicity_factorial();
    for (auto& [modes, coeff] : terms) {
      const double out_fact = multiset_factorial(modes);
      const Complex beta = coeff * std::sqrt(out_fact / in_fact);
      out[FockState(modes, stat)] += beta;
    }
  }
  return StateVector(psi.photon_count(), psi.mode_count(), stat, std::move(out));
}

std::map<ClickPattern, double> evolve(const Unitary& u, const StateVector& psi) {
  const StateVector evolved = apply_mode_unitary(u, psi);
  std::map<ClickPattern, double> probs;
  double total = 0.0;
  for (const auto& [f, a] : evolved.amplitudes()) {
    const double p = std::norm(a);
    total += p;
    if (p > tol::probability_abs) {
      probs.emplace(ClickPattern(f.modes()), p);
    }
  }
  if (std::abs(total - 1.0) > tol::norm_check) {
    throw InternalConsistencyError(
        "evolve: click distribution sums to " + std::to_string(total));
  }
  return probs;
}

double marginal_prefix_probability(const Unitary& u, const StateVector& psi,
                                   const ClickPattern& prefix) {
  if (prefix.click_count() != psi.photon_count() - 1) {
    throw ArityError("marginal_prefix_probability: prefix has " +
                     std::to_string(prefix.click_count()) + " clicks, need " +
                     std::to_string(psi.photon_count() - 1));
  }
  const auto probs = evolve(u, psi);
  double total = 0.0;
  for (int s = 0; s < u.dim(); ++s) {
    const ClickPattern full = prefix.extended(s);
    if (psi.statistics() == Statistics::Fermion && full.has_repeats()) continue;
    auto it = probs.find(full);
    if (it != probs.end()) total += it->second * full.multiplicity_factorial();
  }
  return total;
}

FockExpansion FockExpansion::of(const StateVector& psi) {
  return FockExpansion{psi.photon_count(), psi.mode_count(), psi.statistics(),
                       psi.amplitudes()};
}

double FockExpansion::norm() const {
  double s = 0.0;
  for (const auto& [f, a] : amplitudes) s += std::norm(a);
  return s;
}

Complex FockExpansion::inner_product(const FockExpansion& other) const {
  if (photon_count != other.photon_count || mode_count != other.mode_count ||
      statistics != other.statistics) {
    throw DimensionError("FockExpansion::inner_product: mismatched shapes");
  }
  Complex s(0.0, 0.0);
  for (const auto& [f, a] : amplitudes) {
    auto it = other.amplitudes.find(f);
    if (it != other.amplitudes.end()) s += std::conj(a) * it->second;
  }
  return s;
}

FockExpansion apply_output_annihilation(const Unitary& u,
                                        const FockExpansion& psi,
                                        int output_mode) {
  if (output_mode < 0 || output_mode >= u.dim() || u.dim() != psi.mode_count) {
    throw DimensionError("apply_output_annihilation: bad output mode");
  }
  if (psi.photon_count < 1) {
    throw ArityError("apply_output_annihilation: no quanta left to annihilate");
  }
  const Statistics stat = psi.statistics;
  // c_s = Σ_p U_{sp} a_p acting on the input-basis expansion;
  // a_p |..m_p..⟩ = √m_p |..m_p−1..⟩ for bosons, signed removal for fermions.
  std::map<FockState, Complex> out;
  for (const auto& [f, amp] : psi.amplitudes) {
    for (const auto& [p, mult] : f.occupations()) {
      const Complex c = u(output_mode, p);
      if (c == Complex(0.0, 0.0)) continue;
      std::vector<int> reduced = f.modes();
      reduced.erase(std::find(reduced.begin(), reduced.end(), p));
      double factor;
      if (stat == Statistics::Fermion) {
        int before = 0;
        for (int m : f.modes()) {
          if (m < p) ++before;
        }
        factor = (before % 2 == 0) ? 1.0 : -1.0;
      } else {
        factor = std::sqrt(static_cast<double>(mult));
      }
      out[FockState(std::move(reduced), stat)] += amp * c * factor;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
  return FockExpansion{psi.photon_count - 1, psi.mode_count, stat,
                       std::move(out)};
}

std::vector<ClickPattern> enumerate_patterns(int mode_count, int clicks,
                                             Statistics statistics) {
  std::vector<ClickPattern> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == clicks) {
      out.emplace_back(current);
      return;
    }
    for (int m = start; m < mode_count; ++m) {
      current.push_back(m);
      self(self, statistics == Statistics::Fermion ? m + 1 : m);
      current.pop_back();
    }
  };
  if (clicks > 0) rec(rec, 0);
  return out;
}

}  // namespace bellscope
