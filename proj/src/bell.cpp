// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "bellscope/bell.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "bellscope/errors.hpp"

namespace bellscope {

namespace {

void validate_label(const BellLabel& label) {
  if (label.n < 2 || label.d < 2) {
    throw LabelError("BellLabel: need n ≥ 2 and D ≥ 2");
  }
  if (label.n * label.d > 20) {
    throw ResourceError("BellLabel: n·D = " + std::to_string(label.n * label.d) +
                        " exceeds the 20-mode cap");
  }
  if (static_cast<int>(label.shifts.size()) != label.n - 1) {
    throw LabelError("BellLabel: expected " + std::to_string(label.n - 1) +
                     " shift indices, got " + std::to_string(label.shifts.size()));
  }
  if (label.phase < 0 || label.phase >= label.d) {
    throw LabelError("BellLabel: phase index out of range");
  }
  for (int i : label.shifts) {
    if (i < 0 || i >= label.d) throw LabelError("BellLabel: shift index out of range");
  }
}

}  // namespace

std::string BellLabel::str() const {
  std::ostringstream os;
  os << "bell(P=" << phase << ";i=";
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    if (k) os << ",";
    os << shifts[k];
  }
  os << ")";
  return os.str();
}

std::vector<BellLabel> all_bell_labels(int n, int d) {
  std::vector<BellLabel> labels;
  const int index_count = static_cast<int>(std::pow(d, n - 1));
  for (int p = 0; p < d; ++p) {
    for (int raw = 0; raw < index_count; ++raw) {
      std::vector<int> shifts(n - 1);
      int rest = raw;
      for (int k = n - 2; k >= 0; --k) {
        shifts[k] = rest % d;
        rest /= d;
      }
      labels.push_back(BellLabel{n, d, p, std::move(shifts)});
    }
  }
  return labels;
}

StateVector bell_state(const BellLabel& label, Statistics statistics) {
  validate_label(label);
  const int n = label.n;
  const int d = label.d;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  std::map<FockState, Complex> amps;
  for (int j = 0; j < d; ++j) {
    std::vector<int> modes(n);
    modes[0] = j;
    for (int k = 1; k < n; ++k) {
      modes[k] = k * d + (j + label.shifts[k - 1]) % d;
    }
    const double arg = 2.0 * std::numbers::pi * j * label.phase / d;
    amps.emplace(FockState(std::move(modes), statistics),
                 std::polar(inv_sqrt_d, arg));
  }
  return StateVector(n, n * d, statistics, std::move(amps));
}

Eigen::MatrixXcd bell_gram(int n, int d) {
  const double basis_size = std::pow(d, n);
  if (basis_size > 4096) {
    throw ResourceError("bell_gram: D^n exceeds the 4096 cap");
  }
  const auto labels = all_bell_labels(n, d);
  std::vector<StateVector> states;
  states.reserve(labels.size());
  for (const auto& l : labels) states.push_back(bell_state(l));
  const int size = static_cast<int>(labels.size());
  Eigen::MatrixXcd gram(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      gram(r, c) = states[r].inner_product(states[c]);
    }
  }
  return gram;
}

StateVector local_unitary(const StateVector& psi, int photon,
                          const Eigen::MatrixXcd& u) {
  const int n = psi.photon_count();
  if (photon < 0 || photon >= n) {
    throw DimensionError("local_unitary: photon index out of range");
  }
  if (u.rows() != u.cols() || psi.mode_count() != n * u.rows()) {
    throw DimensionError("local_unitary: block size does not divide the modes");
  }
  const int d = static_cast<int>(u.rows());
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(psi.mode_count(), psi.mode_count());
  full.block(photon * d, photon * d, d, d) = u;
  return apply_mode_unitary(Unitary(std::move(full)), psi);
}

// -- hyperentanglement --------------------------------------------------------

namespace {

void validate_dof(const DofLabel& l) {
  const bool ok = (l.dof == Dof::Spin && (l.kind == PairKind::Phi || l.kind == PairKind::Theta)) ||
                  (l.dof == Dof::Path && (l.kind == PairKind::Theta || l.kind == PairKind::Psi)) ||
                  (l.dof == Dof::Oam && (l.kind == PairKind::Psi || l.kind == PairKind::Phi));
  if (!ok) throw LabelError("DofLabel: kind " + l.str() + " not defined for this degree of freedom");
}

// The anticorrelated pair family per degree of freedom: spin Theta (HV±VH),
// path Psi (a1a4±a2a3), OAM Phi (+-±-+).  The correlated family pairs equal
// level bits on the two photons.
bool anticorrelated(const DofLabel& l) {
  switch (l.dof) {
    case Dof::Spin: return l.kind == PairKind::Theta;
    case Dof::Path: return l.kind == PairKind::Psi;
    case Dof::Oam: return l.kind == PairKind::Phi;
  }
  return false;
}

const char* kind_name(PairKind k) {
  switch (k) {
    case PairKind::Phi: return "Phi";
    case PairKind::Psi: return "Psi";
    case PairKind::Theta: return "Theta";
  }
  return "?";
}

}  // namespace

std::string DofLabel::str() const {
  return std::string(kind_name(kind)) + (minus ? "-" : "+");
}

DofLabel parse_dof_label(Dof dof, const std::string& text) {
  if (text.size() < 2) throw LabelError("DofLabel: cannot parse '" + text + "'");
  const char sign = text.back();
  const std::string name = text.substr(0, text.size() - 1);
  PairKind kind;
  if (name == "Phi") kind = PairKind::Phi;
  else if (name == "Psi") kind = PairKind::Psi;
  else if (name == "Theta") kind = PairKind::Theta;
  else throw LabelError("DofLabel: unknown family '" + name + "'");
  if (sign != '+' && sign != '-') throw LabelError("DofLabel: bad sign in '" + text + "'");
  DofLabel l{dof, kind, sign == '-'};
  validate_dof(l);
  return l;
}

int HyperLabel::sequence() const {
  validate_dof(spin);
  validate_dof(path);
  validate_dof(oam);
  const int xs = anticorrelated(spin) ? 1 : 0;
  const int xp = anticorrelated(path) ? 1 : 0;
  const int xo = anticorrelated(oam) ? 1 : 0;
  const int zs = spin.minus ? 1 : 0;
  const int zp = path.minus ? 1 : 0;
  const int zo = oam.minus ? 1 : 0;
  return 1 + 32 * xs + 16 * xo + 8 * xp + 4 * zo + 2 * zs + zp;
}

HyperLabel HyperLabel::from_sequence(int sequence) {
  if (sequence < 1 || sequence > 64) {
    throw LabelError("HyperLabel: sequence " + std::to_string(sequence) +
                     " outside 1..64");
  }
  const int bits = sequence - 1;
  HyperLabel l;
  l.spin = DofLabel{Dof::Spin, (bits & 32) ? PairKind::Theta : PairKind::Phi,
                    (bits & 2) != 0};
  l.oam = DofLabel{Dof::Oam, (bits & 16) ? PairKind::Phi : PairKind::Psi,
                   (bits & 4) != 0};
  l.path = DofLabel{Dof::Path, (bits & 8) ? PairKind::Psi : PairKind::Theta,
                    (bits & 1) != 0};
  return l;
}

std::string HyperLabel::str() const {
  std::ostringstream os;
  os << "Phi_" << sequence() << "(" << spin.str() << "_spin "
     << path.str() << "_path " << oam.str() << "_oam)";
  return os.str();
}

int hyper_level(int path_bit, int spin_bit, int oam_bit) {
  return 4 * path_bit + 2 * spin_bit + oam_bit;
}

StateVector hyper_bell_state(const HyperLabel& label) {
  validate_dof(label.spin);
  validate_dof(label.path);
  validate_dof(label.oam);
  // Each factor contributes two (bitA, bitB, sign) terms; the product has
  // eight terms with amplitude ±1/(2√2).
  struct Term {
    int a, b;
    double sign;
  };
  auto terms_of = [](const DofLabel& l) -> std::array<Term, 2> {
    const double s = l.minus ? -1.0 : 1.0;
    if (anticorrelated(l)) return {Term{0, 1, 1.0}, Term{1, 0, s}};
    return {Term{0, 0, 1.0}, Term{1, 1, s}};
  };
  const auto ts = terms_of(label.spin);
  const auto tp = terms_of(label.path);
  const auto to = terms_of(label.oam);
  const double amp = 1.0 / (2.0 * std::sqrt(2.0));
  std::map<FockState, Complex> amps;
  for (const Term& p : tp) {
    for (const Term& s : ts) {
      for (const Term& o : to) {
        const int mode_a = hyper_level(p.a, s.a, o.a);
        const int mode_b = 8 + hyper_level(p.b, s.b, o.b);
        amps.emplace(FockState({mode_a, mode_b}, Statistics::Boson),
                     Complex(amp * p.sign * s.sign * o.sign, 0.0));
      }
    }
  }
  return StateVector(2, 16, Statistics::Boson, std::move(amps));
}

Eigen::MatrixXcd hyper_local_unitary(const Eigen::Matrix2cd& u_path,
                                     const Eigen::Matrix2cd& u_spin,
                                     const Eigen::Matrix2cd& u_oam) {
  Eigen::MatrixXcd full(8, 8);
  for (int p1 = 0; p1 < 2; ++p1)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int o1 = 0; o1 < 2; ++o1)
        for (int p0 = 0; p0 < 2; ++p0)
          for (int s0 = 0; s0 < 2; ++s0)
            for (int o0 = 0; o0 < 2; ++o0)
              full(hyper_level(p1, s1, o1), hyper_level(p0, s0, o0)) =
                  u_path(p1, p0) * u_spin(s1, s0) * u_oam(o1, o0);
  return full;
}

std::string hyper_label_table_json() {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["level_map"] = "level = 4*path + 2*spin + oam";
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int seq = 1; seq <= 64; ++seq) {
    const HyperLabel l = HyperLabel::from_sequence(seq);
    nlohmann::ordered_json row;
    row["sequence"] = seq;
    row["spin"] = l.spin.str();
    row["path"] = l.path.str();
    row["oam"] = l.oam.str();
    rows.push_back(std::move(row));
  }
  doc["labels"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace bellscope
