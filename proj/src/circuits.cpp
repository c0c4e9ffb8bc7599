// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "bellscope/circuits.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bellscope/errors.hpp"

namespace bellscope {

namespace {

using Eigen::Matrix2cd;
using Eigen::MatrixXcd;

constexpr Complex kI{0.0, 1.0};

Matrix2cd bs_matrix() {
  Matrix2cd m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Matrix2cd hwp_matrix(double theta) {
  Matrix2cd m;
  m << std::cos(2 * theta), std::sin(2 * theta), std::sin(2 * theta),
      -std::cos(2 * theta);
  return m;
}

Matrix2cd qwp_matrix(double theta) {
  Matrix2cd rot, retard;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  retard << 1, 0, 0, kI;
  return rot * retard * rot.transpose();
}

Matrix2cd dove_matrix(double theta) {
  Matrix2cd m;
  m << 0, std::polar(1.0, -2 * theta), std::polar(1.0, 2 * theta), 0;
  return m;
}

MatrixXcd pbs_matrix() {
  // ports (aH, aV, bH, bV): H transmitted, V exchanged between arms
  MatrixXcd m = MatrixXcd::Zero(4, 4);
  m(0, 0) = 1;
  m(2, 2) = 1;
  m(3, 1) = 1;
  m(1, 3) = 1;
  return m;
}

MatrixXcd oambs_matrix() {
  // Mach–Zehnder on (p0+, p0-, p1+, p1-): BS across arms per OAM level,
  // Dove prisms at relative 45° (arm 1 also carries the balancing -π/2
  // phase that pins the interferometer to the sorting point), BS again.
  MatrixXcd bs_arms = MatrixXcd::Zero(4, 4);
  const Matrix2cd b = bs_matrix();
  for (int level = 0; level < 2; ++level) {
    bs_arms(level, level) = b(0, 0);
    bs_arms(level, 2 + level) = b(0, 1);
    bs_arms(2 + level, level) = b(1, 0);
    bs_arms(2 + level, 2 + level) = b(1, 1);
  }
  MatrixXcd doves = MatrixXcd::Zero(4, 4);
  doves.block<2, 2>(0, 0) = dove_matrix(0.0);
  doves.block<2, 2>(2, 2) = std::polar(1.0, -std::numbers::pi / 2) *
                            dove_matrix(std::numbers::pi / 4);
  return bs_arms * doves * bs_arms;
}

MatrixXcd catalog_matrix(const DeviceSpec& d) {
  switch (d.kind) {
    case DeviceKind::BS:
      return bs_matrix();
    case DeviceKind::PBS:
      return pbs_matrix();
    case DeviceKind::HWP:
      return hwp_matrix(d.param("theta"));
    case DeviceKind::QWP:
      return qwp_matrix(d.param("theta"));
    case DeviceKind::DovePrism:
      return dove_matrix(d.param("theta"));
    case DeviceKind::BeamDisplacer:
      return pbs_matrix();
    case DeviceKind::LC: {
      Matrix2cd m;
      m << 1, 0, 0, std::polar(1.0, d.param("phi"));
      return m;
    }
    case DeviceKind::OamBS:
      return oambs_matrix();
    case DeviceKind::QPlate: {
      Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case DeviceKind::PhaseShift: {
      MatrixXcd m(1, 1);
      m(0, 0) = std::polar(1.0, d.param("phi"));
      return m;
    }
    case DeviceKind::Swap: {
      Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case DeviceKind::CustomUnitary:
      return d.custom;
  }
  throw WiringError("unknown device kind");
}

}  // namespace

std::string device_kind_name(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::BS: return "BS";
    case DeviceKind::PBS: return "PBS";
    case DeviceKind::HWP: return "HWP";
    case DeviceKind::QWP: return "QWP";
    case DeviceKind::DovePrism: return "DovePrism";
    case DeviceKind::BeamDisplacer: return "BeamDisplacer";
    case DeviceKind::LC: return "LC";
    case DeviceKind::OamBS: return "OAM-BS";
    case DeviceKind::QPlate: return "QPlate";
    case DeviceKind::PhaseShift: return "PhaseShift";
    case DeviceKind::Swap: return "Swap";
    case DeviceKind::CustomUnitary: return "CustomUnitary";
  }
  return "?";
}

DeviceKind parse_device_kind(const std::string& name) {
  static const std::map<std::string, DeviceKind> table = {
      {"BS", DeviceKind::BS},
      {"PBS", DeviceKind::PBS},
      {"HWP", DeviceKind::HWP},
      {"QWP", DeviceKind::QWP},
      {"DovePrism", DeviceKind::DovePrism},
      {"BeamDisplacer", DeviceKind::BeamDisplacer},
      {"LC", DeviceKind::LC},
      {"OAM-BS", DeviceKind::OamBS},
      {"QPlate", DeviceKind::QPlate},
      {"PhaseShift", DeviceKind::PhaseShift},
      {"Swap", DeviceKind::Swap},
      {"CustomUnitary", DeviceKind::CustomUnitary},
  };
  auto it = table.find(name);
  if (it == table.end()) {
    throw FileFormatError("unknown device kind '" + name + "'");
  }
  return it->second;
}

double DeviceSpec::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) {
    throw WiringError(device_kind_name(kind) + ": missing parameter '" + name +
                      "'");
  }
  return it->second;
}

Unitary device_unitary(const DeviceSpec& device, int mode_count) {
  const MatrixXcd local = catalog_matrix(device);
  const int width = static_cast<int>(local.rows());
  if (static_cast<int>(device.ports.size()) != width) {
    throw WiringError(device_kind_name(device.kind) + ": expected " +
                      std::to_string(width) + " ports, got " +
                      std::to_string(device.ports.size()));
  }
  std::set<int> seen;
  for (int p : device.ports) {
    if (p < 0 || p >= mode_count) {
      throw WiringError(device_kind_name(device.kind) + ": port " +
                        std::to_string(p) + " outside " +
                        std::to_string(mode_count) + " modes");
    }
    if (!seen.insert(p).second) {
      throw WiringError(device_kind_name(device.kind) + ": port " +
                        std::to_string(p) + " listed twice");
    }
  }
  MatrixXcd full = MatrixXcd::Identity(mode_count, mode_count);
  for (int r = 0; r < width; ++r) {
    for (int c = 0; c < width; ++c) {
      full(device.ports[r], device.ports[c]) = local(r, c);
    }
  }
  return Unitary(std::move(full));
}

Unitary compose_circuit(const CircuitSpec& circuit) {
  if (circuit.mode_count < 1) {
    throw WiringError("compose_circuit: circuit has no modes");
  }
  MatrixXcd u = MatrixXcd::Identity(circuit.mode_count, circuit.mode_count);
  for (const DeviceSpec& d : circuit.devices) {
    u = device_unitary(d, circuit.mode_count).matrix() * u;
  }
  return Unitary(std::move(u));
}

CircuitSpec build_fig1_circuit(int n, int d) {
  CircuitSpec c;
  c.mode_count = n * d;
  c.photon_count = n;
  for (int k = 0; k < n; ++k) {
    DeviceSpec dev;
    dev.kind = DeviceKind::CustomUnitary;
    dev.ports.resize(d);
    for (int l = 0; l < d; ++l) dev.ports[l] = k * d + l;
    dev.custom = MatrixXcd::Identity(d, d);
    c.devices.push_back(std::move(dev));
  }
  return c;
}

CircuitSpec build_fig3_circuit() {
  // Mode layout: photon A on 0..7, photon B on 8..15, level = 4p + 2s + o.
  // Per-photon stage (path/spin/OAM basis changes), then the two blocks meet
  // pairwise on balanced beam splitters, then port-B levels are relabeled so
  // the reference product state lands on the (k, k+8) coincidence family.
  CircuitSpec c;
  c.mode_count = 16;
  c.photon_count = 2;

  auto add = [&c](DeviceKind kind, std::vector<int> ports,
                  std::map<std::string, double> params = {}) {
    DeviceSpec d;
    d.kind = kind;
    d.ports = std::move(ports);
    d.params = std::move(params);
    c.devices.push_back(std::move(d));
  };

  const double pi = std::numbers::pi;

  // photon A: balanced path mixing per (spin, oam)
  for (int s = 0; s < 2; ++s)
    for (int o = 0; o < 2; ++o) add(DeviceKind::BS, {2 * s + o, 4 + 2 * s + o});
  // photon A: spin exchange per (path, oam)
  for (int p = 0; p < 2; ++p)
    for (int o = 0; o < 2; ++o)
      add(DeviceKind::HWP, {4 * p + o, 4 * p + 2 + o}, {{"theta", pi / 4}});
  // photon A: quarter phase on the lower OAM level
  for (int p = 0; p < 2; ++p)
    for (int s = 0; s < 2; ++s)
      add(DeviceKind::PhaseShift, {4 * p + 2 * s + 1}, {{"phi", pi / 2}});

  // photon B: balanced path mixing
  for (int s = 0; s < 2; ++s)
    for (int o = 0; o < 2; ++o)
      add(DeviceKind::BS, {8 + 2 * s + o, 12 + 2 * s + o});
  // photon B: quarter phase then OAM exchange
  for (int p = 0; p < 2; ++p)
    for (int s = 0; s < 2; ++s)
      add(DeviceKind::PhaseShift, {8 + 4 * p + 2 * s + 1}, {{"phi", pi / 2}});
  for (int p = 0; p < 2; ++p)
    for (int s = 0; s < 2; ++s)
      add(DeviceKind::DovePrism, {8 + 4 * p + 2 * s, 8 + 4 * p + 2 * s + 1},
          {{"theta", 0.0}});

  // the photons meet: one balanced splitter per level
  for (int k = 0; k < 8; ++k) add(DeviceKind::BS, {k, 8 + k});

  // output-port B relabeling (spin and OAM exchanges)
  for (int p = 0; p < 2; ++p)
    for (int o = 0; o < 2; ++o)
      add(DeviceKind::HWP, {8 + 4 * p + o, 8 + 4 * p + 2 + o},
          {{"theta", pi / 4}});
  for (int p = 0; p < 2; ++p)
    for (int s = 0; s < 2; ++s)
      add(DeviceKind::DovePrism, {8 + 4 * p + 2 * s, 8 + 4 * p + 2 * s + 1},
          {{"theta", 0.0}});

  return c;
}

Unitary haar_random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionError("haar_random_unitary: dim must be ≥ 1");
  std::mt19937_64 gen(seed);
  auto uniform01 = [&gen]() {
    // 53-bit mantissa in (0, 1]; independent of distribution library quirks
    return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
  };
  auto gaussian_pair = [&]() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return std::pair<double, double>{r * std::cos(a), r * std::sin(a)};
  };
  MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const auto [x, y] = gaussian_pair();
      g(r, c) = Complex(x, y);
    }
  }
  Eigen::HouseholderQR<MatrixXcd> qr(g);
  MatrixXcd q = qr.householderQ();
  const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    const Complex phase = mag > 0 ? diag / mag : Complex(1.0, 0.0);
    q.col(c) *= phase;
  }
  return Unitary(std::move(q));
}

GroupTag classify_group(const Unitary& u, int n, int d, Statistics statistics,
                        double tolerance) {
  if (u.dim() != n * d) {
    throw DimensionError("classify_group: unitary dimension " +
                         std::to_string(u.dim()) + " != n*D");
  }
  const auto prefixes = enumerate_patterns(n * d, n - 1, statistics);
  for (const BellLabel& label : all_bell_labels(n, d)) {
    const StateVector psi = bell_state(label, statistics);
    const auto probs = evolve(u, psi);
    // marginal per prefix, accumulated from the full-pattern distribution
    std::map<ClickPattern, double> marginals;
    for (const auto& [pattern, prob] : probs) {
      const double weighted = prob * pattern.multiplicity_factorial();
      const auto& dets = pattern.detectors();
      for (std::size_t skip = 0; skip < dets.size(); ++skip) {
        if (skip > 0 && dets[skip] == dets[skip - 1]) continue;
        std::vector<int> prefix;
        prefix.reserve(dets.size() - 1);
        for (std::size_t i = 0; i < dets.size(); ++i) {
          if (i != skip) prefix.push_back(dets[i]);
        }
        marginals[ClickPattern(std::move(prefix))] += weighted;
      }
    }
    for (const ClickPattern& prefix : prefixes) {
      auto it = marginals.find(prefix);
      const double value = it == marginals.end() ? 0.0 : it->second;
      if (value <= tolerance) {
        return GroupTag{GroupTag::Group::G2, std::make_pair(label, prefix)};
      }
    }
  }
  return GroupTag{GroupTag::Group::G1, std::nullopt};
}

// -- circuit file I/O ---------------------------------------------------------

namespace {

nlohmann::ordered_json matrix_to_json(const MatrixXcd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXcd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw FileFormatError("matrix: expected a non-empty array of rows");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (static_cast<int>(row.size()) != cols) {
      throw FileFormatError("matrix: ragged rows");
    }
    for (int c = 0; c < cols; ++c) {
      const auto& e = row.at(c);
      if (!e.is_array() || e.size() != 2) {
        throw FileFormatError("matrix: entries must be [re, im] pairs");
      }
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

std::string circuit_to_json(const CircuitSpec& circuit) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["mode_count"] = circuit.mode_count;
  doc["photon_count"] = circuit.photon_count;
  doc["statistics"] =
      circuit.statistics == Statistics::Boson ? "boson" : "fermion";
  nlohmann::ordered_json devs = nlohmann::ordered_json::array();
  for (const DeviceSpec& d : circuit.devices) {
    nlohmann::ordered_json dev;
    dev["kind"] = device_kind_name(d.kind);
    dev["ports"] = d.ports;
    if (!d.params.empty()) dev["params"] = d.params;
    if (d.kind == DeviceKind::CustomUnitary) {
      dev["matrix"] = matrix_to_json(d.custom);
    }
    devs.push_back(std::move(dev));
  }
  doc["devices"] = std::move(devs);
  return doc.dump(2) + "\n";
}

CircuitSpec circuit_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FileFormatError(std::string("circuit: JSON parse error: ") + e.what());
  }
  try {
    CircuitSpec c;
    c.mode_count = doc.at("mode_count").get<int>();
    c.photon_count = doc.at("photon_count").get<int>();
    const std::string stat = doc.value("statistics", "boson");
    if (stat == "boson") {
      c.statistics = Statistics::Boson;
    } else if (stat == "fermion") {
      c.statistics = Statistics::Fermion;
    } else {
      throw FileFormatError("circuit: unknown statistics '" + stat + "'");
    }
    for (const auto& dev : doc.at("devices")) {
      DeviceSpec d;
      d.kind = parse_device_kind(dev.at("kind").get<std::string>());
      d.ports = dev.at("ports").get<std::vector<int>>();
      if (dev.contains("params")) {
        d.params = dev.at("params").get<std::map<std::string, double>>();
      }
      if (d.kind == DeviceKind::CustomUnitary) {
        d.custom = matrix_from_json(dev.at("matrix"));
      }
      c.devices.push_back(std::move(d));
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError(std::string("circuit: bad field: ") + e.what());
  }
}

CircuitSpec read_circuit_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileFormatError("cannot open circuit file " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return circuit_from_json(buf.str());
}

void write_circuit_file(const CircuitSpec& circuit,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw FileFormatError("cannot write circuit file " + path.string());
  }
  out << circuit_to_json(circuit);
}

}  // namespace bellscope
