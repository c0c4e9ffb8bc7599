// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "bellscope/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "bellscope/detection.hpp"
#include "bellscope/errors.hpp"
#include "bellscope/parallel.hpp"

namespace bellscope {

namespace {

double uniform01(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

std::pair<double, double> gaussian_pair(std::mt19937_64& gen) {
  const double u1 = uniform01(gen);
  const double u2 = uniform01(gen);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

Eigen::MatrixXcd haar_sample(int dim, std::mt19937_64& gen) {
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const auto [x, y] = gaussian_pair(gen);
      g(r, c) = Complex(x, y);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    q.col(c) *= mag > 0 ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

Eigen::MatrixXcd hermitian_direction(int dim, std::mt19937_64& gen) {
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const auto [x, y] = gaussian_pair(gen);
      a(r, c) = Complex(x, y);
    }
  }
  Eigen::MatrixXcd h = (a + a.adjoint()) / 2.0;
  const double norm = h.norm();
  return norm > 0 ? Eigen::MatrixXcd(h / norm) : h;
}

Eigen::MatrixXcd reorthonormalize(const Eigen::MatrixXcd& u) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(u);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < u.cols(); ++c) {
    const Complex diag = r(c, c);
    const double mag = std::abs(diag);
    q.col(c) *= mag > 0 ? diag / mag : Complex(1.0, 0.0);
  }
  return q;
}

struct Objective {
  int classes = 0;
  int singletons = 0;
  double separation = 0.0;

  bool better_than(const Objective& other) const {
    if (classes != other.classes) return classes > other.classes;
    if (singletons != other.singletons) return singletons > other.singletons;
    return separation > other.separation + 1e-12;
  }
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Objective evaluate(const Eigen::MatrixXcd& u_mat,
                   const std::vector<StateVector>& states) {
  const Unitary u{u_mat};
  const int count = static_cast<int>(states.size());
  std::vector<std::set<ClickPattern>> supports(count);
  for (int i = 0; i < count; ++i) {
    for (const auto& [pattern, prob] : evolve(u, states[i])) {
      if (prob > tol::support) supports[i].insert(pattern);
    }
  }
  UnionFind uf(count);
  std::map<ClickPattern, int> owner;
  for (int i = 0; i < count; ++i) {
    for (const auto& p : supports[i]) {
      auto [it, inserted] = owner.emplace(p, i);
      if (!inserted) uf.unite(i, it->second);
    }
  }
  std::map<int, int> sizes;
  for (int i = 0; i < count; ++i) ++sizes[uf.find(i)];
  Objective obj;
  obj.classes = static_cast<int>(sizes.size());
  for (const auto& [root, size] : sizes) {
    if (size == 1) ++obj.singletons;
  }
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      std::vector<ClickPattern> sym;
      std::set_symmetric_difference(supports[i].begin(), supports[i].end(),
                                    supports[j].begin(), supports[j].end(),
                                    std::back_inserter(sym));
      obj.separation += static_cast<double>(sym.size());
    }
  }
  return obj;
}

struct RestartOutcome {
  Eigen::MatrixXcd unitary;
  Objective objective;
  std::vector<std::pair<int, int>> trace;  // local evaluation index, best
  bool hit_target = false;
};

RestartOutcome run_restart(const SearchConfig& cfg,
                           const std::vector<StateVector>& states,
                           int restart_index, int eval_budget) {
  std::mt19937_64 gen(cfg.seed + static_cast<std::uint64_t>(restart_index));
  const int dim = cfg.n * cfg.d;
  RestartOutcome out;
  out.unitary = cfg.start_at_identity ? Eigen::MatrixXcd::Identity(dim, dim)
                                      : haar_sample(dim, gen);
  out.objective = evaluate(out.unitary, states);
  int evals = 1;
  out.trace.emplace_back(evals, out.objective.classes);
  if (cfg.target && out.objective.classes >= *cfg.target) {
    out.hit_target = true;
    return out;
  }
  const Complex i_unit(0.0, 1.0);
  double eps = cfg.step_scale;
  int rejects = 0;
  int steps = 0;
  while (evals < eval_budget && eps >= 1e-4) {
    const Eigen::MatrixXcd h = hermitian_direction(dim, gen);
    Eigen::MatrixXcd proposal =
        (Eigen::MatrixXcd(i_unit * eps * h)).exp() * out.unitary;
    if (++steps % 50 == 0) proposal = reorthonormalize(proposal);
    const Objective obj = evaluate(proposal, states);
    ++evals;
    if (obj.better_than(out.objective)) {
      out.unitary = std::move(proposal);
      out.objective = obj;
      out.trace.emplace_back(evals, obj.classes);
      rejects = 0;
      if (cfg.target && obj.classes >= *cfg.target) {
        out.hit_target = true;
        break;
      }
    } else if (++rejects >= 20) {
      eps *= 0.8;
      rejects = 0;
    }
  }
  return out;
}

}  // namespace

SearchResult maximize_classes(const SearchConfig& cfg) {
  if (cfg.budget < cfg.restarts || cfg.restarts < 1) {
    throw ValidationError("maximize_classes: need budget ≥ restarts ≥ 1");
  }
  if (cfg.step_scale <= 0.0 || cfg.step_scale > 1.0) {
    throw ValidationError("maximize_classes: step_scale must be in (0, 1]");
  }
  if (cfg.n * cfg.d > 16 || cfg.n > 4) {
    throw ResourceError("maximize_classes: capped at nD ≤ 16, n ≤ 4");
  }
  std::vector<StateVector> states;
  for (const BellLabel& label : all_bell_labels(cfg.n, cfg.d)) {
    states.push_back(bell_state(label, cfg.statistics));
  }

  const int per_restart = cfg.budget / cfg.restarts;
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  parallel_for(cfg.restarts, [&](int r) {
    outcomes[r] = run_restart(cfg, states, r, std::max(per_restart, 1));
  });

  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r) {
    if (outcomes[r].objective.better_than(outcomes[best].objective)) best = r;
  }

  SearchResult result;
  result.best_unitary = outcomes[best].unitary;
  result.best_classes = outcomes[best].objective.classes;
  result.best_singletons = outcomes[best].objective.singletons;
  result.converged = !cfg.target.has_value() || outcomes[best].hit_target;
  int offset = 0;
  int running_best = 0;
  for (const auto& outcome : outcomes) {
    for (const auto& [local_eval, classes] : outcome.trace) {
      if (classes > running_best) {
        running_best = classes;
        result.trace.emplace_back(offset + local_eval, running_best);
      }
    }
    offset += per_restart;
  }

  const Unitary u{result.best_unitary};
  result.group = classify_group(u, cfg.n, cfg.d, cfg.statistics);
  if (result.group.is_g1()) {
    const int bound = cfg.n * cfg.d - (cfg.n - 1);
    if (result.best_classes > bound) {
      throw InternalConsistencyError(
          "maximize_classes: G1 sample with " +
          std::to_string(result.best_classes) + " classes exceeds the bound " +
          std::to_string(bound));
    }
  }
  return result;
}

std::string search_result_to_json(const SearchConfig& cfg,
                                  const SearchResult& result) {
  CircuitSpec circuit;
  circuit.mode_count = cfg.n * cfg.d;
  circuit.photon_count = cfg.n;
  circuit.statistics = cfg.statistics;
  DeviceSpec dev;
  dev.kind = DeviceKind::CustomUnitary;
  dev.ports.resize(circuit.mode_count);
  std::iota(dev.ports.begin(), dev.ports.end(), 0);
  dev.custom = result.best_unitary;
  circuit.devices.push_back(std::move(dev));

  nlohmann::ordered_json doc = nlohmann::ordered_json::parse(circuit_to_json(circuit));
  nlohmann::ordered_json prov;
  prov["n"] = cfg.n;
  prov["d"] = cfg.d;
  prov["seed"] = cfg.seed;
  prov["budget"] = cfg.budget;
  prov["restarts"] = cfg.restarts;
  prov["step_scale"] = cfg.step_scale;
  prov["start"] = cfg.start_at_identity ? "identity" : "haar";
  prov["best_classes"] = result.best_classes;
  prov["best_singletons"] = result.best_singletons;
  prov["group"] = result.group.is_g1() ? "G1" : "G2";
  prov["converged"] = result.converged;
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& [eval, classes] : result.trace) {
    trace.push_back({eval, classes});
  }
  prov["trace"] = std::move(trace);
  doc["provenance"] = std::move(prov);
  return doc.dump(2) + "\n";
}

AuditReport bound_audit(int n, int d, Statistics statistics, int samples,
                        std::uint64_t seed) {
  if (n * d > 16) throw ResourceError("bound_audit: capped at nD ≤ 16");
  AuditReport report;
  report.n = n;
  report.d = d;
  report.statistics = statistics;
  report.samples = samples;
  report.seed = seed;
  report.bound = n * d - (n - 1);

  std::vector<LabeledState> states;
  for (const BellLabel& label : all_bell_labels(n, d)) {
    states.push_back({label.str(), bell_state(label, statistics)});
  }

  struct Sample {
    bool g1 = false;
    int classes = 0;
  };
  std::vector<Sample> results(samples);
  parallel_for(samples, [&](int i) {
    const Unitary u = haar_random_unitary(
        n * d, seed + static_cast<std::uint64_t>(i));
    const GroupTag tag = classify_group(u, n, d, statistics);
    const auto partition = distinguishability_partition(
        u, states, DetectorModel::NumberResolving);
    results[i] = {tag.is_g1(), static_cast<int>(partition.classes.size())};
  });

  for (const Sample& s : results) {
    ++report.class_histogram[s.classes];
    if (s.g1) {
      ++report.g1_count;
      report.max_g1_classes = std::max(report.max_g1_classes, s.classes);
      if (s.classes > report.bound) {
        throw InternalConsistencyError(
            "bound_audit: G1 sample with " + std::to_string(s.classes) +
            " classes exceeds the bound " + std::to_string(report.bound));
      }
    }
  }
  return report;
}

std::string audit_to_json(const AuditReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["n"] = report.n;
  doc["d"] = report.d;
  doc["statistics"] =
      report.statistics == Statistics::Boson ? "boson" : "fermion";
  doc["samples"] = report.samples;
  doc["seed"] = report.seed;
  doc["bound"] = report.bound;
  doc["g1_count"] = report.g1_count;
  doc["max_g1_classes"] = report.max_g1_classes;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [classes, count] : report.class_histogram) {
    hist[std::to_string(classes)] = count;
  }
  doc["class_histogram"] = std::move(hist);
  return doc.dump(2) + "\n";
}

}  // namespace bellscope
