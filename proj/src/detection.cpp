// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include "bellscope/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "bellscope/errors.hpp"

namespace bellscope {

std::string detector_model_name(DetectorModel model) {
  return model == DetectorModel::NumberResolving ? "number-resolving"
                                                 : "threshold";
}

OutcomeSupport outcome_support(const Unitary& u, const StateVector& state,
                               DetectorModel model, double tolerance,
                               std::string label) {
  OutcomeSupport support;
  support.label = std::move(label);
  for (const auto& [pattern, prob] : evolve(u, state)) {
    if (prob <= tolerance) continue;
    if (model == DetectorModel::Threshold) {
      support.probabilities[pattern.support_set()] += prob;
    } else {
      support.probabilities.emplace(pattern, prob);
    }
  }
  return support;
}

int PartitionReport::class_of(int state_index) const {
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& m = classes[c].members;
    if (std::find(m.begin(), m.end(), state_index) != m.end()) {
      return static_cast<int>(c);
    }
  }
  return -1;
}

std::vector<int> PartitionReport::class_sizes() const {
  std::vector<int> sizes;
  sizes.reserve(classes.size());
  for (const auto& c : classes) sizes.push_back(static_cast<int>(c.members.size()));
  return sizes;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

PartitionReport distinguishability_partition(const Unitary& u,
                                             const std::vector<LabeledState>& states,
                                             DetectorModel model,
                                             double tolerance) {
  if (states.empty()) {
    throw ArityError("distinguishability_partition: no states given");
  }
  const int n = states.front().state.photon_count();
  const int modes = states.front().state.mode_count();
  for (const auto& ls : states) {
    if (ls.state.photon_count() != n || ls.state.mode_count() != modes) {
      throw DimensionError("distinguishability_partition: mixed state shapes");
    }
  }

  // Raw (number-resolving) supports drive the repeated-detector flag; the
  // model only changes which patterns the partition graph connects.
  const int count = static_cast<int>(states.size());
  std::vector<std::set<ClickPattern>> raw_support(count);
  std::vector<std::set<ClickPattern>> graph_support(count);
  for (int i = 0; i < count; ++i) {
    const auto nr =
        outcome_support(u, states[i].state, DetectorModel::NumberResolving,
                        tolerance, states[i].label);
    for (const auto& [pattern, prob] : nr.probabilities) {
      raw_support[i].insert(pattern);
      graph_support[i].insert(model == DetectorModel::Threshold
                                  ? pattern.support_set()
                                  : pattern);
    }
  }

  UnionFind uf(count);
  std::map<ClickPattern, int> first_owner;
  for (int i = 0; i < count; ++i) {
    for (const auto& pattern : graph_support[i]) {
      auto [it, inserted] = first_owner.emplace(pattern, i);
      if (!inserted) uf.unite(i, it->second);
    }
  }

  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < count; ++i) groups[uf.find(i)].push_back(i);

  PartitionReport report;
  report.model = model;
  for (const auto& ls : states) report.state_labels.push_back(ls.label);
  for (auto& [root, members] : groups) {
    StateClass cls;
    std::sort(members.begin(), members.end());
    cls.members = members;
    for (int i : members) {
      cls.support.insert(graph_support[i].begin(), graph_support[i].end());
      for (const auto& pattern : raw_support[i]) {
        if (pattern.has_repeats()) cls.needs_number_resolving = true;
      }
    }
    report.classes.push_back(std::move(cls));
  }
  std::sort(report.classes.begin(), report.classes.end(),
            [](const StateClass& a, const StateClass& b) {
              return a.members.front() < b.members.front();
            });
  for (const auto& cls : report.classes) {
    if (cls.members.size() == 1) {
      report.fully_distinguished.push_back(cls.members.front());
    }
  }
  report.channel_capacity_bits =
      std::log2(static_cast<double>(report.classes.size()));
  for (const auto& cls : report.classes) {
    if (cls.needs_number_resolving) {
      report.notes.push_back("class of " +
                             report.state_labels[cls.members.front()] +
                             " requires number resolving");
    }
  }
  return report;
}

CoincidenceMatrix coincidence_matrix(const Unitary& u,
                                     const std::vector<LabeledState>& states,
                                     DetectorModel model, double tolerance) {
  CoincidenceMatrix m;
  std::set<ClickPattern> all_patterns;
  std::vector<OutcomeSupport> supports;
  supports.reserve(states.size());
  for (const auto& ls : states) {
    supports.push_back(outcome_support(u, ls.state, model, tolerance, ls.label));
    m.row_labels.push_back(ls.label);
    for (const auto& [pattern, prob] : supports.back().probabilities) {
      all_patterns.insert(pattern);
    }
  }
  m.columns.assign(all_patterns.begin(), all_patterns.end());
  m.probabilities = Eigen::MatrixXd::Zero(static_cast<int>(states.size()),
                                          static_cast<int>(m.columns.size()));
  for (int r = 0; r < static_cast<int>(states.size()); ++r) {
    for (int c = 0; c < static_cast<int>(m.columns.size()); ++c) {
      auto it = supports[r].probabilities.find(m.columns[c]);
      if (it != supports[r].probabilities.end()) {
        m.probabilities(r, c) = it->second;
      }
    }
  }
  return m;
}

std::vector<std::string> requires_number_resolving(const PartitionReport& nr,
                                                   const PartitionReport& th) {
  if (nr.state_labels != th.state_labels) {
    throw DimensionError(
        "requires_number_resolving: reports cover different states");
  }
  std::vector<std::string> lost;
  for (const auto& cls : nr.classes) {
    bool flagged = cls.needs_number_resolving;
    if (!flagged) {
      // membership changed under threshold collapse → signature lost
      const int th_class = th.class_of(cls.members.front());
      flagged = th_class < 0 || th.classes[th_class].members != cls.members;
    }
    if (flagged) {
      lost.push_back(nr.state_labels[cls.members.front()]);
    }
  }
  return lost;
}

std::string pattern_name(const ClickPattern& p) {
  std::ostringstream os;
  os << "D_{";
  const auto& dets = p.detectors();
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (i) os << ",";
    os << dets[i] + 1;
  }
  os << "}";
  return os.str();
}

std::string report_to_json(const PartitionReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["detector_model"] = detector_model_name(report.model);
  doc["state_count"] = report.state_labels.size();
  doc["class_count"] = report.classes.size();
  doc["channel_capacity_bits"] = report.channel_capacity_bits;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& cls : report.classes) {
    nlohmann::ordered_json c;
    c["label"] = report.state_labels[cls.members.front()];
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (int i : cls.members) members.push_back(report.state_labels[i]);
    c["members"] = std::move(members);
    nlohmann::ordered_json support = nlohmann::ordered_json::array();
    for (const auto& pattern : cls.support) {
      support.push_back(pattern.detectors());
    }
    c["support"] = std::move(support);
    c["requires_number_resolving"] = cls.needs_number_resolving;
    classes.push_back(std::move(c));
  }
  doc["classes"] = std::move(classes);
  nlohmann::ordered_json singles = nlohmann::ordered_json::array();
  for (int i : report.fully_distinguished) {
    singles.push_back(report.state_labels[i]);
  }
  doc["fully_distinguished"] = std::move(singles);
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

std::string coincidence_to_csv(const CoincidenceMatrix& m) {
  std::ostringstream os;
  os << "state";
  for (const auto& pattern : m.columns) os << "," << pattern_name(pattern);
  os << "\n";
  os.precision(17);
  for (int r = 0; r < static_cast<int>(m.row_labels.size()); ++r) {
    os << m.row_labels[r];
    for (int c = 0; c < m.probabilities.cols(); ++c) {
      os << "," << m.probabilities(r, c);
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace bellscope
