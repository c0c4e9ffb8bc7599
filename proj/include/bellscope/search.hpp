// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

/// Random-restart hill climbing over the unitary group, maximizing the
/// number of unambiguously distinguishable Bell-state classes.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bellscope/circuits.hpp"

namespace bellscope {

struct SearchConfig {
  int n = 2;
  int d = 2;
  Statistics statistics = Statistics::Boson;
  int budget = 500;        ///< total objective evaluations across restarts
  int restarts = 1;
  double step_scale = 0.3;  ///< initial perturbation magnitude, in (0, 1]
  std::uint64_t seed = 0;
  std::optional<int> target;  ///< stop early when this class count is reached
  bool start_at_identity = false;
};

struct SearchResult {
  Eigen::MatrixXcd best_unitary;
  int best_classes = 0;
  int best_singletons = 0;
  GroupTag group;
  bool converged = false;  ///< target reached (or no target given)
  std::vector<std::pair<int, int>> trace;  ///< (evaluation index, best so far)
};

/// Hill climbing with proposals U' = exp(iεH)·U, ε annealed ×0.8 after 20
/// consecutive rejections (restart leg ends below ε = 1e-4); acceptance on
/// strict lexicographic improvement of (class count, singleton count, total
/// pairwise support distance).  Deterministic per config; restarts run in
/// parallel with reduction by objective then restart index.  If the best
/// unitary classifies G1, the class count is checked against nD−(n−1).
SearchResult maximize_classes(const SearchConfig& cfg);

/// Exports a search result as a single-device circuit plus provenance.
std::string search_result_to_json(const SearchConfig& cfg,
                                  const SearchResult& result);

struct AuditReport {
  int n = 0;
  int d = 0;
  Statistics statistics = Statistics::Boson;
  int samples = 0;
  std::uint64_t seed = 0;
  int g1_count = 0;
  std::map<int, int> class_histogram;  ///< class count → #samples
  int max_g1_classes = 0;
  int bound = 0;  ///< nD − (n−1)
};

/// Samples Haar unitaries, classifies each, partitions the full Bell basis,
/// and checks every G1 sample against the nD−(n−1) bound; a violation means
/// an implementation bug and throws InternalConsistencyError.
AuditReport bound_audit(int n, int d, Statistics statistics, int samples,
                        std::uint64_t seed);

std::string audit_to_json(const AuditReport& report);

}  // namespace bellscope
