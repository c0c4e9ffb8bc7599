// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "bellscope/errors.hpp"
#include "bellscope/search.hpp"

using namespace bellscope;

TEST_CASE("search reaches the two-photon qubit optimum") {
  SearchConfig cfg;
  cfg.n = 2;
  cfg.d = 2;
  cfg.budget = 500;
  cfg.restarts = 4;
  cfg.seed = 7;
  cfg.target = 3;
  const SearchResult result = maximize_classes(cfg);
  CHECK(result.best_classes == 3);
  CHECK(result.converged);
  CHECK(result.group.is_g1());
}

TEST_CASE("search is deterministic and its trace is monotone") {
  SearchConfig cfg;
  cfg.n = 2;
  cfg.d = 2;
  cfg.budget = 200;
  cfg.restarts = 2;
  cfg.seed = 99;
  const SearchResult a = maximize_classes(cfg);
  const SearchResult b = maximize_classes(cfg);
  CHECK(a.best_unitary == b.best_unitary);  // bit-identical
  CHECK(a.best_classes == b.best_classes);
  CHECK(a.trace == b.trace);
  for (std::size_t i = 1; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].second >= a.trace[i - 1].second);
    CHECK(a.trace[i].first > a.trace[i - 1].first);
  }
}

TEST_CASE("identity start with no proposals recovers the symmetry count") {
  SearchConfig cfg;
  cfg.n = 4;
  cfg.d = 2;
  cfg.budget = 1;
  cfg.restarts = 1;
  cfg.seed = 0;
  cfg.start_at_identity = true;
  const SearchResult result = maximize_classes(cfg);
  CHECK(result.best_classes == 8);  // D^{n-1}
  CHECK_FALSE(result.group.is_g1());
}

TEST_CASE("search config validation") {
  SearchConfig cfg;
  cfg.budget = 1;
  cfg.restarts = 2;
  CHECK_THROWS_AS(maximize_classes(cfg), ValidationError);
  cfg.budget = 10;
  cfg.restarts = 1;
  cfg.step_scale = 0.0;
  CHECK_THROWS_AS(maximize_classes(cfg), ValidationError);
  cfg.step_scale = 0.5;
  cfg.n = 4;
  cfg.d = 8;
  CHECK_THROWS_AS(maximize_classes(cfg), ResourceError);
}

TEST_CASE("search results export as a single-device circuit with provenance") {
  SearchConfig cfg;
  cfg.n = 2;
  cfg.d = 2;
  cfg.budget = 50;
  cfg.restarts = 1;
  cfg.seed = 3;
  const SearchResult result = maximize_classes(cfg);
  const std::string json = search_result_to_json(cfg, result);
  const CircuitSpec reread = circuit_from_json(json);
  CHECK(reread.mode_count == 4);
  CHECK(reread.devices.size() == 1);
  CHECK(reread.devices[0].kind == DeviceKind::CustomUnitary);
  CHECK((compose_circuit(reread).matrix() - result.best_unitary).norm() < 1e-12);
  CHECK(json.find("\"provenance\"") != std::string::npos);
  CHECK(json.find("\"trace\"") != std::string::npos);
}

TEST_CASE("bound audit: two-photon samples all classify G1 and respect 2D-1") {
  const AuditReport report = bound_audit(2, 2, Statistics::Boson, 50, 11);
  CHECK(report.g1_count == 50);  // every two-photon unitary is G1
  CHECK(report.max_g1_classes <= 3);
  int total = 0;
  for (const auto& [classes, count] : report.class_histogram) total += count;
  CHECK(total == 50);
  CHECK(report.bound == 3);

  const std::string json = audit_to_json(report);
  CHECK(json.find("\"class_histogram\"") != std::string::npos);
}

TEST_CASE("bound audit covers three-photon systems") {
  const AuditReport report = bound_audit(3, 2, Statistics::Boson, 20, 5);
  CHECK(report.bound == 4);
  CHECK(report.max_g1_classes <= 4);
}
