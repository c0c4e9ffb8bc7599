// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

/// Outcome supports and unambiguous-discrimination partitions.
///
/// Two states are in the same class exactly when they are connected in the
/// bipartite state–pattern graph with edges where the outcome probability
/// exceeds the tolerance; the connected components are the finest partition a
/// single detection event can certify.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "bellscope/fock.hpp"
#include "bellscope/unitary.hpp"

namespace bellscope {

enum class DetectorModel { NumberResolving, Threshold };

std::string detector_model_name(DetectorModel model);

/// A named input state for analysis runs.
struct LabeledState {
  std::string label;
  StateVector state;
};

/// Click patterns with probability above tolerance for one state.  Under the
/// threshold model, patterns that collapse to the same fired-detector set are
/// merged and their probabilities summed.
struct OutcomeSupport {
  std::string label;
  std::map<ClickPattern, double> probabilities;
};

OutcomeSupport outcome_support(const Unitary& u, const StateVector& state,
                               DetectorModel model, double tolerance,
                               std::string label = {});

/// One distinguishability class: member indices into the analyzed state
/// list, the union of their supports, and whether certifying the class
/// relies on photon-number resolution (some support pattern fires a
/// detector more than once).
struct StateClass {
  std::vector<int> members;
  std::set<ClickPattern> support;
  bool needs_number_resolving = false;
};

struct PartitionReport {
  DetectorModel model = DetectorModel::NumberResolving;
  std::vector<std::string> state_labels;
  std::vector<StateClass> classes;        // ordered by smallest member index
  std::vector<int> fully_distinguished;   // states in singleton classes
  double channel_capacity_bits = 0.0;     // log2(#classes)
  std::vector<std::string> notes;

  int class_of(int state_index) const;
  std::vector<int> class_sizes() const;
};

PartitionReport distinguishability_partition(const Unitary& u,
                                             const std::vector<LabeledState>& states,
                                             DetectorModel model,
                                             double tolerance = tol::support);

/// Dense states × patterns probability table; the column order is the sorted
/// union of all supports.  Row sums are 1 up to truncated-tail tolerance.
struct CoincidenceMatrix {
  std::vector<std::string> row_labels;
  std::vector<ClickPattern> columns;
  Eigen::MatrixXd probabilities;
};

CoincidenceMatrix coincidence_matrix(const Unitary& u,
                                     const std::vector<LabeledState>& states,
                                     DetectorModel model,
                                     double tolerance = tol::support);

/// Classes of the number-resolving partition whose certification degrades
/// without number resolution: classes carrying repeated-detector patterns,
/// plus classes whose membership changes in the threshold partition.
/// Returns class labels (label of the smallest member).
std::vector<std::string> requires_number_resolving(const PartitionReport& nr,
                                                   const PartitionReport& th);

/// Detector-pair name for pattern rendering: "D_{i,j}" with 1-based
/// detector indices (repeats render as D_{i,i}).
std::string pattern_name(const ClickPattern& p);

std::string report_to_json(const PartitionReport& report);
std::string coincidence_to_csv(const CoincidenceMatrix& m);

}  // namespace bellscope
