// Copyright 2026 The Bellscope Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace bellscope {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched matrix/state/mode-count dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Input failed a structural validity check (e.g. a matrix that is not
/// unitary).  Carries the measured defect when applicable.
struct ValidationError : Error {
  explicit ValidationError(const std::string& what, double defect_in = 0.0)
      : Error(what), defect(defect_in) {}
  double defect;
};

/// Wrong number of quanta/clicks for the requested operation.
struct ArityError : Error {
  using Error::Error;
};

/// Violation of exchange statistics (e.g. repeated fermionic mode).
struct StatisticsError : Error {
  using Error::Error;
};

/// Out-of-range or malformed state label.
struct LabelError : Error {
  using Error::Error;
};

/// Requested computation exceeds a documented size cap.
struct ResourceError : Error {
  using Error::Error;
};

/// Bad device port wiring in a circuit description.
struct WiringError : Error {
  using Error::Error;
};

/// An operation was invoked outside its documented contract.
struct ContractError : Error {
  using Error::Error;
};

/// Malformed input file.
struct FileFormatError : Error {
  using Error::Error;
};

/// The simulator contradicted a proven bound; indicates an internal bug.
struct InternalConsistencyError : Error {
  using Error::Error;
};

}  // namespace bellscope
