#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bq/diagnostics.hpp"
#include "bq/dynamics.hpp"

namespace bq {

struct DtChange {
  double t = 0.0;
  double old_dt = 0.0;
  double new_dt = 0.0;
  std::string reason;
};

/// Records in strictly increasing t, optional checkpoints and the dt log.
struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  std::vector<State> checkpoints;
  std::vector<DtChange> dt_changes;
  long steps = 0;
  bool failed = false;
  std::string failure;
  /// Last state reached, including on failure.
  std::optional<State> final_state;
};

}  // namespace bq
