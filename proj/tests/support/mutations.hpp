#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uilog/validation.hpp"

namespace uilog::testing {

/// The keyword workflow log with one-second timestamps, split into two traces of ten events.
UILog mutation_base();

/// One injected invariant breach and where the validator must point.
struct Mutation {
  std::string name;
  ViolationCode code;
  std::function<void(UILog&)> apply;
  std::optional<std::size_t> event_index;
  std::vector<std::string> node_ids;  // any of these is an acceptable locator
  std::optional<std::string> trace_id;
};

std::vector<Mutation> mutation_suite();

/// Empty string when the report holds a violation matching `m`; otherwise a
/// description of what was found instead.
std::string match_mutation(const Mutation& m, const ValidationReport& report);

}  // namespace uilog::testing
