#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uilog/model.hpp"

namespace uilog::testing {

std::string data_path(const std::string& name);
std::string read_file(const std::string& path);
std::string read_data(const std::string& name);

/// One row of the keyword-creation recording as printed.
struct WorkflowRow {
  const char* activity;
  const char* action_type;
  const char* element;  // "" when the row has no element
  const char* group;
  std::optional<AttributeValue> input;
  std::optional<AttributeValue> state;
};

const std::vector<WorkflowRow>& keyword_workflow_rows();

/// The recording assembled directly through build_hierarchy and append_event,
/// without going through the tabular reader.
UILog keyword_workflow_by_hand();

}  // namespace uilog::testing
