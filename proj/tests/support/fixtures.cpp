#include "fixtures.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace uilog::testing {

std::string data_path(const std::string& name) { return std::string(UILOG_TEST_DATA_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_data(const std::string& name) { return read_file(data_path(name)); }

const std::vector<WorkflowRow>& keyword_workflow_rows() {
  static const std::vector<WorkflowRow> rows = [] {
    const AttributeValue type_options(AttributeList{"keyword", "keywords folder"});
    const AttributeValue links_options(AttributeList{"linksto"});
    return std::vector<WorkflowRow>{
        {"A_Login", "none", "", "login mask", AttributeValue(AttributeMap{{"username", "pren"}, {"password", "dts123"}}), {}},
        {"A_Profile Selection", "none", "", "user select client",
         AttributeValue(AttributeMap{{"client", "base"}, {"profile", "author"}}), {}},
        {"click content", "left click", "content", "dashboard ov", {}, {}},
        {"click masterdata", "left click", "masterdata", "explorer tree", {}, {}},
        {"click masterdata node expand", "left click", "masterdata node expand", "explorer tree", {}, {}},
        {"click keywords node expand", "left click", "keywords node expand", "explorer tree", {}, {}},
        {"rclick keywords", "right click", "keywords", "explorer tree", {}, {}},
        {"click ppanel new", "left click", "ppanel new", "explorer tree", {}, {}},
        {"click new information object", "left click", "new information object", "explorer tree", {}, {}},
        {"click name", "left click", "name", "fpanel keyword", {}, {}},
        {"input name", "input", "name", "fpanel keyword", AttributeValue("MyKeyword"), {}},
        {"click dd type", "left click", "dd type", "fpanel keyword", {}, type_options},
        {"click dd type", "left click", "dd type", "fpanel keyword", AttributeValue("keyword"), type_options},
        {"click dd linksto", "left click", "dd linksto", "fpanel keyword", {}, links_options},
        {"click dd linksto", "left click", "dd linksto", "fpanel keyword", AttributeValue("linksto"), links_options},
        {"click confirm", "left click", "confirm", "fpanel keyword", {}, {}},
        {"click keywords node expand", "left click", "keywords node expand", "explorer tree", {}, {}},
        {"KEY_F5 explorer tree", "KEY_F5", "", "explorer tree", {}, {}},
        {"click logout", "left click", "logout", "explorer tree", {}, {}},
        {"click confirm", "left click", "confirm", "dialog logout", {}, {}},
    };
  }();
  return rows;
}

UILog keyword_workflow_by_hand() {
  std::vector<NodeDeclaration> decls;
  std::set<std::string> groups, elements;
  for (const auto& row : keyword_workflow_rows()) {
    if (groups.insert(row.group).second) decls.push_back({Level::Group, row.group, std::nullopt, std::nullopt, {}, {}});
    std::string key = std::string(row.group) + "/" + row.element;
    if (*row.element && elements.insert(key).second)
      decls.push_back({Level::Element, row.element, std::string(row.group), key, {}, {}});
  }
  UILog log;
  log.hierarchy = build_hierarchy(decls);
  for (const auto& row : keyword_workflow_rows()) {
    InteractionEvent e;
    e.activity_name = row.activity;
    e.action = Action{row.action_type, {}};
    auto group = log.hierarchy.find(Level::Group, row.group, std::nullopt);
    if (*row.element) {
      e.target = TargetRef{Level::Element, *log.hierarchy.find(Level::Element, row.element, group)};
    } else {
      e.target = TargetRef{Level::Group, *group};
    }
    e.input_value = row.input;
    e.element_state = row.state;
    if (row.state) log.hierarchy.nodes[e.target->node.value].current_state = row.state;
    log = append_event(std::move(log), std::move(e));
  }
  return log;
}

}  // namespace uilog::testing
