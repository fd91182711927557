#include "uilog/transform.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <unordered_map>

#include "uilog/error.hpp"
#include "uilog/kv_config.hpp"

namespace uilog {

namespace {

struct Part {
  std::string id;
  std::vector<std::size_t> events;
};

std::string list_indices(const std::vector<std::size_t>& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size() && i < 20; ++i) out += (i ? ", " : "") + std::to_string(idx[i]);
  if (idx.size() > 20) out += ", ... (" + std::to_string(idx.size()) + " total)";
  return out;
}

class Segmenter {
 public:
  explicit Segmenter(const UILog& log) : log_(log) {}

  std::vector<Part> split(const std::vector<std::size_t>& events, const CaseNotion& notion) const {
    return std::visit([&](const auto& n) { return split_by(events, n); }, notion.kind);
  }

 private:
  std::optional<std::string> case_key(const InteractionEvent& e, const std::string& key) const {
    if (key == "user") return e.user ? std::optional(log_.user(*e.user).id) : std::nullopt;
    if (key == "task") return e.task ? std::optional(log_.task(*e.task).id) : std::nullopt;
    const auto* v = e.attributes.find(key);
    if (!v) return std::nullopt;
    return v->is_text() ? v->as_text() : render(*v);
  }

  std::vector<Part> split_by(const std::vector<std::size_t>& events, const ByAttribute& n) const {
    if (n.key.empty()) throw Error(ErrorCode::InvalidNotion, "attribute notion needs a key");
    std::vector<Part> parts;
    std::unordered_map<std::string, std::size_t> slot;
    std::vector<std::size_t> missing;
    for (std::size_t idx : events) {
      auto value = case_key(log_.events[idx], n.key);
      if (!value) {
        missing.push_back(idx);
        continue;
      }
      auto [it, inserted] = slot.emplace(*value, parts.size());
      if (inserted) parts.push_back(Part{*value, {}});
      parts[it->second].events.push_back(idx);
    }
    if (!missing.empty()) {
      throw Error(ErrorCode::MissingCaseAttribute,
                  "events without '" + n.key + "': " + list_indices(missing));
    }
    return parts;
  }

  std::vector<Part> split_by(const std::vector<std::size_t>& events, const ByTimeGap& n) const {
    if (n.threshold <= std::chrono::milliseconds::zero()) {
      throw Error(ErrorCode::InvalidNotion, "time gap threshold must be positive");
    }
    std::vector<std::size_t> missing;
    for (std::size_t idx : events) {
      if (!log_.events[idx].timestamp) missing.push_back(idx);
    }
    if (!missing.empty()) throw Error(ErrorCode::MissingTimestamps, "events without timestamp: " + list_indices(missing));

    std::vector<Part> parts;
    std::optional<Timestamp> prev;
    for (std::size_t idx : events) {
      Timestamp ts = *log_.events[idx].timestamp;
      if (!prev || ts - *prev > n.threshold) parts.push_back(Part{std::to_string(parts.size() + 1), {}});
      parts.back().events.push_back(idx);
      prev = ts;
    }
    return parts;
  }

  std::vector<Part> split_by(const std::vector<std::size_t>& events, const ByMarker& n) const {
    if (n.markers.empty()) throw Error(ErrorCode::InvalidNotion, "marker notion needs at least one activity");
    std::vector<Part> parts;
    for (std::size_t idx : events) {
      bool opens = n.markers.count(log_.events[idx].activity_name) > 0;
      if (parts.empty() || (opens && !parts.back().events.empty())) {
        parts.push_back(Part{std::to_string(parts.size() + 1), {}});
      }
      parts.back().events.push_back(idx);
    }
    return parts;
  }

  std::vector<Part> split_by(const std::vector<std::size_t>& events, const Composite& n) const {
    if (n.steps.empty()) throw Error(ErrorCode::InvalidNotion, "composite notion has no steps");
    std::vector<Part> parts{Part{"", events}};
    for (const auto& step : n.steps) {
      std::vector<Part> refined;
      for (const auto& parent : parts) {
        for (auto& child : split(parent.events, step)) {
          if (!parent.id.empty()) child.id = parent.id + "/" + child.id;
          refined.push_back(std::move(child));
        }
      }
      parts = std::move(refined);
    }
    return parts;
  }

  const UILog& log_;
};

}  // namespace

UILog segment(const UILog& log, const CaseNotion& notion) {
  std::vector<std::size_t> all(log.events.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto parts = Segmenter(log).split(all, notion);
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Part& a, const Part& b) { return a.events.front() < b.events.front(); });

  UILog out = log;
  out.traces.emplace();
  for (auto& p : parts) out.traces->push_back(Trace{std::move(p.id), std::move(p.events), {}});
  return out;
}

UILog flatten(const UILog& log) {
  if (!log.traces) return log;
  std::vector<const Trace*> order;
  for (const auto& t : *log.traces) order.push_back(&t);
  auto start = [&](const Trace* t) -> std::optional<Timestamp> {
    if (t->events.empty() || t->events.front() >= log.events.size()) return std::nullopt;
    return log.events[t->events.front()].timestamp;
  };
  std::stable_sort(order.begin(), order.end(), [&](const Trace* a, const Trace* b) {
    auto sa = start(a);
    auto sb = start(b);
    if (sa.has_value() != sb.has_value()) return sa.has_value();
    if (sa && *sa != *sb) return *sa < *sb;
    return a->id < b->id;
  });

  UILog out;
  out.hierarchy = log.hierarchy;
  out.users = log.users;
  out.tasks = log.tasks;
  out.attributes = log.attributes;
  std::vector<bool> taken(log.events.size(), false);
  for (const Trace* t : order) {
    for (std::size_t idx : t->events) {
      if (idx >= log.events.size() || taken[idx]) continue;
      taken[idx] = true;
      out.events.push_back(log.events[idx]);
    }
  }
  for (std::size_t i = 0; i < log.events.size(); ++i) {
    if (!taken[i]) out.events.push_back(log.events[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct RuleScope {
  const AbstractionRule* rule;
  std::vector<NodeIndex> groups;
};

struct Membership {
  std::size_t rule = 0;
  NodeIndex group;

  bool operator==(const Membership&) const = default;
};

class Abstractor {
 public:
  Abstractor(const UILog& log, const std::vector<AbstractionRule>& rules) : log_(log) {
    for (const auto& r : rules) {
      if (r.abstract_name.empty() || r.trigger_activity.empty() || r.group_id.empty()) {
        throw Error(ErrorCode::InvalidRule, "rule needs a group, a trigger activity and an abstract name");
      }
      auto groups = log.hierarchy.find_all(Level::Group, r.group_id);
      if (groups.empty()) throw Error(ErrorCode::UnknownGroup, "UI group '" + r.group_id + "' is not in the hierarchy");
      scopes_.push_back(RuleScope{&r, std::move(groups)});
    }
  }

  AbstractionResult run() {
    AbstractionResult result;
    result.log.hierarchy = log_.hierarchy;
    result.log.users = log_.users;
    result.log.tasks = log_.tasks;
    result.log.attributes = log_.attributes;
    out_ = &result;

    if (log_.traces) {
      std::vector<bool> covered(log_.events.size(), false);
      result.log.traces.emplace();
      for (const auto& t : *log_.traces) {
        std::vector<std::size_t> seq;
        for (std::size_t idx : t.events) {
          if (idx < log_.events.size()) {
            seq.push_back(idx);
            covered[idx] = true;
          }
        }
        auto produced = process(seq);
        result.log.traces->push_back(Trace{t.id, std::move(produced), t.attributes});
      }
      for (std::size_t i = 0; i < log_.events.size(); ++i) {
        if (!covered[i]) emit(log_.events[i]);
      }
    } else {
      std::vector<std::size_t> seq(log_.events.size());
      std::iota(seq.begin(), seq.end(), std::size_t{0});
      process(seq);
    }
    return result;
  }

 private:
  bool is_product(const InteractionEvent& e, const AbstractionRule& r) const {
    return e.activity_name == r.abstract_name && e.action && e.action->action_type == kNoneAction && e.target &&
           e.target->level == Level::Group;
  }

  std::optional<Membership> membership(const InteractionEvent& e) const {
    if (!e.target || !log_.hierarchy.contains(e.target->node)) return std::nullopt;
    for (const auto& s : scopes_) {
      if (is_product(e, *s.rule)) return std::nullopt;
    }
    for (std::size_t r = 0; r < scopes_.size(); ++r) {
      for (NodeIndex g : scopes_[r].groups) {
        if (log_.hierarchy.within(e.target->node, g)) return Membership{r, g};
      }
    }
    return std::nullopt;
  }

  std::size_t emit(InteractionEvent e) {
    out_->log.events.push_back(std::move(e));
    return out_->log.events.size() - 1;
  }

  std::vector<std::size_t> process(const std::vector<std::size_t>& seq) {
    std::vector<std::size_t> produced;
    std::size_t i = 0;
    while (i < seq.size()) {
      auto member = membership(log_.events[seq[i]]);
      if (!member) {
        produced.push_back(emit(log_.events[seq[i]]));
        ++i;
        continue;
      }
      std::size_t end = i;
      while (end < seq.size() && membership(log_.events[seq[end]]) == member) ++end;
      collapse_run(seq, i, end, *member, produced);
      i = end;
    }
    return produced;
  }

  void collapse_run(const std::vector<std::size_t>& seq, std::size_t begin, std::size_t end, const Membership& m,
                    std::vector<std::size_t>& produced) {
    const AbstractionRule& rule = *scopes_[m.rule].rule;
    std::size_t start = begin;
    for (std::size_t pos = begin; pos < end; ++pos) {
      if (log_.events[seq[pos]].activity_name != rule.trigger_activity) continue;
      collapse_segment(seq, start, pos, rule, m.group, produced);
      ++out_->abstracted_runs;
      start = pos + 1;
    }
    if (start < end) {
      out_->warnings.push_back("TriggerNeverFires: '" + rule.trigger_activity + "' never followed " +
                               std::to_string(end - start) + " event(s) in group '" + rule.group_id +
                               "' starting at event " + std::to_string(seq[start]));
      for (std::size_t pos = start; pos < end; ++pos) produced.push_back(emit(log_.events[seq[pos]]));
    }
  }

  // Events seq[first..trigger] (inclusive) become one abstract event.
  void collapse_segment(const std::vector<std::size_t>& seq, std::size_t first, std::size_t trigger,
                        const AbstractionRule& rule, NodeIndex group, std::vector<std::size_t>& produced) {
    std::vector<std::pair<std::string, std::size_t>> latest;  // element id -> position, first-seen order
    for (std::size_t pos = first; pos < trigger; ++pos) {
      const auto& e = log_.events[seq[pos]];
      if (!e.input_value || e.target->level != Level::Element) continue;
      const std::string& id = log_.hierarchy.at(e.target->node).id;
      if (!rule.collect.empty() && std::find(rule.collect.begin(), rule.collect.end(), id) == rule.collect.end()) {
        continue;
      }
      auto it = std::find_if(latest.begin(), latest.end(), [&](const auto& p) { return p.first == id; });
      if (it == latest.end()) latest.emplace_back(id, pos);
      else it->second = pos;
    }
    if (!rule.collect.empty()) {
      std::vector<std::pair<std::string, std::size_t>> ordered;
      for (const auto& id : rule.collect) {
        auto it = std::find_if(latest.begin(), latest.end(), [&](const auto& p) { return p.first == id; });
        if (it != latest.end()) ordered.push_back(*it);
      }
      latest = std::move(ordered);
    }

    const auto& trig = log_.events[seq[trigger]];
    InteractionEvent abstracted;
    abstracted.activity_name = rule.abstract_name;
    abstracted.action = Action{std::string(kNoneAction), {}};
    abstracted.target = TargetRef{Level::Group, group};
    AttributeMap values;
    for (const auto& [id, pos] : latest) values.set(id, *log_.events[seq[pos]].input_value);
    if (!values.empty()) abstracted.input_value = AttributeValue(std::move(values));
    abstracted.timestamp = trig.timestamp;
    abstracted.user = trig.user;
    abstracted.task = trig.task;

    if (!rule.drop_noise) {
      for (std::size_t pos = first; pos < trigger; ++pos) {
        bool contributes = std::any_of(latest.begin(), latest.end(), [&](const auto& p) { return p.second == pos; });
        if (!contributes) produced.push_back(emit(log_.events[seq[pos]]));
      }
    }
    produced.push_back(emit(std::move(abstracted)));
  }

  const UILog& log_;
  std::vector<RuleScope> scopes_;
  AbstractionResult* out_ = nullptr;
};

}  // namespace

AbstractionResult abstract(const UILog& log, const std::vector<AbstractionRule>& rules) {
  return Abstractor(log, rules).run();
}

// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::chrono::milliseconds parse_duration(std::string_view text) {
  text = trim(text);
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{}) throw Error(ErrorCode::BadConfig, "bad duration '" + std::string(text) + "'");
  std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr)));
  if (unit == "ms") return std::chrono::milliseconds{value};
  if (unit.empty() || unit == "s") return std::chrono::seconds{value};
  if (unit == "m" || unit == "min") return std::chrono::minutes{value};
  if (unit == "h") return std::chrono::hours{value};
  throw Error(ErrorCode::BadConfig, "unknown duration unit '" + std::string(unit) + "'");
}

const std::string& required(const ConfigSection& s, std::string_view key) {
  const auto* v = s.find(key);
  if (!v || v->empty()) {
    throw Error(ErrorCode::BadConfig, "[" + s.name + "] at line " + std::to_string(s.line) + " needs '" +
                                          std::string(key) + "'");
  }
  return *v;
}

CaseNotion notion_from(const ConfigSection& s) {
  const auto& kind = required(s, "kind");
  if (kind == "attribute") return CaseNotion{ByAttribute{required(s, "key")}};
  if (kind == "time_gap") return CaseNotion{ByTimeGap{parse_duration(required(s, "threshold"))}};
  if (kind == "marker") {
    ByMarker m;
    for (auto& a : split_list(required(s, "markers"))) m.markers.insert(std::move(a));
    return CaseNotion{std::move(m)};
  }
  throw Error(ErrorCode::BadConfig, "unknown notion kind '" + kind + "'");
}

}  // namespace

CaseNotion load_case_notion(std::string_view text) {
  std::vector<CaseNotion> steps;
  for (const auto& s : parse_config(text)) {
    if (!s.name.empty() && s.name != "notion") throw Error(ErrorCode::BadConfig, "unexpected section [" + s.name + "]");
    if (s.entries.empty()) continue;
    steps.push_back(notion_from(s));
  }
  if (steps.empty()) throw Error(ErrorCode::BadConfig, "no case notion defined");
  if (steps.size() == 1) return std::move(steps.front());
  return CaseNotion{Composite{std::move(steps)}};
}

std::vector<AbstractionRule> load_abstraction_rules(std::string_view text) {
  std::vector<AbstractionRule> rules;
  for (const auto& s : parse_config(text)) {
    if (!s.name.empty() && s.name != "rule") throw Error(ErrorCode::BadConfig, "unexpected section [" + s.name + "]");
    if (s.entries.empty()) continue;
    AbstractionRule r;
    r.group_id = required(s, "group");
    r.trigger_activity = required(s, "trigger");
    r.abstract_name = required(s, "name");
    if (const auto* c = s.find("collect")) r.collect = split_list(*c);
    if (const auto* d = s.find("drop_noise")) {
      if (*d == "true") r.drop_noise = true;
      else if (*d == "false") r.drop_noise = false;
      else throw Error(ErrorCode::BadConfig, "drop_noise must be true or false");
    }
    rules.push_back(std::move(r));
  }
  if (rules.empty()) throw Error(ErrorCode::BadConfig, "no abstraction rule defined");
  return rules;
}

}  // namespace uilog
