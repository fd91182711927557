#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "expect_error.hpp"
#include "fixtures.hpp"
#include "random_log.hpp"
#include "uilog/tabular.hpp"
#include "uilog/transform.hpp"
#include "uilog/validation.hpp"

namespace uilog {
namespace {

using namespace std::chrono_literals;
using testing::read_data;

const Timestamp kStart = std::chrono::sys_days{std::chrono::year{2024} / 3 / 1};

UILog timed_events(const std::vector<std::chrono::milliseconds>& offsets) {
  UILog log;
  for (std::size_t i = 0; i < offsets.size(); ++i)
    log.events.push_back(InteractionEvent{"e" + std::to_string(i), {}, {}, {}, {}, kStart + offsets[i], {}, {}, {}});
  return log;
}

std::vector<std::size_t> sizes(const UILog& log) {
  std::vector<std::size_t> out;
  for (const auto& t : *log.traces) out.push_back(t.events.size());
  return out;
}

std::vector<std::string> names(const UILog& log) {
  std::vector<std::string> out;
  for (const auto& e : log.events) out.push_back(e.activity_name);
  return out;
}

UILog raw_login() { return ingest(read_data("keyword_workflow_raw_login.csv")).log; }

AbstractionRule login_rule() { return AbstractionRule{"login mask", "click login", "A_Login", {"username", "password"}, true}; }

TEST(Segment, MarkerOverWorkflow) {
  auto out = segment(testing::keyword_workflow_by_hand(), CaseNotion{ByMarker{{"A_Login"}}});
  ASSERT_EQ(out.traces->size(), 1u);
  EXPECT_EQ(out.traces->at(0).events.size(), 20u);
  EXPECT_EQ(out.traces->at(0).id, "1");
  EXPECT_TRUE(validate(out).ok());
}

TEST(Segment, MarkersOpenCases) {
  UILog log;
  for (const char* n : {"x", "A_Login", "a", "A_Login", "b"})
    log.events.push_back(InteractionEvent{n, {}, {}, {}, {}, {}, {}, {}, {}});
  auto out = segment(log, CaseNotion{ByMarker{{"A_Login"}}});
  EXPECT_EQ(sizes(out), (std::vector<std::size_t>{1, 2, 2}));
}

TEST(Segment, TimeGapSixtySeconds) {
  auto out = segment(timed_events({0s, 5s, 10s, 300s, 305s}), CaseNotion{ByTimeGap{60s}});
  EXPECT_EQ(sizes(out), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(out.traces->at(1).id, "2");
  // A gap equal to the threshold stays in the case.
  EXPECT_EQ(sizes(segment(timed_events({0s, 60s, 121s}), CaseNotion{ByTimeGap{60s}})),
            (std::vector<std::size_t>{2, 1}));
}

TEST(Segment, ByUser) {
  UILog log;
  auto u1 = intern_user(log, "u1");
  auto u2 = intern_user(log, "u2");
  for (int i = 0; i < 6; ++i)
    log.events.push_back(InteractionEvent{"e", {}, {}, {}, {}, {}, i % 2 ? u2 : u1, {}, {}});
  auto out = segment(log, CaseNotion{ByAttribute{"user"}});
  ASSERT_EQ(out.traces->size(), 2u);
  EXPECT_EQ(out.traces->at(0).id, "u1");
  EXPECT_EQ(out.traces->at(0).events, (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(out.traces->at(1).events, (std::vector<std::size_t>{1, 3, 5}));
}

TEST(Segment, ByExtensionAttributeAndComposite) {
  UILog log;
  const std::vector<std::pair<std::string, std::chrono::seconds>> rows = {
      {"s1", 0s}, {"s2", 1s}, {"s1", 2s}, {"s1", 500s}, {"s2", 501s}};
  for (const auto& [session, at] : rows) {
    InteractionEvent e{"e", {}, {}, {}, {}, kStart + at, {}, {}, {}};
    e.attributes.set("session", session);
    log.events.push_back(e);
  }
  auto by_session = segment(log, CaseNotion{ByAttribute{"session"}});
  EXPECT_EQ(sizes(by_session), (std::vector<std::size_t>{3, 2}));
  CaseNotion composite{Composite{{CaseNotion{ByAttribute{"session"}}, CaseNotion{ByTimeGap{60s}}}}};
  auto out = segment(log, composite);
  ASSERT_EQ(out.traces->size(), 4u);
  EXPECT_EQ(out.traces->at(0).id, "s1/1");
  EXPECT_EQ(out.traces->at(0).events, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(out.traces->at(2).id, "s1/2");
  EXPECT_TRUE(validate(out).ok());
}

TEST(Segment, Errors) {
  UILog log;
  log.events.push_back(InteractionEvent{"e", {}, {}, {}, {}, {}, {}, {}, {}});
  EXPECT_UILOG_ERROR(segment(log, CaseNotion{ByAttribute{"user"}}), ErrorCode::MissingCaseAttribute);
  EXPECT_UILOG_ERROR(segment(log, CaseNotion{ByTimeGap{60s}}), ErrorCode::MissingTimestamps);
  EXPECT_UILOG_ERROR(segment(log, CaseNotion{ByTimeGap{0s}}), ErrorCode::InvalidNotion);
  EXPECT_UILOG_ERROR(segment(log, CaseNotion{ByMarker{}}), ErrorCode::InvalidNotion);
  EXPECT_UILOG_ERROR(segment(log, CaseNotion{Composite{}}), ErrorCode::InvalidNotion);
}

TEST(Segment, MissingAttributeListsEvents) {
  UILog log;
  auto u = intern_user(log, "u1");
  log.events = {InteractionEvent{"a", {}, {}, {}, {}, {}, u, {}, {}}, InteractionEvent{"b", {}, {}, {}, {}, {}, {}, {}, {}}};
  try {
    segment(log, CaseNotion{ByAttribute{"user"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(": 1"), std::string::npos) << e.what();
  }
}

TEST(Segment, StableUnderReorderingWithinEqualValues) {
  // Moving events of one user relative to other users' events does not
  // change that user's trace content.
  std::mt19937_64 rng(61);
  for (int round = 0; round < 50; ++round) {
    UILog log;
    for (int u = 0; u < 3; ++u) intern_user(log, "u" + std::to_string(u));
    for (int i = 0; i < 30; ++i)
      log.events.push_back(InteractionEvent{"e" + std::to_string(i), {}, {}, {}, {}, {}, UserIndex{static_cast<std::uint32_t>(rng() % 3)}, {}, {}});
    auto shuffled = log;
    std::stable_sort(shuffled.events.begin(), shuffled.events.end(),
                     [](const auto& a, const auto& b) { return a.user->value > b.user->value; });
    auto per_user = [](const UILog& l) {
      std::map<std::string, std::vector<std::string>> m;
      auto seg = segment(l, CaseNotion{ByAttribute{"user"}});
      for (const auto& t : *seg.traces)
        for (auto idx : t.events) m[t.id].push_back(seg.events[idx].activity_name);
      return m;
    };
    EXPECT_EQ(per_user(log), per_user(shuffled));
  }
}

TEST(Flatten, UntracedIsUnchanged) {
  auto log = testing::keyword_workflow_by_hand();
  EXPECT_EQ(flatten(log), log);
}

TEST(Flatten, InterleavedTracesConcatenateByStart) {
  auto log = timed_events({0s, 1s, 2s, 3s});
  log.traces = std::vector<Trace>{{"b", {1, 3}, {}}, {"a", {0, 2}, {}}};
  auto out = flatten(log);
  EXPECT_FALSE(out.traced());
  EXPECT_EQ(names(out), (std::vector<std::string>{"e0", "e2", "e1", "e3"}));
}

TEST(Flatten, TiesByTraceIdAndUntimedLast) {
  UILog log = timed_events({5s, 5s});
  log.events.push_back(InteractionEvent{"untimed", {}, {}, {}, {}, {}, {}, {}, {}});
  log.traces = std::vector<Trace>{{"z", {2}, {}}, {"y", {1}, {}}, {"x", {0}, {}}};
  EXPECT_EQ(names(flatten(log)), (std::vector<std::string>{"e0", "e1", "untimed"}));
}

TEST(Flatten, PreservesMultisetAfterSegment) {
  std::mt19937_64 rng(62);
  for (int round = 0; round < 30; ++round) {
    testing::RandomLogOptions options;
    options.traced = 0.0;
    options.always_timed = true;
    options.max_events = 100;
    auto log = testing::random_log(rng, options);
    auto flat = flatten(segment(log, CaseNotion{ByTimeGap{120s}}));
    auto a = names(log), b = names(flat);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b);
  }
}

TEST(Abstract, LoginRun) {
  auto log = raw_login();
  ASSERT_EQ(log.events.size(), 23u);
  auto result = abstract(log, {login_rule()});
  EXPECT_EQ(result.abstracted_runs, 1u);
  EXPECT_TRUE(result.warnings.empty());
  ASSERT_EQ(result.log.events.size(), 20u);
  const auto& e = result.log.events[0];
  EXPECT_EQ(e.activity_name, "A_Login");
  EXPECT_EQ(e.action->action_type, "none");
  EXPECT_EQ(e.target->level, Level::Group);
  EXPECT_EQ(result.log.hierarchy.at(e.target->node).id, "login mask");
  EXPECT_EQ(e.input_value, AttributeValue(AttributeMap{{"username", "pren"}, {"password", "dts123"}}));
  EXPECT_TRUE(validate(result.log).ok());
  // Everything after the login passes through untouched.
  for (std::size_t i = 1; i < 20; ++i) EXPECT_EQ(result.log.events[i], log.events[i + 3]) << i;
}

TEST(Abstract, MatchesTheRecordedTaskEvent) {
  auto result = abstract(raw_login(), {login_rule()});
  auto recorded = ingest(read_data("keyword_workflow.csv")).log;
  EXPECT_EQ(result.log.events[0].activity_name, recorded.events[0].activity_name);
  EXPECT_EQ(result.log.events[0].input_value, recorded.events[0].input_value);
}

TEST(Abstract, WrongPasswordIsSuperseded) {
  auto [log, report] = ingest(
      "Activity,Action type,UI element,UI group,Input value\n"
      "input password,input,password,login mask,wrong\n"
      "input password,input,password,login mask,dts123\n"
      "click login,left click,login,login mask,\n");
  auto result = abstract(log, {login_rule()});
  ASSERT_EQ(result.log.events.size(), 1u);
  EXPECT_EQ(result.log.events[0].input_value, AttributeValue(AttributeMap{{"password", "dts123"}}));
}

TEST(Abstract, TwoDisjointRuns) {
  auto [log, report] = ingest(
      "Activity,Action type,UI element,UI group,Input value\n"
      "input username,input,username,login mask,pren\n"
      "click login,left click,login,login mask,\n"
      "click logout,left click,logout,explorer tree,\n"
      "input username,input,username,login mask,other\n"
      "input password,input,password,login mask,pw\n"
      "click login,left click,login,login mask,\n");
  auto result = abstract(log, {login_rule()});
  EXPECT_EQ(result.abstracted_runs, 2u);
  EXPECT_EQ(names(result.log), (std::vector<std::string>{"A_Login", "click logout", "A_Login"}));
  EXPECT_EQ(result.log.events[0].input_value, AttributeValue(AttributeMap{{"username", "pren"}}));
  EXPECT_EQ(result.log.events[2].input_value, AttributeValue(AttributeMap{{"username", "other"}, {"password", "pw"}}));
}

TEST(Abstract, NoEventsInGroupLeavesLogUnchanged) {
  auto log = testing::keyword_workflow_by_hand();
  auto result = abstract(log, {AbstractionRule{"dashboard ov", "click never", "A_Dash", {}, true}});
  // The dashboard row has no trigger, so it passes through with a warning.
  EXPECT_EQ(result.log, log);
  EXPECT_EQ(result.warnings.size(), 1u);
  EXPECT_NE(result.warnings[0].find("TriggerNeverFires"), std::string::npos);
}

TEST(Abstract, UnknownGroupAndInvalidRule) {
  auto log = testing::keyword_workflow_by_hand();
  EXPECT_UILOG_ERROR(abstract(log, {AbstractionRule{"nope", "click ok", "A_X", {}, true}}), ErrorCode::UnknownGroup);
  EXPECT_UILOG_ERROR(abstract(log, {AbstractionRule{"login mask", "", "A_X", {}, true}}), ErrorCode::InvalidRule);
}

TEST(Abstract, KeepNoise) {
  auto rule = login_rule();
  rule.drop_noise = false;
  auto result = abstract(raw_login(), {rule});
  ASSERT_EQ(result.log.events.size(), 21u);
  EXPECT_EQ(result.log.events[0].activity_name, "input password");
  EXPECT_EQ(result.log.events[0].input_value, AttributeValue("wrong"));
  EXPECT_EQ(result.log.events[1].activity_name, "A_Login");
}

TEST(Abstract, EmptyCollectTakesEveryInput) {
  auto rule = login_rule();
  rule.collect.clear();
  auto result = abstract(raw_login(), {rule});
  EXPECT_EQ(result.log.events[0].input_value, AttributeValue(AttributeMap{{"username", "pren"}, {"password", "dts123"}}));
}

TEST(Abstract, IsIdempotent) {
  auto once = abstract(raw_login(), {login_rule()});
  auto twice = abstract(once.log, {login_rule()});
  EXPECT_EQ(twice.log, once.log);
  EXPECT_EQ(twice.abstracted_runs, 0u);
}

TEST(Abstract, RespectsTraceBoundaries) {
  auto log = raw_login();
  log.traces = std::vector<Trace>{{"a", {0, 1}, {}}, {"b", {}, {}}};
  for (std::size_t i = 2; i < log.events.size(); ++i) log.traces->at(1).events.push_back(i);
  auto result = abstract(log, {login_rule()});
  // Trace a ends before the trigger; trace b holds the trigger but only the
  // second password input.
  EXPECT_EQ(result.warnings.size(), 1u);
  EXPECT_EQ(result.log.traces->at(0).events.size(), 2u);
  const auto& abstracted = result.log.events[result.log.traces->at(1).events.at(0)];
  EXPECT_EQ(abstracted.input_value, AttributeValue(AttributeMap{{"password", "dts123"}}));
  EXPECT_TRUE(validate(result.log).ok());
}

TEST(Abstract, NeverGrowsAndKeepsValidity) {
  std::mt19937_64 rng(63);
  for (int round = 0; round < 40; ++round) {
    auto log = testing::random_log(rng);
    std::vector<AbstractionRule> rules;
    for (const auto& n : log.hierarchy.nodes)
      if (n.level == Level::Group && rules.empty()) rules.push_back(AbstractionRule{n.id, log.events.empty() ? "x" : log.events[0].activity_name, "A_Task", {}, rng() % 2 == 0});
    if (rules.empty()) continue;
    auto result = abstract(log, rules);
    EXPECT_LE(result.log.events.size(), log.events.size());
    EXPECT_TRUE(validate(result.log).ok()) << render_text(validate(result.log));
    EXPECT_EQ(abstract(result.log, rules).log, result.log);
  }
}

TEST(Definitions, CaseNotionFiles) {
  auto gap = load_case_notion(read_data("gap_60s.notion"));
  ASSERT_TRUE(std::holds_alternative<ByTimeGap>(gap.kind));
  EXPECT_EQ(std::get<ByTimeGap>(gap.kind).threshold, 60s);
  auto marker = load_case_notion("[notion]\nkind = marker\nmarkers = A_Login, A_Logout\n");
  EXPECT_EQ(std::get<ByMarker>(marker.kind).markers.size(), 2u);
  auto composite = load_case_notion("[notion]\nkind = attribute\nkey = user\n[notion]\nkind = time_gap\nthreshold = 500ms\n");
  ASSERT_TRUE(std::holds_alternative<Composite>(composite.kind));
  EXPECT_EQ(std::get<Composite>(composite.kind).steps.size(), 2u);
  EXPECT_THROW(load_case_notion("[notion]\nkind = vibes\n"), Error);
  EXPECT_THROW(load_case_notion(""), Error);
}

TEST(Definitions, RuleFiles) {
  auto rules = load_abstraction_rules(read_data("login_rule.rules"));
  ASSERT_EQ(rules.size(), 1u);
  EXPECT_EQ(rules[0].group_id, "login mask");
  EXPECT_EQ(rules[0].trigger_activity, "click login");
  EXPECT_EQ(rules[0].abstract_name, "A_Login");
  EXPECT_EQ(rules[0].collect, (std::vector<std::string>{"username", "password"}));
  EXPECT_TRUE(rules[0].drop_noise);
}

}  // namespace
}  // namespace uilog
