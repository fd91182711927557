#include <gtest/gtest.h>

#include <json.hpp>

#include "expect_error.hpp"
#include "fixtures.hpp"
#include "random_log.hpp"
#include "uilog/tabular.hpp"
#include "uilog/validation.hpp"
#include "uilog/xes.hpp"

namespace uilog {
namespace {

using testing::read_data;
using testing::keyword_workflow_rows;

TEST(Csv, QuotesBomAndBlankLines) {
  auto rows = read_csv("\xEF\xBB\xBF" "a, \"b,c\" ,\"say \"\"hi\"\"\"\r\n\r\n 1 ,2,\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (CsvRow{"a", "b,c", "say \"hi\""}));
  EXPECT_EQ(rows[1], (CsvRow{"1", "2", ""}));
}

TEST(Csv, UnquotedBracketsDoNotSplit) {
  auto rows = read_csv("A_Login, none, , login mask, {username: pren, password: dts123}, \n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (CsvRow{"A_Login", "none", "", "login mask", "{username: pren, password: dts123}", ""}));
  CsvDialect plain;
  plain.bracket_aware = false;
  EXPECT_EQ(read_csv("a,{b, c}\n", plain)[0].size(), 3u);
}

TEST(Csv, WriteQuotesWhenNeeded) {
  EXPECT_EQ(write_csv({{"a", "b,c", "q\"", " pad", ""}}), "a,\"b,c\",\"q\"\"\",\" pad\",\n");
  auto text = write_csv({{"x;y", "z"}}, ';');
  EXPECT_EQ(read_csv(text, CsvDialect{';', true})[0], (CsvRow{"x;y", "z"}));
}

TEST(Literals, MapAndList) {
  EXPECT_EQ(parse_map_literal("{username: pren, password: dts123}"),
            AttributeValue(AttributeMap{{"username", "pren"}, {"password", "dts123"}}));
  EXPECT_EQ(parse_list_literal("[keyword, keywords folder]"), AttributeValue(AttributeList{"keyword", "keywords folder"}));
  EXPECT_EQ(parse_list_literal("[linksto]"), AttributeValue(AttributeList{"linksto"}));
  EXPECT_EQ(parse_list_literal("[]"), AttributeValue(AttributeList{}));
  EXPECT_EQ(parse_map_literal("{}"), AttributeValue(AttributeMap{}));
  EXPECT_EQ(parse_list_literal("[a,, b]"), AttributeValue(AttributeList{"a, b"}));
  EXPECT_EQ(parse_map_literal("{a:: b: c}"), AttributeValue(AttributeMap{{"a: b", "c"}}));
}

TEST(Literals, Malformed) {
  EXPECT_FALSE(parse_map_literal("{username pren}"));
  EXPECT_FALSE(parse_map_literal("{a: 1, a: 2}"));
  EXPECT_FALSE(parse_map_literal("{: 1}"));
  EXPECT_FALSE(parse_map_literal("username: pren"));
  EXPECT_FALSE(parse_list_literal("[a, b"));
}

TEST(Literals, FormatCellInvertsParsers) {
  for (const char* text : {"{username: pren, password: dts123}", "[keyword, keywords folder]", "[a,, b]", "{a:: b: c}"}) {
    auto parsed = text[0] == '{' ? parse_map_literal(text) : parse_list_literal(text);
    ASSERT_TRUE(parsed) << text;
    EXPECT_EQ(format_cell(*parsed), text);
  }
  EXPECT_EQ(format_cell(AttributeValue("MyKeyword")), "MyKeyword");
}

TEST(InferMapping, WorkflowHeader) {
  auto mapping = infer_mapping({"Activity", "Action type", "UI element", "UI group", "Input value", "Current state"});
  EXPECT_EQ(*mapping.column(Field::ActivityName), "Activity");
  EXPECT_EQ(*mapping.column(Field::ActionType), "Action type");
  EXPECT_EQ(*mapping.column(Field::UIElement), "UI element");
  EXPECT_EQ(*mapping.column(Field::UIGroupPath), "UI group");
  EXPECT_EQ(*mapping.column(Field::InputValue), "Input value");
  EXPECT_EQ(*mapping.column(Field::CurrentState), "Current state");
  EXPECT_EQ(mapping.columns.size(), 6u);
}

TEST(InferMapping, SynonymsAndFuzz) {
  auto mapping = infer_mapping({"Timestamp", "ActionType", "Target"});
  EXPECT_EQ(*mapping.column(Field::Timestamp), "Timestamp");
  EXPECT_EQ(*mapping.column(Field::ActionType), "ActionType");
  EXPECT_EQ(*mapping.column(Field::UIElement), "Target");
  EXPECT_EQ(mapping.column(Field::ActivityName), nullptr);
  auto other = infer_mapping({"APP", "time", "ui-element", "user_id", "Event type"});
  EXPECT_EQ(*other.column(Field::Application), "APP");
  EXPECT_EQ(*other.column(Field::User), "user_id");
  EXPECT_EQ(*other.column(Field::ActionType), "Event type");
}

TEST(InferMapping, NoUsableColumns) {
  EXPECT_UILOG_ERROR(infer_mapping({"foo", "bar"}), ErrorCode::NoUsableColumns);
  EXPECT_UILOG_ERROR(infer_mapping({}), ErrorCode::NoUsableColumns);
  EXPECT_UILOG_ERROR(infer_mapping({"Timestamp", "User"}), ErrorCode::NoUsableColumns);
}

TEST(Ingest, WorkflowFixture) {
  auto [log, report] = ingest(read_data("keyword_workflow.csv"));
  EXPECT_EQ(report.rows_read, 20u);
  EXPECT_EQ(report.events_created, 20u);
  EXPECT_TRUE(report.rows_skipped.empty());
  EXPECT_TRUE(report.warnings.empty());
  ASSERT_EQ(log.events.size(), 20u);
  EXPECT_EQ(log.hierarchy.count(Level::Group), 6u);
  EXPECT_TRUE(validate(log).ok());
  // Agrees with the hand-assembled log field by field.
  EXPECT_EQ(testing::first_difference(testing::keyword_workflow_by_hand(), log), "");
}

TEST(Ingest, FirstRowIsATaskLevelEvent) {
  auto [log, report] = ingest(read_data("keyword_workflow.csv"));
  const auto& e = log.events[0];
  EXPECT_EQ(e.activity_name, "A_Login");
  EXPECT_EQ(e.action->action_type, "none");
  ASSERT_TRUE(e.target);
  EXPECT_EQ(e.target->level, Level::Group);
  EXPECT_EQ(log.hierarchy.at(e.target->node).id, "login mask");
  EXPECT_EQ(e.input_value, AttributeValue(AttributeMap{{"username", "pren"}, {"password", "dts123"}}));
}

TEST(Ingest, UnquotedRowFromTheRecording) {
  auto [log, report] = ingest(
      "Activity, Action type, UI element, UI group, Input value, Current state\n"
      "A_Login, none, , login mask, {username: pren, password: dts123}, \n"
      "click dd type, left click, dd type, fpanel keyword, , [keyword, keywords folder]\n");
  ASSERT_EQ(log.events.size(), 2u);
  EXPECT_TRUE(log.events[0].input_value->is_map());
  const auto& dd = log.events[1];
  EXPECT_EQ(dd.element_state, AttributeValue(AttributeList{"keyword", "keywords folder"}));
  EXPECT_EQ(log.hierarchy.at(dd.target->node).current_state, dd.element_state);
  EXPECT_EQ(log.hierarchy.at(dd.target->node).id, "dd type");
}

TEST(Ingest, EmptyFileWithHeader) {
  auto [log, report] = ingest("Activity,Action type\n");
  EXPECT_TRUE(log.events.empty());
  EXPECT_EQ(report.rows_read, 0u);
}

TEST(Ingest, MissingColumn) {
  ColumnMapping mapping;
  mapping.columns = {{Field::ActivityName, "Activity"}, {Field::Timestamp, "When"}};
  EXPECT_UILOG_ERROR(ingest("Activity\nx\n", mapping), ErrorCode::MissingColumn);
}

TEST(Ingest, InvalidMapping) {
  ColumnMapping mapping;
  mapping.columns = {{Field::Timestamp, "When"}};
  EXPECT_UILOG_ERROR(ingest("When\n2024-01-01\n", mapping), ErrorCode::InvalidMapping);
}

TEST(Ingest, BadTimestampRowsAreSkipped) {
  auto [log, report] = ingest(
      "Timestamp,Activity\n"
      "2024-03-01T09:00:00Z,a\n"
      "tomorrow,b\n"
      "2024-03-01T09:00:01.0005Z,c\n");
  ASSERT_EQ(log.events.size(), 2u);
  EXPECT_EQ(log.events[1].activity_name, "c");
  ASSERT_EQ(report.rows_skipped.size(), 1u);
  EXPECT_EQ(report.rows_skipped[0].row, 2u);
  EXPECT_NE(report.rows_skipped[0].reason.find("BadTimestamp"), std::string::npos);
  EXPECT_EQ(report.truncated_timestamps, 1u);
}

TEST(Ingest, BadLiteralKeptAsText) {
  auto [log, report] = ingest("Activity,Input value\nx,{broken\n");
  EXPECT_EQ(log.events[0].input_value, AttributeValue("{broken"));
  ASSERT_EQ(report.warnings.size(), 1u);
  EXPECT_NE(report.warnings[0].find("BadLiteral"), std::string::npos);
}

TEST(Ingest, SynthesizedNames) {
  auto [log, report] = ingest(
      "Timestamp,ActionType,Target\n"
      "2024-03-01T09:00:00Z,left click,confirm\n"
      "2024-03-01T09:00:01Z,right click,keywords\n"
      "2024-03-01T09:00:02Z,,logout\n");
  ASSERT_EQ(log.events.size(), 3u);
  EXPECT_EQ(log.events[0].activity_name, "click confirm");
  EXPECT_EQ(log.events[1].activity_name, "rclick keywords");
  EXPECT_EQ(log.events[2].activity_name, "none logout");
  EXPECT_EQ(report.synthesized_names, 3u);
}

TEST(Ingest, ExtrasPolicy) {
  const char* text = "Activity,Session\nx,s1\n";
  auto kept = ingest(text);
  EXPECT_EQ(*kept.log.events[0].attributes.find("Session"), AttributeValue("s1"));
  auto mapping = infer_mapping({"Activity", "Session"});
  mapping.extras = ExtrasPolicy::Ignore;
  EXPECT_TRUE(ingest(text, mapping).log.events[0].attributes.empty());
}

TEST(Ingest, TraceColumn) {
  auto [log, report] = ingest("Case,Activity\n2,a\n1,b\n2,c\n");
  ASSERT_TRUE(log.traced());
  ASSERT_EQ(log.traces->size(), 2u);
  EXPECT_EQ(log.traces->at(0).id, "2");
  EXPECT_EQ(log.traces->at(0).events, (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE(validate(log).ok());
}

TEST(Ingest, ReportJson) {
  auto [log, report] = ingest("Timestamp,Activity\nbad,a\n");
  auto doc = nlohmann::json::parse(render_json(report));
  EXPECT_EQ(doc["rows_read"], 1);
  EXPECT_EQ(doc["events_created"], 0);
  EXPECT_EQ(doc["rows_skipped"][0]["row"], 1);
}

TEST(Ingest, MappingFile) {
  auto mapping = load_mapping(read_data("keyword_workflow.mapping"));
  EXPECT_EQ(mapping.value_parsers.at("Current state"), ValueParser::ListLiteral);
  auto [log, report] = ingest(read_data("keyword_workflow.csv"), mapping);
  EXPECT_EQ(testing::first_difference(testing::keyword_workflow_by_hand(), log), "");

  auto custom = load_mapping(
      "[mapping]\n"
      "activity_name = Act\n"
      "timestamp = When\n"
      "timestamp_format = %d.%m.%Y %H:%M\n"
      "delimiter = ;\n"
      "naming = concatenation\n");
  auto result = ingest("Act;When\na;01.03.2024 09:30\n", custom);
  ASSERT_EQ(result.log.events.size(), 1u);
  EXPECT_EQ(format_iso8601(*result.log.events[0].timestamp), "2024-03-01T09:30:00.000+00:00");
  EXPECT_UILOG_ERROR(load_mapping("nonsense_field = X\n"), ErrorCode::BadConfig);
}

TEST(Reemit, ReproducesMappedCells) {
  const auto text = read_data("keyword_workflow.csv");
  auto [log, report] = ingest(text);
  auto mapping = infer_mapping(read_csv(text).front());
  EXPECT_EQ(read_csv(write_tabular(log, mapping)), read_csv(text));
}

TEST(Reemit, OrderPreservingOverRandomLogs) {
  // Tabular output of a random log re-ingests to the same events, in order.
  std::mt19937_64 rng(41);
  for (int i = 0; i < 40; ++i) {
    testing::RandomLogOptions options;
    options.max_events = 80;
    auto log = testing::random_log(rng, options);
    // Tabular cells carry flat text only and no log or trace attributes.
    log.attributes = {};
    if (log.traces)
      for (auto& t : *log.traces) t.attributes = {};
    for (auto& e : log.events) {
      if (e.input_value) e.input_value = AttributeValue(std::string("v") + std::to_string(&e - log.events.data()));
      e.attributes = {};
    }
    auto back = ingest(write_tabular(log, default_output_mapping(log))).log;
    ASSERT_EQ(back.events.size(), log.events.size());
    EXPECT_EQ(testing::first_difference(log, back), "") << "log #" << i;
  }
}

}  // namespace
}  // namespace uilog
