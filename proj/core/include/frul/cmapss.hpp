#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frul/errors.hpp"

namespace frul {

inline constexpr int kSettingCount = 3;
inline constexpr int kSensorCount = 21;
inline constexpr int kBaseFeatureCount = kSettingCount + kSensorCount;  // OS1..OS3, SM1..SM21
inline constexpr int kDataColumnCount = 2 + kBaseFeatureCount;          // + unit, cycle

enum class AgentId { FD001, FD002, FD003, FD004 };

inline constexpr std::array<AgentId, 4> kAllAgents = {
    AgentId::FD001, AgentId::FD002, AgentId::FD003, AgentId::FD004};

std::string_view to_string(AgentId agent);
std::optional<AgentId> agent_from_string(std::string_view name);

// Trajectory counts and simulated conditions per sub-dataset.
struct AgentInfo {
    int train_units;
    int test_units;
    int conditions;
    std::string_view faults;
};
const AgentInfo& agent_info(AgentId agent);

// One entry of the 26-column schema; sensor columns carry the renamed labels.
struct ColumnInfo {
    std::string_view original_label;
    std::string_view new_label;
    std::string_view sensor_name;
    std::string_view units;
    std::string_view description;
};
std::span<const ColumnInfo> column_schema();

struct Row {
    int unit = 0;
    int cycle = 0;
    std::array<double, kSettingCount> os{};
    std::array<double, kSensorCount> sm{};
    int rul = -1;  // -1 = unset

    bool has_rul() const { return rul >= 0; }
    // Base feature by positional index: 0..2 = OS1..OS3, 3..23 = SM1..SM21.
    double feature(int index) const;
    double& feature(int index);
};

// Half-open row range of one unit, in file order.
struct UnitSpan {
    int unit;
    std::size_t begin;
    std::size_t end;
    std::size_t rows() const { return end - begin; }
};

struct TimeSeriesTable {
    AgentId agent = AgentId::FD001;
    std::vector<Row> rows;
    std::vector<std::string> feature_names;  // OS1..OS3, SM1..SM21

    std::vector<UnitSpan> unit_spans() const;
    std::size_t unit_count() const;
    bool labeled() const;
};

std::vector<std::string> base_feature_names();

enum class DataFormat { Whitespace, Csv };

DataFormat detect_format(std::string_view content);

// 26 numeric fields per line; line numbers in errors are 1-based.
TimeSeriesTable parse_data_file(std::string_view bytes, DataFormat format,
                                AgentId agent = AgentId::FD001);
TimeSeriesTable parse_data_auto(std::string_view bytes, AgentId agent = AgentId::FD001);

// One nonnegative integer per line, one entry per test unit.
std::vector<int> parse_rul_file(std::string_view bytes);

// rul = max_cycle(unit) - cycle for every row.
TimeSeriesTable label_train_rul(TimeSeriesTable table);
// rul = ruls[i] + (last_cycle(unit i) - cycle); ruls matched by unit order.
TimeSeriesTable label_test_rul(TimeSeriesTable table, const std::vector<int>& ruls);

// Canonical csv with header; includes the RUL column when labeled.
std::string write_table_csv(const TimeSeriesTable& table);
TimeSeriesTable read_table_csv(std::string_view bytes, AgentId agent = AgentId::FD001);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
TimeSeriesTable load_data_file(const std::filesystem::path& path, AgentId agent);
std::vector<int> load_rul_file(const std::filesystem::path& path);

// Engineered feature table: base columns plus derived ones, one value row per cycle.
struct FeatureRow {
    int unit = 0;
    int cycle = 0;
    std::vector<double> values;
    int rul = -1;
};

struct FeatureTable {
    AgentId agent = AgentId::FD001;
    std::vector<std::string> feature_names;
    std::vector<FeatureRow> rows;

    std::vector<UnitSpan> unit_spans() const;
    std::size_t feature_count() const { return feature_names.size(); }
};

// The 24 base columns as a FeatureTable (no engineered features).
FeatureTable to_feature_table(const TimeSeriesTable& table);

}  // namespace frul
