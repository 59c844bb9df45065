#include "frul/cmapss.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace frul {

namespace {

constexpr std::array<ColumnInfo, kDataColumnCount> kSchema = {{
    {"unit", "unit", "", "", "Engine unit number"},
    {"cycle", "cycle", "", "", "Operational cycle index"},
    {"OS1", "op setting 1", "", "", "Mach number setting"},
    {"OS2", "op setting 2", "", "", "Altitude setting"},
    {"OS3", "op setting 3", "", "", "Sea-level temperature setting"},
    {"SM1", "fan in temp", "T2", "R", "Total temp at fan inlet"},
    {"SM2", "lpc out temp", "T24", "R", "Total temp at LPC outlet"},
    {"SM3", "hpc out temp", "T30", "R", "Total temp at HPC outlet"},
    {"SM4", "lpt out temp", "T50", "R", "Total temp at LPT outlet"},
    {"SM5", "fan in press", "P2", "psia", "Pressure at fan inlet"},
    {"SM6", "bypass press", "P15", "psia", "Total pressure in bypass duct"},
    {"SM7", "hpc out press", "P30", "psia", "Total pressure at HPC outlet"},
    {"SM8", "fan speed", "Nf", "rpm", "Physical fan speed"},
    {"SM9", "core speed", "Nc", "rpm", "Physical core speed"},
    {"SM10", "epr", "epr", "", "Engine pressure ratio (P50/P2)"},
    {"SM11", "hpc stat press", "Ps30", "psia", "Static pressure at HPC outlet"},
    {"SM12", "flow press ratio", "Phi", "pps/psi", "Ratio of fuel flow to Ps30"},
    {"SM13", "corr fan speed", "NRf", "rpm", "Corrected fan speed"},
    {"SM14", "corr core speed", "NRc", "rpm", "Corrected core speed"},
    {"SM15", "bypass ratio", "BPR", "", "Bypass ratio"},
    {"SM16", "burner fuel ratio", "farB", "", "Burner fuel-air ratio"},
    {"SM17", "bleed enthalpy", "htBleed", "", "Bleed enthalpy"},
    {"SM18", "dmd fan speed", "Nf dmd", "rpm", "Demanded fan speed"},
    {"SM19", "dmd corr fan speed", "PCNfR dmd", "rpm", "Demanded corrected fan speed"},
    {"SM20", "hpt bleed", "WC31", "lbm/s", "HPT coolant bleed"},
    {"SM21", "lpt bleed", "WC32", "lbm/s", "LPT coolant bleed"},
}};

constexpr std::array<AgentInfo, 4> kAgentInfo = {{
    {100, 100, 1, "HPC"},
    {260, 259, 6, "HPC"},
    {100, 100, 1, "Fan/HPC"},
    {248, 249, 6, "Fan/HPC"},
}};

constexpr std::array<std::string_view, 4> kAgentNames = {"FD001", "FD002", "FD003",
                                                         "FD004"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line, DataFormat format) {
    std::vector<std::string_view> fields;
    if (format == DataFormat::Csv) {
        std::size_t start = 0;
        while (true) {
            std::size_t pos = line.find(',', start);
            if (pos == std::string_view::npos) {
                fields.push_back(trim(line.substr(start)));
                break;
            }
            fields.push_back(trim(line.substr(start, pos - start)));
            start = pos + 1;
        }
    } else {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            std::size_t start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
            if (i > start) fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

long parse_int_field(std::string_view field, std::size_t line_no, const char* what) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(std::string(what) + " is not an integer: '" + std::string(field) + "'",
                         line_no);
    return value;
}

double parse_real_field(std::string_view field, std::size_t line_no, int column) {
    // std::from_chars for doubles is incomplete on some libstdc++; strtod is fine here.
    std::string buf(field);
    char* end = nullptr;
    double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        throw ParseError("column " + std::to_string(column) + " is not numeric: '" + buf + "'",
                         line_no);
    return value;
}

// Iterates lines without copying; yields (1-based line number, content).
template <typename Fn>
void for_each_line(std::string_view bytes, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= bytes.size()) {
        if (start == bytes.size()) break;
        std::size_t pos = bytes.find('\n', start);
        std::string_view line;
        if (pos == std::string_view::npos) {
            line = bytes.substr(start);
            start = bytes.size();
        } else {
            line = bytes.substr(start, pos - start);
            start = pos + 1;
        }
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        fn(line_no, line);
    }
}

void validate_unit_cycles(const TimeSeriesTable& table) {
    std::map<int, int> last_cycle;
    std::size_t line_no = 0;
    for (const Row& row : table.rows) {
        ++line_no;
        auto it = last_cycle.find(row.unit);
        if (it == last_cycle.end()) {
            if (row.cycle != 1)
                throw ParseError("unit " + std::to_string(row.unit) + " does not start at cycle 1",
                                 line_no);
            last_cycle.emplace(row.unit, row.cycle);
        } else {
            if (row.cycle <= it->second)
                throw ParseError("unit " + std::to_string(row.unit) +
                                     " cycles are not strictly increasing",
                                 line_no);
            it->second = row.cycle;
        }
    }
}

std::string format_real(double v) {
    // Shortest representation that round-trips a double.
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = std::strtod(buf, nullptr);
    if (back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char probe[32];
            std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
            if (std::strtod(probe, nullptr) == v) return probe;
        }
    }
    return buf;
}

}  // namespace

std::string_view to_string(AgentId agent) { return kAgentNames[static_cast<int>(agent)]; }

std::optional<AgentId> agent_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kAgentNames.size(); ++i)
        if (name == kAgentNames[i]) return static_cast<AgentId>(i);
    return std::nullopt;
}

const AgentInfo& agent_info(AgentId agent) { return kAgentInfo[static_cast<int>(agent)]; }

std::span<const ColumnInfo> column_schema() { return kSchema; }

double Row::feature(int index) const {
    return index < kSettingCount ? os[index] : sm[index - kSettingCount];
}

double& Row::feature(int index) {
    return index < kSettingCount ? os[index] : sm[index - kSettingCount];
}

std::vector<UnitSpan> TimeSeriesTable::unit_spans() const {
    std::vector<UnitSpan> spans;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t begin = i;
        int unit = rows[i].unit;
        while (i < rows.size() && rows[i].unit == unit) ++i;
        spans.push_back({unit, begin, i});
    }
    return spans;
}

std::size_t TimeSeriesTable::unit_count() const { return unit_spans().size(); }

bool TimeSeriesTable::labeled() const {
    return !rows.empty() &&
           std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.has_rul(); });
}

std::vector<std::string> base_feature_names() {
    std::vector<std::string> names;
    names.reserve(kBaseFeatureCount);
    for (int i = 2; i < kDataColumnCount; ++i) names.emplace_back(kSchema[i].original_label);
    return names;
}

DataFormat detect_format(std::string_view content) {
    std::size_t eol = content.find('\n');
    std::string_view first = eol == std::string_view::npos ? content : content.substr(0, eol);
    return first.find(',') != std::string_view::npos ? DataFormat::Csv : DataFormat::Whitespace;
}

TimeSeriesTable parse_data_file(std::string_view bytes, DataFormat format, AgentId agent) {
    TimeSeriesTable table;
    table.agent = agent;
    table.feature_names = base_feature_names();

    for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
        if (trim(line).empty()) return;
        auto fields = split_fields(line, format);
        if (fields.size() != kDataColumnCount)
            throw ParseError("expected " + std::to_string(kDataColumnCount) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        Row row;
        long unit = parse_int_field(fields[0], line_no, "unit");
        long cycle = parse_int_field(fields[1], line_no, "cycle");
        if (unit <= 0) throw ParseError("unit must be positive", line_no);
        if (cycle <= 0) throw ParseError("cycle must be positive", line_no);
        row.unit = static_cast<int>(unit);
        row.cycle = static_cast<int>(cycle);
        for (int i = 0; i < kSettingCount; ++i)
            row.os[i] = parse_real_field(fields[2 + i], line_no, 3 + i);
        for (int i = 0; i < kSensorCount; ++i)
            row.sm[i] = parse_real_field(fields[2 + kSettingCount + i], line_no,
                                         3 + kSettingCount + i);
        table.rows.push_back(row);
    });

    if (table.rows.empty()) throw ParseError("empty data file", 1);
    validate_unit_cycles(table);
    return table;
}

TimeSeriesTable parse_data_auto(std::string_view bytes, AgentId agent) {
    return parse_data_file(bytes, detect_format(bytes), agent);
}

std::vector<int> parse_rul_file(std::string_view bytes) {
    std::vector<int> ruls;
    for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
        std::string_view field = trim(line);
        if (field.empty()) return;
        long value = parse_int_field(field, line_no, "RUL");
        if (value < 0) throw ParseError("RUL must be nonnegative", line_no);
        ruls.push_back(static_cast<int>(value));
    });
    return ruls;
}

TimeSeriesTable label_train_rul(TimeSeriesTable table) {
    for (const UnitSpan& span : table.unit_spans()) {
        int max_cycle = table.rows[span.end - 1].cycle;
        for (std::size_t i = span.begin; i < span.end; ++i)
            table.rows[i].rul = max_cycle - table.rows[i].cycle;
    }
    return table;
}

TimeSeriesTable label_test_rul(TimeSeriesTable table, const std::vector<int>& ruls) {
    auto spans = table.unit_spans();
    if (spans.size() != ruls.size())
        throw InvalidArgument("RUL file has " + std::to_string(ruls.size()) +
                              " entries but table has " + std::to_string(spans.size()) +
                              " units");
    for (std::size_t u = 0; u < spans.size(); ++u) {
        const UnitSpan& span = spans[u];
        int last_cycle = table.rows[span.end - 1].cycle;
        for (std::size_t i = span.begin; i < span.end; ++i)
            table.rows[i].rul = ruls[u] + (last_cycle - table.rows[i].cycle);
    }
    return table;
}

std::string write_table_csv(const TimeSeriesTable& table) {
    std::string out;
    out.reserve(table.rows.size() * 200 + 256);
    bool labeled = table.labeled();
    out += "unit,cycle";
    for (const std::string& name : table.feature_names) {
        out += ',';
        out += name;
    }
    if (labeled) out += ",RUL";
    out += '\n';
    for (const Row& row : table.rows) {
        out += std::to_string(row.unit);
        out += ',';
        out += std::to_string(row.cycle);
        for (int i = 0; i < kBaseFeatureCount; ++i) {
            out += ',';
            out += format_real(row.feature(i));
        }
        if (labeled) {
            out += ',';
            out += std::to_string(row.rul);
        }
        out += '\n';
    }
    return out;
}

TimeSeriesTable read_table_csv(std::string_view bytes, AgentId agent) {
    TimeSeriesTable table;
    table.agent = agent;
    table.feature_names = base_feature_names();
    bool has_rul = false;
    bool saw_header = false;

    for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
        if (trim(line).empty()) return;
        auto fields = split_fields(line, DataFormat::Csv);
        if (!saw_header) {
            if (fields.empty() || fields[0] != "unit")
                throw ParseError("expected canonical csv header starting with 'unit'", line_no);
            if (fields.size() == kDataColumnCount + 1 && fields.back() == "RUL")
                has_rul = true;
            else if (fields.size() != kDataColumnCount)
                throw ParseError("unexpected header width", line_no);
            saw_header = true;
            return;
        }
        std::size_t expect = kDataColumnCount + (has_rul ? 1 : 0);
        if (fields.size() != expect)
            throw ParseError("expected " + std::to_string(expect) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        Row row;
        row.unit = static_cast<int>(parse_int_field(fields[0], line_no, "unit"));
        row.cycle = static_cast<int>(parse_int_field(fields[1], line_no, "cycle"));
        for (int i = 0; i < kBaseFeatureCount; ++i)
            row.feature(i) = parse_real_field(fields[2 + i], line_no, 3 + i);
        if (has_rul) {
            long rul = parse_int_field(fields[kDataColumnCount], line_no, "RUL");
            if (rul < 0) throw ParseError("RUL must be nonnegative", line_no);
            row.rul = static_cast<int>(rul);
        }
        table.rows.push_back(row);
    });

    if (!saw_header) throw ParseError("empty csv", 1);
    validate_unit_cycles(table);
    return table;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("write failed: " + path.string());
}

TimeSeriesTable load_data_file(const std::filesystem::path& path, AgentId agent) {
    return parse_data_auto(read_file(path), agent);
}

std::vector<int> load_rul_file(const std::filesystem::path& path) {
    return parse_rul_file(read_file(path));
}

std::vector<UnitSpan> FeatureTable::unit_spans() const {
    std::vector<UnitSpan> spans;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t begin = i;
        int unit = rows[i].unit;
        while (i < rows.size() && rows[i].unit == unit) ++i;
        spans.push_back({unit, begin, i});
    }
    return spans;
}

FeatureTable to_feature_table(const TimeSeriesTable& table) {
    FeatureTable ft;
    ft.agent = table.agent;
    ft.feature_names = table.feature_names;
    ft.rows.reserve(table.rows.size());
    for (const Row& row : table.rows) {
        FeatureRow fr;
        fr.unit = row.unit;
        fr.cycle = row.cycle;
        fr.rul = row.rul;
        fr.values.resize(kBaseFeatureCount);
        for (int i = 0; i < kBaseFeatureCount; ++i) fr.values[i] = row.feature(i);
        ft.rows.push_back(std::move(fr));
    }
    return ft;
}

}  // namespace frul
