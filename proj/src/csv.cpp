#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "binn/core.hpp"

namespace binn {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::size_t row, std::size_t col, const std::filesystem::path& path) {
    const std::string s = trim(raw);
    char* end = nullptr;
    errno = 0;
    const double v = s.empty() ? 0.0 : std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        std::ostringstream msg;
        msg << path.string() << ": row " << row << ", column " << col << ": cannot parse '" << s << "' as a number";
        throw ParseError(msg.str());
    }
    return v;
}

bool looks_numeric(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

}  // namespace

CsvTable read_csv_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": missing header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    CsvTable table;
    for (auto& name : split_line(line)) table.header.push_back(trim(name));
    if (table.header.empty() || (table.header.size() == 1 && table.header[0].empty())) {
        throw ParseError(path.string() + ": missing header row");
    }
    // A numeric first line is data, not a header.
    bool all_numeric = true;
    for (const auto& h : table.header) all_numeric = all_numeric && looks_numeric(h);
    if (all_numeric) throw ParseError(path.string() + ": missing header row (first line is numeric)");

    const std::size_t cols = table.header.size();
    std::vector<double> flat;
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);
        if (cells.size() != cols) {
            std::ostringstream msg;
            msg << path.string() << ": row " << line_no << " has " << cells.size() << " columns, expected " << cols;
            throw ParseError(msg.str());
        }
        for (std::size_t c = 0; c < cols; ++c) flat.push_back(parse_cell(cells[c], line_no, c + 1, path));
        ++rows;
    }
    table.values = Eigen::Map<RowMatrix>(flat.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    return table;
}

void write_csv_table(const CsvTable& table, const std::filesystem::path& path) {
    if (static_cast<std::size_t>(table.values.cols()) != table.header.size() && table.values.rows() > 0) {
        throw InvalidArgument("csv header/value column count mismatch");
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
    out << '\n';
    for (Eigen::Index r = 0; r < table.values.rows(); ++r) {
        for (Eigen::Index c = 0; c < table.values.cols(); ++c) out << (c ? "," : "") << format_double(table.values(r, c));
        out << '\n';
    }
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

Dataset dataset_from_table(const CsvTable& table, const std::vector<std::size_t>& input_columns,
                           std::size_t target_column) {
    const auto cols = table.header.size();
    if (target_column >= cols) throw InvalidArgument("target column out of range");
    Matrix x(table.values.rows(), static_cast<Eigen::Index>(input_columns.size()));
    for (std::size_t k = 0; k < input_columns.size(); ++k) {
        if (input_columns[k] >= cols) throw InvalidArgument("input column out of range");
        x.col(static_cast<Eigen::Index>(k)) = table.values.col(static_cast<Eigen::Index>(input_columns[k]));
    }
    Vector y = table.values.rows() > 0 ? Vector(table.values.col(static_cast<Eigen::Index>(target_column))) : Vector(0);
    return Dataset(std::move(x), std::move(y));
}

Dataset load_csv(const std::filesystem::path& path) {
    auto table = read_csv_table(path);
    if (table.header.size() < 2) throw ParseError(path.string() + ": need at least one input and one target column");
    std::vector<std::size_t> inputs(table.header.size() - 1);
    for (std::size_t c = 0; c < inputs.size(); ++c) inputs[c] = c;
    return dataset_from_table(table, inputs, table.header.size() - 1);
}

void save_csv(const Dataset& data, const std::filesystem::path& path, const std::vector<std::string>& header) {
    CsvTable table;
    if (!header.empty()) {
        if (header.size() != data.dims() + 1) throw InvalidArgument("csv header must name every input plus the target");
        table.header = header;
    } else {
        for (std::size_t d = 0; d < data.dims(); ++d) table.header.push_back("x" + std::to_string(d + 1));
        table.header.emplace_back("y");
    }
    table.values.resize(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(data.dims() + 1));
    if (data.size() > 0) table.values << data.inputs(), data.targets();
    write_csv_table(table, path);
}

}  // namespace binn
