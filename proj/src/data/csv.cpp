#include "qens/data/csv.hpp"

#include <charconv>
#include <fstream>
#include <vector>

namespace qens {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field.push_back(ch);
        }
    }
    fields.push_back(field);
    return fields;
}

bool parse_double(const std::string& field, double& value) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
    if (begin == end) return false;
    const auto result = std::from_chars(begin, end, value);
    return result.ec == std::errc() && result.ptr == end;
}

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream file(path);
    if (!file) throw IngestError("cannot open file '" + path + "'", 0, 0);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(file, line)) lines.push_back(line);
    // drop trailing blank lines only; blank lines elsewhere are malformed rows
    while (!lines.empty() && split_fields(lines.back()).size() == 1 &&
           split_fields(lines.back())[0].empty())
        lines.pop_back();
    if (lines.empty()) throw IngestError("no data rows in '" + path + "'", 0, 0);

    // header detection: a first row with any non-numeric cell is a header
    bool has_header = false;
    if (schema.header == HeaderMode::with_header) {
        has_header = true;
    } else if (schema.header == HeaderMode::detect) {
        double probe = 0.0;
        for (const std::string& field : split_fields(lines[0]))
            if (!parse_double(field, probe)) {
                has_header = true;
                break;
            }
    }

    const std::size_t first_data = has_header ? 1 : 0;
    if (first_data >= lines.size()) throw IngestError("no data rows in '" + path + "'", 1, 0);

    const std::size_t n_fields = split_fields(lines[first_data]).size();
    if (n_fields < 2) throw IngestError("need at least one feature and one target column",
                                        static_cast<int>(first_data) + 1, 0);
    if (schema.expected_columns > 0 && n_fields != static_cast<std::size_t>(schema.expected_columns))
        throw IngestError("expected " + std::to_string(schema.expected_columns) + " columns, found " +
                              std::to_string(n_fields),
                          static_cast<int>(first_data) + 1, 0);
    const std::size_t target_col = schema.target_column < 0
                                       ? n_fields - 1
                                       : static_cast<std::size_t>(schema.target_column);
    if (target_col >= n_fields)
        throw IngestError("target column out of range", static_cast<int>(first_data) + 1,
                          static_cast<int>(target_col) + 1);

    Dataset data;
    data.task = schema.task;
    data.n_cols = static_cast<int>(n_fields) - 1;
    if (has_header) {
        const std::vector<std::string> names = split_fields(lines[0]);
        for (std::size_t c = 0; c < names.size(); ++c)
            if (c != target_col) data.column_names.push_back(names[c]);
    }

    std::vector<std::string> label_values;  // first-appearance class encoding
    for (std::size_t row = first_data; row < lines.size(); ++row) {
        const int row_loc = static_cast<int>(row) + 1;
        const std::vector<std::string> fields = split_fields(lines[row]);
        if (fields.size() != n_fields)
            throw IngestError("expected " + std::to_string(n_fields) + " fields, found " +
                                  std::to_string(fields.size()),
                              row_loc, 0);
        for (std::size_t c = 0; c < n_fields; ++c) {
            const int col_loc = static_cast<int>(c) + 1;
            if (c == target_col) {
                if (schema.task == TaskKind::regression) {
                    double y = 0.0;
                    if (!parse_double(fields[c], y))
                        throw IngestError("non-numeric target '" + fields[c] + "'", row_loc, col_loc);
                    data.targets.push_back(y);
                } else {
                    std::size_t label = 0;
                    while (label < label_values.size() && label_values[label] != fields[c]) ++label;
                    if (label == label_values.size()) label_values.push_back(fields[c]);
                    data.labels.push_back(static_cast<int>(label));
                }
            } else {
                double x = 0.0;
                if (!parse_double(fields[c], x))
                    throw IngestError("non-numeric cell '" + fields[c] + "'", row_loc, col_loc);
                data.features.push_back(x);
            }
        }
        ++data.n_rows;
    }
    data.n_classes = static_cast<int>(label_values.size());
    data.validate();
    return data;
}

void save_csv(const Dataset& data, const std::string& path) {
    data.validate();
    std::ofstream file(path);
    if (!file) throw IngestError("cannot write file '" + path + "'", 0, 0);
    for (int c = 0; c < data.n_cols; ++c) {
        if (data.column_names.empty())
            file << "x" << c;
        else
            file << data.column_names[static_cast<std::size_t>(c)];
        file << ',';
    }
    file << "target\n";
    for (int r = 0; r < data.n_rows; ++r) {
        for (int c = 0; c < data.n_cols; ++c) file << format_double(data.at(r, c)) << ',';
        if (data.task == TaskKind::regression)
            file << format_double(data.targets[static_cast<std::size_t>(r)]);
        else
            file << data.labels[static_cast<std::size_t>(r)];
        file << '\n';
    }
}

}  // namespace qens
