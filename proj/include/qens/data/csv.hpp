#pragma once

#include <stdexcept>
#include <string>

#include "qens/data/dataset.hpp"

namespace qens {

// Ingestion failure with 1-based row and column location (0 = not column
// specific).
class IngestError : public std::runtime_error {
  public:
    IngestError(const std::string& message, int row, int col)
        : std::runtime_error(message + " (row " + std::to_string(row) + ", column " +
                             std::to_string(col) + ")"),
          row_(row),
          col_(col) {}

    int row() const { return row_; }
    int col() const { return col_; }

  private:
    int row_;
    int col_;
};

enum class HeaderMode { detect, with_header, no_header };

// Column roles for a CSV file. Dialect: comma-separated, UTF-8, decimal
// point, optional single header row. target_column -1 means the last column.
struct CsvSchema {
    TaskKind task = TaskKind::regression;
    int target_column = -1;
    HeaderMode header = HeaderMode::detect;
    int expected_columns = 0;  // total columns incl. target; 0 = no check
};

// Parses the file into a Dataset. Classification target values are mapped to
// 0-based contiguous labels in first-appearance order. Throws IngestError
// (missing file, malformed row, non-numeric cell, no data rows).
Dataset load_csv(const std::string& path, const CsvSchema& schema);

// Writes features plus a final `target` column, with a header row, in the
// same dialect load_csv reads.
void save_csv(const Dataset& data, const std::string& path);

}  // namespace qens
