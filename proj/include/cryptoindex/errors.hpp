#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cryptoindex {

// Problem in the data itself: bad rows, out-of-range queries, unresolvable
// prices. Maps to exit code 1 in the CLI.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad usage: malformed config, missing files, inconsistent date ranges.
// Maps to exit code 2 in the CLI.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RowError {
    std::size_t line;  // 1-based physical line number in the file
    std::string message;
};

// CSV load failure carrying every offending row.
class CsvError : public DataError {
public:
    CsvError(const std::string& summary, std::vector<RowError> rows)
        : DataError(summary), rows_(std::move(rows)) {}

    const std::vector<RowError>& rows() const { return rows_; }

private:
    std::vector<RowError> rows_;
};

}  // namespace cryptoindex
