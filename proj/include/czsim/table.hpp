#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace czsim {

/// Shortest round-trippable-enough text for a double (12 significant digits).
std::string format_number(double x);

/// Comma-delimited table preceded by `#` comment lines.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void comment(std::string line) { comments_.push_back(std::move(line)); }
    void comments(const std::vector<std::string>& lines) {
        comments_.insert(comments_.end(), lines.begin(), lines.end());
    }
    /// Throws InvalidArgument if the field count differs from the column count.
    void add_row(std::vector<std::string> fields);

    std::size_t rows() const noexcept { return rows_.size(); }
    void write(std::ostream& os) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace czsim
