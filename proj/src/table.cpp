#include "czsim/table.hpp"

#include <cmath>
#include <cstdio>

#include "czsim/errors.hpp"

namespace czsim {

std::string format_number(double x) {
    if (x == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> fields) {
    if (fields.size() != columns_.size()) {
        throw InvalidArgument("table row has " + std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(fields));
}

void CsvTable::write(std::ostream& os) const {
    for (const auto& c : comments_) os << "# " << c << '\n';
    auto line = [&](const std::vector<std::string>& f) {
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
        os << '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
}

}  // namespace czsim
