#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace qemit {

// Canonical float formatting for all artifacts: 17 significant digits,
// shortest-round-trip is not used so repeated runs are byte-identical.
std::string float17(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);
    void add_row(std::initializer_list<double> values);
    void add_row(const std::vector<double>& values);
    const std::string& text() const { return text_; }

private:
    std::size_t n_cols_;
    std::string text_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qemit
