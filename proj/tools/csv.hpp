#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace wignerkin::cli {

// CSV writer with '.' decimal, 17 significant digits, atomic
// temp-and-rename output (no partial file on failure).
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(const std::vector<std::string>& cells);
    void add_row_numeric(const std::vector<double>& cells);

    static std::string format(double x) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return buf;
    }

    std::string str() const;
    void write_atomic(const std::string& path) const;

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace wignerkin::cli
