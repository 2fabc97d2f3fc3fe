#ifndef SRBP_CSV_HPP
#define SRBP_CSV_HPP

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace srbp {

/// Comma-separated writer; numbers carry 17 significant digits so re-reads
/// are bit-faithful.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("csv: cannot open " + path);
    }

    void header(const std::vector<std::string>& cols) { row_strings(cols); }

    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    static std::string num(double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    void row(const std::vector<double>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i) out_ << (i ? "," : "") << num(xs[i]);
        out_ << "\n";
    }

    void row(const std::string& head, const std::vector<double>& xs) {
        out_ << head;
        for (double x : xs) out_ << "," << num(x);
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

} // namespace srbp

#endif
