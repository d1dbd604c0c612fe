#include "adkde/sample.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adkde {

SampleMatrix::SampleMatrix(std::int64_t n, int d) : n_(n), d_(d) {
    if (n < 1) throw std::invalid_argument("SampleMatrix: need at least one row");
    if (d < 1) throw std::invalid_argument("SampleMatrix: need at least one column");
    storage_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(d), 0.0);
}

void SampleMatrix::validate() const {
    if (n_ < 1) throw std::runtime_error("SampleMatrix: empty sample");
    for (double v : storage_)
        if (!std::isfinite(v)) throw std::runtime_error("SampleMatrix: non-finite entry");
}

SampleMatrix read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CSV file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("CSV has no header row: " + path);
    int d = 1;
    for (char c : line)
        if (c == ',') ++d;

    std::vector<double> values;
    std::int64_t n = 0;
    for (std::int64_t lineno = 2; std::getline(in, line); ++lineno) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int got = 0;
        while (std::getline(ss, cell, ',')) {
            const char* s = cell.c_str();
            char* end = nullptr;
            double v = std::strtod(s, &end);
            while (end && (*end == ' ' || *end == '\r')) ++end;
            if (end == s || (end && *end != '\0'))
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": non-numeric cell '" + cell + "'");
            values.push_back(v);
            ++got;
        }
        if (got != d)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(d) + " columns, got " + std::to_string(got));
        ++n;
    }
    if (n < 1) throw std::runtime_error("CSV has no data rows: " + path);

    SampleMatrix m(n, d);
    for (std::int64_t r = 0; r < n; ++r)
        for (int c = 0; c < d; ++c)
            m.at(r, c) = values[static_cast<std::size_t>(r) * d + c];
    m.validate();
    return m;
}

} // namespace adkde
