#include "ocrect/correlation.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace ocrect {

CorrelationMatrix build_correlation(const std::vector<TagSet>& tag_sets, const LabelSpace& ls) {
    if (tag_sets.empty()) {
        throw ValidationError("build_correlation: empty tag corpus");
    }
    const int n = ls.num_classes();
    std::vector<long> counts(static_cast<std::size_t>(n) * n, 0);

    // Background counts as present in every image, so M[0][k] is the
    // frequency of k and M[0][0] is 1.
    for (const TagSet& ts : tag_sets) {
        std::vector<int> present;
        present.reserve(ts.tags.size() + 1);
        present.push_back(0);
        for (int t : ts.tags) {
            if (!ls.valid_tag(t)) {
                throw ValidationError("build_correlation: tag " + std::to_string(t) +
                                      " outside [1, " + std::to_string(ls.num_foreground()) + "]");
            }
            present.push_back(t);
        }
        for (int k : present) {
            for (int l : present) {
                ++counts[static_cast<std::size_t>(k) * n + l];
            }
        }
    }

    CorrelationMatrix m;
    m.num_classes = n;
    m.num_images = static_cast<long>(tag_sets.size());
    m.values.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        m.values[i] = static_cast<double>(counts[i]) / static_cast<double>(m.num_images);
    }
    return m;
}

std::vector<double> normalize_rows(const CorrelationMatrix& m) {
    const int n = m.num_classes;
    std::vector<double> out(m.values.size(), 0.0);
    for (int k = 0; k < n; ++k) {
        double lo = m.at(k, 0), hi = m.at(k, 0);
        for (int l = 1; l < n; ++l) {
            lo = std::min(lo, m.at(k, l));
            hi = std::max(hi, m.at(k, l));
        }
        if (hi > lo) {
            for (int l = 0; l < n; ++l) {
                out[static_cast<std::size_t>(k) * n + l] = (m.at(k, l) - lo) / (hi - lo);
            }
        }
        // constant rows stay all-zero
    }
    return out;
}

void write_correlation_values(const std::vector<double>& values, int num_classes,
                              const std::filesystem::path& path) {
    if (num_classes < 2 ||
        values.size() != static_cast<std::size_t>(num_classes) * num_classes) {
        throw ValidationError("write_correlation: inconsistent matrix shape");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open correlation file for writing: " + path.string());
    }
    for (int k = 0; k < num_classes; ++k) {
        out << (k ? "," : "") << k;
    }
    out << "\n";
    char cell[64];
    for (int k = 0; k < num_classes; ++k) {
        for (int l = 0; l < num_classes; ++l) {
            std::snprintf(cell, sizeof(cell), "%.9g",
                          values[static_cast<std::size_t>(k) * num_classes + l]);
            out << (l ? "," : "") << cell;
        }
        out << "\n";
    }
    if (!out) {
        throw ValidationError("write failed: " + path.string());
    }
}

void write_correlation(const CorrelationMatrix& m, const std::filesystem::path& path) {
    write_correlation_values(m.values, m.num_classes, path);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_cell(const std::string& cell, const std::filesystem::path& path, long line_no) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                              ": non-numeric cell '" + cell + "'");
    }
    return v;
}

}  // namespace

CorrelationMatrix read_correlation(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open correlation file: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(path.string() + ": empty correlation file");
    }
    const auto header = split_csv(line);
    const int n = static_cast<int>(header.size());
    if (n < 2) {
        throw ValidationError(path.string() + ": header must list class indices 0..C");
    }
    for (int k = 0; k < n; ++k) {
        if (header[k] != std::to_string(k)) {
            throw ValidationError(path.string() + ": header mismatch, expected " +
                                  std::to_string(k) + " got '" + header[k] + "'");
        }
    }

    CorrelationMatrix m;
    m.num_classes = n;
    m.num_images = 0;  // not recoverable from CSV
    m.values.reserve(static_cast<std::size_t>(n) * n);
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cells = split_csv(line);
        if (static_cast<int>(cells.size()) != n) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                  ": ragged row, expected " + std::to_string(n) + " cells, got " +
                                  std::to_string(cells.size()));
        }
        for (const auto& cell : cells) {
            const double v = parse_cell(cell, path, line_no);
            if (v < -1e-12 || v > 1.0 + 1e-12) {
                throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                                      ": value " + cell + " outside [0, 1]");
            }
            m.values.push_back(v);
        }
    }
    if (m.values.size() != static_cast<std::size_t>(n) * n) {
        throw ValidationError(path.string() + ": expected " + std::to_string(n) + " data rows");
    }
    return m;
}

}  // namespace ocrect
