#pragma once
//
// Project     : normqr
// Module      : csv
// Description : matrix CSV input/output (one matrix row per line,
//               comma-separated decimals)
//

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "normqr/matrix.hpp"

namespace normqr {

class CsvError : public ShapeError {
public:
    using ShapeError::ShapeError;
};

inline DenseMatrix read_matrix_csv_text(const std::string& text, const std::string& where) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string tok = line.substr(pos, comma - pos);
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                throw CsvError(where + ":" + std::to_string(lineno) + ": bad number '" + tok +
                               "'");
            }
            while (used < tok.size() && (tok[used] == ' ' || tok[used] == '\t')) ++used;
            if (used != tok.size())
                throw CsvError(where + ":" + std::to_string(lineno) + ": bad number '" + tok +
                               "'");
            row.push_back(v);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw CsvError(where + ":" + std::to_string(lineno) + ": ragged row (" +
                           std::to_string(row.size()) + " vs " +
                           std::to_string(rows.front().size()) + " fields)");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw CsvError(where + ": no data rows");
    const std::size_t m = rows.size(), n = rows.front().size();
    std::vector<double> entries(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) entries[j * m + i] = rows[i][j];
    try {
        return DenseMatrix(m, n, std::move(entries));
    } catch (const ShapeError& e) {
        throw CsvError(where + ": " + e.what());
    }
}

inline DenseMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError(path + ": cannot open for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_matrix_csv_text(ss.str(), path);
}

/// Shortest representation that round-trips a double exactly.
inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[32];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            std::sscanf(shorter, "%lf", &back);
            if (back == v) return shorter;
        }
    }
    return buf;
}

inline std::string write_matrix_csv_text(const DenseMatrix& A) {
    std::string out;
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (j) out += ',';
            out += format_double(A(i, j));
        }
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError(path + ": cannot open for writing");
    out << text;
    if (!out) throw CsvError(path + ": write failed");
}

inline void write_matrix_csv(const std::string& path, const DenseMatrix& A) {
    write_text_file(path, write_matrix_csv_text(A));
}

}  // namespace normqr
