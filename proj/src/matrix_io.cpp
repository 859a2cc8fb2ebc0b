#include "evd/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace evd {

namespace {

// Gross asymmetry (beyond file round-trip noise) is rejected rather than
// silently averaged away.
constexpr double kRejectRelative = 1e-6;

LoadedMatrix finish(const Matrix& raw, const std::string& name) {
    if (raw.rows() != raw.cols())
        throw ParseError(name + ": matrix is " + std::to_string(raw.rows()) + "x" +
                         std::to_string(raw.cols()) + ", expected square");
    double worst = 0.0;
    for (std::size_t i = 0; i < raw.rows(); ++i)
        for (std::size_t j = i + 1; j < raw.cols(); ++j)
            worst = std::max(worst, std::fabs(raw(i, j) - raw(j, i)));
    const double scale = std::max(1.0, raw.max_abs());
    if (worst > kRejectRelative * scale)
        throw NotSymmetric(name + ": max asymmetry " + std::to_string(worst) +
                           " exceeds tolerance");
    return {SymMatrix::symmetrized(raw), worst};
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

double parse_number(const std::string& tok, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": bad number \"" + tok + "\"");
    }
}

}  // namespace

LoadedMatrix load_csv_stream(std::istream& in, const std::string& name) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto b = tok.find_first_not_of(" \t\r");
            const auto e = tok.find_last_not_of(" \t\r");
            if (b == std::string::npos)
                throw ParseError(name + " line " + std::to_string(lineno) +
                                 ": empty field");
            row.push_back(parse_number(tok.substr(b, e - b + 1),
                                       name + " line " + std::to_string(lineno)));
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(name + " line " + std::to_string(lineno) + ": has " +
                             std::to_string(row.size()) + " fields, expected " +
                             std::to_string(rows.front().size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(name + ": no data rows");
    Matrix raw(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) raw(i, j) = rows[i][j];
    return finish(raw, name);
}

LoadedMatrix load_csv(const std::string& path) {
    auto in = open_or_throw(path);
    return load_csv_stream(in, path);
}

LoadedMatrix load_matrix_market_stream(std::istream& in, const std::string& name) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("%%MatrixMarket", 0) != 0)
        throw ParseError(name + ": missing MatrixMarket header");
    std::stringstream hs(header);
    std::string tag, object, format, field, symmetry;
    hs >> tag >> object >> format >> field >> symmetry;
    std::transform(format.begin(), format.end(), format.begin(), ::tolower);
    std::transform(field.begin(), field.end(), field.begin(), ::tolower);
    std::transform(symmetry.begin(), symmetry.end(), symmetry.begin(), ::tolower);
    if (object != "matrix" || (format != "array" && format != "coordinate"))
        throw ParseError(name + ": unsupported MatrixMarket header \"" + header + "\"");
    if (field != "real" && field != "integer")
        throw ParseError(name + ": unsupported field \"" + field + "\"");
    if (symmetry != "general" && symmetry != "symmetric")
        throw ParseError(name + ": unsupported symmetry \"" + symmetry + "\"");

    std::string line;
    auto next_data_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '%') continue;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            return line;
        }
        throw ParseError(name + ": unexpected end of file");
    };

    std::stringstream sz(next_data_line());
    std::size_t rows = 0, cols = 0;
    if (!(sz >> rows >> cols) || rows == 0 || cols == 0)
        throw ParseError(name + ": bad size line");
    Matrix raw(rows, cols);

    if (format == "coordinate") {
        std::size_t nnz = 0;
        if (!(sz >> nnz)) throw ParseError(name + ": coordinate size line needs nnz");
        for (std::size_t k = 0; k < nnz; ++k) {
            std::stringstream es(next_data_line());
            std::size_t i = 0, j = 0;
            double v = 0.0;
            if (!(es >> i >> j >> v) || i < 1 || j < 1 || i > rows || j > cols)
                throw ParseError(name + ": bad coordinate entry " +
                                 std::to_string(k + 1));
            raw(i - 1, j - 1) = v;
            if (symmetry == "symmetric") raw(j - 1, i - 1) = v;
        }
    } else {
        // Array format is column-major; symmetric files store the lower
        // triangle of each column only.
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t first = symmetry == "symmetric" ? j : 0;
            for (std::size_t i = first; i < rows; ++i) {
                std::stringstream es(next_data_line());
                double v = 0.0;
                if (!(es >> v)) throw ParseError(name + ": bad array value");
                raw(i, j) = v;
                if (symmetry == "symmetric") raw(j, i) = v;
            }
        }
    }
    return finish(raw, name);
}

LoadedMatrix load_matrix_market(const std::string& path) {
    auto in = open_or_throw(path);
    return load_matrix_market_stream(in, path);
}

void save_csv(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << m(i, j);
        }
        out << '\n';
    }
}

}  // namespace evd
