#pragma once

#include <iosfwd>
#include <string>

#include "evd/matrix.hpp"

namespace evd {

/// Outcome of loading a square matrix from disk: the exactly symmetrized
/// matrix plus the worst asymmetry found in the raw file (file round-trips
/// rarely preserve symmetry bitwise).
struct LoadedMatrix {
    SymMatrix matrix;
    double max_asymmetry = 0.0;
};

/// Header-less CSV, one row per line. Throws ParseError (naming the offending
/// row) on ragged or non-square input, NotSymmetric when the asymmetry is
/// gross rather than round-trip noise.
LoadedMatrix load_csv(const std::string& path);
LoadedMatrix load_csv_stream(std::istream& in, const std::string& name);

/// Matrix Market: array or coordinate format, general or symmetric, real.
LoadedMatrix load_matrix_market(const std::string& path);
LoadedMatrix load_matrix_market_stream(std::istream& in, const std::string& name);

void save_csv(const Matrix& m, const std::string& path);

}  // namespace evd
