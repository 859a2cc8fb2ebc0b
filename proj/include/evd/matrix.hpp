#pragma once

#include <cstdint>
#include <vector>

#include "evd/errors.hpp"

namespace evd {

/// Dense row-major real matrix. Rows are observations when used as a data set.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }

    Matrix transposed() const;
    Matrix multiply(const Matrix& rhs) const;

    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Dense symmetric real matrix. Symmetry is exact by construction: every write
/// through set() mirrors, and the ingestion factories symmetrize bitwise.
class SymMatrix {
public:
    explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    static SymMatrix identity(std::size_t n);

    /// Builds from an arbitrary square grid by exact symmetrization (E + E^T)/2.
    static SymMatrix symmetrized(const Matrix& raw);

    /// Builds from a square grid, throwing NotSymmetric on any mismatched pair.
    static SymMatrix require_symmetric(const Matrix& raw);

    std::size_t dim() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }

    const std::vector<double>& data() const { return data_; }
    Matrix as_matrix() const;

    double max_entry() const;
    double min_entry() const;

private:
    std::size_t n_;
    std::vector<double> data_;
};

struct ScaleResult {
    SymMatrix scaled;
    double factor_m;  // sqrt(norm_one * norm_inf) of the original
};

/// Maximum column sum of absolute entries.
double norm_one(const SymMatrix& m);

/// Maximum row sum of absolute entries. Equals norm_one for a SymMatrix.
double norm_inf(const SymMatrix& m);

double frobenius_norm(const SymMatrix& m);

/// Upper bound on the spectral norm: sqrt(norm_one * norm_inf). For symmetric
/// input the two norms coincide and the bound is returned without the
/// square-root round trip, so it is exactly the shared norm value.
double spectral_bound(const SymMatrix& m);

/// Divides every entry by spectral_bound(m). Throws ZeroMatrix when the bound
/// is zero.
ScaleResult scale_matrix(const SymMatrix& m);

/// Deterministic random symmetric positive semi-definite matrix.
///
/// Generator: a SplitMix-seeded std::mt19937_64 drives uniform doubles in
/// [-1, 1) via (x >> 11) * 2^-53 (no library distribution involved, so the
/// stream is identical across platforms). With B the n-by-n grid of draws,
/// the result is entry_scale * (B * B^T) / n.
SymMatrix random_spsd(std::size_t n, std::uint64_t seed, double entry_scale = 1.0);

/// Deterministic random data matrix with the same draw scheme, entries
/// uniform in [-entry_scale, entry_scale).
Matrix random_data(std::size_t rows, std::size_t cols, std::uint64_t seed,
                   double entry_scale = 1.0);

/// Sample covariance (divides by rows-1) of a data matrix whose rows are
/// observations. Symmetrized exactly. Throws InsufficientRows when rows < 2.
SymMatrix covariance(const Matrix& data);

/// Column means of a data matrix.
std::vector<double> column_means(const Matrix& data);

}  // namespace evd
