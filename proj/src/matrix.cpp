#include "evd/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace evd {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::multiply(const Matrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionMismatch("matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double v = (*this)(r, k);
            if (v == 0.0) continue;
            for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += v * rhs(k, c);
        }
    return out;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::symmetrized(const Matrix& raw) {
    if (raw.rows() != raw.cols())
        throw DimensionMismatch("symmetric matrix must be square");
    const std::size_t n = raw.rows();
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m.set(i, j, (raw(i, j) + raw(j, i)) / 2.0);
    return m;
}

SymMatrix SymMatrix::require_symmetric(const Matrix& raw) {
    if (raw.rows() != raw.cols())
        throw NotSymmetric("matrix is not square");
    const std::size_t n = raw.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (raw(i, j) != raw(j, i))
                throw NotSymmetric("entry mismatch at (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
    return symmetrized(raw);
}

Matrix SymMatrix::as_matrix() const {
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double SymMatrix::max_entry() const {
    return *std::max_element(data_.begin(), data_.end());
}

double SymMatrix::min_entry() const {
    return *std::min_element(data_.begin(), data_.end());
}

double norm_one(const SymMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m.dim(); ++i) col += std::fabs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

double norm_inf(const SymMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j) row += std::fabs(m(i, j));
        best = std::max(best, row);
    }
    return best;
}

double frobenius_norm(const SymMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

double spectral_bound(const SymMatrix& m) {
    const double n1 = norm_one(m);
    const double ni = norm_inf(m);
    if (n1 == ni) return n1;  // exact for symmetric input, no sqrt round trip
    return std::sqrt(n1 * ni);
}

ScaleResult scale_matrix(const SymMatrix& m) {
    const double factor = spectral_bound(m);
    if (factor == 0.0) throw ZeroMatrix();
    SymMatrix scaled(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = i; j < m.dim(); ++j)
            scaled.set(i, j, m(i, j) / factor);
    return {std::move(scaled), factor};
}

namespace {

// Seed scrambler so that nearby seeds give unrelated streams.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class UniformDraws {
public:
    explicit UniformDraws(std::uint64_t seed) {
        std::uint64_t s = seed;
        rng_.seed(splitmix64(s));
    }

    // Uniform in [0, 1), identical on every platform.
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double symmetric() { return 2.0 * unit() - 1.0; }

private:
    std::mt19937_64 rng_;
};

}  // namespace

SymMatrix random_spsd(std::size_t n, std::uint64_t seed, double entry_scale) {
    UniformDraws draws(seed);
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = draws.symmetric();
    SymMatrix out(n);
    const double scale = entry_scale / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += b(i, k) * b(j, k);
            out.set(i, j, dot * scale);
        }
    return out;
}

Matrix random_data(std::size_t rows, std::size_t cols, std::uint64_t seed,
                   double entry_scale) {
    UniformDraws draws(seed);
    Matrix d(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) d(r, c) = entry_scale * draws.symmetric();
    return d;
}

std::vector<double> column_means(const Matrix& data) {
    std::vector<double> mean(data.cols(), 0.0);
    for (std::size_t r = 0; r < data.rows(); ++r)
        for (std::size_t c = 0; c < data.cols(); ++c) mean[c] += data(r, c);
    for (double& v : mean) v /= static_cast<double>(data.rows());
    return mean;
}

SymMatrix covariance(const Matrix& data) {
    if (data.rows() < 2) throw InsufficientRows();
    const std::size_t m = data.rows();
    const std::size_t k = data.cols();
    const std::vector<double> mean = column_means(data);
    Matrix raw(k, k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a; b < k; ++b) {
            double acc = 0.0;
            for (std::size_t r = 0; r < m; ++r)
                acc += (data(r, a) - mean[a]) * (data(r, b) - mean[b]);
            const double v = acc / static_cast<double>(m - 1);
            raw(a, b) = v;
            raw(b, a) = v;
        }
    return SymMatrix::symmetrized(raw);
}

}  // namespace evd
