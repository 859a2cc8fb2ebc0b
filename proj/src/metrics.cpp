#include "evd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace evd {

PcaModel make_pca_model(const EvdResult& evd, std::size_t num_components,
                        std::optional<double> scale_factor_m) {
    const std::size_t n = evd.eigenvalues.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return evd.eigenvalues[a] > evd.eigenvalues[b];
    });

    PcaModel model;
    model.num_components = num_components;
    model.scale_factor_m = scale_factor_m;
    model.eigenvalues.reserve(n);
    model.eigenvectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        model.eigenvalues.push_back(evd.eigenvalues[src]);
        std::size_t peak = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (std::fabs(evd.eigenvectors(r, src)) >
                std::fabs(evd.eigenvectors(peak, src)))
                peak = r;
        const double flip = evd.eigenvectors(peak, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r)
            model.eigenvectors(r, c) = flip * evd.eigenvectors(r, src);
    }
    return model;
}

double sqnr(const std::vector<double>& lambda_float,
            const std::vector<double>& lambda_fixed) {
    if (lambda_float.size() != lambda_fixed.size()) throw LengthMismatch();
    double signal = 0.0;
    double noise = 0.0;
    for (std::size_t k = 0; k < lambda_float.size(); ++k) {
        const double d = lambda_float[k] - lambda_fixed[k];
        signal += lambda_float[k] * lambda_float[k];
        noise += d * d;
    }
    if (noise == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(signal / noise);
}

std::size_t pc_count(const std::vector<double>& eigenvalues,
                     double variance_fraction) {
    std::vector<double> sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (total == 0.0) throw AllZero();
    double cum = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cum += sorted[k];
        if (cum / total >= variance_fraction) return k + 1;
    }
    return sorted.size();
}

Matrix pca_project(const Matrix& data, const PcaModel& model) {
    const std::size_t k = model.eigenvectors.rows();
    if (data.cols() != k)
        throw DimensionMismatch("data has " + std::to_string(data.cols()) +
                                " columns, model expects " + std::to_string(k));
    const std::size_t nc = model.num_components;
    Matrix out(data.rows(), nc);
    for (std::size_t r = 0; r < data.rows(); ++r)
        for (std::size_t c = 0; c < nc; ++c) {
            double s = 0.0;
            for (std::size_t q = 0; q < k; ++q) {
                const double mean = model.means.empty() ? 0.0 : model.means[q];
                s += (data(r, q) - mean) * model.eigenvectors(q, c);
            }
            out(r, c) = s;
        }
    return out;
}

Matrix pca_reconstruct(const Matrix& projected, const PcaModel& model) {
    const std::size_t k = model.eigenvectors.rows();
    if (projected.cols() != model.num_components)
        throw DimensionMismatch("projected has " + std::to_string(projected.cols()) +
                                " columns, model keeps " +
                                std::to_string(model.num_components));
    Matrix out(projected.rows(), k);
    for (std::size_t r = 0; r < projected.rows(); ++r)
        for (std::size_t q = 0; q < k; ++q) {
            double s = model.means.empty() ? 0.0 : model.means[q];
            for (std::size_t c = 0; c < model.num_components; ++c)
                s += projected(r, c) * model.eigenvectors(q, c);
            out(r, q) = s;
        }
    return out;
}

double mse(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeMismatch("matrices are " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    double s = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        const double d = a.data()[k] - b.data()[k];
        s += d * d;
    }
    return a.data().empty() ? 0.0 : s / double(a.data().size());
}

std::vector<double> recover_eigenvalues(const PcaModel& model) {
    if (!model.scale_factor_m) throw NoScaleFactor();
    std::vector<double> out = model.eigenvalues;
    for (double& v : out) v *= *model.scale_factor_m;
    return out;
}

}  // namespace evd
