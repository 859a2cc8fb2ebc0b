#pragma once

#include <optional>
#include <vector>

#include "evd/jacobi.hpp"
#include "evd/matrix.hpp"

namespace evd {

/// Eigenpairs prepared for projection: spectrum sorted descending, columns
/// reordered to match, each column's sign fixed so its largest-magnitude entry
/// is positive (signs are arbitrary per decomposition, and the two pipelines
/// being compared must agree on them).
struct PcaModel {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
    std::size_t num_components = 0;
    std::optional<double> scale_factor_m;
    std::vector<double> means;  // column means used for centering; empty = 0
};

PcaModel make_pca_model(const EvdResult& evd, std::size_t num_components,
                        std::optional<double> scale_factor_m = {});

/// 10*log10(E(f^2) / E((f - x)^2)) in dB; +inf when the spectra are identical.
/// Inputs are paired in the given order (sort both descending beforehand when
/// they come from independent runs).
double sqnr(const std::vector<double>& lambda_float,
            const std::vector<double>& lambda_fixed);

/// Smallest k whose top-k eigenvalues explain the variance fraction.
std::size_t pc_count(const std::vector<double>& eigenvalues,
                     double variance_fraction);

/// Rows of data onto the model's first num_components eigenvectors, after
/// centering by the model's means.
Matrix pca_project(const Matrix& data, const PcaModel& model);

/// Back from component space: projected * X_kept^T + means.
Matrix pca_reconstruct(const Matrix& projected, const PcaModel& model);

/// Mean squared entrywise difference.
double mse(const Matrix& a, const Matrix& b);

/// Undoes Theorem-2 scaling: every eigenvalue times the stored factor m.
std::vector<double> recover_eigenvalues(const PcaModel& model);

}  // namespace evd
