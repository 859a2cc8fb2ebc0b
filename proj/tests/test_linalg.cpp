#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evd/matrix.hpp"

using namespace evd;

namespace {

SymMatrix sym2(double a, double c, double b) {
    SymMatrix m(2);
    m.set(0, 0, a);
    m.set(0, 1, c);
    m.set(1, 1, b);
    return m;
}

const SymMatrix kD = sym2(33.4834, 22.2054, 33.4834);
const SymMatrix kC = sym2(0.4427, 0.1067, 0.4427);

}  // namespace

TEST_CASE("norm_one") {
    CHECK(norm_one(SymMatrix::identity(2)) == doctest::Approx(1.0));
    CHECK(norm_one(kD) == doctest::Approx(55.6888));
    CHECK(norm_one(SymMatrix(3)) == 0.0);
}

TEST_CASE("norm_inf") {
    CHECK(norm_inf(kD) == doctest::Approx(55.6888));
    CHECK(norm_inf(SymMatrix::identity(5)) == doctest::Approx(1.0));
    CHECK(norm_inf(sym2(0, -2, 0)) == doctest::Approx(2.0));
}

TEST_CASE("norm_one equals norm_inf on symmetric input") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SymMatrix m = random_spsd(5, seed);
        CHECK(norm_one(m) == norm_inf(m));
    }
}

TEST_CASE("spectral_bound") {
    CHECK(spectral_bound(kD) == doctest::Approx(55.6888));
    CHECK(spectral_bound(SymMatrix::identity(4)) == doctest::Approx(1.0));
    CHECK(spectral_bound(kC) == doctest::Approx(0.5494));
}

TEST_CASE("spectral_bound dominates the 2x2 spectral radius") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const SymMatrix m = random_spsd(2, seed, 3.0);
        const double a = m(0, 0), b = m(1, 1), c = m(0, 1);
        const double half = (a + b) / 2.0;
        const double root = std::sqrt((a - b) * (a - b) / 4.0 + c * c);
        const double rho = std::max(std::fabs(half + root), std::fabs(half - root));
        CHECK(spectral_bound(m) >= rho - 1e-12);
    }
}

TEST_CASE("scale_matrix") {
    const ScaleResult sr = scale_matrix(kD);
    CHECK(sr.factor_m == doctest::Approx(55.6888));
    CHECK(sr.scaled(0, 0) == doctest::Approx(0.6012).epsilon(1e-3));
    CHECK(sr.scaled(0, 1) == doctest::Approx(0.3988).epsilon(1e-3));

    const ScaleResult id = scale_matrix(SymMatrix::identity(3));
    CHECK(id.factor_m == doctest::Approx(1.0));
    CHECK(id.scaled(1, 1) == doctest::Approx(1.0));

    SymMatrix y(3);
    y.set(0, 0, 46.7785); y.set(0, 1, 28.3501); y.set(0, 2, 18.8598);
    y.set(1, 1, 20.1805); y.set(1, 2, 13.0975);
    y.set(2, 2, 8.6377);
    const ScaleResult sy = scale_matrix(y);
    CHECK(sy.factor_m == doctest::Approx(93.988).epsilon(1e-3));
    for (double v : sy.scaled.data()) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }

    CHECK_THROWS_AS(scale_matrix(SymMatrix(4)), ZeroMatrix);
}

TEST_CASE("random_spsd") {
    const SymMatrix a = random_spsd(2, 1);
    const SymMatrix b = random_spsd(2, 1);
    CHECK(a.data() == b.data());  // deterministic per seed

    // 2x2 closed-form eigenvalues are nonnegative
    const double tr = a(0, 0) + a(1, 1);
    const double root =
        std::sqrt((a(0, 0) - a(1, 1)) * (a(0, 0) - a(1, 1)) / 4.0 + a(0, 1) * a(0, 1));
    CHECK(tr / 2.0 - root >= -1e-12);

    const SymMatrix one = random_spsd(1, 0);
    CHECK(one(0, 0) >= 0.0);

    CHECK(random_spsd(3, 7).data() != random_spsd(3, 8).data());
}

TEST_CASE("covariance") {
    Matrix same(2, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        same(0, j) = double(j);
        same(1, j) = double(j);
    }
    const SymMatrix z = covariance(same);
    for (double v : z.data()) CHECK(v == 0.0);

    Matrix col(3, 1);
    col(0, 0) = 1.0; col(1, 0) = 2.0; col(2, 0) = 3.0;
    CHECK(covariance(col)(0, 0) == doctest::Approx(1.0));

    Matrix d(3, 2);
    d(0, 0) = 1.0; d(0, 1) = 2.0;
    d(1, 0) = 3.0; d(1, 1) = 5.0;
    d(2, 0) = 4.0; d(2, 1) = 7.0;
    const SymMatrix c = covariance(d);
    // brute-force sample covariance
    CHECK(c(0, 0) == doctest::Approx(7.0 / 3.0));
    CHECK(c(0, 1) == doctest::Approx(23.0 / 6.0));
    CHECK(c(1, 1) == doctest::Approx(19.0 / 3.0));

    Matrix single(1, 2);
    CHECK_THROWS_AS(covariance(single), InsufficientRows);
}

TEST_CASE("symmetrization and ingestion checks") {
    Matrix raw(2, 2);
    raw(0, 0) = 1.0; raw(0, 1) = 2.0; raw(1, 0) = 4.0; raw(1, 1) = 3.0;
    const SymMatrix s = SymMatrix::symmetrized(raw);
    CHECK(s(0, 1) == 3.0);
    CHECK(s(0, 1) == s(1, 0));
    CHECK_THROWS_AS(SymMatrix::require_symmetric(raw), NotSymmetric);
    CHECK_NOTHROW(SymMatrix::require_symmetric(s.as_matrix()));
}
