#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "evd/affine.hpp"
#include "evd/errors.hpp"
#include "evd/fixedpoint.hpp"
#include "evd/interval.hpp"
#include "evd/matrix.hpp"
#include "evd/trace.hpp"

namespace evd {

/// One plane rotation: tangent, cosine, sine.
struct RotationParams {
    double t;
    double cs;
    double sn;
};

struct EvdResult {
    std::vector<double> eigenvalues;  // diagonal order, unsorted
    Matrix eigenvectors;              // columns are eigenvectors
    int sweeps_run = 0;
    double offdiag_residual = 0.0;
    std::vector<OverflowEvent> overflow_events;
};

/// Rotation that diagonalizes [[a, c], [c, b]], with sign(0) = +1 and the
/// c == 0 case resolved to the identity rotation.
RotationParams jacobi_rotation(double a, double b, double c);

/// Frobenius norm of the off-diagonal part.
double off_diagonal_norm(const SymMatrix& m);

// ---------------------------------------------------------------------------
// Scalar kernels. Each kernel adapts one scalar kind to the generic sweep:
// constants, the rotation numerator sign(b-a)*c, the trigonometric clips, and
// (for fixed point) overflow-location stamping.

struct DoubleKernel {
    using Value = double;

    double constant(double v) const { return v; }
    bool is_zero(double v) const { return v == 0.0; }
    double sqrt_(double v) const { return std::sqrt(v); }
    double abs_(double v) const { return std::fabs(v); }
    double square_(double v) const { return v * v; }

    double numerator(double diff, double c) const { return diff >= 0.0 ? c : -c; }

    // The trig quantities are mathematically confined to these ranges; the
    // clamp only strips float dirt of at most one ulp.
    double clip(Var v, double x) const {
        switch (v) {
            case Var::T:
            case Var::Sn: return std::clamp(x, -1.0, 1.0);
            case Var::Cs: return std::clamp(x, 0.0, 1.0);
            default: return x;
        }
    }

    double tangent_for_update(double /*raw*/, double clipped) const { return clipped; }
    double cosine_from_tangent(double t) const {
        return 1.0 / std::sqrt(1.0 + t * t);
    }
    void set_location(Var, int, int, int) const {}
};

class FixedKernel {
public:
    using Value = FixedScalar;

    explicit FixedKernel(FxContext& ctx) : ctx_(&ctx) {}

    FxContext& context() const { return *ctx_; }

    FixedScalar constant(double v) const { return fx_quantize(v, *ctx_); }
    bool is_zero(FixedScalar v) const { return v.raw == 0; }
    FixedScalar sqrt_(FixedScalar v) const { return fx_sqrt(v); }
    FixedScalar abs_(FixedScalar v) const { return fx_abs(v); }
    FixedScalar square_(FixedScalar v) const { return fx_mul(v, v); }

    FixedScalar numerator(FixedScalar diff, FixedScalar c) const {
        return diff.raw >= 0 ? c : fx_neg(c);
    }

    FixedScalar clip(Var v, FixedScalar x) const {
        const std::int64_t one = one_raw();
        switch (v) {
            case Var::T:
            case Var::Sn: return {std::clamp(x.raw, -one, one), x.ctx};
            case Var::Cs: return {std::clamp(x.raw, std::int64_t(0), one), x.ctx};
            default: return x;
        }
    }

    FixedScalar tangent_for_update(FixedScalar, FixedScalar clipped) const {
        return clipped;
    }

    FixedScalar cosine_from_tangent(FixedScalar t) const {
        // 1 + t^2 hits 2 exactly when |t| == 1, one ulp past an IWL=2 format;
        // take the algebraically equal sqrt(1/2) branch there instead.
        if (t.raw == one_raw() || t.raw == -one_raw())
            return fx_sqrt(constant(0.5));
        const FixedScalar one = constant(1.0);
        return fx_div(one, fx_sqrt(fx_add(one, fx_mul(t, t))));
    }

    void set_location(Var v, int sweep, int i, int j) const {
        ctx_->set_location(v, sweep, i, j);
    }

private:
    std::int64_t one_raw() const {
        const FixedFormat& f = ctx_->format();
        if (f.integer_bits < 2) return f.max_raw();
        return std::int64_t(1) << f.fraction_bits();
    }

    FxContext* ctx_;
};

struct IntervalKernel {
    using Value = Interval;

    Interval constant(double v) const { return Interval::point(v); }
    bool is_zero(const Interval& v) const { return v.is_point(0.0); }
    Interval sqrt_(const Interval& v) const { return sqrt(v); }
    Interval abs_(const Interval& v) const { return abs(v); }
    Interval square_(const Interval& v) const { return square(v); }

    Interval numerator(const Interval& diff, const Interval& c) const {
        return sign_enclosure(diff) * sign_enclosure(c) * abs(c);
    }

    Interval clip(Var v, const Interval& x) const {
        switch (v) {
            case Var::T:
            case Var::Sn: return x.intersect({-1.0, 1.0});
            case Var::Cs: return x.intersect({0.0, 1.0});
            default: return x;
        }
    }

    // The diagonal update keeps the unclipped tangent; clipping there would
    // understate the propagation the method is meant to expose.
    Interval tangent_for_update(const Interval& raw, const Interval&) const {
        return raw;
    }

    Interval cosine_from_tangent(const Interval& t) const {
        const Interval one{1.0, 1.0};
        return one / sqrt(one + square(t));
    }

    void set_location(Var, int, int, int) const {}
};

class AffineKernel {
public:
    using Value = AffineForm;

    explicit AffineKernel(AffineContext& ctx) : ctx_(&ctx) {}

    AffineContext& context() const { return *ctx_; }

    AffineForm constant(double v) const { return AffineForm::constant(v, *ctx_); }
    bool is_zero(const AffineForm& v) const { return v.is_point(0.0); }
    AffineForm sqrt_(const AffineForm& v) const { return sqrt(v); }
    AffineForm abs_(const AffineForm& v) const { return abs(v); }
    AffineForm square_(const AffineForm& v) const { return square(v); }

    AffineForm numerator(const AffineForm& diff, const AffineForm& c) const {
        const Interval sgn =
            sign_enclosure(diff.concretize()) * sign_enclosure(c.concretize());
        if (sgn.is_point(1.0)) return c;
        if (sgn.is_point(-1.0)) return -c;
        return AffineForm::from_interval(sgn * abs(c.concretize()), *ctx_);
    }

    AffineForm clip(Var v, const AffineForm& x) const {
        switch (v) {
            case Var::T:
            case Var::Sn: return x.clipped({-1.0, 1.0});
            case Var::Cs: return x.clipped({0.0, 1.0});
            default: return x;
        }
    }

    AffineForm tangent_for_update(const AffineForm& raw, const AffineForm&) const {
        return raw;
    }

    AffineForm cosine_from_tangent(const AffineForm& t) const {
        const AffineForm one = constant(1.0);
        return one / sqrt(one + square(t));
    }

    void set_location(Var, int, int, int) const {}

private:
    AffineContext* ctx_;
};

// ---------------------------------------------------------------------------

/// Cyclic-by-row two-sided Jacobi sweep engine, generic over the scalar kind.
///
/// Trace convention (what the hook sees), chosen to match how the reference
/// ranges were measured:
///   - A: every write to the working matrix, plus the initial entries.
///   - b, c: the pivot reads, b only when a rotation actually fires.
///   - a: the updated pivot diagonal a - c*t (the unchanged diagonal when the
///     rotation is skipped).
///   - t, cs, sn: the rotation parameters, identity values on a skip.
///   - tmp: the row-rotation intermediate only; the eigenvector loop's scratch
///     is not a tracked quantity.
///   - X: every write to the accumulated eigenvector matrix (not the identity
///     it starts from).
///   - lambda: the final diagonal, emitted by finish().
template <class Kernel>
class JacobiEngine {
public:
    using V = typename Kernel::Value;
    using Hook = std::function<void(Var, const V&)>;

    JacobiEngine(Kernel& kern, std::size_t n)
        : kern_(kern), n_(n), a_(n * n, kern.constant(0.0)), x_(n * n, kern.constant(0.0)) {
        for (std::size_t i = 0; i < n; ++i) x_[i * n + i] = kern_.constant(1.0);
    }

    std::size_t dim() const { return n_; }

    V& A(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const V& A(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    V& X(std::size_t i, std::size_t j) { return x_[i * n_ + j]; }
    const V& X(std::size_t i, std::size_t j) const { return x_[i * n_ + j]; }

    void set_hook(Hook h) { hook_ = std::move(h); }

    /// Emits the loaded matrix entries under tag A; call once after loading.
    void observe_input() {
        for (const V& v : a_) emit(Var::A, v);
    }

    void pair_update(int sweep, std::size_t i, std::size_t j) {
        kern_.set_location(Var::OffC, sweep, int(i), int(j));
        V a = A(i, i);
        V b = A(j, j);
        V c = A(i, j);
        emit(Var::OffC, c);
        if (kern_.is_zero(c)) {
            emit(Var::DiagA, a);
            emit(Var::T, kern_.constant(0.0));
            emit(Var::Cs, kern_.constant(1.0));
            emit(Var::Sn, kern_.constant(0.0));
            return;
        }
        emit(Var::DiagB, b);

        kern_.set_location(Var::T, sweep, int(i), int(j));
        V diff = b - a;
        V halfdiff = diff * kern_.constant(0.5);
        V r = kern_.numerator(diff, c);
        V s = kern_.abs_(halfdiff) +
              kern_.sqrt_(kern_.square_(c) + kern_.square_(halfdiff));
        V t_raw = r / s;
        V t = kern_.clip(Var::T, t_raw);
        emit(Var::T, t);

        kern_.set_location(Var::Cs, sweep, int(i), int(j));
        V cs = kern_.clip(Var::Cs, kern_.cosine_from_tangent(t));
        emit(Var::Cs, cs);
        kern_.set_location(Var::Sn, sweep, int(i), int(j));
        V sn = kern_.clip(Var::Sn, cs * t);
        emit(Var::Sn, sn);

        kern_.set_location(Var::DiagA, sweep, int(i), int(j));
        V ct = c * kern_.tangent_for_update(t_raw, t);
        A(i, i) = a - ct;
        emit(Var::DiagA, A(i, i));
        emit(Var::A, A(i, i));
        A(j, j) = b + ct;
        emit(Var::A, A(j, j));
        A(i, j) = A(j, i) = kern_.constant(0.0);
        emit(Var::A, A(i, j));
        emit(Var::A, A(j, i));

        for (std::size_t k = 0; k < n_; ++k) {
            if (k == i || k == j) continue;
            kern_.set_location(Var::Tmp, sweep, int(i), int(j));
            V tmp = A(i, k);
            emit(Var::Tmp, tmp);
            kern_.set_location(Var::A, sweep, int(i), int(j));
            V nik = cs * tmp - sn * A(j, k);
            V njk = sn * tmp + cs * A(j, k);
            A(i, k) = A(k, i) = nik;
            emit(Var::A, nik);
            emit(Var::A, nik);
            A(j, k) = A(k, j) = njk;
            emit(Var::A, njk);
            emit(Var::A, njk);
        }

        kern_.set_location(Var::X, sweep, int(i), int(j));
        for (std::size_t k = 0; k < n_; ++k) {
            V xtmp = X(k, i);
            X(k, i) = cs * xtmp - sn * X(k, j);
            emit(Var::X, X(k, i));
            X(k, j) = sn * xtmp + cs * X(k, j);
            emit(Var::X, X(k, j));
        }
    }

    void sweep_pass(int sweep) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j) pair_update(sweep, i, j);
    }

    /// Emits the final diagonal under tag lambda and returns it.
    std::vector<V> finish() {
        std::vector<V> lambdas;
        lambdas.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            kern_.set_location(Var::Lambda, 0, int(i), int(i));
            lambdas.push_back(A(i, i));
            emit(Var::Lambda, A(i, i));
        }
        return lambdas;
    }

private:
    void emit(Var tag, const V& v) {
        if (hook_) hook_(tag, v);
    }

    Kernel& kern_;
    std::size_t n_;
    std::vector<V> a_;
    std::vector<V> x_;
    Hook hook_;
};

struct EvdOptions {
    std::optional<int> sweeps;            // default: n
    std::optional<double> early_exit_eps; // stop once offdiag <= eps * ||A||_F
};

using DoubleHook = std::function<void(Var, double)>;

/// Double-precision decomposition.
EvdResult jacobi_evd(const SymMatrix& a, const EvdOptions& opts = {},
                     DoubleHook hook = nullptr);

/// Symmetry-checked entry point for raw (possibly asymmetric) input.
EvdResult jacobi_evd(const Matrix& a, const EvdOptions& opts = {},
                     DoubleHook hook = nullptr);

/// Simulated fixed-point decomposition; the overflow log rides in the result.
EvdResult jacobi_evd_fixed(const SymMatrix& a, const FixedFormat& fmt,
                           const EvdOptions& opts = {}, bool strict = false,
                           DoubleHook hook = nullptr);

}  // namespace evd
