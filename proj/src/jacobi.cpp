#include "evd/jacobi.hpp"

namespace evd {

RotationParams jacobi_rotation(double a, double b, double c) {
    if (c == 0.0) return {0.0, 1.0, 0.0};
    const double diff = b - a;
    const double halfdiff = diff / 2.0;
    const double num = diff >= 0.0 ? c : -c;
    const double t = num / (std::fabs(halfdiff) +
                            std::sqrt(c * c + halfdiff * halfdiff));
    const double cs = 1.0 / std::sqrt(1.0 + t * t);
    return {t, cs, cs * t};
}

double off_diagonal_norm(const SymMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (i != j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

namespace {

template <class Engine>
double engine_offdiag(const Engine& eng, double (*to_d)(const typename Engine::V&)) {
    double s = 0.0;
    for (std::size_t i = 0; i < eng.dim(); ++i)
        for (std::size_t j = 0; j < eng.dim(); ++j)
            if (i != j) {
                const double v = to_d(eng.A(i, j));
                s += v * v;
            }
    return std::sqrt(s);
}

}  // namespace

EvdResult jacobi_evd(const SymMatrix& a, const EvdOptions& opts, DoubleHook hook) {
    const std::size_t n = a.dim();
    DoubleKernel kern;
    JacobiEngine<DoubleKernel> eng(kern, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) eng.A(i, j) = a(i, j);
    if (hook) eng.set_hook([&hook](Var v, const double& x) { hook(v, x); });
    eng.observe_input();

    const int sweeps = opts.sweeps.value_or(int(n));
    const double fro = frobenius_norm(a);
    int done = 0;
    for (int s = 0; s < sweeps; ++s) {
        eng.sweep_pass(s);
        ++done;
        if (opts.early_exit_eps) {
            const double off =
                engine_offdiag(eng, +[](const double& v) { return v; });
            if (off <= *opts.early_exit_eps * fro) break;
        }
    }

    EvdResult res;
    res.sweeps_run = done;
    res.eigenvalues = eng.finish();
    res.eigenvectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) res.eigenvectors(i, j) = eng.X(i, j);
    res.offdiag_residual = engine_offdiag(eng, +[](const double& v) { return v; });
    return res;
}

EvdResult jacobi_evd(const Matrix& a, const EvdOptions& opts, DoubleHook hook) {
    return jacobi_evd(SymMatrix::require_symmetric(a), opts, std::move(hook));
}

EvdResult jacobi_evd_fixed(const SymMatrix& a, const FixedFormat& fmt,
                           const EvdOptions& opts, bool strict, DoubleHook hook) {
    const std::size_t n = a.dim();
    FxContext ctx(fmt, strict);
    FixedKernel kern(ctx);
    JacobiEngine<FixedKernel> eng(kern, n);
    for (std::size_t i = 0; i < n; ++i) {
        ctx.set_location(Var::A, 0, int(i), int(i));
        for (std::size_t j = 0; j < n; ++j) eng.A(i, j) = fx_quantize(a(i, j), ctx);
    }
    if (hook)
        eng.set_hook([&hook](Var v, const FixedScalar& x) { hook(v, x.value()); });
    eng.observe_input();

    const int sweeps = opts.sweeps.value_or(int(n));
    for (int s = 0; s < sweeps; ++s) eng.sweep_pass(s);

    EvdResult res;
    res.sweeps_run = sweeps;
    const auto lambdas = eng.finish();
    res.eigenvalues.reserve(n);
    for (const FixedScalar& l : lambdas) res.eigenvalues.push_back(l.value());
    res.eigenvectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            res.eigenvectors(i, j) = eng.X(i, j).value();
    res.offdiag_residual =
        engine_offdiag(eng, +[](const FixedScalar& v) { return v.value(); });
    res.overflow_events = ctx.take_events();
    return res;
}

}  // namespace evd
