#include "evd/ranges.hpp"

#include <cmath>

#include "evd/jacobi.hpp"

namespace evd {

namespace {

// Slack for comparing a floating-point envelope against a mathematical bound:
// absolute plus relative to the bound's magnitude.
double compliance_slack(const Interval& bound) {
    const double mag = std::max({1.0, std::fabs(bound.lo), std::fabs(bound.hi)});
    return 1e-9 * mag;
}

template <class Engine, class ToInterval>
double state_hull_width(const Engine& eng, ToInterval to_iv) {
    Interval hull = to_iv(eng.A(0, 0));
    for (std::size_t i = 0; i < eng.dim(); ++i)
        for (std::size_t j = 0; j < eng.dim(); ++j)
            hull = hull.hull(to_iv(eng.A(i, j)));
    return hull.width();
}

}  // namespace

RangeReport sim_range(const SymMatrix& a, std::optional<int> sweeps) {
    RangeReport rep;
    rep.method = Method::Simulation;
    EvdOptions opts;
    opts.sweeps = sweeps;
    jacobi_evd(a, opts,
               [&rep](Var v, double x) { rep.record(v, Interval::point(x)); });
    for (Var v : {Var::DiagA, Var::DiagB}) {
        const auto k = std::size_t(v);
        if (rep.present[k]) rep.ranges[k] = rep.ranges[k].hull(0.0);
    }
    return rep;
}

RangeReport ia_range(const Interval& input_box, std::size_t n,
                     std::optional<int> sweeps) {
    RangeReport rep;
    rep.method = Method::IntervalArith;

    IntervalKernel kern;
    JacobiEngine<IntervalKernel> eng(kern, n);
    const Interval diag{std::max(input_box.lo, 0.0), input_box.hi};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            eng.A(i, j) = (i == j) ? diag : input_box;
    eng.set_hook([&rep](Var v, const Interval& x) { rep.record(v, x); });
    eng.observe_input();

    const int passes = sweeps.value_or(int(n));
    for (int s = 0; s < passes; ++s)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                eng.pair_update(s, i, j);
                rep.a_state_widths.push_back(state_hull_width(
                    eng, [](const Interval& v) { return v; }));
            }
    eng.finish();
    return rep;
}

RangeReport aa_range(const Interval& input_box, std::size_t n,
                     std::optional<int> sweeps) {
    RangeReport rep;
    rep.method = Method::AffineArith;

    AffineContext ctx;
    AffineKernel kern(ctx);
    JacobiEngine<AffineKernel> eng(kern, n);
    const Interval diag{std::max(input_box.lo, 0.0), input_box.hi};
    for (std::size_t i = 0; i < n; ++i) {
        eng.A(i, i) = AffineForm::input(diag, ctx);
        for (std::size_t j = i + 1; j < n; ++j)
            eng.A(i, j) = eng.A(j, i) = AffineForm::input(input_box, ctx);
    }
    eng.set_hook(
        [&rep](Var v, const AffineForm& x) { rep.record(v, x.concretize()); });
    eng.observe_input();

    const int passes = sweeps.value_or(int(n));
    for (int s = 0; s < passes; ++s)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                eng.pair_update(s, i, j);
                rep.a_state_widths.push_back(state_hull_width(
                    eng, [](const AffineForm& v) { return v.concretize(); }));
            }
    eng.finish();
    return rep;
}

namespace {

RangeReport analytic_report(Method method, double m) {
    RangeReport rep;
    rep.method = method;
    rep.present.fill(true);
    auto put = [&rep](Var v, double lo, double hi) {
        rep.ranges[std::size_t(v)] = {lo, hi};
    };
    put(Var::A, -m, m);
    put(Var::OffC, -m, m);
    put(Var::Tmp, -m, m);
    put(Var::DiagA, 0.0, m);
    put(Var::DiagB, 0.0, m);
    put(Var::Lambda, 0.0, m);
    put(Var::T, -1.0, 1.0);
    put(Var::Sn, -1.0, 1.0);
    put(Var::X, -1.0, 1.0);
    put(Var::Cs, 0.0, 1.0);
    return rep;
}

}  // namespace

RangeReport analytic_bounds_unscaled(const SymMatrix& m) {
    for (std::size_t i = 0; i < m.dim(); ++i)
        if (m(i, i) < 0.0)
            throw NotPSD("diagonal entry " + std::to_string(m(i, i)) +
                         " is negative; input is not positive semi-definite");
    return analytic_report(Method::AnalyticUnscaled, spectral_bound(m));
}

RangeReport analytic_bounds_scaled() {
    return analytic_report(Method::AnalyticScaled, 1.0);
}

int iwl_required(const Interval& range) {
    if (!range.finite()) throw UnboundedRange();
    const double span = range.width();
    int bits = 1;
    while (std::ldexp(1.0, bits) <= span) ++bits;
    return bits;
}

std::vector<Violation> bound_compliance(const RangeReport& envelope,
                                        const RangeReport& bounds) {
    std::vector<Violation> out;
    for (Var v : kAllVars) {
        if (!envelope.has(v) || !bounds.has(v)) continue;
        const Interval& e = envelope.of(v);
        const Interval& b = bounds.of(v);
        const double slack = compliance_slack(b);
        if (e.lo < b.lo - slack || e.hi > b.hi + slack)
            out.push_back({v, e, b});
    }
    return out;
}

}  // namespace evd
