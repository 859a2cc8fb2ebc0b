#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "evd/ranges.hpp"

using namespace evd;

namespace {

SymMatrix sym2(double a, double c, double b) {
    SymMatrix m(2);
    m.set(0, 0, a);
    m.set(0, 1, c);
    m.set(1, 1, b);
    return m;
}

const SymMatrix kC = sym2(0.4427, 0.1067, 0.4427);
const SymMatrix kD = sym2(33.4834, 22.2054, 33.4834);

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_CASE("sim_range on C matches the reference envelope") {
    const RangeReport rep = sim_range(kC);
    CHECK(close(rep.of(Var::DiagA).lo, 0.0, 1e-3));
    CHECK(close(rep.of(Var::DiagA).hi, 0.336, 1e-3));
    CHECK(close(rep.of(Var::DiagB).lo, 0.0, 1e-3));
    CHECK(close(rep.of(Var::DiagB).hi, 0.443, 1e-3));
    CHECK(close(rep.of(Var::Lambda).lo, 0.336, 1e-3));
    CHECK(close(rep.of(Var::Lambda).hi, 0.549, 1e-3));
    CHECK(close(rep.of(Var::X).lo, -0.707, 1e-3));
    CHECK(close(rep.of(Var::X).hi, 0.707, 1e-3));
    CHECK(!rep.has(Var::Tmp));  // no third row to rotate at n=2
}

TEST_CASE("sim_range on D") {
    const RangeReport rep = sim_range(kD);
    CHECK(close(rep.of(Var::DiagA).lo, 0.0, 1e-2));
    CHECK(close(rep.of(Var::DiagA).hi, 11.278, 1e-2));
    CHECK(close(rep.of(Var::DiagB).hi, 33.483, 1e-2));
    CHECK(close(rep.of(Var::Lambda).lo, 11.278, 1e-2));
    CHECK(close(rep.of(Var::Lambda).hi, 55.689, 1e-2));
}

TEST_CASE("sim_range on identity is degenerate") {
    const RangeReport rep = sim_range(SymMatrix::identity(3));
    CHECK(rep.of(Var::T).is_point(0.0));
    CHECK(rep.of(Var::Cs).is_point(1.0));
    CHECK(rep.of(Var::Sn).is_point(0.0));
    for (Var v : kAllVars)
        if (rep.has(v)) CHECK(rep.of(v).finite());
}

TEST_CASE("iwl_required") {
    CHECK(iwl_required({-1.02e6, 9.58e6}) == 24);
    CHECK(iwl_required({-3.27e6, 2.04e7}) == 25);
    CHECK(iwl_required({-1.0, 1.0}) == 2);
    CHECK(iwl_required({0.0, 0.0}) == 1);
    CHECK_THROWS_AS(iwl_required(Interval::entire()), UnboundedRange);
}

TEST_CASE("analytic bounds") {
    const RangeReport un = analytic_bounds_unscaled(kD);
    CHECK(un.of(Var::A).lo == doctest::Approx(-55.6888));
    CHECK(un.of(Var::A).hi == doctest::Approx(55.6888));
    CHECK(un.of(Var::Lambda).lo == 0.0);
    CHECK(un.of(Var::Lambda).hi == doctest::Approx(55.6888));
    CHECK(un.of(Var::T).lo == -1.0);
    CHECK(un.of(Var::T).hi == 1.0);

    const RangeReport id = analytic_bounds_unscaled(SymMatrix::identity(2));
    CHECK(id.of(Var::A).lo == -1.0);
    CHECK(id.of(Var::A).hi == 1.0);
    CHECK(id.of(Var::Lambda).hi == 1.0);

    SymMatrix bad(2);
    bad.set(0, 0, -1.0);
    CHECK_THROWS_AS(analytic_bounds_unscaled(bad), NotPSD);
}

TEST_CASE("scaled bounds are input-independent constants") {
    const RangeReport a = analytic_bounds_scaled();
    const RangeReport b = analytic_bounds_scaled();
    for (Var v : kAllVars) {
        CHECK(a.of(v).lo == b.of(v).lo);
        CHECK(a.of(v).hi == b.of(v).hi);
    }
    CHECK(a.of(Var::A).lo == -1.0);
    CHECK(a.of(Var::A).hi == 1.0);
    CHECK(a.of(Var::Lambda).lo == 0.0);
    CHECK(a.of(Var::Lambda).hi == 1.0);
    CHECK(a.of(Var::Cs).lo == 0.0);
    CHECK(a.of(Var::Cs).hi == 1.0);
}

TEST_CASE("bound_compliance") {
    const RangeReport scaled_env = sim_range(scale_matrix(kC).scaled);
    CHECK(bound_compliance(scaled_env, analytic_bounds_scaled()).empty());

    // reflexivity
    CHECK(bound_compliance(scaled_env, scaled_env).empty());

    // negative control: unscaled D against the scaled constants
    const auto viol = bound_compliance(sim_range(kD), analytic_bounds_scaled());
    CHECK(!viol.empty());
}

TEST_CASE("ia_range explodes past the input box at n=2") {
    const RangeReport rep = ia_range({0.65, 0.95}, 2);
    REQUIRE(!rep.a_state_widths.empty());
    CHECK(rep.a_state_widths.front() > 1.0);
    CHECK(rep.of(Var::A).hi >= 2.0);
    CHECK(rep.of(Var::A).lo <= 0.0);
}

TEST_CASE("ia_range reaches infinity by n=8") {
    const RangeReport rep = ia_range({0.11, 0.75}, 8);
    CHECK(std::isinf(rep.a_state_widths.back()));
    CHECK(!rep.of(Var::A).finite());
    // trig rows stay clipped even as the rest explodes
    CHECK(rep.of(Var::T).lo >= -1.0);
    CHECK(rep.of(Var::T).hi <= 1.0);
    CHECK(rep.of(Var::Cs).lo >= 0.0);
    CHECK(rep.of(Var::Cs).hi <= 1.0);
}

TEST_CASE("ia width is non-decreasing across pair updates") {
    for (std::size_t n : {2, 4, 8}) {
        const RangeReport rep = ia_range({0.11, 0.75}, n);
        for (std::size_t k = 1; k < rep.a_state_widths.size(); ++k)
            CHECK(rep.a_state_widths[k] >= rep.a_state_widths[k - 1] * (1 - 1e-12));
    }
}

TEST_CASE("ia contains the simulation envelope for in-box input") {
    const Interval box{kC.min_entry(), kC.max_entry()};
    const RangeReport ia = ia_range(box, 2);
    const RangeReport sim = sim_range(kC);
    for (Var v : kAllVars) {
        if (!sim.has(v) || !ia.has(v)) continue;
        if (v == Var::DiagA || v == Var::DiagB) continue;  // sim rows floored to 0
        CHECK(ia.of(v).lo <= sim.of(v).lo + 1e-12);
        CHECK(ia.of(v).hi >= sim.of(v).hi - 1e-12);
    }
}

TEST_CASE("aa is no looser than ia on the first pair update") {
    for (auto box : {Interval{0.65, 0.95}, Interval{0.11, 0.75}, Interval{0.3, 0.5}}) {
        const RangeReport ia = ia_range(box, 2);
        const RangeReport aa = aa_range(box, 2);
        CHECK(aa.a_state_widths.front() <= ia.a_state_widths.front() + 1e-12);
    }
}

TEST_CASE("aa clips the tangent when the divisor spans zero") {
    const RangeReport aa = aa_range({-0.2, 0.4}, 2);
    CHECK(aa.of(Var::T).lo >= -1.0);
    CHECK(aa.of(Var::T).hi <= 1.0);
}

TEST_CASE("aa explodes on large dimensions") {
    const RangeReport aa = aa_range({0.11, 0.75}, 8);
    const Interval a = aa.of(Var::A);
    CHECK((!a.finite() || a.width() >= 1e300));
}
