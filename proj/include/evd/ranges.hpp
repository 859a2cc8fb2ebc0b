#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "evd/interval.hpp"
#include "evd/matrix.hpp"
#include "evd/trace.hpp"

namespace evd {

enum class Method {
    Simulation,
    IntervalArith,
    AffineArith,
    AnalyticUnscaled,
    AnalyticScaled,
};

constexpr std::string_view method_name(Method m) {
    switch (m) {
        case Method::Simulation: return "simulation";
        case Method::IntervalArith: return "ia";
        case Method::AffineArith: return "aa";
        case Method::AnalyticUnscaled: return "analytic-unscaled";
        case Method::AnalyticScaled: return "analytic-scaled";
    }
    return "?";
}

/// Per-variable range estimate produced by one back-end.
struct RangeReport {
    Method method = Method::Simulation;
    std::array<Interval, kVarCount> ranges{};
    std::array<bool, kVarCount> present{};

    /// Width of the hull of the working matrix after each pair update; filled
    /// by the IA/AA back-ends only (the explosion trajectory).
    std::vector<double> a_state_widths;

    const Interval& of(Var v) const { return ranges[std::size_t(v)]; }
    bool has(Var v) const { return present[std::size_t(v)]; }

    void record(Var v, const Interval& x) {
        const auto k = std::size_t(v);
        ranges[k] = present[k] ? ranges[k].hull(x) : x;
        present[k] = true;
    }
};

struct Violation {
    Var variable;
    Interval envelope;
    Interval bound;
};

/// Envelope of every traced assignment of a double-precision run. The a and b
/// rows are extended down to zero: on positive semi-definite input the pivot
/// diagonals live in [0, max], and the report states the full admissible range
/// rather than the two values a 2x2 run happens to touch.
RangeReport sim_range(const SymMatrix& a, std::optional<int> sweeps = {});

/// Interval-arithmetic propagation from a per-entry input box (diagonal
/// lower-clipped at zero). Infinities are in-band results, not errors.
RangeReport ia_range(const Interval& input_box, std::size_t n,
                     std::optional<int> sweeps = {});

/// Affine-arithmetic propagation; one noise symbol per mirrored entry pair.
RangeReport aa_range(const Interval& input_box, std::size_t n,
                     std::optional<int> sweeps = {});

/// Norm-based bounds computed from the matrix alone, no execution.
RangeReport analytic_bounds_unscaled(const SymMatrix& m);

/// The scaled-algorithm constants; input-independent by construction.
RangeReport analytic_bounds_scaled();

/// Smallest integer word length (sign included) whose span covers the range.
int iwl_required(const Interval& range);

/// Every variable whose envelope escapes the bound, up to float-dirt slack.
std::vector<Violation> bound_compliance(const RangeReport& envelope,
                                        const RangeReport& bounds);

}  // namespace evd
