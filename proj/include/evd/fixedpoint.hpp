#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evd/errors.hpp"
#include "evd/trace.hpp"

namespace evd {

/// Two's complement Q-format: word_length total bits, integer_bits of them
/// (sign included) left of the binary point.
struct FixedFormat {
    int word_length;
    int integer_bits;

    FixedFormat(int wl, int iwl);

    int fraction_bits() const { return word_length - integer_bits; }

    std::int64_t min_raw() const;
    std::int64_t max_raw() const;
    double min_value() const;
    double max_value() const;
    double ulp() const;

    /// Parses "WL:IWL", e.g. "32:2".
    static FixedFormat parse(const std::string& spec);
    std::string to_string() const;
};

struct OverflowEvent {
    std::string operation;
    double operand_a = 0.0;
    double operand_b = 0.0;
    double ideal_value = 0.0;
    double stored_value = 0.0;
    Var variable = Var::A;
    int sweep = 0;
    int i = 0;
    int j = 0;
};

struct OverflowAbort : Error {
    explicit OverflowAbort(const OverflowEvent& ev);
};

/// Per-run state shared by every FixedScalar of one decomposition: the format,
/// the overflow log, and the location the engine stamps before each update.
class FxContext {
public:
    explicit FxContext(FixedFormat fmt, bool strict = false)
        : format_(fmt), strict_(strict) {}

    const FixedFormat& format() const { return format_; }
    bool strict() const { return strict_; }

    const std::vector<OverflowEvent>& events() const { return events_; }
    std::vector<OverflowEvent> take_events() { return std::move(events_); }

    void set_location(Var v, int sweep, int i, int j) {
        loc_var_ = v;
        loc_sweep_ = sweep;
        loc_i_ = i;
        loc_j_ = j;
    }

    void record(const std::string& op, double a, double b, double ideal, double stored);

private:
    FixedFormat format_;
    bool strict_;
    std::vector<OverflowEvent> events_;
    Var loc_var_ = Var::A;
    int loc_sweep_ = 0;
    int loc_i_ = 0;
    int loc_j_ = 0;
};

/// A quantized scalar: value == raw * 2^-fraction_bits in the context format.
struct FixedScalar {
    std::int64_t raw = 0;
    FxContext* ctx = nullptr;

    double value() const;
};

FixedScalar fx_quantize(double x, FxContext& ctx);

FixedScalar fx_add(FixedScalar a, FixedScalar b);
FixedScalar fx_sub(FixedScalar a, FixedScalar b);
FixedScalar fx_mul(FixedScalar a, FixedScalar b);
FixedScalar fx_div(FixedScalar a, FixedScalar b);
FixedScalar fx_sqrt(FixedScalar a);
FixedScalar fx_abs(FixedScalar a);
FixedScalar fx_neg(FixedScalar a);

inline FixedScalar operator+(FixedScalar a, FixedScalar b) { return fx_add(a, b); }
inline FixedScalar operator-(FixedScalar a, FixedScalar b) { return fx_sub(a, b); }
inline FixedScalar operator*(FixedScalar a, FixedScalar b) { return fx_mul(a, b); }
inline FixedScalar operator/(FixedScalar a, FixedScalar b) { return fx_div(a, b); }
inline FixedScalar operator-(FixedScalar a) { return fx_neg(a); }

}  // namespace evd
