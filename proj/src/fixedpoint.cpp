#include "evd/fixedpoint.hpp"

#include <cmath>
#include <sstream>

namespace evd {

namespace {

using int128 = __int128;

// Round p / 2^k to nearest, ties to even.
int128 rne_shift(int128 p, int k) {
    if (k == 0) return p;
    const int128 one = 1;
    const int128 q = p >> k;  // floor
    const int128 rem = p - (q << k);
    const int128 half = one << (k - 1);
    if (rem > half) return q + 1;
    if (rem == half) return q + (q & 1);
    return q;
}

unsigned __int128 isqrt_floor(unsigned __int128 n) {
    if (n == 0) return 0;
    unsigned __int128 x = static_cast<unsigned __int128>(
        std::sqrt(static_cast<double>(static_cast<unsigned long long>(n >> 64)) *
                      0x1.0p64 +
                  static_cast<double>(static_cast<unsigned long long>(n))));
    x += 2;  // start above the root so Newton descends monotonically
    while (true) {
        const unsigned __int128 y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    while (x * x > n) --x;
    return x;
}

double raw_to_value(std::int64_t raw, const FixedFormat& fmt) {
    return std::ldexp(static_cast<double>(raw), -fmt.fraction_bits());
}

double ideal_of(int128 ideal_raw, const FixedFormat& fmt) {
    return std::ldexp(static_cast<double>(ideal_raw), -fmt.fraction_bits());
}

}  // namespace

FixedFormat::FixedFormat(int wl, int iwl) : word_length(wl), integer_bits(iwl) {
    if (wl < 2 || wl > 64 || iwl < 1 || iwl > wl)
        throw ParseError("invalid fixed format " + std::to_string(wl) + ":" +
                         std::to_string(iwl));
}

std::int64_t FixedFormat::min_raw() const {
    if (word_length == 64) return INT64_MIN;
    return -(std::int64_t(1) << (word_length - 1));
}

std::int64_t FixedFormat::max_raw() const {
    if (word_length == 64) return INT64_MAX;
    return (std::int64_t(1) << (word_length - 1)) - 1;
}

double FixedFormat::min_value() const { return raw_to_value(min_raw(), *this); }
double FixedFormat::max_value() const { return raw_to_value(max_raw(), *this); }
double FixedFormat::ulp() const { return std::ldexp(1.0, -fraction_bits()); }

FixedFormat FixedFormat::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw ParseError("fixed format must be WL:IWL, got \"" + spec + "\"");
    try {
        const int wl = std::stoi(spec.substr(0, colon));
        const int iwl = std::stoi(spec.substr(colon + 1));
        return FixedFormat(wl, iwl);
    } catch (const std::logic_error&) {
        throw ParseError("fixed format must be WL:IWL, got \"" + spec + "\"");
    }
}

std::string FixedFormat::to_string() const {
    return std::to_string(word_length) + ":" + std::to_string(integer_bits);
}

OverflowAbort::OverflowAbort(const OverflowEvent& ev)
    : Error("overflow in strict mode: " + ev.operation + " at " +
            std::string(var_name(ev.variable)) + " sweep " + std::to_string(ev.sweep) +
            " pair (" + std::to_string(ev.i) + "," + std::to_string(ev.j) + ")") {}

void FxContext::record(const std::string& op, double a, double b, double ideal,
                       double stored) {
    OverflowEvent ev{op, a, b, ideal, stored, loc_var_, loc_sweep_, loc_i_, loc_j_};
    if (strict_) throw OverflowAbort(ev);
    events_.push_back(std::move(ev));
}

double FixedScalar::value() const { return raw_to_value(raw, ctx->format()); }

namespace {

FixedScalar store(FxContext& ctx, int128 ideal_raw, const char* op, double oa,
                  double ob) {
    const FixedFormat& fmt = ctx.format();
    std::int64_t raw;
    if (ideal_raw > fmt.max_raw()) {
        raw = fmt.max_raw();
        ctx.record(op, oa, ob, ideal_of(ideal_raw, fmt), raw_to_value(raw, fmt));
    } else if (ideal_raw < fmt.min_raw()) {
        raw = fmt.min_raw();
        ctx.record(op, oa, ob, ideal_of(ideal_raw, fmt), raw_to_value(raw, fmt));
    } else {
        raw = static_cast<std::int64_t>(ideal_raw);
    }
    return {raw, &ctx};
}

}  // namespace

FixedScalar fx_quantize(double x, FxContext& ctx) {
    const FixedFormat& fmt = ctx.format();
    const long double scaled =
        static_cast<long double>(x) * std::exp2l(fmt.fraction_bits());
    const long double rounded = std::nearbyintl(scaled);  // RNE in default mode
    // Out-of-range values are saturated before the int128 conversion can wrap.
    if (rounded > static_cast<long double>(fmt.max_raw())) {
        ctx.record("quantize", x, 0.0, x, fmt.max_value());
        return {fmt.max_raw(), &ctx};
    }
    if (rounded < static_cast<long double>(fmt.min_raw())) {
        ctx.record("quantize", x, 0.0, x, fmt.min_value());
        return {fmt.min_raw(), &ctx};
    }
    return {static_cast<std::int64_t>(rounded), &ctx};
}

FixedScalar fx_add(FixedScalar a, FixedScalar b) {
    return store(*a.ctx, int128(a.raw) + int128(b.raw), "add", a.value(), b.value());
}

FixedScalar fx_sub(FixedScalar a, FixedScalar b) {
    return store(*a.ctx, int128(a.raw) - int128(b.raw), "sub", a.value(), b.value());
}

FixedScalar fx_mul(FixedScalar a, FixedScalar b) {
    const int f = a.ctx->format().fraction_bits();
    const int128 exact = int128(a.raw) * int128(b.raw);  // 2f fraction bits
    return store(*a.ctx, rne_shift(exact, f), "mul", a.value(), b.value());
}

FixedScalar fx_div(FixedScalar a, FixedScalar b) {
    if (b.raw == 0) throw DivideByZero();
    const int f = a.ctx->format().fraction_bits();
    const bool neg = (a.raw < 0) != (b.raw < 0);
    unsigned __int128 num = a.raw < 0 ? -(int128(a.raw)) : int128(a.raw);
    num <<= f;
    const unsigned __int128 den = b.raw < 0 ? -(int128(b.raw)) : int128(b.raw);
    unsigned __int128 q = num / den;
    const unsigned __int128 rem = num % den;
    if (2 * rem > den || (2 * rem == den && (q & 1)))
        ++q;
    const int128 signed_q = neg ? -int128(q) : int128(q);
    return store(*a.ctx, signed_q, "div", a.value(), b.value());
}

FixedScalar fx_sqrt(FixedScalar a) {
    if (a.raw < 0) {
        // One ulp of slack absorbs quantization dipping just below zero.
        if (a.raw < -1) throw NegativeSqrt(a.value());
        return {0, a.ctx};
    }
    const int f = a.ctx->format().fraction_bits();
    const unsigned __int128 n = static_cast<unsigned __int128>(a.raw) << f;
    unsigned __int128 s = isqrt_floor(n);
    // Round to nearest: (s + 1/2)^2 = s^2 + s + 1/4, never an integer tie.
    if (n - s * s > s) ++s;
    return store(*a.ctx, int128(s), "sqrt", a.value(), 0.0);
}

FixedScalar fx_abs(FixedScalar a) {
    return store(*a.ctx, a.raw < 0 ? -int128(a.raw) : int128(a.raw), "abs", a.value(),
                 0.0);
}

FixedScalar fx_neg(FixedScalar a) {
    return store(*a.ctx, -int128(a.raw), "neg", a.value(), 0.0);
}

}  // namespace evd
