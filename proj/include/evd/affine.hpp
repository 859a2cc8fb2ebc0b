#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "evd/interval.hpp"

namespace evd {

/// Issues globally unique noise-symbol ids for one analysis run and carries
/// the per-value symbol budget.
class AffineContext {
public:
    explicit AffineContext(std::size_t symbol_budget = 256)
        : budget_(symbol_budget) {}

    std::uint32_t fresh() { return next_++; }
    std::size_t budget() const { return budget_; }

private:
    std::uint32_t next_ = 0;
    std::size_t budget_;
};

/// center + sum(coeff_i * e_i) + residual * e_new, with e in [-1, 1].
/// The residual radius absorbs nonlinear remainders; it may be infinite, which
/// is how range explosion is represented in-band.
class AffineForm {
public:
    AffineForm() = default;

    static AffineForm constant(double v, AffineContext& ctx) {
        AffineForm f;
        f.center_ = v;
        f.ctx_ = &ctx;
        return f;
    }

    /// A fresh independent input spanning the interval.
    static AffineForm input(const Interval& range, AffineContext& ctx) {
        AffineForm f;
        f.ctx_ = &ctx;
        f.center_ = range.mid();
        const double r = range.rad();
        if (r > 0.0) f.dev_.emplace_back(ctx.fresh(), r);
        return f;
    }

    /// An enclosure with no linear structure (correlations dropped).
    static AffineForm from_interval(const Interval& range, AffineContext& ctx) {
        AffineForm f;
        f.ctx_ = &ctx;
        if (!range.finite()) {
            f.center_ = 0.0;
            f.residual_ = std::numeric_limits<double>::infinity();
        } else {
            f.center_ = range.mid();
            f.residual_ = range.rad();
        }
        return f;
    }

    AffineContext& context() const { return *ctx_; }
    double center() const { return center_; }
    double residual() const { return residual_; }
    const std::vector<std::pair<std::uint32_t, double>>& deviations() const {
        return dev_;
    }

    double radius() const {
        double r = residual_;
        for (const auto& [id, c] : dev_) r += std::fabs(c);
        return r;
    }

    Interval concretize() const {
        const double r = radius();
        if (std::isinf(r)) return Interval::entire();
        return {center_ - r, center_ + r};
    }

    bool is_point(double v) const { return center_ == v && radius() == 0.0; }

    AffineForm operator-() const {
        AffineForm f = *this;
        f.center_ = -f.center_;
        for (auto& [id, c] : f.dev_) c = -c;
        return f;
    }

    friend AffineForm operator+(const AffineForm& x, const AffineForm& y) {
        return linear_combine(x, y, 1.0);
    }
    friend AffineForm operator-(const AffineForm& x, const AffineForm& y) {
        return linear_combine(x, y, -1.0);
    }

    friend AffineForm operator*(const AffineForm& x, const AffineForm& y) {
        AffineForm z;
        z.ctx_ = x.ctx_;
        z.center_ = x.center_ * y.center_;
        z.dev_.reserve(x.dev_.size() + y.dev_.size());
        merge_scaled(x.dev_, y.dev_, y.center_, x.center_, z.dev_);
        z.residual_ = safe_prod(std::fabs(x.center_), y.residual_) +
                      safe_prod(std::fabs(y.center_), x.residual_) +
                      safe_prod(x.radius(), y.radius());
        z.condense();
        // Never report looser than plain interval multiplication.
        return tightest(z, x.concretize() * y.concretize());
    }

    friend AffineForm operator/(const AffineForm& x, const AffineForm& y) {
        const Interval yc = y.concretize();
        if (yc.contains_zero())
            return from_interval(Interval::entire(), *x.ctx_);
        const AffineForm inv = reciprocal(y);
        AffineForm z = x * inv;
        return tightest(z, x.concretize() / yc);
    }

    friend AffineForm sqrt(const AffineForm& x) {
        const Interval c = x.concretize();
        const double lo = std::max(c.lo, 0.0);
        const double hi = std::max(c.hi, 0.0);
        AffineContext& ctx = *x.ctx_;
        if (hi == 0.0) return constant(0.0, ctx);
        if (std::isinf(hi))
            return from_interval({std::sqrt(lo), hi}, ctx);
        // Min-range enclosure: slope matches the flat end, so the linear part
        // never overshoots the true range.
        const double alpha = 1.0 / (2.0 * std::sqrt(hi));
        const double gmin = std::sqrt(lo) - alpha * lo;
        const double gmax = std::sqrt(hi) - alpha * hi;
        AffineForm z = scaled(x, alpha, (gmin + gmax) / 2.0);
        z.residual_ += (gmax - gmin) / 2.0;
        return tightest(z, sqrt(c));
    }

    friend AffineForm square(const AffineForm& x) {
        AffineForm z = x * x;
        return tightest(z, square(x.concretize()));
    }

    friend AffineForm abs(const AffineForm& x) {
        const Interval c = x.concretize();
        if (c.lo >= 0.0) return x;
        if (c.hi <= 0.0) return -x;
        return from_interval(abs(c), *x.ctx_);
    }

    /// Intersects the enclosure with a known mathematical range, dropping the
    /// linear terms only when the clip actually bites.
    AffineForm clipped(const Interval& bound) const {
        const Interval c = concretize();
        if (bound.contains(c)) return *this;
        return from_interval(c.intersect(bound), *ctx_);
    }

private:
    static AffineForm linear_combine(const AffineForm& x, const AffineForm& y,
                                     double ysign) {
        AffineForm z;
        z.ctx_ = x.ctx_;
        z.center_ = x.center_ + ysign * y.center_;
        merge_scaled(x.dev_, y.dev_, 1.0, ysign, z.dev_);
        z.residual_ = x.residual_ + y.residual_;
        z.condense();
        return z;
    }

    static AffineForm scaled(const AffineForm& x, double k, double shift) {
        AffineForm z;
        z.ctx_ = x.ctx_;
        z.center_ = k * x.center_ + shift;
        z.dev_.reserve(x.dev_.size());
        for (const auto& [id, c] : x.dev_) z.dev_.emplace_back(id, k * c);
        z.residual_ = safe_prod(std::fabs(k), x.residual_);
        return z;
    }

    static AffineForm reciprocal(const AffineForm& y) {
        const Interval c = y.concretize();  // caller guarantees 0 not inside
        const double a = std::min(std::fabs(c.lo), std::fabs(c.hi));
        const double b = std::max(std::fabs(c.lo), std::fabs(c.hi));
        const double sign = c.lo > 0.0 ? 1.0 : -1.0;
        if (std::isinf(b))
            return from_interval(sign > 0 ? Interval{0.0, 1.0 / a}
                                          : Interval{-1.0 / a, 0.0},
                                 *y.ctx_);
        // Min-range enclosure of 1/t over [a, b] mapped back through the sign.
        const double alpha = -1.0 / (b * b);
        const double gmin = 1.0 / b - alpha * b;
        const double gmax = 1.0 / a - alpha * a;
        AffineForm z = scaled(y, alpha, sign * (gmin + gmax) / 2.0);
        z.residual_ += (gmax - gmin) / 2.0;
        return z;
    }

    static AffineForm tightest(const AffineForm& candidate, const Interval& ia) {
        const Interval cc = candidate.concretize();
        if (!(ia.width() < cc.width())) return candidate;
        return from_interval(cc.intersect(ia), *candidate.ctx_);
    }

    static double safe_prod(double a, double b) {
        if (a == 0.0 || b == 0.0) return 0.0;
        return a * b;
    }

    static void merge_scaled(const std::vector<std::pair<std::uint32_t, double>>& xs,
                             const std::vector<std::pair<std::uint32_t, double>>& ys,
                             double kx, double ky,
                             std::vector<std::pair<std::uint32_t, double>>& out) {
        std::size_t i = 0, j = 0;
        while (i < xs.size() || j < ys.size()) {
            if (j == ys.size() || (i < xs.size() && xs[i].first < ys[j].first)) {
                out.emplace_back(xs[i].first, kx * xs[i].second);
                ++i;
            } else if (i == xs.size() || ys[j].first < xs[i].first) {
                out.emplace_back(ys[j].first, ky * ys[j].second);
                ++j;
            } else {
                const double c = kx * xs[i].second + ky * ys[j].second;
                if (c != 0.0) out.emplace_back(xs[i].first, c);
                ++i;
                ++j;
            }
        }
    }

    void condense() {
        const std::size_t budget = ctx_ ? ctx_->budget() : 256;
        if (dev_.size() <= budget) return;
        std::nth_element(dev_.begin(), dev_.begin() + (dev_.size() - budget),
                         dev_.end(), [](const auto& a, const auto& b) {
                             return std::fabs(a.second) < std::fabs(b.second);
                         });
        const std::size_t cut = dev_.size() - budget;
        for (std::size_t k = 0; k < cut; ++k) residual_ += std::fabs(dev_[k].second);
        dev_.erase(dev_.begin(), dev_.begin() + cut);
        std::sort(dev_.begin(), dev_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    double center_ = 0.0;
    std::vector<std::pair<std::uint32_t, double>> dev_;
    double residual_ = 0.0;
    AffineContext* ctx_ = nullptr;
};

}  // namespace evd
