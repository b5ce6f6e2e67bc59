#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace divsmooth {

/// Extended real: a finite double, +inf or -inf. NaN is never stored.
class ExtReal {
public:
    constexpr ExtReal() = default;
    ExtReal(double v);  // throws on NaN

    static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
    static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

    double value() const noexcept { return v_; }
    bool is_finite() const noexcept { return std::isfinite(v_); }
    bool is_pos_inf() const noexcept { return v_ == std::numeric_limits<double>::infinity(); }
    bool is_neg_inf() const noexcept { return v_ == -std::numeric_limits<double>::infinity(); }

    friend ExtReal operator+(ExtReal x, ExtReal y);  // inf + (-inf) throws
    friend ExtReal operator-(ExtReal x, ExtReal y);  // inf - inf throws
    friend ExtReal operator-(ExtReal x) { return ExtReal(-x.v_); }
    friend ExtReal operator*(double s, ExtReal x);    // 0 * inf throws

    friend bool operator==(ExtReal x, ExtReal y) noexcept { return x.v_ == y.v_; }
    friend std::partial_ordering operator<=>(ExtReal x, ExtReal y) noexcept { return x.v_ <=> y.v_; }

    std::string to_string() const;  // "inf", "-inf" or %.17g

private:
    double v_ = 0.0;
};

}  // namespace divsmooth
