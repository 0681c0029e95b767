#pragma once

#include <cstdint>

namespace locabs {

/// Three-valued boolean: false, true or undefined (X).
class lbool {
public:
    constexpr lbool() : value_(2) {}
    constexpr explicit lbool(bool b) : value_(b ? 1 : 0) {}

    static constexpr lbool from_raw(std::uint8_t v) { lbool r; r.value_ = v; return r; }

    constexpr bool operator==(const lbool& o) const = default;

    constexpr lbool operator~() const { return value_ == 2 ? *this : from_raw(value_ ^ 1); }
    /// Flip when `b` is set; X stays X.
    constexpr lbool operator^(bool b) const { return b ? ~*this : *this; }

    constexpr bool is_undef() const { return value_ == 2; }
    constexpr std::uint8_t raw() const { return value_; }

    char to_char() const { return value_ == 0 ? '0' : value_ == 1 ? '1' : 'x'; }

private:
    std::uint8_t value_;
};

inline constexpr lbool lbool_0 = lbool::from_raw(0);
inline constexpr lbool lbool_1 = lbool::from_raw(1);
inline constexpr lbool lbool_X = lbool::from_raw(2);

/// Ternary conjunction: 0 dominates, 1 is the identity, otherwise X.
constexpr lbool ternary_and(lbool a, lbool b)
{
    if (a == lbool_0 || b == lbool_0) return lbool_0;
    if (a == lbool_1 && b == lbool_1) return lbool_1;
    return lbool_X;
}

}  // namespace locabs
