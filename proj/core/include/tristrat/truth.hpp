#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string_view>

namespace tristrat {

/// Three-valued verdict, totally ordered False < Undef < True.
enum class Truth : std::uint8_t { False = 0, Undef = 1, True = 2 };

constexpr Truth tv_and(Truth a, Truth b) noexcept { return std::min(a, b); }
constexpr Truth tv_or(Truth a, Truth b) noexcept { return std::max(a, b); }

/// Order reversal: True <-> False, Undef is fixed.
constexpr Truth tv_not(Truth a) noexcept
{
    return static_cast<Truth>(2 - static_cast<std::uint8_t>(a));
}

constexpr Truth from_bool(bool b) noexcept { return b ? Truth::True : Truth::False; }
constexpr bool is_defined(Truth t) noexcept { return t != Truth::Undef; }

constexpr std::string_view to_string(Truth t) noexcept
{
    switch (t) {
    case Truth::False: return "false";
    case Truth::Undef: return "undef";
    case Truth::True: return "true";
    }
    return "?";
}

inline std::ostream& operator<<(std::ostream& os, Truth t) { return os << to_string(t); }

} // namespace tristrat
