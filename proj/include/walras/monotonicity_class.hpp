#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace walras {

enum class MonotonicityClass { pseudo, strict_pseudo, proper_quasi, proper_quasi_dual, strict_proper_quasi };

inline constexpr std::array<MonotonicityClass, 5> kAllClasses = {
    MonotonicityClass::pseudo, MonotonicityClass::strict_pseudo, MonotonicityClass::proper_quasi,
    MonotonicityClass::proper_quasi_dual, MonotonicityClass::strict_proper_quasi};

inline std::string_view to_string(MonotonicityClass c) {
    switch (c) {
        case MonotonicityClass::pseudo: return "pseudo";
        case MonotonicityClass::strict_pseudo: return "strict_pseudo";
        case MonotonicityClass::proper_quasi: return "proper_quasi";
        case MonotonicityClass::proper_quasi_dual: return "proper_quasi_dual";
        case MonotonicityClass::strict_proper_quasi: return "strict_proper_quasi";
    }
    return "unknown";
}

inline std::optional<MonotonicityClass> parse_class(std::string_view name) {
    for (auto c : kAllClasses)
        if (to_string(c) == name) return c;
    return std::nullopt;
}

}  // namespace walras
