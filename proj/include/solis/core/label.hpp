#pragma once

#include <string>

#include "solis/util/errors.hpp"

namespace solis {

// Binary solubility outcome. Integer codes are part of the wire format.
enum class SolubilityLabel : int {
    Undissolved = 0,
    Dissolved = 1,
};

inline std::string to_string(SolubilityLabel l) {
    return l == SolubilityLabel::Dissolved ? "dissolved" : "undissolved";
}

inline SolubilityLabel label_from_string(const std::string& s) {
    if (s == "undissolved") return SolubilityLabel::Undissolved;
    if (s == "dissolved") return SolubilityLabel::Dissolved;
    throw ConfigError("unknown label string: \"" + s + "\"");
}

inline SolubilityLabel label_from_int(int v) {
    if (v == 0) return SolubilityLabel::Undissolved;
    if (v == 1) return SolubilityLabel::Dissolved;
    throw ConfigError("unknown label code: " + std::to_string(v));
}

}  // namespace solis
