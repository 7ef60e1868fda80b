#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simo {

enum class Scheme { em, fem, pa, coherent, noncoherent, oed };

enum class SelectionMode { theoretical, all_subcarriers };

inline std::string_view to_string(Scheme s) {
    switch (s) {
        case Scheme::em: return "em";
        case Scheme::fem: return "fem";
        case Scheme::pa: return "pa";
        case Scheme::coherent: return "coherent";
        case Scheme::noncoherent: return "noncoherent";
        case Scheme::oed: return "oed";
    }
    throw std::domain_error("unknown scheme");
}

inline Scheme scheme_from_string(std::string_view name) {
    if (name == "em") return Scheme::em;
    if (name == "fem") return Scheme::fem;
    if (name == "pa") return Scheme::pa;
    if (name == "coherent") return Scheme::coherent;
    if (name == "noncoherent") return Scheme::noncoherent;
    if (name == "oed") return Scheme::oed;
    throw std::domain_error("unknown scheme: " + std::string(name));
}

inline std::string_view to_string(SelectionMode m) {
    return m == SelectionMode::theoretical ? "theoretical" : "all-subcarriers";
}

inline SelectionMode selection_mode_from_string(std::string_view name) {
    if (name == "theoretical") return SelectionMode::theoretical;
    if (name == "all-subcarriers") return SelectionMode::all_subcarriers;
    throw std::domain_error("unknown mode: " + std::string(name));
}

}  // namespace simo
