#pragma once

// Graphviz export of V_n coloured by coset class.

#include <array>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>

#include "cayley/ball.hpp"
#include "cayley/subgroup.hpp"
#include "cayley/word.hpp"

namespace cayley {

/// K_0 blue, K_1 red, K_2 black, then a fixed extension palette (cycled).
inline std::string_view class_color(int cls) {
    static constexpr std::array<std::string_view, 12> palette{
        "blue", "red", "black", "forestgreen", "orange", "purple",
        "gold", "cyan", "magenta", "saddlebrown", "gray50", "deeppink"};
    return palette[static_cast<std::size_t>(cls) % palette.size()];
}

inline std::string to_dot(const SubgroupSpec& spec, int radius) {
    const Ball ball = enumerate_ball(spec.k, radius);
    std::ostringstream out;
    out << "graph cayley_tree {\n";
    out << "  // k=" << spec.k << " s=" << spec.s << " radius=" << radius << "\n";
    out << "  node [shape=circle, style=filled, fontsize=10];\n";
    for (const auto& sphere : ball.spheres) {
        for (const Word& x : sphere) {
            const int cls = label_residue(x, spec);
            const std::string_view color = class_color(cls);
            out << "  \"" << to_string(x) << "\" [fillcolor=" << color
                << ", fontcolor=" << (color == "gold" || color == "cyan" ? "black" : "white")
                << ", label=\"" << to_string(x) << "\", class=\"K" << cls << "\"];\n";
        }
    }
    for (const auto& sphere : ball.spheres) {
        for (const Word& x : sphere) {
            if (x.is_identity()) continue;
            out << "  \"" << to_string(parent(x)) << "\" -- \"" << to_string(x) << "\";\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace cayley
