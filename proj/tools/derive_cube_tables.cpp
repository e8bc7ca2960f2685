// Prints src/cube_tables.inc from the geometric cubie model.
//
//   derive_cube_tables > src/cube_tables.inc

#include <iostream>

#include "support/cubie_model.hpp"

int main() {
    const char* names = "URFDBL";
    std::cout << "// Generated by tools/derive_cube_tables.cpp. Do not edit.\n"
              << "// Clockwise quarter-turn permutations: after the turn, facelet i\n"
              << "// holds what was at kClockwise[face][i].\n"
              << "inline constexpr std::uint8_t kClockwise[6][54] = {\n";
    for (int f = 0; f < 6; ++f) {
        auto perm = cubie_model::clockwise_permutation(f);
        std::cout << "    // " << names[f] << "\n    {";
        for (int i = 0; i < 54; ++i) {
            if (i) std::cout << (i % 18 == 0 ? ",\n     " : ", ");
            std::cout << int(perm[i]);
        }
        std::cout << "},\n";
    }
    std::cout << "};\n";
}
