#pragma once

#include <string_view>

namespace fixtures {

// Published Sudoku training record, reproduced verbatim including its line
// wrapping.
inline constexpr std::string_view kSudokuRecord =
    "<|startoftext|>[WP]\n"
    "00430020900500900107006004300600208719000740005\n"
    "0083000600000105003508690042910300 [RESPONSE]\n"
    "86437125932584976197126584343619258719865743225\n"
    "7483916689734125713528694542916378<|endoftext|>";

inline constexpr std::string_view kSudokuPuzzle =
    "00430020900500900107006004300600208719000740005"
    "0083000600000105003508690042910300";

inline constexpr std::string_view kSudokuSolution =
    "86437125932584976197126584343619258719865743225"
    "7483916689734125713528694542916378";

}  // namespace fixtures
