// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace brank {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int violated = 1;
inline constexpr int inconclusive = 2;
inline constexpr int usage = 64;
inline constexpr int data = 65;
inline constexpr int internal = 70;
}  // namespace exit_code

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace brank
