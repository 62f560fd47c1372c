#pragma once

// Command-line front end.  Verbs: curvature, potential-map, solve, scan,
// check.  Exit codes: 0 ok, 2 spec validation, 3 chart/geometry error,
// 4 solver did not converge, 5 self-check failure.

namespace surfq::cli {

constexpr int kExitOk = 0;
constexpr int kExitSpec = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitConvergence = 4;
constexpr int kExitCheck = 5;

int run(int argc, const char* const* argv);

}  // namespace surfq::cli
