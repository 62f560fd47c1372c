#pragma once

// Self-check suites behind the `check` command: cross-route identities that
// exercise the geometry and solver stacks end to end.

#include <string>
#include <vector>

namespace surfq::checks {

struct SuiteResult {
    std::string name;
    int samples = 0;
    double worst_residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

// `k_scale` perturbs the shape operator inside the residual (mutation hook
// for testing that the suite actually detects broken curvature data).
SuiteResult weingarten_analytic_suite(double k_scale = 1.0);
SuiteResult weingarten_fd_suite(double k_scale = 1.0);

// det g(u3) from the layer factorization against the direct quadratic
// expansion of the offset metric.
SuiteResult metric_determinant_suite();

// Height-function formulas against the full chart pipeline.
SuiteResult pipeline_agreement_suite();

// Error of the small-slope potential shrinks ~4x when the height field
// amplitude halves.
SuiteResult small_slope_suite();

SuiteResult orthogonality_suite();
SuiteResult oscillation_suite();

std::vector<SuiteResult> run_all();

}  // namespace surfq::checks
