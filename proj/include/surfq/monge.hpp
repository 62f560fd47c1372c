#pragma once

// Height-function description of a surface, z = H(x,y): exact curvature
// formulas, the small-slope limit, and the radially symmetric polar gauge
// z = H(rho).  Exact and small-slope potentials are separate entry points;
// nothing here downgrades to the approximation silently.

#include <functional>
#include <stdexcept>
#include <utility>

#include "surfq/geometry.hpp"

namespace surfq::monge {

struct AxisSingularity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using ScalarFn1 = std::function<double(double)>;
using ScalarFn2 = std::function<double(double, double)>;

// z = H(x, y) with exact first and second partials.
struct HeightField {
    ScalarFn2 h, hx, hy, hxx, hxy, hyy;
    geometry::DomainRect domain;
};

// z = H(x) along a single coordinate.
struct LineProfile {
    ScalarFn1 h, d1, d2;
};

// z = H(rho), rho in [0, rho_max].  A smooth axis needs H'(0) = 0.
struct RadialProfile {
    ScalarFn1 h, d1, d2;
    double rho_max = 1.0;

    RadialProfile(ScalarFn1 h_, ScalarFn1 d1_, ScalarFn1 d2_, double rho_max_);
};

geometry::SurfaceChart monge_chart(const HeightField& field, std::string name = "monge");

// (K, K_G) from the exact height-function formulas.
std::pair<double, double> monge_curvatures(const HeightField& field, double x, double y);

double monge_potential_exact(const HeightField& field, double x, double y);

// -((H_xx - H_yy)^2 + 4 H_xy^2)/8, valid for |grad H| << 1.
double monge_potential_small_slope(const HeightField& field, double x, double y);

// One-coordinate profile: exact -H''^2/(8(1+H'^2)^3) or small-slope -H''^2/8.
double monge_1d_potential(const LineProfile& profile, double x, bool exact);

// (k_rho, k_theta) of the radially symmetric surface; rho = 0 raises
// AxisSingularity, use polar_axis_curvatures for the limit.
std::pair<double, double> polar_principal_curvatures(const RadialProfile& profile, double rho);

// rho -> 0 limit: both curvatures tend to -H''(0) (the axis is umbilic).
std::pair<double, double> polar_axis_curvatures(const RadialProfile& profile);

// Small-curvature radial potential -(H_rr - H_r/rho)^2 / 8.
double polar_potential_small(const RadialProfile& profile, double rho);

// Chart (rho, theta) -> (rho cos t, rho sin t, H(rho)) with exact derivatives.
geometry::SurfaceChart polar_chart(const RadialProfile& profile, std::string name = "radial",
                                   double rho_min = 1e-3);

}  // namespace surfq::monge
