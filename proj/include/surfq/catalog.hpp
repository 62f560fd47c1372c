#pragma once

// Built-in surface construction from a (kind, params, expression) spec, as
// accepted on the command line or in a JSON spec file.  Expression-driven
// kinds get their derivatives from the symbolic differentiator.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surfq/expr.hpp"
#include "surfq/geometry.hpp"
#include "surfq/monge.hpp"

namespace surfq::catalog {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurfaceSpec {
    std::string kind;  // plane sphere cylinder torus catenary paraboloid
                       // monge-cartesian monge-polar
    std::map<std::string, double> params;
    std::string expression;  // height function for the monge kinds
};

struct BuiltSurface {
    geometry::SurfaceChart chart;
    std::optional<monge::HeightField> height;     // when a Cartesian height function exists
    std::optional<monge::RadialProfile> profile;  // when a radial profile exists
};

// Throws SpecError on unknown kinds, missing/invalid parameters, or an
// expression that does not parse.
BuiltSurface build_surface(const SurfaceSpec& spec);

const std::vector<std::string>& builtin_kinds();

// Analytic charts used by the self-check suites (no monge-expression kinds).
std::vector<geometry::SurfaceChart> charts_for_checks();

// Height field with exact partials from a parsed expression in {x, y} plus
// named parameters.
monge::HeightField height_field_from_expression(const std::string& text,
                                                const std::map<std::string, double>& params,
                                                geometry::DomainRect domain);

// Radial profile from an expression in {rho} plus named parameters.
monge::RadialProfile radial_profile_from_expression(const std::string& text,
                                                    const std::map<std::string, double>& params,
                                                    double rho_max);

}  // namespace surfq::catalog
