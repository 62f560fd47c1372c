#include "surfq/catalog.hpp"

#include <cmath>

namespace surfq::catalog {

namespace {

double param_or(const SurfaceSpec& spec, const std::string& name, double fallback) {
    auto it = spec.params.find(name);
    return it == spec.params.end() ? fallback : it->second;
}

double positive_param(const SurfaceSpec& spec, const std::string& name, double fallback) {
    const double v = param_or(spec, name, fallback);
    if (!(v > 0.0)) {
        throw SpecError("parameter '" + name + "' of surface '" + spec.kind +
                        "' must be positive, got " + std::to_string(v));
    }
    return v;
}

geometry::SurfaceChart make_plane() {
    geometry::DomainRect dom{-5.0, 5.0, -5.0, 5.0};
    auto map = [](double u, double v) { return Eigen::Vector3d(u, v, 0.0); };
    auto d1 = [](double, double) {
        geometry::SurfaceChart::FirstDerivatives d;
        d.e1 = Eigen::Vector3d(1, 0, 0);
        d.e2 = Eigen::Vector3d(0, 1, 0);
        return d;
    };
    auto d2 = [](double, double) {
        geometry::SurfaceChart::SecondDerivatives d;
        d.r11.setZero();
        d.r12.setZero();
        d.r22.setZero();
        return d;
    };
    return geometry::SurfaceChart("plane", dom, map, d1, d2);
}

geometry::SurfaceChart make_sphere(double R) {
    // (theta, phi), poles excluded from the declared domain
    geometry::DomainRect dom{0.15, M_PI - 0.15, 0.0, 2.0 * M_PI};
    auto map = [R](double th, double ph) {
        return Eigen::Vector3d(R * std::sin(th) * std::cos(ph), R * std::sin(th) * std::sin(ph),
                               R * std::cos(th));
    };
    auto d1 = [R](double th, double ph) {
        geometry::SurfaceChart::FirstDerivatives d;
        d.e1 = Eigen::Vector3d(R * std::cos(th) * std::cos(ph), R * std::cos(th) * std::sin(ph),
                               -R * std::sin(th));
        d.e2 = Eigen::Vector3d(-R * std::sin(th) * std::sin(ph), R * std::sin(th) * std::cos(ph),
                               0.0);
        return d;
    };
    auto d2 = [R](double th, double ph) {
        geometry::SurfaceChart::SecondDerivatives d;
        d.r11 = Eigen::Vector3d(-R * std::sin(th) * std::cos(ph), -R * std::sin(th) * std::sin(ph),
                                -R * std::cos(th));
        d.r12 = Eigen::Vector3d(-R * std::cos(th) * std::sin(ph), R * std::cos(th) * std::cos(ph),
                                0.0);
        d.r22 = Eigen::Vector3d(-R * std::sin(th) * std::cos(ph), -R * std::sin(th) * std::sin(ph),
                                0.0);
        return d;
    };
    return geometry::SurfaceChart("sphere", dom, map, d1, d2);
}

geometry::SurfaceChart make_cylinder(double R, double length) {
    geometry::DomainRect dom{0.0, 2.0 * M_PI, -0.5 * length, 0.5 * length};
    auto map = [R](double th, double z) {
        return Eigen::Vector3d(R * std::cos(th), R * std::sin(th), z);
    };
    auto d1 = [R](double th, double) {
        geometry::SurfaceChart::FirstDerivatives d;
        d.e1 = Eigen::Vector3d(-R * std::sin(th), R * std::cos(th), 0.0);
        d.e2 = Eigen::Vector3d(0.0, 0.0, 1.0);
        return d;
    };
    auto d2 = [R](double th, double) {
        geometry::SurfaceChart::SecondDerivatives d;
        d.r11 = Eigen::Vector3d(-R * std::cos(th), -R * std::sin(th), 0.0);
        d.r12.setZero();
        d.r22.setZero();
        return d;
    };
    return geometry::SurfaceChart("cylinder", dom, map, d1, d2);
}

geometry::SurfaceChart make_torus(double R, double r) {
    // theta poloidal, phi toroidal
    geometry::DomainRect dom{0.0, 2.0 * M_PI, 0.0, 2.0 * M_PI};
    auto map = [R, r](double th, double ph) {
        const double w = R + r * std::cos(th);
        return Eigen::Vector3d(w * std::cos(ph), w * std::sin(ph), r * std::sin(th));
    };
    auto d1 = [R, r](double th, double ph) {
        geometry::SurfaceChart::FirstDerivatives d;
        d.e1 = Eigen::Vector3d(-r * std::sin(th) * std::cos(ph), -r * std::sin(th) * std::sin(ph),
                               r * std::cos(th));
        const double w = R + r * std::cos(th);
        d.e2 = Eigen::Vector3d(-w * std::sin(ph), w * std::cos(ph), 0.0);
        return d;
    };
    auto d2 = [R, r](double th, double ph) {
        geometry::SurfaceChart::SecondDerivatives d;
        const double w = R + r * std::cos(th);
        d.r11 = Eigen::Vector3d(-r * std::cos(th) * std::cos(ph), -r * std::cos(th) * std::sin(ph),
                                -r * std::sin(th));
        d.r12 = Eigen::Vector3d(r * std::sin(th) * std::sin(ph), -r * std::sin(th) * std::cos(ph),
                                0.0);
        d.r22 = Eigen::Vector3d(-w * std::cos(ph), -w * std::sin(ph), 0.0);
        return d;
    };
    return geometry::SurfaceChart("torus", dom, map, d1, d2);
}

monge::HeightField catenary_height(double a, double half_width) {
    monge::HeightField f;
    f.domain = geometry::DomainRect{-half_width, half_width, -half_width, half_width};
    f.h = [a](double x, double) { return a * std::cosh(x / a); };
    f.hx = [a](double x, double) { return std::sinh(x / a); };
    f.hy = [](double, double) { return 0.0; };
    f.hxx = [a](double x, double) { return std::cosh(x / a) / a; };
    f.hxy = [](double, double) { return 0.0; };
    f.hyy = [](double, double) { return 0.0; };
    return f;
}

monge::RadialProfile paraboloid_profile(double a, double rho_max) {
    return monge::RadialProfile([a](double rho) { return rho * rho / (2.0 * a); },
                                [a](double rho) { return rho / a; },
                                [a](double) { return 1.0 / a; }, rho_max);
}

}  // namespace

monge::HeightField height_field_from_expression(const std::string& text,
                                                const std::map<std::string, double>& params,
                                                geometry::DomainRect domain) {
    std::vector<std::string> ids = {"x", "y"};
    for (const auto& [name, value] : params) ids.push_back(name);

    const expr::Expr H = expr::Expr::parse(text, ids);
    const expr::Expr Hx = H.derivative("x");
    const expr::Expr Hy = H.derivative("y");
    const expr::Expr Hxx = Hx.derivative("x");
    const expr::Expr Hxy = Hx.derivative("y");
    const expr::Expr Hyy = Hy.derivative("y");

    expr::EvalContext base;
    for (const auto& [name, value] : params) base.bind(name, value);

    auto wrap = [base](const expr::Expr& e) {
        return [e, base](double x, double y) {
            expr::EvalContext ctx = base;
            ctx.bind("x", x).bind("y", y);
            return e.eval(ctx);
        };
    };

    monge::HeightField f;
    f.domain = domain;
    f.h = wrap(H);
    f.hx = wrap(Hx);
    f.hy = wrap(Hy);
    f.hxx = wrap(Hxx);
    f.hxy = wrap(Hxy);
    f.hyy = wrap(Hyy);
    return f;
}

monge::RadialProfile radial_profile_from_expression(const std::string& text,
                                                    const std::map<std::string, double>& params,
                                                    double rho_max) {
    std::vector<std::string> ids = {"rho"};
    for (const auto& [name, value] : params) ids.push_back(name);

    const expr::Expr H = expr::Expr::parse(text, ids);
    const expr::Expr H1 = H.derivative("rho");
    const expr::Expr H2 = H1.derivative("rho");

    expr::EvalContext base;
    for (const auto& [name, value] : params) base.bind(name, value);

    auto wrap = [base](const expr::Expr& e) {
        return [e, base](double rho) {
            expr::EvalContext ctx = base;
            ctx.bind("rho", rho);
            return e.eval(ctx);
        };
    };
    return monge::RadialProfile(wrap(H), wrap(H1), wrap(H2), rho_max);
}

const std::vector<std::string>& builtin_kinds() {
    static const std::vector<std::string> kinds = {
        "plane",   "sphere",     "cylinder",        "torus",
        "catenary", "paraboloid", "monge-cartesian", "monge-polar"};
    return kinds;
}

BuiltSurface build_surface(const SurfaceSpec& spec) {
    const std::string& kind = spec.kind;
    if (kind == "plane") {
        return BuiltSurface{make_plane(), std::nullopt, std::nullopt};
    }
    if (kind == "sphere") {
        return BuiltSurface{make_sphere(positive_param(spec, "R", 1.0)), std::nullopt,
                            std::nullopt};
    }
    if (kind == "cylinder") {
        return BuiltSurface{make_cylinder(positive_param(spec, "R", 1.0),
                                          positive_param(spec, "length", 10.0)),
                            std::nullopt, std::nullopt};
    }
    if (kind == "torus") {
        const double R = positive_param(spec, "R", 2.0);
        const double r = positive_param(spec, "r", 0.5);
        if (r >= R) throw SpecError("torus needs r < R");
        return BuiltSurface{make_torus(R, r), std::nullopt, std::nullopt};
    }
    if (kind == "catenary") {
        const double a = positive_param(spec, "a", 1.0);
        const double half_width = positive_param(spec, "half_width", 3.0 * a);
        auto field = catenary_height(a, half_width);
        return BuiltSurface{monge::monge_chart(field, "catenary"), field, std::nullopt};
    }
    if (kind == "paraboloid") {
        const double a = positive_param(spec, "a", 1.0);
        const double rho_max = positive_param(spec, "rho_max", 5.0 * a);
        auto profile = paraboloid_profile(a, rho_max);
        return BuiltSurface{monge::polar_chart(profile, "paraboloid", 0.05 * a), std::nullopt,
                            profile};
    }
    if (kind == "monge-cartesian") {
        if (spec.expression.empty()) throw SpecError("monge-cartesian needs an expression");
        const double half_width = positive_param(spec, "half_width", 2.0);
        geometry::DomainRect dom{-half_width, half_width, -half_width, half_width};
        try {
            auto field = height_field_from_expression(spec.expression, spec.params, dom);
            return BuiltSurface{monge::monge_chart(field, "monge-cartesian"), field, std::nullopt};
        } catch (const expr::ParseError& e) {
            throw SpecError(std::string("bad expression: ") + e.what());
        } catch (const expr::UnknownIdentifier& e) {
            throw SpecError(std::string("bad expression: ") + e.what());
        }
    }
    if (kind == "monge-polar") {
        if (spec.expression.empty()) throw SpecError("monge-polar needs an expression");
        const double rho_max = positive_param(spec, "rho_max", 5.0);
        try {
            auto profile = radial_profile_from_expression(spec.expression, spec.params, rho_max);
            return BuiltSurface{monge::polar_chart(profile, "monge-polar", 0.01 * rho_max),
                                std::nullopt, profile};
        } catch (const expr::ParseError& e) {
            throw SpecError(std::string("bad expression: ") + e.what());
        } catch (const expr::UnknownIdentifier& e) {
            throw SpecError(std::string("bad expression: ") + e.what());
        }
    }
    throw SpecError("unknown surface kind '" + kind + "'");
}

std::vector<geometry::SurfaceChart> charts_for_checks() {
    std::vector<geometry::SurfaceChart> charts;
    charts.push_back(make_plane());
    charts.push_back(make_sphere(1.0));
    charts.push_back(make_cylinder(2.0, 10.0));
    charts.push_back(make_torus(2.0, 0.5));
    charts.push_back(monge::monge_chart(catenary_height(1.0, 3.0), "catenary"));
    charts.push_back(monge::polar_chart(paraboloid_profile(1.0, 5.0), "paraboloid", 0.05));
    return charts;
}

}  // namespace surfq::catalog
