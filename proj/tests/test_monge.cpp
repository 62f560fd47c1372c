#include <doctest.h>

#include <cmath>

#include "surfq/catalog.hpp"
#include "surfq/geometry.hpp"
#include "surfq/monge.hpp"

using namespace surfq;
using monge::HeightField;
using monge::LineProfile;
using monge::RadialProfile;

namespace {

HeightField flat_field() {
    HeightField f;
    f.domain = {-2, 2, -2, 2};
    f.h = [](double, double) { return 0.0; };
    f.hx = f.hy = f.hxx = f.hxy = f.hyy = f.h;
    return f;
}

HeightField product_field() {  // H = x y
    HeightField f;
    f.domain = {-2, 2, -2, 2};
    f.h = [](double x, double y) { return x * y; };
    f.hx = [](double, double y) { return y; };
    f.hy = [](double x, double) { return x; };
    f.hxx = [](double, double) { return 0.0; };
    f.hxy = [](double, double) { return 1.0; };
    f.hyy = [](double, double) { return 0.0; };
    return f;
}

HeightField bowl_field() {  // H = (x^2 + y^2)/2
    HeightField f;
    f.domain = {-2, 2, -2, 2};
    f.h = [](double x, double y) { return 0.5 * (x * x + y * y); };
    f.hx = [](double x, double) { return x; };
    f.hy = [](double, double y) { return y; };
    f.hxx = [](double, double) { return 1.0; };
    f.hxy = [](double, double) { return 0.0; };
    f.hyy = [](double, double) { return 1.0; };
    return f;
}

HeightField catenary_field(double a) {
    HeightField f;
    f.domain = {-2, 2, -2, 2};
    f.h = [a](double x, double) { return a * std::cosh(x / a); };
    f.hx = [a](double x, double) { return std::sinh(x / a); };
    f.hy = [](double, double) { return 0.0; };
    f.hxx = [a](double x, double) { return std::cosh(x / a) / a; };
    f.hxy = [](double, double) { return 0.0; };
    f.hyy = [](double, double) { return 0.0; };
    return f;
}

}  // namespace

TEST_SUITE("monge") {

TEST_CASE("monge charts reproduce the height-function metric") {
    const auto plane = monge::monge_chart(flat_field());
    CHECK(geometry::fundamental_forms(plane, {0.3, 0.3}).h.isApprox(Eigen::Matrix2d::Identity()));

    const auto cat = monge::monge_chart(catenary_field(1.0));
    const double x = 1.2;
    CHECK(geometry::fundamental_forms(cat, {x, 0.0}).h(0, 0) ==
          doctest::Approx(1.0 + std::sinh(x) * std::sinh(x)).epsilon(1e-13));

    const auto prod = monge::monge_chart(product_field());
    const auto h = geometry::fundamental_forms(prod, {1.0, 1.0}).h;
    CHECK(h(0, 0) == doctest::Approx(2.0));
    CHECK(h(0, 1) == doctest::Approx(1.0));
    CHECK(h(1, 1) == doctest::Approx(2.0));
}

TEST_CASE("curvatures from height functions") {
    const auto [k0, kg0] = monge::monge_curvatures(flat_field(), 0.4, -0.7);
    CHECK(k0 == 0.0);
    CHECK(kg0 == 0.0);

    const auto [kb, kgb] = monge::monge_curvatures(bowl_field(), 0.0, 0.0);
    CHECK(kb == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(kgb == doctest::Approx(1.0).epsilon(1e-14));

    // 1D profile: K = -H''/(1+H'^2)^(3/2), K_G = 0
    const auto f = catenary_field(1.0);
    const double x = 0.5;
    const auto [k1d, kg1d] = monge::monge_curvatures(f, x, 0.9);
    const double hx = std::sinh(x), hxx = std::cosh(x);
    CHECK(k1d == doctest::Approx(-hxx / std::pow(1.0 + hx * hx, 1.5)).epsilon(1e-13));
    CHECK(kg1d == doctest::Approx(0.0));
}

TEST_CASE("exact potential agrees with the chart pipeline") {
    CHECK(monge::monge_potential_exact(flat_field(), 1.0, 1.0) == 0.0);
    CHECK(monge::monge_potential_exact(catenary_field(1.0), 0.0, 0.0) ==
          doctest::Approx(-0.125).epsilon(1e-13));
    // bowl is umbilic at the origin
    CHECK(std::abs(monge::monge_potential_exact(bowl_field(), 0.0, 0.0)) < 1e-14);

    for (const auto& field : {catenary_field(1.0), product_field(), bowl_field()}) {
        const auto chart = monge::monge_chart(field);
        for (double x : {-1.1, -0.3, 0.4, 1.3}) {
            for (double y : {-0.9, 0.2, 1.0}) {
                const auto report = geometry::curvature_report(chart, {x, y});
                const auto [k, kg] = monge::monge_curvatures(field, x, y);
                const double v = monge::monge_potential_exact(field, x, y);
                CHECK(std::abs(k - report.total) <= 1e-8 * std::max(1.0, std::abs(k)));
                CHECK(std::abs(kg - report.gaussian) <= 1e-8 * std::max(1.0, std::abs(kg)));
                CHECK(std::abs(v - report.vs_coeff) <= 1e-8 * std::max(1.0, std::abs(v)));
            }
        }
    }
}

TEST_CASE("small-slope potential") {
    CHECK(monge::monge_potential_small_slope(bowl_field(), 0.7, -0.9) == 0.0);

    HeightField half_square;  // H = x^2/2
    half_square.domain = {-2, 2, -2, 2};
    half_square.h = [](double x, double) { return 0.5 * x * x; };
    half_square.hx = [](double x, double) { return x; };
    half_square.hy = [](double, double) { return 0.0; };
    half_square.hxx = [](double, double) { return 1.0; };
    half_square.hxy = [](double, double) { return 0.0; };
    half_square.hyy = [](double, double) { return 0.0; };
    CHECK(monge::monge_potential_small_slope(half_square, 1.4, 0.0) ==
          doctest::Approx(-0.125).epsilon(1e-15));

    // H = eps * x y  ->  -eps^2/2
    const double eps = 0.37;
    HeightField tilted;
    tilted.domain = {-2, 2, -2, 2};
    tilted.h = [eps](double x, double y) { return eps * x * y; };
    tilted.hx = [eps](double, double y) { return eps * y; };
    tilted.hy = [eps](double x, double) { return eps * x; };
    tilted.hxx = [](double, double) { return 0.0; };
    tilted.hxy = [eps](double, double) { return eps; };
    tilted.hyy = [](double, double) { return 0.0; };
    CHECK(monge::monge_potential_small_slope(tilted, 0.2, 0.8) ==
          doctest::Approx(-0.5 * eps * eps).epsilon(1e-15));
}

TEST_CASE("small-slope error shrinks like the amplitude squared") {
    auto field = [](double eps) {
        HeightField f;
        f.domain = {-2, 2, -2, 2};
        f.h = [eps](double x, double y) { return eps * std::sin(x) * std::cos(y); };
        f.hx = [eps](double x, double y) { return eps * std::cos(x) * std::cos(y); };
        f.hy = [eps](double x, double y) { return -eps * std::sin(x) * std::sin(y); };
        f.hxx = [eps](double x, double y) { return -eps * std::sin(x) * std::cos(y); };
        f.hxy = [eps](double x, double y) { return -eps * std::cos(x) * std::sin(y); };
        f.hyy = [eps](double x, double y) { return -eps * std::sin(x) * std::cos(y); };
        return f;
    };
    auto rel_err = [&](double eps, double x, double y) {
        const double exact = monge::monge_potential_exact(field(eps), x, y);
        const double approx = monge::monge_potential_small_slope(field(eps), x, y);
        REQUIRE(exact != 0.0);
        return std::abs(approx - exact) / std::abs(exact);
    };
    for (const auto& pt : {std::pair{0.7, 0.3}, {1.1, -0.4}, {0.4, 1.2}}) {
        const double ratio = rel_err(0.1, pt.first, pt.second) / rel_err(0.05, pt.first, pt.second);
        CHECK(ratio > 3.5);
        CHECK(ratio < 4.5);
    }
}

TEST_CASE("metric determinant identity det h = 1 + |grad H|^2") {
    const auto f = catenary_field(1.3);
    const auto chart = monge::monge_chart(f);
    for (double x : {-1.0, 0.0, 0.8}) {
        for (double y : {-0.5, 0.6}) {
            const auto forms = geometry::fundamental_forms(chart, {x, y});
            const double hx = f.hx(x, y), hy = f.hy(x, y);
            CHECK(std::abs(forms.h.determinant() - (1.0 + hx * hx + hy * hy)) < 1e-12);
        }
    }
}

TEST_CASE("one-coordinate profiles") {
    const LineProfile cat{[](double x) { return std::cosh(x); },
                          [](double x) { return std::sinh(x); },
                          [](double x) { return std::cosh(x); }};
    CHECK(monge::monge_1d_potential(cat, 0.0, true) == doctest::Approx(-0.125).epsilon(1e-15));

    const LineProfile wave{[](double x) { return std::sin(x); },
                           [](double x) { return std::cos(x); },
                           [](double x) { return -std::sin(x); }};
    CHECK(monge::monge_1d_potential(wave, M_PI / 2.0, false) ==
          doctest::Approx(-0.125).epsilon(1e-12));

    const LineProfile line{[](double x) { return 3.0 * x; }, [](double) { return 3.0; },
                           [](double) { return 0.0; }};
    CHECK(monge::monge_1d_potential(line, 2.0, true) == 0.0);
    CHECK(monge::monge_1d_potential(line, 2.0, false) == 0.0);
}

TEST_CASE("radial profiles and polar curvatures") {
    const RadialProfile parab([](double r) { return 0.5 * r * r; }, [](double r) { return r; },
                              [](double) { return 1.0; }, 5.0);
    const auto [kr, kt] = monge::polar_principal_curvatures(parab, 1.0);
    CHECK(kr == doctest::Approx(-1.0 / std::pow(2.0, 1.5)).epsilon(1e-14));
    CHECK(kt == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));

    const RadialProfile flat([](double) { return 1.0; }, [](double) { return 0.0; },
                             [](double) { return 0.0; }, 5.0);
    const auto [fr, ft] = monge::polar_principal_curvatures(flat, 2.0);
    CHECK(fr == 0.0);
    CHECK(ft == 0.0);

    // spherical cap is umbilic
    const double R = 1.0;
    const RadialProfile cap([R](double r) { return R - std::sqrt(R * R - r * r); },
                            [R](double r) { return r / std::sqrt(R * R - r * r); },
                            [R](double r) { return R * R / std::pow(R * R - r * r, 1.5); }, 0.9);
    const auto [cr, ct] = monge::polar_principal_curvatures(cap, 0.5);
    CHECK(cr == doctest::Approx(ct).epsilon(1e-12));

    CHECK_THROWS_AS(monge::polar_principal_curvatures(parab, 0.0), monge::AxisSingularity);

    // axis limit: both curvatures -> -H''(0)
    const auto [ar, at] = monge::polar_axis_curvatures(parab);
    CHECK(ar == doctest::Approx(-1.0));
    CHECK(at == doctest::Approx(-1.0));
}

TEST_CASE("radial profile rejects a kinked axis") {
    CHECK_THROWS_AS(RadialProfile([](double r) { return r; }, [](double) { return 1.0; },
                                  [](double) { return 0.0; }, 1.0),
                    monge::AxisSingularity);
    // divergent slope at the axis is rejected too
    CHECK_THROWS_AS(RadialProfile([](double r) { return std::log(r); },
                                  [](double r) { return 1.0 / r; },
                                  [](double r) { return -1.0 / (r * r); }, 4.0),
                    monge::AxisSingularity);
}

TEST_CASE("small-curvature radial potential") {
    const RadialProfile parab([](double r) { return 0.35 * r * r; },
                              [](double r) { return 0.7 * r; }, [](double) { return 0.7; }, 5.0);
    CHECK(monge::polar_potential_small(parab, 1.3) == doctest::Approx(0.0));

    const RadialProfile quartic([](double r) { return 0.25 * std::pow(r, 4); },
                                [](double r) { return r * r * r; },
                                [](double r) { return 3.0 * r * r; }, 5.0);
    CHECK(monge::polar_potential_small(quartic, 1.0) == doctest::Approx(-0.5).epsilon(1e-14));

    // H = ln(rho) restricted away from the axis (the closures flatten the
    // axis sample the smoothness check probes): H_rr - H_r/rho = -1/2 at rho=2
    const RadialProfile log_prof([](double r) { return r == 0.0 ? 0.0 : std::log(r); },
                                 [](double r) { return r == 0.0 ? 0.0 : 1.0 / r; },
                                 [](double r) { return r == 0.0 ? 0.0 : -1.0 / (r * r); }, 4.0);
    CHECK(monge::polar_potential_small(log_prof, 2.0) ==
          doctest::Approx(-1.0 / 32.0).epsilon(1e-14));

    CHECK_THROWS_AS(monge::polar_potential_small(parab, 0.0), monge::AxisSingularity);
}

TEST_CASE("polar and cartesian routes agree on a radially symmetric surface") {
    const double a = 1.4;
    const RadialProfile prof([a](double r) { return r * r / (2.0 * a); },
                             [a](double r) { return r / a; }, [a](double) { return 1.0 / a; },
                             5.0);
    HeightField cart;  // same surface as a function of (x, y)
    cart.domain = {-4, 4, -4, 4};
    cart.h = [a](double x, double y) { return (x * x + y * y) / (2.0 * a); };
    cart.hx = [a](double x, double) { return x / a; };
    cart.hy = [a](double, double y) { return y / a; };
    cart.hxx = [a](double, double) { return 1.0 / a; };
    cart.hxy = [](double, double) { return 0.0; };
    cart.hyy = [a](double, double) { return 1.0 / a; };

    const auto chart = monge::monge_chart(cart);
    for (double rho : {0.4, 1.0, 2.7}) {
        const auto [kr, kt] = monge::polar_principal_curvatures(prof, rho);
        const auto report = geometry::curvature_report(chart, {rho, 0.0});
        const double hi = std::max(kr, kt), lo = std::min(kr, kt);
        CHECK(std::abs(report.k1 - hi) <= 1e-8 * std::max(1.0, std::abs(hi)));
        CHECK(std::abs(report.k2 - lo) <= 1e-8 * std::max(1.0, std::abs(lo)));
    }
}

TEST_CASE("expression-backed height fields") {
    const auto field = catalog::height_field_from_expression(
        "a*cosh(x/a)", {{"a", 1.0}}, geometry::DomainRect{-2, 2, -2, 2});
    CHECK(field.h(0.0, 0.0) == doctest::Approx(1.0));
    CHECK(field.hx(1.0, 0.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-14));
    CHECK(field.hxx(1.0, 0.0) == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
    CHECK(field.hxy(1.0, 0.5) == doctest::Approx(0.0));

    const auto prof =
        catalog::radial_profile_from_expression("rho^2/(2*a)", {{"a", 2.0}}, 5.0);
    CHECK(prof.d1(1.0) == doctest::Approx(0.5));
    CHECK(prof.d2(1.0) == doctest::Approx(0.5));
}

}  // TEST_SUITE
