#include "surfq/monge.hpp"

#include <cmath>

namespace surfq::monge {

RadialProfile::RadialProfile(ScalarFn1 h_, ScalarFn1 d1_, ScalarFn1 d2_, double rho_max_)
    : h(std::move(h_)), d1(std::move(d1_)), d2(std::move(d2_)), rho_max(rho_max_) {
    const double slope0 = d1(0.0);
    if (!(std::abs(slope0) <= 1e-8)) {
        throw AxisSingularity("radial profile has H'(0) = " + std::to_string(slope0) +
                              ", axis is not smooth");
    }
}

geometry::SurfaceChart monge_chart(const HeightField& field, std::string name) {
    const HeightField f = field;  // capture by value, charts are immutable
    auto map = [f](double x, double y) { return Eigen::Vector3d(x, y, f.h(x, y)); };
    auto d1 = [f](double x, double y) {
        geometry::SurfaceChart::FirstDerivatives d;
        d.e1 = Eigen::Vector3d(1.0, 0.0, f.hx(x, y));
        d.e2 = Eigen::Vector3d(0.0, 1.0, f.hy(x, y));
        return d;
    };
    auto d2 = [f](double x, double y) {
        geometry::SurfaceChart::SecondDerivatives d;
        d.r11 = Eigen::Vector3d(0.0, 0.0, f.hxx(x, y));
        d.r12 = Eigen::Vector3d(0.0, 0.0, f.hxy(x, y));
        d.r22 = Eigen::Vector3d(0.0, 0.0, f.hyy(x, y));
        return d;
    };
    return geometry::SurfaceChart(std::move(name), field.domain, map, d1, d2);
}

std::pair<double, double> monge_curvatures(const HeightField& field, double x, double y) {
    const double hx = field.hx(x, y);
    const double hy = field.hy(x, y);
    const double hxx = field.hxx(x, y);
    const double hxy = field.hxy(x, y);
    const double hyy = field.hyy(x, y);
    const double g = 1.0 + hx * hx + hy * hy;
    const double total =
        -(hxx * (1.0 + hy * hy) + hyy * (1.0 + hx * hx) - 2.0 * hx * hy * hxy) / std::pow(g, 1.5);
    const double gaussian = (hxx * hyy - hxy * hxy) / (g * g);
    return {total, gaussian};
}

double monge_potential_exact(const HeightField& field, double x, double y) {
    const auto [total, gaussian] = monge_curvatures(field, x, y);
    // K^2 - 4 K_G = (k1 - k2)^2
    return -0.125 * (total * total - 4.0 * gaussian);
}

double monge_potential_small_slope(const HeightField& field, double x, double y) {
    const double hxx = field.hxx(x, y);
    const double hxy = field.hxy(x, y);
    const double hyy = field.hyy(x, y);
    const double d = hxx - hyy;
    return -0.125 * (d * d + 4.0 * hxy * hxy);
}

double monge_1d_potential(const LineProfile& profile, double x, bool exact) {
    const double d2 = profile.d2(x);
    if (!exact) return -0.125 * d2 * d2;
    const double d1 = profile.d1(x);
    const double g = 1.0 + d1 * d1;
    return -0.125 * d2 * d2 / (g * g * g);
}

std::pair<double, double> polar_principal_curvatures(const RadialProfile& profile, double rho) {
    if (rho <= 0.0) {
        throw AxisSingularity("polar curvatures need rho > 0; use polar_axis_curvatures");
    }
    const double d1 = profile.d1(rho);
    const double d2 = profile.d2(rho);
    const double g = 1.0 + d1 * d1;
    const double k_rho = -d2 / std::pow(g, 1.5);
    const double k_theta = -d1 / (rho * std::sqrt(g));
    return {k_rho, k_theta};
}

std::pair<double, double> polar_axis_curvatures(const RadialProfile& profile) {
    const double d2 = profile.d2(0.0);
    return {-d2, -d2};
}

double polar_potential_small(const RadialProfile& profile, double rho) {
    if (rho <= 0.0) {
        throw AxisSingularity("polar potential needs rho > 0");
    }
    const double diff = profile.d2(rho) - profile.d1(rho) / rho;
    return -0.125 * diff * diff;
}

geometry::SurfaceChart polar_chart(const RadialProfile& profile, std::string name,
                                   double rho_min) {
    const RadialProfile f = profile;
    geometry::DomainRect dom{rho_min, f.rho_max, 0.0, 2.0 * M_PI};
    auto map = [f](double rho, double theta) {
        return Eigen::Vector3d(rho * std::cos(theta), rho * std::sin(theta), f.h(rho));
    };
    auto d1 = [f](double rho, double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        geometry::SurfaceChart::FirstDerivatives d;
        d.e1 = Eigen::Vector3d(c, s, f.d1(rho));
        d.e2 = Eigen::Vector3d(-rho * s, rho * c, 0.0);
        return d;
    };
    auto d2 = [f](double rho, double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        geometry::SurfaceChart::SecondDerivatives d;
        d.r11 = Eigen::Vector3d(0.0, 0.0, f.d2(rho));
        d.r12 = Eigen::Vector3d(-s, c, 0.0);
        d.r22 = Eigen::Vector3d(-rho * c, -rho * s, 0.0);
        return d;
    };
    return geometry::SurfaceChart(std::move(name), dom, map, d1, d2);
}

}  // namespace surfq::monge
