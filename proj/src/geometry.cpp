#include "surfq/geometry.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace surfq::geometry {

namespace {
constexpr double kFdScale = 1e-5;
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

SurfaceChart::SurfaceChart(std::string name, DomainRect domain, MapFn map)
    : name_(std::move(name)), domain_(domain), map_(std::move(map)) {
    fd_u1_ = kFdScale * domain_.extent_u1();
    fd_u2_ = kFdScale * domain_.extent_u2();
}

SurfaceChart::SurfaceChart(std::string name, DomainRect domain, MapFn map, D1Fn d1, D2Fn d2)
    : SurfaceChart(std::move(name), domain, std::move(map)) {
    d1_ = std::move(d1);
    d2_ = std::move(d2);
}

SurfaceChart SurfaceChart::without_analytic_derivatives() const {
    return SurfaceChart(name_ + "-fd", domain_, map_);
}

void SurfaceChart::require_inside(const SurfacePoint& p) const {
    if (!domain_.contains(p)) {
        throw OutsideDomain("point (" + std::to_string(p.u1) + ", " + std::to_string(p.u2) +
                            ") outside domain of chart '" + name_ + "'");
    }
}

SurfaceChart::FirstDerivatives SurfaceChart::first_derivatives(const SurfacePoint& p) const {
    if (d1_) return d1_(p.u1, p.u2);
    FirstDerivatives d;
    d.e1 = (map_(p.u1 + fd_u1_, p.u2) - map_(p.u1 - fd_u1_, p.u2)) / (2.0 * fd_u1_);
    d.e2 = (map_(p.u1, p.u2 + fd_u2_) - map_(p.u1, p.u2 - fd_u2_)) / (2.0 * fd_u2_);
    return d;
}

SurfaceChart::SecondDerivatives SurfaceChart::second_derivatives(const SurfacePoint& p) const {
    if (d2_) return d2_(p.u1, p.u2);
    // Nested central stencils over first_derivatives, which itself may be
    // analytic or finite-difference.
    auto d1_at = [&](double u1, double u2) { return first_derivatives({u1, u2}); };
    const auto du1p = d1_at(p.u1 + fd_u1_, p.u2);
    const auto du1m = d1_at(p.u1 - fd_u1_, p.u2);
    const auto du2p = d1_at(p.u1, p.u2 + fd_u2_);
    const auto du2m = d1_at(p.u1, p.u2 - fd_u2_);
    SecondDerivatives d;
    d.r11 = (du1p.e1 - du1m.e1) / (2.0 * fd_u1_);
    d.r22 = (du2p.e2 - du2m.e2) / (2.0 * fd_u2_);
    // symmetrized mixed partial
    d.r12 = 0.5 * ((du2p.e1 - du2m.e1) / (2.0 * fd_u2_) + (du1p.e2 - du1m.e2) / (2.0 * fd_u1_));
    return d;
}

Frame evaluate_frame(const SurfaceChart& chart, const SurfacePoint& p) {
    chart.require_inside(p);
    const auto d = chart.first_derivatives(p);
    const Eigen::Vector3d cross = d.e1.cross(d.e2);
    const double cn = cross.norm();
    if (cn < 1e-12 * d.e1.norm() * d.e2.norm() || cn == 0.0) {
        throw DegenerateChart("tangent vectors collinear at (" + std::to_string(p.u1) + ", " +
                              std::to_string(p.u2) + ") on chart '" + chart.name() + "'");
    }
    return Frame{d.e1, d.e2, cross / cn};
}

FundamentalForms fundamental_forms(const SurfaceChart& chart, const SurfacePoint& p) {
    const Frame f = evaluate_frame(chart, p);
    const auto s = chart.second_derivatives(p);

    FundamentalForms forms;
    const double h11 = f.e1.dot(f.e1);
    const double h12 = f.e1.dot(f.e2);
    const double h22 = f.e2.dot(f.e2);
    forms.h << h11, h12, h12, h22;

    const double k11 = -f.n.dot(s.r11);
    const double k12 = -f.n.dot(s.r12);
    const double k22 = -f.n.dot(s.r22);
    forms.k << k11, k12, k12, k22;

    // k_a^b = h^{bc} k_ac  ->  row a of K * H^{-1}
    forms.k_mixed = forms.k * forms.h.inverse();
    return forms;
}

std::pair<double, double> principal_curvatures(const FundamentalForms& forms) {
    const double tr = forms.k_mixed.trace();
    const double det = forms.k_mixed.determinant();
    double disc = tr * tr - 4.0 * det;
    // below the cancellation floor the split is roundoff noise: umbilic
    if (disc <= 16.0 * kEps * (tr * tr + 4.0 * std::abs(det))) disc = 0.0;
    const double s = std::sqrt(disc);
    return {0.5 * (tr + s), 0.5 * (tr - s)};
}

double geometric_potential(double k1, double k2) {
    const double d = k1 - k2;
    return -0.125 * d * d;
}

CurvatureReport curvature_report(const SurfaceChart& chart, const SurfacePoint& p) {
    const auto forms = fundamental_forms(chart, p);
    const auto [k1, k2] = principal_curvatures(forms);
    CurvatureReport r;
    r.k1 = k1;
    r.k2 = k2;
    r.total = k1 + k2;
    r.gaussian = k1 * k2;
    r.vs_coeff = geometric_potential(k1, k2);
    return r;
}

double ambient_metric_det(const CurvatureReport& report, double h_det, double u3) {
    const double factor = 1.0 + u3 * report.total + u3 * u3 * report.gaussian;
    if (factor <= 0.0) {
        throw FoldedLayer("layer factor " + std::to_string(factor) + " at u3 = " +
                          std::to_string(u3));
    }
    return h_det * factor * factor;
}

namespace {

// d_a n for both derivative flavours.  With exact second derivatives the
// normal derivative follows from d_a(e1 x e2) projected off n; otherwise a
// central difference of the normalized cross product.
std::array<Eigen::Vector3d, 2> normal_derivatives(const SurfaceChart& chart,
                                                  const SurfacePoint& p, const Frame& f) {
    if (chart.has_analytic_derivatives()) {
        const auto s = chart.second_derivatives(p);
        const Eigen::Vector3d w = f.e1.cross(f.e2);
        const double wn = w.norm();
        const Eigen::Vector3d c1 = s.r11.cross(f.e2) + f.e1.cross(s.r12);
        const Eigen::Vector3d c2 = s.r12.cross(f.e2) + f.e1.cross(s.r22);
        return {(c1 - f.n * f.n.dot(c1)) / wn, (c2 - f.n * f.n.dot(c2)) / wn};
    }
    auto normal_at = [&](double u1, double u2) {
        const auto d = chart.first_derivatives({u1, u2});
        return d.e1.cross(d.e2).normalized();
    };
    const double h1 = chart.fd_step_u1();
    const double h2 = chart.fd_step_u2();
    return {(normal_at(p.u1 + h1, p.u2) - normal_at(p.u1 - h1, p.u2)) / (2.0 * h1),
            (normal_at(p.u1, p.u2 + h2) - normal_at(p.u1, p.u2 - h2)) / (2.0 * h2)};
}

}  // namespace

double weingarten_residual(const SurfaceChart& chart, const SurfacePoint& p, double k_scale) {
    const Frame f = evaluate_frame(chart, p);
    const auto forms = fundamental_forms(chart, p);
    const auto dn = normal_derivatives(chart, p, f);

    double worst = 0.0;
    for (int a = 0; a < 2; ++a) {
        const Eigen::Vector3d predicted =
            k_scale * (forms.k_mixed(a, 0) * f.e1 + forms.k_mixed(a, 1) * f.e2);
        const double res = (dn[a] - predicted).norm() / (predicted.norm() + kEps);
        worst = std::max(worst, res);
    }
    return worst;
}

double derivative_consistency_residual(const SurfaceChart& chart, int samples_per_axis) {
    if (!chart.has_analytic_derivatives()) return 0.0;
    const auto& dom = chart.domain();
    const SurfaceChart fd = chart.without_analytic_derivatives();
    double worst = 0.0;
    for (int i = 0; i < samples_per_axis; ++i) {
        for (int j = 0; j < samples_per_axis; ++j) {
            SurfacePoint p{dom.u1_min + dom.extent_u1() * (i + 0.5) / samples_per_axis,
                           dom.u2_min + dom.extent_u2() * (j + 0.5) / samples_per_axis};
            const auto exact = chart.first_derivatives(p);
            const auto approx = fd.first_derivatives(p);
            const double scale = exact.e1.norm() + exact.e2.norm() + kEps;
            worst = std::max(worst, (exact.e1 - approx.e1).norm() / scale);
            worst = std::max(worst, (exact.e2 - approx.e2).norm() / scale);
        }
    }
    return worst;
}

}  // namespace surfq::geometry
