#include "surfq/checks.hpp"

#include <cmath>
#include <random>

#include "surfq/catalog.hpp"
#include "surfq/geometry.hpp"
#include "surfq/monge.hpp"
#include "surfq/spectral.hpp"

namespace surfq::checks {

namespace {

using geometry::SurfaceChart;
using geometry::SurfacePoint;

std::vector<SurfacePoint> interior_grid(const SurfaceChart& chart, int per_axis) {
    const auto& dom = chart.domain();
    std::vector<SurfacePoint> pts;
    pts.reserve(per_axis * per_axis);
    for (int i = 0; i < per_axis; ++i) {
        for (int j = 0; j < per_axis; ++j) {
            pts.push_back({dom.u1_min + dom.extent_u1() * (i + 0.5) / per_axis,
                           dom.u2_min + dom.extent_u2() * (j + 0.5) / per_axis});
        }
    }
    return pts;
}

SuiteResult weingarten_suite_impl(std::string name, bool analytic, double threshold,
                                  double k_scale) {
    SuiteResult res;
    res.name = std::move(name);
    res.threshold = threshold;
    for (const auto& chart : catalog::charts_for_checks()) {
        const SurfaceChart working = analytic ? chart : chart.without_analytic_derivatives();
        for (const auto& p : interior_grid(working, 10)) {
            const double r = geometry::weingarten_residual(working, p, k_scale);
            res.worst_residual = std::max(res.worst_residual, r);
            ++res.samples;
        }
    }
    res.pass = res.worst_residual <= res.threshold;
    return res;
}

}  // namespace

SuiteResult weingarten_analytic_suite(double k_scale) {
    return weingarten_suite_impl("weingarten-analytic", true, 1e-10, k_scale);
}

SuiteResult weingarten_fd_suite(double k_scale) {
    return weingarten_suite_impl("weingarten-fd", false, 1e-6, k_scale);
}

SuiteResult metric_determinant_suite() {
    SuiteResult res;
    res.name = "metric-determinant";
    res.threshold = 1e-8;

    const auto charts = catalog::charts_for_checks();
    std::mt19937 rng(20240915u);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_real_distribution<double> u3_dist(-0.1, 0.1);

    for (int trial = 0; trial < 100; ++trial) {
        const auto& chart = charts[trial % charts.size()];
        const auto& dom = chart.domain();
        // keep away from the very edge
        const SurfacePoint p{dom.u1_min + dom.extent_u1() * (0.1 + 0.8 * uni(rng)),
                             dom.u2_min + dom.extent_u2() * (0.1 + 0.8 * uni(rng))};
        const double u3 = u3_dist(rng);

        const auto forms = geometry::fundamental_forms(chart, p);
        const auto report = geometry::curvature_report(chart, p);
        const double h_det = forms.h.determinant();

        // direct expansion: g_ab = h_ab + 2 u3 k_a^c h_cb + u3^2 k_a^c k_b^d h_cd
        Eigen::Matrix2d g;
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                double linear = 0.0;
                double quad = 0.0;
                for (int c = 0; c < 2; ++c) {
                    linear += forms.k_mixed(a, c) * forms.h(c, b);
                    for (int d = 0; d < 2; ++d) {
                        quad += forms.k_mixed(a, c) * forms.k_mixed(b, d) * forms.h(c, d);
                    }
                }
                g(a, b) = forms.h(a, b) + 2.0 * u3 * linear + u3 * u3 * quad;
            }
        }
        const double direct = g.determinant();
        const double factored = geometry::ambient_metric_det(report, h_det, u3);
        const double rel = std::abs(direct - factored) / std::max({std::abs(direct), std::abs(factored), 1e-300});
        res.worst_residual = std::max(res.worst_residual, rel);
        ++res.samples;
    }
    res.pass = res.worst_residual <= res.threshold;
    return res;
}

namespace {

std::vector<std::pair<std::string, monge::HeightField>> pipeline_fields() {
    using monge::HeightField;
    std::vector<std::pair<std::string, HeightField>> fields;

    HeightField catenary;
    catenary.domain = {-1.5, 1.5, -1.5, 1.5};
    catenary.h = [](double x, double) { return std::cosh(x); };
    catenary.hx = [](double x, double) { return std::sinh(x); };
    catenary.hy = [](double, double) { return 0.0; };
    catenary.hxx = [](double x, double) { return std::cosh(x); };
    catenary.hxy = [](double, double) { return 0.0; };
    catenary.hyy = [](double, double) { return 0.0; };
    fields.emplace_back("catenary", catenary);

    HeightField wave;
    wave.domain = {-1.5, 1.5, -1.5, 1.5};
    wave.h = [](double x, double y) { return 0.4 * std::sin(x) * std::cos(y); };
    wave.hx = [](double x, double y) { return 0.4 * std::cos(x) * std::cos(y); };
    wave.hy = [](double x, double y) { return -0.4 * std::sin(x) * std::sin(y); };
    wave.hxx = [](double x, double y) { return -0.4 * std::sin(x) * std::cos(y); };
    wave.hxy = [](double x, double y) { return -0.4 * std::cos(x) * std::sin(y); };
    wave.hyy = [](double x, double y) { return -0.4 * std::sin(x) * std::cos(y); };
    fields.emplace_back("wave", wave);

    HeightField saddle;
    saddle.domain = {-1.5, 1.5, -1.5, 1.5};
    saddle.h = [](double x, double y) { return 0.3 * x * y; };
    saddle.hx = [](double, double y) { return 0.3 * y; };
    saddle.hy = [](double x, double) { return 0.3 * x; };
    saddle.hxx = [](double, double) { return 0.0; };
    saddle.hxy = [](double, double) { return 0.3; };
    saddle.hyy = [](double, double) { return 0.0; };
    fields.emplace_back("saddle", saddle);

    HeightField bowl;
    bowl.domain = {-1.5, 1.5, -1.5, 1.5};
    bowl.h = [](double x, double y) { return 0.5 * (x * x + y * y); };
    bowl.hx = [](double x, double) { return x; };
    bowl.hy = [](double, double y) { return y; };
    bowl.hxx = [](double, double) { return 1.0; };
    bowl.hxy = [](double, double) { return 0.0; };
    bowl.hyy = [](double, double) { return 1.0; };
    fields.emplace_back("bowl", bowl);

    return fields;
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

SuiteResult pipeline_agreement_suite() {
    SuiteResult res;
    res.name = "monge-pipeline-agreement";
    res.threshold = 1e-8;

    for (const auto& [name, field] : pipeline_fields()) {
        const auto chart = monge::monge_chart(field, name);
        for (const auto& p : interior_grid(chart, 8)) {
            const auto report = geometry::curvature_report(chart, p);
            const auto [mk, mkg] = monge::monge_curvatures(field, p.u1, p.u2);
            const double mv = monge::monge_potential_exact(field, p.u1, p.u2);
            res.worst_residual = std::max(res.worst_residual, rel_diff(mk, report.total));
            res.worst_residual = std::max(res.worst_residual, rel_diff(mkg, report.gaussian));
            res.worst_residual = std::max(res.worst_residual, rel_diff(mv, report.vs_coeff));
            ++res.samples;
        }
    }
    res.pass = res.worst_residual <= res.threshold;
    return res;
}

SuiteResult small_slope_suite() {
    SuiteResult res;
    res.name = "small-slope-convergence";
    res.threshold = 0.5;  // ratio must land in [3.5, 4.5]

    auto scaled_field = [](double eps) {
        monge::HeightField f;
        f.domain = {-2.0, 2.0, -2.0, 2.0};
        f.h = [eps](double x, double y) { return eps * std::sin(x) * std::cos(y); };
        f.hx = [eps](double x, double y) { return eps * std::cos(x) * std::cos(y); };
        f.hy = [eps](double x, double y) { return -eps * std::sin(x) * std::sin(y); };
        f.hxx = [eps](double x, double y) { return -eps * std::sin(x) * std::cos(y); };
        f.hxy = [eps](double x, double y) { return -eps * std::cos(x) * std::sin(y); };
        f.hyy = [eps](double x, double y) { return -eps * std::sin(x) * std::cos(y); };
        return f;
    };

    const double points[][2] = {{0.7, 0.3}, {1.1, -0.4}, {0.4, 1.2}};
    const double eps = 0.1;
    for (const auto& pt : points) {
        auto rel_err = [&](double amplitude) {
            const auto f = scaled_field(amplitude);
            const double exact = monge::monge_potential_exact(f, pt[0], pt[1]);
            const double approx = monge::monge_potential_small_slope(f, pt[0], pt[1]);
            return std::abs(approx - exact) / std::abs(exact);
        };
        const double ratio = rel_err(eps) / rel_err(0.5 * eps);
        res.worst_residual = std::max(res.worst_residual, std::abs(ratio - 4.0));
        ++res.samples;
    }
    res.pass = res.worst_residual <= res.threshold;
    return res;
}

namespace {

struct TestSpectra {
    spectral::TridiagonalPair ab;
    std::vector<spectral::Eigenpair> pairs;
};

std::vector<TestSpectra> solver_fixtures() {
    std::vector<TestSpectra> out;

    spectral::SturmLiouvilleProblem box;
    box.name = "box";
    box.p = [](double) { return 1.0; };
    box.q = [](double) { return 0.0; };
    box.w = [](double) { return 1.0; };
    box.x_min = 0.0;
    box.x_max = 1.0;
    const auto box_grid = spectral::make_grid(box, 400);
    TestSpectra bx;
    bx.ab = spectral::discretize(box, box_grid);
    bx.pairs = spectral::lowest_eigenpairs(bx.ab, 5);
    out.push_back(std::move(bx));

    spectral::SturmLiouvilleProblem osc;
    osc.name = "harmonic";
    osc.p = [](double) { return 1.0; };
    osc.q = [](double x) { return x * x; };
    osc.w = [](double) { return 1.0; };
    osc.x_min = -12.0;
    osc.x_max = 12.0;
    const auto osc_grid = spectral::make_grid(osc, 2400);
    TestSpectra ho;
    ho.ab = spectral::discretize(osc, osc_grid);
    ho.pairs = spectral::lowest_eigenpairs(ho.ab, 5);
    out.push_back(std::move(ho));

    return out;
}

}  // namespace

SuiteResult orthogonality_suite() {
    SuiteResult res;
    res.name = "generalized-orthogonality";
    res.threshold = 1e-8;
    for (const auto& fx : solver_fixtures()) {
        const int m = static_cast<int>(fx.pairs.size());
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                double dot = 0.0;
                for (std::size_t k = 0; k < fx.ab.b.size(); ++k) {
                    dot += fx.pairs[i].vector[k] * fx.ab.b[k] * fx.pairs[j].vector[k];
                }
                res.worst_residual = std::max(res.worst_residual, std::abs(dot));
                ++res.samples;
            }
        }
    }
    res.pass = res.worst_residual <= res.threshold;
    return res;
}

SuiteResult oscillation_suite() {
    SuiteResult res;
    res.name = "oscillation-node-count";
    res.threshold = 0.5;
    for (const auto& fx : solver_fixtures()) {
        for (std::size_t i = 0; i < fx.pairs.size(); ++i) {
            const int nodes = spectral::node_count(fx.pairs[i].vector);
            res.worst_residual =
                std::max(res.worst_residual, std::abs(nodes - static_cast<int>(i)) * 1.0);
            ++res.samples;
        }
    }
    res.pass = res.worst_residual <= res.threshold;
    return res;
}

std::vector<SuiteResult> run_all() {
    return {weingarten_analytic_suite(), weingarten_fd_suite(),    metric_determinant_suite(),
            pipeline_agreement_suite(),  small_slope_suite(),      orthogonality_suite(),
            oscillation_suite()};
}

}  // namespace surfq::checks
