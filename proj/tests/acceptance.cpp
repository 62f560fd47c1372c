// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "surfq/catalog.hpp"
#include "surfq/checks.hpp"
#include "surfq/geometry.hpp"
#include "surfq/problems.hpp"
#include "surfq/spectral.hpp"

using namespace surfq;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    // Shared solves, reused across criteria.
    spectral::BoundState catenary_state;
    spectral::BoundState paraboloid_state;

    criteria.push_back({"1 catenary ground state -0.02892460 (1e-4, residual 1e-7, <= 10 s)",
                        [&](std::string& detail) {
                            const auto start = std::chrono::steady_clock::now();
                            const auto prob = problems::build_catenary(1.0, 80.0);
                            catenary_state = spectral::refine_to_convergence(
                                prob, {8000, 16000, 32000}, 1e-7, 0);
                            const double elapsed = seconds_since(start);
                            const double err = std::abs(catenary_state.energy - (-0.02892460));
                            detail = "E0 = " + fmt(catenary_state.energy) +
                                     ", |err| = " + fmt(err) +
                                     ", residual = " + fmt(catenary_state.residual) +
                                     ", " + fmt(elapsed) + " s";
                            return catenary_state.converged && err <= 1e-4 &&
                                   catenary_state.residual <= 1e-7 && elapsed <= 10.0;
                        }});

    criteria.push_back({"2 catenary uniqueness: count_negative = 1, node_count = 0",
                        [&](std::string& detail) {
                            const auto prob = problems::build_catenary(1.0, 80.0);
                            const auto grid = spectral::make_grid(prob, 32000);
                            const int count =
                                spectral::count_negative(spectral::discretize(prob, grid));
                            detail = "count_negative = " + std::to_string(count) +
                                     ", node_count = " + std::to_string(catenary_state.node_count);
                            return count == 1 && catenary_state.node_count == 0;
                        }});

    criteria.push_back({"3 catenary normalization in [6.73, 6.75] with X(0) = 1",
                        [&](std::string& detail) {
                            const double value = problems::normalization_constant(
                                catenary_state, problems::catenary_dq_convention());
                            const double full = problems::normalization_constant(
                                catenary_state, problems::catenary_dq_full_convention());
                            detail = "window |q|<=10: " + fmt(value) +
                                     " (full domain: " + fmt(full) + ")";
                            return value >= 6.73 && value <= 6.75;
                        }});

    criteria.push_back({"4 paraboloid ground state -0.0113978 (1e-4, residual 1e-7, <= 10 s)",
                        [&](std::string& detail) {
                            const auto start = std::chrono::steady_clock::now();
                            const auto prob = problems::build_paraboloid(1.0, 0, 25.0);
                            paraboloid_state = spectral::refine_to_convergence(
                                prob, {2000, 4000, 8000}, 1e-7, 0);
                            const double elapsed = seconds_since(start);
                            const double err = std::abs(paraboloid_state.energy - (-0.0113978));
                            detail = "E0 = " + fmt(paraboloid_state.energy) +
                                     ", |err| = " + fmt(err) +
                                     ", residual = " + fmt(paraboloid_state.residual) +
                                     ", " + fmt(elapsed) + " s";
                            return paraboloid_state.converged && err <= 1e-4 &&
                                   paraboloid_state.residual <= 1e-7 && elapsed <= 10.0;
                        }});

    criteria.push_back({"5 paraboloid l = 1, 2: no negative eigenvalues",
                        [&](std::string& detail) {
                            std::string counts;
                            bool ok = true;
                            for (int l : {1, 2}) {
                                const auto prob = problems::build_paraboloid(1.0, l, 25.0);
                                const auto grid = spectral::make_grid(prob, 8000);
                                const int count =
                                    spectral::count_negative(spectral::discretize(prob, grid));
                                counts += "l=" + std::to_string(l) + ": " +
                                          std::to_string(count) + "  ";
                                ok = ok && count == 0;
                            }
                            detail = counts;
                            return ok;
                        }});

    criteria.push_back({"6 decay constant within 5% of sqrt|E|",
                        [&](std::string& detail) {
                            const auto fit =
                                problems::decay_prefactor_check(paraboloid_state, 1.0);
                            const double kappa = std::sqrt(-paraboloid_state.energy);
                            const double rel = std::abs(fit.constant - kappa) / kappa;
                            detail = "fitted " + fmt(fit.constant) + " vs sqrt|E| = " +
                                     fmt(kappa) + ", rel err = " + fmt(rel);
                            return rel <= 0.05;
                        }});

    criteria.push_back({"7 normal modes nu^2 pi^2 / eps^2 to 1e-12 relative",
                        [&](std::string& detail) {
                            double worst = 0.0;
                            for (double eps : {0.5, 1.0, 2.0}) {
                                for (int nu = 1; nu <= 5; ++nu) {
                                    const auto mode = problems::normal_mode(eps, nu);
                                    const double expect = nu * nu * M_PI * M_PI / (eps * eps);
                                    worst = std::max(worst,
                                                     std::abs(mode.energy - expect) / expect);
                                }
                            }
                            detail = "worst relative error = " + fmt(worst);
                            return worst <= 1e-12;
                        }});

    criteria.push_back(
        {"8 geometry oracle: cylinder -1/(8R^2), sphere umbilic",
         [&](std::string& detail) {
             double worst_analytic = 0.0, worst_fd = 0.0, worst_sphere = 0.0;
             for (double R : {0.5, 1.0, 2.0}) {
                 const auto chart =
                     catalog::build_surface({"cylinder", {{"R", R}}, ""}).chart;
                 const auto fd_chart = chart.without_analytic_derivatives();
                 const double expect = -1.0 / (8.0 * R * R);
                 for (double th : {0.8, 2.0, 4.4}) {
                     for (double z : {-2.0, 1.0}) {
                         const auto a = geometry::curvature_report(chart, {th, z});
                         const auto f = geometry::curvature_report(fd_chart, {th, z});
                         worst_analytic = std::max(
                             worst_analytic, std::abs(a.vs_coeff - expect) / std::abs(expect));
                         worst_fd = std::max(worst_fd,
                                             std::abs(f.vs_coeff - expect) / std::abs(expect));
                     }
                 }
             }
             const auto sphere = catalog::build_surface({"sphere", {{"R", 1.0}}, ""}).chart;
             const auto sphere_fd = sphere.without_analytic_derivatives();
             for (double th : {0.7, 1.6, 2.4}) {
                 for (double ph : {0.3, 3.0, 5.5}) {
                     worst_sphere = std::max(
                         worst_sphere,
                         std::abs(geometry::curvature_report(sphere, {th, ph}).vs_coeff));
                     worst_sphere = std::max(
                         worst_sphere,
                         std::abs(geometry::curvature_report(sphere_fd, {th, ph}).vs_coeff));
                 }
             }
             detail = "cylinder analytic " + fmt(worst_analytic) + ", fd " + fmt(worst_fd) +
                      "; sphere |vs| " + fmt(worst_sphere);
             return worst_analytic <= 1e-8 && worst_fd <= 1e-6 && worst_sphere <= 1e-10;
         }});

    criteria.push_back({"9 property suites all pass (<= 60 s)",
                        [&](std::string& detail) {
                            const auto start = std::chrono::steady_clock::now();
                            const auto results = checks::run_all();
                            const double elapsed = seconds_since(start);
                            bool ok = true;
                            std::string failing;
                            for (const auto& r : results) {
                                if (!r.pass) {
                                    ok = false;
                                    failing += r.name + " ";
                                }
                            }
                            detail = std::to_string(results.size()) + " suites, " +
                                     fmt(elapsed) + " s" +
                                     (failing.empty() ? "" : ", failing: " + failing);
                            return ok && elapsed <= 60.0;
                        }});

    criteria.push_back(
        {"10 scale covariance: catenary a-free, paraboloid a^2 E constant (1e-6)",
         [&](std::string& detail) {
             const std::vector<int> ladder = {1000, 2000, 4000};
             const auto c1 = spectral::refine_to_convergence(problems::build_catenary(1.0),
                                                             ladder, 1e-6, 0);
             const auto c2 = spectral::refine_to_convergence(problems::build_catenary(2.0),
                                                             ladder, 1e-6, 0);
             const bool catenary_ok = c1.energy == c2.energy;

             std::vector<double> scaled;
             for (double a : {0.5, 1.0, 2.0}) {
                 const auto st = spectral::refine_to_convergence(
                     problems::build_paraboloid(a, 0), ladder, 1e-6, 0);
                 scaled.push_back(a * a * st.energy);
             }
             double worst = 0.0;
             for (double v : scaled) {
                 worst = std::max(worst, std::abs(v - scaled[0]) / std::abs(scaled[0]));
             }
             detail = "catenary E(1) " + std::string(catenary_ok ? "==" : "!=") +
                      " E(2); paraboloid spread = " + fmt(worst);
             return catenary_ok && worst <= 1e-6;
         }});

    criteria.push_back(
        {"11 paraboloid normalization: one measure within 0.5% of 27.268",
         [&](std::string& detail) {
             const double rho2 = problems::normalization_constant(
                 paraboloid_state, problems::paraboloid_rho2_convention());
             const double surf = problems::normalization_constant(
                 paraboloid_state, problems::paraboloid_surface_convention(1.0));
             const double rel_rho2 = std::abs(rho2 - 27.268) / 27.268;
             const double rel_surf = std::abs(surf - 27.268) / 27.268;
             detail = "rho^2 measure: " + fmt(rho2) + " (rel " + fmt(rel_rho2) +
                      "), surface measure: " + fmt(surf) + " (rel " + fmt(rel_surf) + ")";
             return std::min(rel_rho2, rel_surf) <= 0.005;
         }});

    int failures = 0;
    for (auto& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::printf("[%s] criterion %s%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                    detail.empty() ? "" : " -- ", detail.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures;
}
