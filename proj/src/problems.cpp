#include "surfq/problems.hpp"

#include <algorithm>
#include <cmath>

namespace surfq::problems {

double catenary_potential(double q) {
    const double u = 1.0 + q * q;
    return -1.0 / (4.0 * u * u);
}

spectral::SturmLiouvilleProblem build_catenary(double a, double half_width) {
    if (!(a > 0.0)) throw std::invalid_argument("catenary needs a > 0");
    if (!(half_width > 0.0)) throw std::invalid_argument("catenary needs half_width > 0");
    spectral::SturmLiouvilleProblem prob;
    prob.name = "catenary";
    prob.p = [](double) { return 1.0; };
    prob.q = catenary_potential;
    prob.w = [](double) { return 1.0; };
    prob.measure = [](double) { return 1.0; };
    prob.x_min = -half_width;
    prob.x_max = half_width;
    prob.bc_left = spectral::BoundaryCondition::Dirichlet;
    prob.bc_right = spectral::BoundaryCondition::Dirichlet;
    return prob;
}

double catenary_physical_energy(double reduced_energy, double a) {
    return reduced_energy / (a * a);
}

namespace {

// Composite quadrature on a non-uniform grid from parabolic segments; the
// trapezoid rule is not accurate enough to re-verify transported norms.
double parabolic_segments(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = x.size();
    double total = 0.0;
    std::size_t i = 0;
    for (; i + 2 < n; i += 2) {
        const double h1 = x[i + 1] - x[i];
        const double h2 = x[i + 2] - x[i + 1];
        const double span = h1 + h2;
        total += span / 6.0 *
                 ((2.0 - h2 / h1) * f[i] + span * span / (h1 * h2) * f[i + 1] +
                  (2.0 - h1 / h2) * f[i + 2]);
    }
    if (i + 1 < n) {
        total += 0.5 * (f[i] + f[i + 1]) * (x[i + 1] - x[i]);
    }
    return total;
}

}  // namespace

PulledBackState catenary_pullback(const spectral::BoundState& state, double a) {
    PulledBackState out;
    out.x.resize(state.x.size());
    out.samples = state.samples;
    for (std::size_t i = 0; i < state.x.size(); ++i) out.x[i] = a * std::asinh(state.x[i]);

    // dq = cosh(x/a)/a dx, so the measure cosh(x/a) dx carries a * (q-norm).
    std::vector<double> integrand(out.x.size());
    for (std::size_t i = 0; i < out.x.size(); ++i) {
        integrand[i] = out.samples[i] * out.samples[i] * std::cosh(out.x[i] / a);
    }
    out.norm_x = parabolic_segments(out.x, integrand);
    const double expected = a * state.norm;
    if (std::abs(out.norm_x - expected) > 1e-6 * std::max(1.0, expected)) {
        throw std::runtime_error("pullback norm mismatch: " + std::to_string(out.norm_x) +
                                 " vs " + std::to_string(expected));
    }
    return out;
}

double paraboloid_first_order_coefficient(double a, double rho) {
    return -a * a / (rho * (a * a + rho * rho));
}

double paraboloid_centrifugal_term(double a, int l, double rho) {
    const double ll = static_cast<double>(l) * l;
    return ll * (a * a + rho * rho) / (a * a * rho * rho);
}

double paraboloid_potential_term(double a, double rho) {
    const double s = a * a + rho * rho;
    return -std::pow(rho, 4) / (4.0 * a * a * s * s);
}

spectral::SturmLiouvilleProblem build_paraboloid(double a, int l, double radius) {
    if (!(a > 0.0)) throw std::invalid_argument("paraboloid needs a > 0");
    if (radius == 0.0) radius = 25.0 * a;
    if (!(radius > 0.0)) throw std::invalid_argument("paraboloid needs radius > 0");
    l = std::abs(l);

    spectral::SturmLiouvilleProblem prob;
    prob.name = "paraboloid-l" + std::to_string(l);
    auto p = [a](double rho) { return rho / std::sqrt(a * a + rho * rho); };
    prob.p = p;
    prob.q = [a, l, p](double rho) {
        return p(rho) * (paraboloid_centrifugal_term(a, l, rho) + paraboloid_potential_term(a, rho));
    };
    prob.w = [a, p](double rho) { return p(rho) * (a * a + rho * rho) / (a * a); };
    // surface area density rho sqrt(1 + rho^2/a^2); the reference-constant
    // convention rho^2 drho is available through NormalizationConvention.
    prob.measure = [a](double rho) { return rho * std::sqrt(1.0 + rho * rho / (a * a)); };
    prob.x_min = 0.0;
    prob.x_max = radius;
    prob.bc_left = l == 0 ? spectral::BoundaryCondition::RegularAxis
                          : spectral::BoundaryCondition::Dirichlet;
    prob.bc_right = spectral::BoundaryCondition::Dirichlet;
    return prob;
}

namespace {

// Quadratic Lagrange extrapolation of the samples to `x0` from the three
// nearest nodes (exact when x0 is itself a node).
double value_at(const spectral::BoundState& state, double x0) {
    const auto& x = state.x;
    const auto& y = state.samples;
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("state too small");

    auto it = std::lower_bound(x.begin(), x.end(), x0);
    std::size_t i = static_cast<std::size_t>(std::distance(x.begin(), it));
    if (i + 2 > n) i = n - 2;
    std::size_t lo = (i == 0) ? 0 : i - 1;
    if (lo + 3 > n) lo = n - 3;

    const double xa = x[lo], xb = x[lo + 1], xc = x[lo + 2];
    const double la = (x0 - xb) * (x0 - xc) / ((xa - xb) * (xa - xc));
    const double lb = (x0 - xa) * (x0 - xc) / ((xb - xa) * (xb - xc));
    const double lc = (x0 - xa) * (x0 - xb) / ((xc - xa) * (xc - xb));
    return la * y[lo] + lb * y[lo + 1] + lc * y[lo + 2];
}

}  // namespace

DecayFit decay_prefactor_check(const spectral::BoundState& state, double a) {
    const double radius = state.x.back();
    DecayFit fit;
    fit.window_lo = 0.6 * radius;
    fit.window_hi = 0.9 * radius;

    double amax = 0.0;
    for (double s : state.samples) amax = std::max(amax, std::abs(s));

    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        const double rho = state.x[i];
        if (rho < fit.window_lo || rho > fit.window_hi) continue;
        const double mag = std::abs(state.samples[i]);
        if (mag < 1e-14 * amax) {
            throw TailUnderflow("tail sample " + std::to_string(mag) + " below 1e-14 * max|R| at rho = " +
                                std::to_string(rho));
        }
        ts.push_back(rho * rho / (2.0 * a));
        ys.push_back(-std::log(mag));
    }
    if (ts.size() < 8) throw DecayFitRejected("too few samples in the fit window");

    // least squares y = c t + b
    const double n = static_cast<double>(ts.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
        stt += ts[i] * ts[i];
        sty += ts[i] * ys[i];
    }
    const double denom = n * stt - st * st;
    const double slope = (n * sty - st * sy) / denom;
    const double icept = (sy - slope * st) / n;

    double ss = 0.0;
    double ymin = ys[0], ymax = ys[0];
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = ys[i] - (slope * ts[i] + icept);
        ss += r * r;
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    const double rms = std::sqrt(ss / n);
    const double range = std::max(ymax - ymin, 1e-300);

    fit.constant = slope;
    fit.rms_relative = rms / range;
    if (fit.rms_relative > 0.02 || slope <= 0.0) {
        throw DecayFitRejected("tail is not Gaussian-like: rms/range = " +
                               std::to_string(fit.rms_relative) + ", slope = " +
                               std::to_string(slope));
    }
    return fit;
}

NormalizationConvention catenary_dq_convention() {
    NormalizationConvention c;
    c.name = "dq-window10";
    c.measure = [](double) { return 1.0; };
    c.window_lo = -10.0;
    c.window_hi = 10.0;
    c.expansion_point = 0.0;
    return c;
}

NormalizationConvention catenary_dq_full_convention() {
    NormalizationConvention c;
    c.name = "dq-full";
    c.measure = [](double) { return 1.0; };
    c.expansion_point = 0.0;
    return c;
}

NormalizationConvention paraboloid_rho2_convention() {
    NormalizationConvention c;
    c.name = "rho2-drho";
    c.measure = [](double rho) { return rho * rho; };
    c.expansion_point = 0.0;
    return c;
}

NormalizationConvention paraboloid_surface_convention(double a) {
    NormalizationConvention c;
    c.name = "surface-measure";
    c.measure = [a](double rho) { return rho * std::sqrt(1.0 + rho * rho / (a * a)); };
    c.expansion_point = 0.0;
    return c;
}

double normalization_constant(const spectral::BoundState& state,
                              const NormalizationConvention& convention) {
    const double v0 = value_at(state, convention.expansion_point);
    if (v0 == 0.0) throw std::invalid_argument("state vanishes at the expansion point");
    const double inv2 = 1.0 / (v0 * v0);

    const double lo = convention.window_lo.value_or(-std::numeric_limits<double>::infinity());
    const double hi = convention.window_hi.value_or(std::numeric_limits<double>::infinity());

    double total = 0.0;
    for (std::size_t i = 0; i < state.x.size(); ++i) {
        const double x = state.x[i];
        const double cw = state.cell_weights[i];
        // fraction of this node's cell inside the window
        const double c_lo = x - 0.5 * cw;
        const double c_hi = x + 0.5 * cw;
        const double overlap = std::min(c_hi, hi) - std::max(c_lo, lo);
        if (overlap <= 0.0) continue;
        const double m = convention.measure ? convention.measure(x) : 1.0;
        total += state.samples[i] * state.samples[i] * m * overlap;
    }
    return total * inv2;
}

double NormalMode::value(double u3) const {
    return amplitude * std::sin(nu * M_PI * u3 / epsilon);
}

NormalMode normal_mode(double epsilon, int nu) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("layer thickness must be positive");
    if (nu < 1) throw std::invalid_argument("mode index must be >= 1");
    NormalMode m;
    m.epsilon = epsilon;
    m.nu = nu;
    m.energy = nu * nu * M_PI * M_PI / (epsilon * epsilon);
    m.amplitude = std::sqrt(2.0 / epsilon);
    return m;
}

double total_energy(double tangential, const NormalMode& normal) {
    return tangential + normal.energy;
}

}  // namespace surfq::problems
