#pragma once

// Reductions of the two concrete curved-surface systems to one-dimensional
// Sturm-Liouville problems, plus the cross-checks performed on their bound
// states (tail decay rate, normalization constants) and the normal box
// modes of the confining layer.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "surfq/spectral.hpp"

namespace surfq::problems {

struct TailUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The tail is not Gaussian-like (linear fit residuals too large).
struct DecayFitRejected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Catenary sheet z = a cosh(x/a): after the substitution q = sinh(x/a) the
// x-equation collapses to
//     -X'' - X / (4 (1+q^2)^2) = E X,
// independent of a; the physical energy is 2m E_x / hbar^2 = E / a^2.
spectral::SturmLiouvilleProblem build_catenary(double a, double half_width = 80.0);

double catenary_potential(double q);

// 2m E_x / hbar^2 given the reduced eigenvalue.
double catenary_physical_energy(double reduced_energy, double a);

struct CatenaryProblem {
    double a = 1.0;
    double half_width = 80.0;  // q-space truncation

    spectral::SturmLiouvilleProblem reduced() const { return build_catenary(a, half_width); }
    double x_from_q(double q) const { return a * std::asinh(q); }
    double physical_energy(double reduced_energy) const {
        return catenary_physical_energy(reduced_energy, a);
    }
};

struct PulledBackState {
    std::vector<double> x;        // x = a asinh(q)
    std::vector<double> samples;  // same function values
    double norm_x = 0.0;          // under the measure cosh(x/a) dx; equals a
};

// Resample a converged q-space state onto the x coordinate and re-verify
// the norm under the transported measure.
PulledBackState catenary_pullback(const spectral::BoundState& state, double a);

// Paraboloid of revolution z = rho^2 / (2a), angular channel l >= 0
// (negative l maps to |l|).  The radial equation
//     -R'' - a^2/(rho(a^2+rho^2)) R'
//        + [l^2(a^2+rho^2)/(a^2 rho^2) - rho^4/(4a^2(a^2+rho^2)^2)] R
//        = (a^2+rho^2)/a^2 E R
// is symmetrized with the integrating factor p(rho) = rho/sqrt(a^2+rho^2).
// radius = 0 picks the default truncation 25 a, which scales with a so that
// a^2 E(a) is exactly a-independent on matching grids.
spectral::SturmLiouvilleProblem build_paraboloid(double a, int l, double radius = 0.0);

// Raw (unsymmetrized) radial coefficients, exposed for verification.
double paraboloid_first_order_coefficient(double a, double rho);   // -a^2/(rho(a^2+rho^2))
double paraboloid_centrifugal_term(double a, int l, double rho);   // l^2(a^2+rho^2)/(a^2 rho^2)
double paraboloid_potential_term(double a, double rho);            // -rho^4/(4a^2(a^2+rho^2)^2)

struct ParaboloidProblem {
    double a = 1.0;
    int l = 0;
    double radius = 0.0;  // 0 = 25a

    spectral::SturmLiouvilleProblem reduced() const { return build_paraboloid(a, l, radius); }
};

struct DecayFit {
    double constant = 0.0;      // fitted slope of -ln|R| against rho^2/(2a)
    double rms_relative = 0.0;  // fit rms residual / fitted value range
    double window_lo = 0.0, window_hi = 0.0;
};

// Least-squares fit of -ln|R| against rho^2/(2a) over [0.6 L, 0.9 L]; for a
// genuine Gaussian-tailed state the constant approaches sqrt|E|.  Throws
// TailUnderflow when window samples drop below 1e-14 * max|R| and
// DecayFitRejected when the tail is not Gaussian-like.
DecayFit decay_prefactor_check(const spectral::BoundState& state, double a);

// A measure plus integration window for reporting normalization constants.
// The window exists because reference constants are tied to the finite
// integration range used to produce them.
struct NormalizationConvention {
    std::string name;
    std::function<double(double)> measure;  // nullptr = the state's own measure
    std::optional<double> window_lo, window_hi;
    double expansion_point = 0.0;
};

NormalizationConvention catenary_dq_convention();               // dq over |q| <= 10
NormalizationConvention catenary_dq_full_convention();          // dq over the whole domain
NormalizationConvention paraboloid_rho2_convention();           // rho^2 drho, full domain
NormalizationConvention paraboloid_surface_convention(double a);  // rho sqrt(1+rho^2/a^2) drho

// Integral of |y|^2 * measure with the state rescaled so that its value at
// the expansion point equals 1.
double normalization_constant(const spectral::BoundState& state,
                              const NormalizationConvention& convention);

// Box mode across the confining layer of thickness epsilon.
struct NormalMode {
    double epsilon = 1.0;
    int nu = 1;
    double energy = 0.0;     // 2m E_n / hbar^2 = nu^2 pi^2 / epsilon^2
    double amplitude = 0.0;  // sqrt(2/epsilon): unit L2 norm on [0, epsilon]

    double value(double u3) const;
};

NormalMode normal_mode(double epsilon, int nu);

double total_energy(double tangential, const NormalMode& normal);

}  // namespace surfq::problems
