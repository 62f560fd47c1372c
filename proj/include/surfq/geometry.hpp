#pragma once

// Differential geometry of parametric surfaces embedded in R^3: tangent
// frames, fundamental forms, principal curvatures and the curvature-induced
// binding potential of a particle squeezed onto the surface.
//
// Conventions used throughout:
//   n    = e1 x e2 / |e1 x e2|          (orientation fixed by chart order)
//   k_ab = -n . d_ab r                  (second fundamental form)
//   k_a^b = h^{bc} k_ac                 (shape operator; stored row index a)
// Potentials are returned in natural units hbar^2/m, i.e. vs_coeff has
// dimension 1/length^2 and the physical potential is vs_coeff * hbar^2/m.

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>

namespace surfq::geometry {

struct DegenerateChart : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 1 + u3*K + u3^2*K_G <= 0: the normal coordinate left the tubular
// neighborhood in which the layer factorization is valid.
struct FoldedLayer : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutsideDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SurfacePoint {
    double u1 = 0.0;
    double u2 = 0.0;
};

struct DomainRect {
    double u1_min = 0.0, u1_max = 1.0;
    double u2_min = 0.0, u2_max = 1.0;

    bool contains(const SurfacePoint& p) const {
        return std::isfinite(p.u1) && std::isfinite(p.u2) &&
               p.u1 >= u1_min && p.u1 <= u1_max && p.u2 >= u2_min && p.u2 <= u2_max;
    }
    double extent_u1() const { return u1_max - u1_min; }
    double extent_u2() const { return u2_max - u2_min; }
};

struct Frame {
    Eigen::Vector3d e1, e2;  // tangent vectors, generally not unit
    Eigen::Vector3d n;       // unit normal, e1 x e2 direction
};

struct FundamentalForms {
    Eigen::Matrix2d h;        // first fundamental form (metric)
    Eigen::Matrix2d k;        // second fundamental form
    Eigen::Matrix2d k_mixed;  // shape operator, entry (a,b) = k_a^b
};

struct CurvatureReport {
    double k1 = 0.0;        // principal curvatures, k1 >= k2
    double k2 = 0.0;
    double total = 0.0;     // K = k1 + k2
    double gaussian = 0.0;  // K_G = k1 * k2
    double vs_coeff = 0.0;  // -(k1 - k2)^2 / 8, in units hbar^2/m
};

// Parametric map with optional exact derivatives.  When the derivative
// closures are absent, central finite differences with step
// 1e-5 * (domain extent per axis) are used, second derivatives through
// nested central stencils.
class SurfaceChart {
public:
    using MapFn = std::function<Eigen::Vector3d(double, double)>;

    struct FirstDerivatives {
        Eigen::Vector3d e1, e2;
    };
    struct SecondDerivatives {
        Eigen::Vector3d r11, r12, r22;
    };

    using D1Fn = std::function<FirstDerivatives(double, double)>;
    using D2Fn = std::function<SecondDerivatives(double, double)>;

    SurfaceChart(std::string name, DomainRect domain, MapFn map);
    SurfaceChart(std::string name, DomainRect domain, MapFn map, D1Fn d1, D2Fn d2);

    const std::string& name() const { return name_; }
    const DomainRect& domain() const { return domain_; }
    bool has_analytic_derivatives() const { return static_cast<bool>(d1_); }

    Eigen::Vector3d position(const SurfacePoint& p) const { return map_(p.u1, p.u2); }
    FirstDerivatives first_derivatives(const SurfacePoint& p) const;
    SecondDerivatives second_derivatives(const SurfacePoint& p) const;

    // Same map with the analytic closures stripped; exercises the
    // finite-difference path.
    SurfaceChart without_analytic_derivatives() const;

    double fd_step_u1() const { return fd_u1_; }
    double fd_step_u2() const { return fd_u2_; }

    void require_inside(const SurfacePoint& p) const;

private:
    std::string name_;
    DomainRect domain_;
    MapFn map_;
    D1Fn d1_;
    D2Fn d2_;
    double fd_u1_ = 1e-5;
    double fd_u2_ = 1e-5;
};

Frame evaluate_frame(const SurfaceChart& chart, const SurfacePoint& p);
FundamentalForms fundamental_forms(const SurfaceChart& chart, const SurfacePoint& p);

// Eigenvalues of the shape operator, ordered k1 >= k2.
std::pair<double, double> principal_curvatures(const FundamentalForms& forms);

// -(k1-k2)^2/8; multiply by hbar^2/m for physical units.
double geometric_potential(double k1, double k2);

CurvatureReport curvature_report(const SurfaceChart& chart, const SurfacePoint& p);

// det g at normal offset u3 from the layer factorization
// h_det * (1 + u3*K + u3^2*K_G)^2; throws FoldedLayer when the factor
// is not positive.
double ambient_metric_det(const CurvatureReport& report, double h_det, double u3);

// max_a |d_a n - k_a^b e_b| / (|k_a^b e_b| + eps_machine); self-test of the
// whole chain.  `k_scale` perturbs the shape operator and exists for
// mutation testing of the check suites.
double weingarten_residual(const SurfaceChart& chart, const SurfacePoint& p,
                           double k_scale = 1.0);

// Worst relative mismatch between analytic first derivatives and a central
// difference of the map over an interior sample grid.  Charts without
// analytic derivatives return 0.
double derivative_consistency_residual(const SurfaceChart& chart, int samples_per_axis = 5);

}  // namespace surfq::geometry
