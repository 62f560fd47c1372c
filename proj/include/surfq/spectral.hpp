#pragma once

// Generalized one-dimensional Sturm-Liouville eigensolver,
//
//     -(p y')' + q y = E w y        on [x_min, x_max],
//
// discretized with second-order flux-form finite differences (p at half
// nodes), reduced to a standard symmetric tridiagonal problem through
// B^{-1/2} A B^{-1/2}, and solved by bisection on Sturm sequences plus
// inverse iteration.  Only the bottom of the spectrum is computed.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfq::spectral {

struct NonPositiveWeight : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BoundaryCondition {
    Dirichlet,    // y = 0 at the end, boundary node removed
    Neumann,      // y' = 0, mirrored ghost node, boundary node kept
    RegularAxis,  // left end only: staggered nodes at x_min + (i+1/2)h,
                  // even mirror across the axis (natural when p ~ x there)
};

struct SturmLiouvilleProblem {
    std::function<double(double)> p, q, w;
    double x_min = 0.0, x_max = 1.0;
    BoundaryCondition bc_left = BoundaryCondition::Dirichlet;
    BoundaryCondition bc_right = BoundaryCondition::Dirichlet;
    // Density used for eigenfunction normalization; may differ from w.
    std::function<double(double)> measure;
    std::string name;

    double measure_at(double x) const { return measure ? measure(x) : w(x); }
};

struct Grid {
    int n = 0;                          // unknowns
    double spacing = 0.0;
    std::vector<double> nodes;          // strictly increasing
    std::vector<double> cell_weights;   // quadrature weight per node
};

// n_cells >= 64 enforced; node placement depends on the boundary conditions.
Grid make_grid(const SturmLiouvilleProblem& problem, int n_cells);

// A y = E B y with A symmetric tridiagonal and B diagonal positive.
struct TridiagonalPair {
    std::vector<double> diag;  // A diagonal
    std::vector<double> off;   // A off-diagonal (size n-1)
    std::vector<double> b;     // B diagonal
};

TridiagonalPair discretize(const SturmLiouvilleProblem& problem, const Grid& grid);

struct Eigenpair {
    double value = 0.0;
    std::vector<double> vector;  // B-normalized, y^T B y = 1
};

// The `count` smallest generalized eigenvalues with eigenvectors.
std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalPair& ab, int count);

// Number of generalized eigenvalues below zero (Sturm count at shift 0).
int count_negative(const TridiagonalPair& ab);

// Number of generalized eigenvalues below an arbitrary shift.
int count_below(const TridiagonalPair& ab, double shift);

// Eigenvalues under the continuum edge, sorted ascending.
struct SpectrumReport {
    std::vector<double> eigenvalues;  // all < threshold
    double threshold = 0.0;
    int grid_cells = 0;
    double spacing = 0.0;
};

SpectrumReport negative_spectrum(const SturmLiouvilleProblem& problem, int n_cells,
                                 double threshold = 0.0, int max_states = 32);

struct BoundState {
    double energy = 0.0;            // Richardson-extrapolated
    std::vector<double> x;          // finest-grid nodes
    std::vector<double> samples;    // eigenfunction, unit norm under `measure`
    std::vector<double> potential;  // q/w at the nodes, for plotting
    std::vector<double> cell_weights;  // quadrature weights of the finest grid
    int node_count = 0;
    double norm = 0.0;              // recomputed after normalization (== 1)
    bool converged = false;
    double residual = 0.0;          // last change between extrapolations
    std::vector<double> ladder_energies;  // raw eigenvalue per grid level
};

struct NotConverged : std::runtime_error {
    BoundState best;
    NotConverged(std::string msg, BoundState state)
        : std::runtime_error(std::move(msg)), best(std::move(state)) {}
};

// Solve on each grid of the ladder (cell counts, each at least doubling the
// spacing resolution), Richardson-extrapolate assuming second order, and
// declare convergence when successive extrapolations differ by <= tol.
// Needs at least 3 ladder levels.  Throws NotConverged (carrying the best
// state) when the gate is missed.
BoundState refine_to_convergence(const SturmLiouvilleProblem& problem,
                                 const std::vector<int>& ladder_cells, double tol = 1e-7,
                                 int state_index = 0);

// Interior strict sign changes, ignoring |y| < 1e-10 * max|y|.
int node_count(std::span<const double> samples);

// Trapezoid integral of samples^2 * density over the grid nodes.
double weighted_norm_squared(const Grid& grid, std::span<const double> samples,
                             const std::function<double(double)>& density);

}  // namespace surfq::spectral
