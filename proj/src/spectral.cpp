#include "surfq/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace surfq::spectral {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

Grid make_grid(const SturmLiouvilleProblem& problem, int n_cells) {
    if (n_cells < 64) throw std::invalid_argument("grid needs at least 64 cells");
    if (problem.bc_right == BoundaryCondition::RegularAxis)
        throw std::invalid_argument("RegularAxis is a left-end condition");

    const double h = (problem.x_max - problem.x_min) / n_cells;
    Grid g;
    g.spacing = h;

    if (problem.bc_left == BoundaryCondition::RegularAxis) {
        // staggered: nodes at x_min + (i + 1/2) h
        g.n = n_cells;
        g.nodes.resize(g.n);
        g.cell_weights.assign(g.n, h);
        for (int i = 0; i < g.n; ++i) g.nodes[i] = problem.x_min + (i + 0.5) * h;
        return g;
    }

    const bool left_node = problem.bc_left == BoundaryCondition::Neumann;
    const bool right_node = problem.bc_right == BoundaryCondition::Neumann;
    g.n = n_cells - 1 + (left_node ? 1 : 0) + (right_node ? 1 : 0);
    g.nodes.resize(g.n);
    g.cell_weights.assign(g.n, h);
    int idx = 0;
    if (left_node) {
        g.nodes[idx] = problem.x_min;
        g.cell_weights[idx] = 0.5 * h;
        ++idx;
    }
    for (int i = 1; i < n_cells; ++i) g.nodes[idx++] = problem.x_min + i * h;
    if (right_node) {
        g.nodes[idx] = problem.x_max;
        g.cell_weights[idx] = 0.5 * h;
    }
    return g;
}

TridiagonalPair discretize(const SturmLiouvilleProblem& problem, const Grid& grid) {
    const int n = grid.n;
    const double h = grid.spacing;
    const double h2 = h * h;

    auto p_at = [&](double x) {
        const double v = problem.p(x);
        if (!(v > 0.0)) {
            throw NonPositiveWeight("p(" + std::to_string(x) + ") = " + std::to_string(v));
        }
        return v;
    };
    auto w_at = [&](double x) {
        const double v = problem.w(x);
        if (!(v > 0.0)) {
            throw NonPositiveWeight("w(" + std::to_string(x) + ") = " + std::to_string(v));
        }
        return v;
    };

    TridiagonalPair ab;
    ab.diag.resize(n);
    ab.off.resize(n > 0 ? n - 1 : 0);
    ab.b.resize(n);

    if (problem.bc_left == BoundaryCondition::RegularAxis) {
        // Half nodes sit at x_min + i h; the axis flux at x_min drops out
        // through the even mirror, so p there is never evaluated.
        for (int i = 0; i < n; ++i) {
            const double x = grid.nodes[i];
            const double pr = p_at(problem.x_min + (i + 1) * h);
            double d = pr / h2 + problem.q(x);
            if (i > 0) d += p_at(problem.x_min + i * h) / h2;
            if (i == n - 1) {
                // Dirichlet at x_max through an odd ghost: the boundary flux
                // coefficient enters twice.
                d += pr / h2;
            }
            ab.diag[i] = d;
            if (i + 1 < n) ab.off[i] = -pr / h2;
            ab.b[i] = w_at(x);
        }
        return ab;
    }

    for (int i = 0; i < n; ++i) {
        const double x = grid.nodes[i];
        const bool left_edge = (i == 0 && problem.bc_left == BoundaryCondition::Neumann);
        const bool right_edge = (i == n - 1 && problem.bc_right == BoundaryCondition::Neumann);
        const double pl = left_edge ? 0.0 : p_at(x - 0.5 * h);
        const double pr = right_edge ? 0.0 : p_at(x + 0.5 * h);
        // Neumann rows are half-cell balances; scaling the whole row by 1/2
        // keeps A symmetric, with the matching half weight in B.
        const double scale = (left_edge || right_edge) ? 0.5 : 1.0;
        ab.diag[i] = (pl + pr) / h2 + scale * problem.q(x);
        if (i + 1 < n) ab.off[i] = -pr / h2;
        ab.b[i] = scale * w_at(x);
    }
    return ab;
}

namespace {

struct ReducedTridiagonal {
    std::vector<double> d;  // diagonal
    std::vector<double> e;  // off-diagonal
    double pivmin = 0.0;    // smallest pivot magnitude the count may divide by
};

ReducedTridiagonal reduce(const TridiagonalPair& ab) {
    const int n = static_cast<int>(ab.diag.size());
    ReducedTridiagonal t;
    t.d.resize(n);
    t.e.resize(n > 0 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) t.d[i] = ab.diag[i] / ab.b[i];
    double max_e2 = 1.0;
    for (int i = 0; i + 1 < n; ++i) {
        t.e[i] = ab.off[i] / std::sqrt(ab.b[i] * ab.b[i + 1]);
        max_e2 = std::max(max_e2, t.e[i] * t.e[i]);
    }
    t.pivmin = std::numeric_limits<double>::min() * max_e2;
    return t;
}

// Number of eigenvalues of the reduced matrix below sigma.  A pivot that
// underflows to zero is clamped to -pivmin (and counted), otherwise an exact
// hit on a sub-pencil eigenvalue poisons the whole sequence.
int sturm_count(const ReducedTridiagonal& t, double sigma) {
    const int n = static_cast<int>(t.d.size());
    int count = 0;
    double q = t.d[0] - sigma;
    if (std::abs(q) <= t.pivmin) q = -t.pivmin;
    if (q < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        q = (t.d[i] - sigma) - t.e[i - 1] * t.e[i - 1] / q;
        if (std::abs(q) <= t.pivmin) q = -t.pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin_bounds(const ReducedTridiagonal& t) {
    const int n = static_cast<int>(t.d.size());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.e[i - 1]);
        if (i + 1 < n) r += std::abs(t.e[i]);
        lo = std::min(lo, t.d[i] - r);
        hi = std::max(hi, t.d[i] + r);
    }
    return {lo, hi};
}

// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const ReducedTridiagonal& t, int k) {
    auto [lo, hi] = gershgorin_bounds(t);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(t, mid) > k) hi = mid;
        else lo = mid;
        if (hi - lo <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - sigma I) x = rhs in place, tridiagonal LU with partial
// pivoting (fill-in limited to a second superdiagonal).
void shifted_solve(const ReducedTridiagonal& t, double sigma, std::vector<double>& x) {
    const int n = static_cast<int>(t.d.size());
    std::vector<double> a(n), b(n, 0.0), c(n, 0.0), f(n, 0.0);
    for (int i = 0; i < n; ++i) a[i] = t.d[i] - sigma;
    for (int i = 0; i + 1 < n; ++i) {
        b[i] = t.e[i];      // (i, i+1)
        c[i] = t.e[i];      // (i+1, i)
    }

    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(c[i]) > std::abs(a[i])) {
            // swap rows i and i+1
            std::swap(a[i], c[i]);
            const double old_diag = a[i + 1];
            const double old_super = b[i + 1];
            a[i + 1] = b[i];
            b[i] = old_diag;
            f[i] = old_super;
            b[i + 1] = 0.0;
            std::swap(x[i], x[i + 1]);
        }
        if (a[i] == 0.0) a[i] = 1e-300;
        const double m = c[i] / a[i];
        a[i + 1] -= m * b[i];
        b[i + 1] -= m * f[i];
        x[i + 1] -= m * x[i];
    }
    if (a[n - 1] == 0.0) a[n - 1] = 1e-300;

    x[n - 1] /= a[n - 1];
    if (n > 1) x[n - 2] = (x[n - 2] - b[n - 2] * x[n - 1]) / a[n - 2];
    for (int i = n - 3; i >= 0; --i) {
        x[i] = (x[i] - b[i] * x[i + 1] - f[i] * x[i + 2]) / a[i];
    }
}

double matrix_inf_norm(const ReducedTridiagonal& t) {
    double norm = 0.0;
    const int n = static_cast<int>(t.d.size());
    for (int i = 0; i < n; ++i) {
        double row = std::abs(t.d[i]);
        if (i > 0) row += std::abs(t.e[i - 1]);
        if (i + 1 < n) row += std::abs(t.e[i]);
        norm = std::max(norm, row);
    }
    return norm;
}

}  // namespace

std::vector<Eigenpair> lowest_eigenpairs(const TridiagonalPair& ab, int count) {
    const int n = static_cast<int>(ab.diag.size());
    count = std::min(count, n);
    const ReducedTridiagonal t = reduce(ab);
    const double tnorm = matrix_inf_norm(t);

    std::vector<Eigenpair> out;
    std::vector<std::vector<double>> found;  // reduced-space vectors, unit norm
    std::mt19937 rng(0x5eedu);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    for (int k = 0; k < count; ++k) {
        const double lambda = bisect_eigenvalue(t, k);

        std::vector<double> v(n);
        for (double& vi : v) vi = uni(rng);
        auto orthogonalize = [&]() {
            for (const auto& u : found) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += u[i] * v[i];
                for (int i = 0; i < n; ++i) v[i] -= dot * u[i];
            }
        };
        auto normalize = [&]() {
            double s = 0.0;
            for (double vi : v) s += vi * vi;
            s = std::sqrt(s);
            for (double& vi : v) vi /= s;
            return s;
        };
        orthogonalize();
        normalize();

        auto residual_of = [&]() {
            double resid = 0.0;
            for (int i = 0; i < n; ++i) {
                double r = (t.d[i] - lambda) * v[i];
                if (i > 0) r += t.e[i - 1] * v[i - 1];
                if (i + 1 < n) r += t.e[i] * v[i + 1];
                resid = std::max(resid, std::abs(r));
            }
            return resid;
        };

        double resid = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 50 && resid > 1e-10 * tnorm; ++it) {
            shifted_solve(t, lambda, v);
            orthogonalize();
            normalize();
            resid = residual_of();
        }
        if (resid > 1e-8 * tnorm) {
            throw ConvergenceFailure("inverse iteration residual " + std::to_string(resid) +
                                     " for eigenvalue index " + std::to_string(k));
        }

        // deterministic sign: largest |component| positive
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        if (v[imax] < 0.0)
            for (double& vi : v) vi = -vi;

        found.push_back(v);

        Eigenpair pair;
        pair.value = lambda;
        pair.vector.resize(n);
        for (int i = 0; i < n; ++i) pair.vector[i] = v[i] / std::sqrt(ab.b[i]);
        out.push_back(std::move(pair));
    }
    return out;
}

int count_negative(const TridiagonalPair& ab) {
    return sturm_count(reduce(ab), 0.0);
}

int count_below(const TridiagonalPair& ab, double shift) {
    return sturm_count(reduce(ab), shift);
}

SpectrumReport negative_spectrum(const SturmLiouvilleProblem& problem, int n_cells,
                                 double threshold, int max_states) {
    const Grid grid = make_grid(problem, n_cells);
    const TridiagonalPair ab = discretize(problem, grid);
    const ReducedTridiagonal t = reduce(ab);

    SpectrumReport report;
    report.threshold = threshold;
    report.grid_cells = n_cells;
    report.spacing = grid.spacing;
    const int count = std::min(sturm_count(t, threshold), max_states);
    report.eigenvalues.reserve(count);
    for (int k = 0; k < count; ++k) report.eigenvalues.push_back(bisect_eigenvalue(t, k));
    return report;
}

int node_count(std::span<const double> samples) {
    double amax = 0.0;
    for (double s : samples) amax = std::max(amax, std::abs(s));
    if (amax == 0.0) return 0;
    const double floor = 1e-10 * amax;
    int changes = 0;
    int last_sign = 0;
    for (double s : samples) {
        if (std::abs(s) < floor) continue;
        const int sign = s > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++changes;
        last_sign = sign;
    }
    return changes;
}

double weighted_norm_squared(const Grid& grid, std::span<const double> samples,
                             const std::function<double(double)>& density) {
    double total = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double rho = density ? density(grid.nodes[i]) : 1.0;
        total += samples[i] * samples[i] * rho * grid.cell_weights[i];
    }
    return total;
}

BoundState refine_to_convergence(const SturmLiouvilleProblem& problem,
                                 const std::vector<int>& ladder_cells, double tol,
                                 int state_index) {
    if (ladder_cells.size() < 3) {
        throw std::invalid_argument("refinement ladder needs at least 3 grids");
    }

    std::vector<double> energies;
    Grid finest_grid;
    Eigenpair finest_pair;
    for (int cells : ladder_cells) {
        const Grid grid = make_grid(problem, cells);
        const TridiagonalPair ab = discretize(problem, grid);
        auto pairs = lowest_eigenpairs(ab, state_index + 1);
        energies.push_back(pairs[state_index].value);
        finest_grid = grid;
        finest_pair = std::move(pairs[state_index]);
    }

    std::vector<double> extrapolated;
    for (std::size_t i = 0; i + 1 < energies.size(); ++i) {
        extrapolated.push_back((4.0 * energies[i + 1] - energies[i]) / 3.0);
    }
    const double residual =
        std::abs(extrapolated.back() - extrapolated[extrapolated.size() - 2]);

    BoundState state;
    state.energy = extrapolated.back();
    state.x = finest_grid.nodes;
    state.samples = finest_pair.vector;
    state.cell_weights = finest_grid.cell_weights;
    state.residual = residual;
    state.converged = residual <= tol;
    state.ladder_energies = energies;

    auto measure = [&](double x) { return problem.measure_at(x); };
    const double total = weighted_norm_squared(finest_grid, state.samples, measure);
    const double scale = 1.0 / std::sqrt(total);
    for (double& s : state.samples) s *= scale;
    state.norm = weighted_norm_squared(finest_grid, state.samples, measure);
    state.node_count = node_count(state.samples);
    state.potential.resize(finest_grid.n);
    for (int i = 0; i < finest_grid.n; ++i) {
        state.potential[i] = problem.q(finest_grid.nodes[i]) / problem.w(finest_grid.nodes[i]);
    }

    if (!state.converged) {
        throw NotConverged("refinement residual " + std::to_string(residual) +
                               " above tolerance " + std::to_string(tol),
                           std::move(state));
    }
    return state;
}

}  // namespace surfq::spectral
