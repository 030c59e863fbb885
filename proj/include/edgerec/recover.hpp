#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "edgerec/activity.hpp"
#include "edgerec/graph.hpp"
#include "edgerec/types.hpp"

namespace edgerec {

enum class Method { LeastNorm, Sparse };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct SolverConfig {
    Method method = Method::Sparse;
    /// Group-lasso penalty; std::nullopt selects it automatically.
    std::optional<double> lambda = std::nullopt;
    double tol = 1e-6;
    int max_sweeps = 1000;
    /// Relative singular-value cutoff; <= 0 means max(n, m) * machine epsilon.
    double svd_cutoff = 0.0;
    int lambda_grid_size = 50;
    std::uint64_t seed = 0;

    /// Throws ValidationError when tol <= 0, lambda < 0, etc.
    void validate() const;
};

struct RecoveryResult {
    Matrix estimate; ///< m x T; nonnegative for the sparse method
    Method method = Method::LeastNorm;
    double lambda_used = 0.0;
    int sweeps = 0;
    bool converged = true;
    double kkt_residual = 0.0;
    double fit_residual = 0.0;    ///< ||B * estimate - N||_F
    std::vector<double> objective; ///< J after each sweep (sparse only)
};

/// Minimum-norm least-squares solution B^+ N via thin SVD.
RecoveryResult least_norm(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes,
                          const SolverConfig& cfg = {});

/// Same, for a raw right-hand side (entries may be negative).
RecoveryResult least_norm(const IncidenceMatrix& incidence, const Matrix& rhs, const SolverConfig& cfg = {});

/// Nonnegative group lasso, one group per edge over all timesteps:
///
///   min_X  1/(2n) ||N - B X||_F^2 + lambda * sum_e ||X_e||_2   s.t. X >= 0
///
/// solved by cyclic block coordinate descent in canonical edge order.
/// Non-convergence is reported through `converged`, not thrown. When
/// cfg.lambda is unset the penalty is chosen by select_lambda first.
RecoveryResult sparse_recover(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes,
                              const SolverConfig& cfg = {});

/// Warm-started variant; `start` must be m x T and nonnegative.
RecoveryResult sparse_recover(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes, double lambda,
                              const SolverConfig& cfg, const Matrix& start);

/// Dispatches on cfg.method.
RecoveryResult recover(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes, const SolverConfig& cfg);

/// Smallest penalty at which the all-zero solution is optimal:
/// max_e ||max(b_e^T N, 0)||_2 / n.
double lambda_max(const IncidenceMatrix& incidence, const Matrix& nodes);

/// Objective J(X) of the sparse problem.
double sparse_objective(const IncidenceMatrix& incidence, const Matrix& nodes, const Matrix& estimate,
                        double lambda);

/// Largest violation of the nonnegative group-lasso optimality conditions
/// over all groups (zero at an exact minimizer).
double kkt_residual(const IncidenceMatrix& incidence, const Matrix& nodes, const Matrix& estimate, double lambda);

struct LambdaPathPoint {
    double lambda = 0.0;
    double fit_residual = 0.0;
    Index active_groups = 0;
    Index nonzeros = 0;
    double criterion = 0.0; ///< BIC
};

struct LambdaSelection {
    double lambda = 0.0;
    std::vector<LambdaPathPoint> path; ///< descending lambda
    RecoveryResult best;
};

/// Evaluates sparse_recover on a log grid spanning [1e-4 * lambda_max,
/// lambda_max] (warm-started from the top) and keeps the penalty minimizing
///
///   BIC = nT ln(RSS / nT) + df ln(nT),  df = nonzero entries,
///
/// breaking ties toward the larger penalty. N = 0 yields lambda_max and the
/// empty model.
LambdaSelection select_lambda(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes,
                              const SolverConfig& cfg = {});

} // namespace edgerec
