#include "edgerec/recover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SVD>

#include "edgerec/errors.hpp"

namespace edgerec {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw ValidationError(std::string(what) + " contains non-finite values");
}

void check_rhs(const IncidenceMatrix& incidence, const Matrix& rhs, const char* who) {
    if (rhs.rows() != incidence.rows()) {
        throw ValidationError(std::string(who) + ": node activity has " + std::to_string(rhs.rows()) +
                              " rows but the incidence matrix has " + std::to_string(incidence.rows()));
    }
    check_finite(rhs, who);
}

double group_penalty(const Matrix& x) { return x.rowwise().norm().sum(); }

// b_e^T R for a sparse column e, written into `out`.
template <class Residual, class Out>
void column_dot(const SparseMatrix& b, Index e, const Residual& residual, Out& out) {
    out.setZero();
    for (SparseMatrix::InnerIterator it(b, e); it; ++it) out += it.value() * residual.row(it.row());
}

} // namespace

std::string_view to_string(Method method) {
    return method == Method::LeastNorm ? "least-norm" : "sparse";
}

Method parse_method(std::string_view name) {
    if (name == "least-norm") return Method::LeastNorm;
    if (name == "sparse") return Method::Sparse;
    throw ValidationError("unknown method '" + std::string(name) + "' (expected least-norm or sparse)");
}

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw ValidationError("solver: tol must be positive");
    if (lambda && !(*lambda >= 0.0 && std::isfinite(*lambda))) {
        throw ValidationError("solver: lambda must be finite and nonnegative");
    }
    if (max_sweeps < 1) throw ValidationError("solver: max_sweeps must be positive");
    if (lambda_grid_size < 2) throw ValidationError("solver: lambda_grid_size must be at least 2");
    if (!std::isfinite(svd_cutoff)) throw ValidationError("solver: svd_cutoff must be finite");
}

RecoveryResult least_norm(const IncidenceMatrix& incidence, const Matrix& rhs, const SolverConfig& cfg) {
    check_rhs(incidence, rhs, "least_norm");
    const Index n = incidence.rows();
    const Index m = incidence.cols();

    RecoveryResult result;
    result.method = Method::LeastNorm;
    result.estimate = Matrix::Zero(m, rhs.cols());
    if (m > 0 && n > 0) {
        const Matrix dense = incidence.dense();
        Eigen::BDCSVD<Matrix> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Vector& sigma = svd.singularValues();
        const double relative = cfg.svd_cutoff > 0.0
                                    ? cfg.svd_cutoff
                                    : static_cast<double>(std::max(n, m)) * std::numeric_limits<double>::epsilon();
        const double cutoff = relative * (sigma.size() > 0 ? sigma(0) : 0.0);
        Vector inverse = Vector::Zero(sigma.size());
        for (Index k = 0; k < sigma.size(); ++k) {
            if (sigma(k) > cutoff) inverse(k) = 1.0 / sigma(k);
        }
        const Matrix projected = svd.matrixU().transpose() * rhs;
        result.estimate = svd.matrixV() * (inverse.asDiagonal() * projected);
    }
    if (!result.estimate.allFinite()) throw NumericError("least_norm: SVD produced non-finite values");
    result.fit_residual = (incidence.sparse() * result.estimate - rhs).norm();
    return result;
}

RecoveryResult least_norm(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes, const SolverConfig& cfg) {
    return least_norm(incidence, nodes.values(), cfg);
}

double lambda_max(const IncidenceMatrix& incidence, const Matrix& nodes) {
    check_rhs(incidence, nodes, "lambda_max");
    const Index n = incidence.rows();
    if (n == 0) return 0.0;
    const Matrix correlation = Matrix(incidence.sparse().transpose() * nodes).cwiseMax(0.0);
    if (correlation.rows() == 0) return 0.0;
    return correlation.rowwise().norm().maxCoeff() / static_cast<double>(n);
}

double sparse_objective(const IncidenceMatrix& incidence, const Matrix& nodes, const Matrix& estimate,
                        double lambda) {
    const double n = static_cast<double>(incidence.rows());
    const double loss = (nodes - incidence.sparse() * estimate).squaredNorm() / (2.0 * n);
    return loss + lambda * group_penalty(estimate);
}

double kkt_residual(const IncidenceMatrix& incidence, const Matrix& nodes, const Matrix& estimate, double lambda) {
    const Index n = incidence.rows();
    const Index m = incidence.cols();
    const Index steps = nodes.cols();
    const double scale = static_cast<double>(n);
    const RowMatrix residual = nodes - incidence.sparse() * estimate;

    double worst = 0.0;
    Eigen::RowVectorXd z(steps);
    for (Index e = 0; e < m; ++e) {
        column_dot(incidence.sparse(), e, residual, z);
        const Eigen::RowVectorXd row = estimate.row(e);
        const double norm = row.norm();
        double violation = 0.0;
        if (norm == 0.0) {
            violation = std::max(0.0, z.cwiseMax(0.0).norm() - scale * lambda) / scale;
        } else {
            // Stationarity of the smooth gradient plus the group subgradient,
            // projected onto the tangent cone of X >= 0.
            Eigen::RowVectorXd stationarity = -z / scale + lambda * row / norm;
            for (Index t = 0; t < steps; ++t) {
                if (row(t) <= 0.0) stationarity(t) = std::min(stationarity(t), 0.0);
            }
            violation = stationarity.norm();
        }
        worst = std::max(worst, violation);
    }
    return worst;
}

RecoveryResult sparse_recover(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes, double lambda,
                              const SolverConfig& cfg, const Matrix& start) {
    cfg.validate();
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("sparse_recover: lambda must be >= 0");
    const Matrix& rhs = nodes.values();
    check_rhs(incidence, rhs, "sparse_recover");
    const Index n = incidence.rows();
    const Index m = incidence.cols();
    const Index steps = rhs.cols();
    if (start.rows() != m || start.cols() != steps || (start.array() < 0.0).any() || !start.allFinite()) {
        throw ValidationError("sparse_recover: warm start must be a finite nonnegative m x T matrix");
    }

    const SparseMatrix& b = incidence.sparse();
    const double threshold = static_cast<double>(n) * lambda;
    RowMatrix x = start;
    RowMatrix residual = rhs - b * start;

    RecoveryResult result;
    result.method = Method::Sparse;
    result.lambda_used = lambda;
    result.converged = false;

    Eigen::RowVectorXd z(steps);
    Eigen::RowVectorXd updated(steps);
    for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
        double max_change = 0.0;
        double max_norm = 0.0;
        for (Index e = 0; e < m; ++e) {
            const double norm_sq = incidence.column_norm_sq(e);
            if (norm_sq == 0.0) continue;
            column_dot(b, e, residual, z);
            z += norm_sq * x.row(e);
            z = z.cwiseMax(0.0);
            const double z_norm = z.norm();
            if (z_norm <= threshold) {
                updated.setZero();
            } else {
                updated = z * ((1.0 - threshold / z_norm) / norm_sq);
            }
            const Eigen::RowVectorXd delta = updated - x.row(e);
            const double change = delta.norm();
            if (change > 0.0) {
                for (SparseMatrix::InnerIterator it(b, e); it; ++it) residual.row(it.row()) -= it.value() * delta;
                x.row(e) = updated;
            }
            max_change = std::max(max_change, change);
            max_norm = std::max(max_norm, updated.norm());
        }
        // Refresh the running residual to keep rounding drift out of long runs.
        if (sweep % 256 == 0) residual = rhs - b * x;

        const double loss = residual.squaredNorm() / (2.0 * static_cast<double>(n));
        result.objective.push_back(loss + lambda * x.rowwise().norm().sum());
        result.sweeps = sweep;
        if (max_change == 0.0 || max_change < cfg.tol * max_norm) {
            result.converged = true;
            break;
        }
    }

    result.estimate = x;
    if (!result.estimate.allFinite()) throw NumericError("sparse_recover: iterate became non-finite");
    result.fit_residual = (b * result.estimate - rhs).norm();
    result.kkt_residual = kkt_residual(incidence, rhs, result.estimate, lambda);
    return result;
}

RecoveryResult sparse_recover(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes,
                              const SolverConfig& cfg) {
    cfg.validate();
    if (!cfg.lambda) return select_lambda(incidence, nodes, cfg).best;
    return sparse_recover(incidence, nodes, *cfg.lambda, cfg,
                          Matrix::Zero(incidence.cols(), nodes.timesteps()));
}

RecoveryResult recover(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes, const SolverConfig& cfg) {
    cfg.validate();
    return cfg.method == Method::LeastNorm ? least_norm(incidence, nodes, cfg) : sparse_recover(incidence, nodes, cfg);
}

LambdaSelection select_lambda(const IncidenceMatrix& incidence, const NodeActivityMatrix& nodes,
                              const SolverConfig& cfg) {
    cfg.validate();
    const Matrix& rhs = nodes.values();
    const double top = lambda_max(incidence, rhs);
    const Matrix zero = Matrix::Zero(incidence.cols(), rhs.cols());

    LambdaSelection selection;
    if (top == 0.0) {
        selection.lambda = 0.0;
        selection.best = sparse_recover(incidence, nodes, 0.0, cfg, zero);
        const double rss = selection.best.fit_residual;
        selection.path.push_back({0.0, rss, 0, 0, 0.0});
        return selection;
    }

    const double samples = static_cast<double>(incidence.rows() * rhs.cols());
    // RSS can reach zero on consistent systems; floor it at rounding level.
    const double rss_floor = std::max(std::pow(std::numeric_limits<double>::epsilon() * rhs.norm(), 2),
                                      std::numeric_limits<double>::min());
    const int grid = cfg.lambda_grid_size;
    Matrix warm = zero;
    double best_criterion = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
        const double lambda = top * std::pow(10.0, -4.0 * static_cast<double>(k) / static_cast<double>(grid - 1));
        RecoveryResult fit = sparse_recover(incidence, nodes, lambda, cfg, warm);
        warm = fit.estimate;

        LambdaPathPoint point;
        point.lambda = lambda;
        point.fit_residual = fit.fit_residual;
        point.active_groups = static_cast<Index>((fit.estimate.rowwise().norm().array() > 0.0).count());
        point.nonzeros = static_cast<Index>((fit.estimate.array() > 0.0).count());
        const double rss = std::max(fit.fit_residual * fit.fit_residual, rss_floor);
        point.criterion = samples * std::log(rss / samples) + static_cast<double>(point.nonzeros) * std::log(samples);
        selection.path.push_back(point);

        if (point.criterion < best_criterion) {
            best_criterion = point.criterion;
            selection.lambda = lambda;
            selection.best = std::move(fit);
        }
    }
    return selection;
}

} // namespace edgerec
