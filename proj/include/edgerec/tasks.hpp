#pragma once

#include <functional>
#include <span>
#include <vector>

#include "edgerec/activity.hpp"
#include "edgerec/graph.hpp"
#include "edgerec/types.hpp"

namespace edgerec {

/// Tie strengths: row sums of an m x T activity matrix.
Vector tie_strengths(const Matrix& activity);

/// Linear-kernel baseline computed directly from node activity:
/// w_ij = <N_i, N_j> for every edge (i, j) of g.
Vector kernel_baseline(const NodeActivityMatrix& nodes, const Graph& g);

/// Disparity-filter backbone. Edge (i, j) is flagged when
/// (1 - w_ij / s_i)^(k_i - 1) < alpha from either endpoint, s_i being the
/// node strength. Endpoints of degree 1 or zero strength never flag.
/// Throws ValidationError for alpha outside (0, 1), negative weights, or a
/// length mismatch.
std::vector<bool> disparity_backbone(const Graph& g, const Vector& weights, double alpha);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    double alpha = 0.0; ///< scoring alpha; 0 and 1 mark the appended endpoints
};

using RocCurve = std::vector<RocPoint>;
using BackboneScorer = std::function<std::vector<bool>(double alpha)>;

/// 50 log-spaced values in [1e-4, 0.999].
std::vector<double> default_alpha_grid();

/// Confusion rates of `predicted` against `truth`.
RocPoint confusion_rates(const std::vector<bool>& truth, const std::vector<bool>& predicted);

/// Sweeps the scorer over `alpha_grid`, prepends (0,0), appends (1,1) and
/// sorts by FPR then TPR. Throws ValidationError naming the class counts if
/// truth has no positives or no negatives.
RocCurve roc_curve(const std::vector<bool>& truth, const BackboneScorer& scored,
                   std::span<const double> alpha_grid);
RocCurve roc_curve(const std::vector<bool>& truth, const BackboneScorer& scored);

/// Trapezoidal area under an ROC curve.
double auc(const RocCurve& curve);

/// Product-moment correlation. Throws UndefinedError on zero variance and
/// ValidationError on length mismatch or fewer than two values.
double pearson(std::span<const double> a, std::span<const double> b);

/// Pearson correlation of average ranks (ties share the mean rank).
double spearman(std::span<const double> a, std::span<const double> b);

/// Average ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> values);

inline std::span<const double> flat(const Matrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }
inline std::span<const double> flat(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

} // namespace edgerec
