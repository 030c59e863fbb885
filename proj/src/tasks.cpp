#include "edgerec/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "edgerec/errors.hpp"

namespace edgerec {

Vector tie_strengths(const Matrix& activity) { return activity.rowwise().sum(); }

Vector kernel_baseline(const NodeActivityMatrix& nodes, const Graph& g) {
    if (nodes.nodes() != g.n()) throw ValidationError("kernel_baseline: node activity rows must equal n");
    const Matrix& values = nodes.values();
    Vector w(g.m());
    for (Index j = 0; j < g.m(); ++j) w(j) = values.row(g.edge(j).u).dot(values.row(g.edge(j).v));
    return w;
}

std::vector<bool> disparity_backbone(const Graph& g, const Vector& weights, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("disparity_backbone: alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (weights.size() != g.m()) throw ValidationError("disparity_backbone: need one weight per edge");
    if ((weights.array() < 0.0).any() || !weights.allFinite()) {
        throw ValidationError("disparity_backbone: weights must be finite and nonnegative");
    }

    std::vector<double> strength(static_cast<std::size_t>(g.n()), 0.0);
    for (Index j = 0; j < g.m(); ++j) {
        strength[static_cast<std::size_t>(g.edge(j).u)] += weights(j);
        strength[static_cast<std::size_t>(g.edge(j).v)] += weights(j);
    }

    auto flags_from = [&](Index node, double w) {
        const Index k = g.degree(node);
        const double s = strength[static_cast<std::size_t>(node)];
        if (k <= 1 || s <= 0.0) return false;
        const double p = w / s;
        return std::pow(1.0 - p, static_cast<double>(k - 1)) < alpha;
    };

    std::vector<bool> labels(static_cast<std::size_t>(g.m()));
    for (Index j = 0; j < g.m(); ++j) {
        labels[static_cast<std::size_t>(j)] = flags_from(g.edge(j).u, weights(j)) || flags_from(g.edge(j).v, weights(j));
    }
    return labels;
}

std::vector<double> default_alpha_grid() {
    constexpr int count = 50;
    const double lo = std::log(1e-4);
    const double hi = std::log(0.999);
    std::vector<double> grid(count);
    for (int k = 0; k < count; ++k) grid[static_cast<std::size_t>(k)] = std::exp(lo + (hi - lo) * k / (count - 1));
    grid.back() = 0.999;
    return grid;
}

RocPoint confusion_rates(const std::vector<bool>& truth, const std::vector<bool>& predicted) {
    if (truth.size() != predicted.size()) throw ValidationError("roc: label vectors differ in length");
    double tp = 0, fp = 0, pos = 0, neg = 0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
        if (truth[j]) {
            ++pos;
            if (predicted[j]) ++tp;
        } else {
            ++neg;
            if (predicted[j]) ++fp;
        }
    }
    return {neg > 0 ? fp / neg : 0.0, pos > 0 ? tp / pos : 0.0, 0.0};
}

RocCurve roc_curve(const std::vector<bool>& truth, const BackboneScorer& scored, std::span<const double> alpha_grid) {
    const auto positives = std::count(truth.begin(), truth.end(), true);
    const auto negatives = static_cast<std::ptrdiff_t>(truth.size()) - positives;
    if (positives == 0 || negatives == 0) {
        throw ValidationError("roc_curve: degenerate truth with " + std::to_string(positives) + " positives and " +
                              std::to_string(negatives) + " negatives");
    }
    RocCurve curve;
    curve.reserve(alpha_grid.size() + 2);
    curve.push_back({0.0, 0.0, 0.0});
    for (double alpha : alpha_grid) {
        RocPoint p = confusion_rates(truth, scored(alpha));
        p.alpha = alpha;
        curve.push_back(p);
    }
    curve.push_back({1.0, 1.0, 1.0});
    std::stable_sort(curve.begin(), curve.end(), [](const RocPoint& a, const RocPoint& b) {
        return a.fpr < b.fpr || (a.fpr == b.fpr && a.tpr < b.tpr);
    });
    return curve;
}

RocCurve roc_curve(const std::vector<bool>& truth, const BackboneScorer& scored) {
    const auto grid = default_alpha_grid();
    return roc_curve(truth, scored, grid);
}

double auc(const RocCurve& curve) {
    double area = 0.0;
    for (std::size_t k = 1; k < curve.size(); ++k) {
        area += (curve[k].fpr - curve[k - 1].fpr) * (curve[k].tpr + curve[k - 1].tpr) / 2.0;
    }
    return area;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("pearson: inputs differ in length");
    if (a.size() < 2) throw ValidationError("pearson: need at least two values");
    const double count = static_cast<double>(a.size());
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / count;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / count;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw UndefinedError("correlation undefined: zero variance");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(values.size());
    std::size_t start = 0;
    while (start < order.size()) {
        std::size_t end = start + 1;
        while (end < order.size() && values[order[end]] == values[order[start]]) ++end;
        const double rank = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t k = start; k < end; ++k) ranks[order[k]] = rank;
        start = end;
    }
    return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("spearman: inputs differ in length");
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    return pearson(ra, rb);
}

} // namespace edgerec
