#include "edgerec/activity.hpp"

#include <cmath>
#include <map>

#include "edgerec/errors.hpp"

namespace edgerec {

namespace {

void check_nonnegative(const Matrix& values, const char* what) {
    for (Index c = 0; c < values.cols(); ++c) {
        for (Index r = 0; r < values.rows(); ++r) {
            const double x = values(r, c);
            if (!std::isfinite(x) || x < 0.0) {
                throw ValidationError(std::string(what) + ": entry (" + std::to_string(r) + ", " +
                                      std::to_string(c) + ") must be finite and nonnegative");
            }
        }
    }
}

void check_window(const TimeWindow& w) {
    if (!std::isfinite(w.t0) || !std::isfinite(w.dt) || w.dt <= 0.0) {
        throw ValidationError("time window needs finite t0 and dt > 0");
    }
}

Index count_nonzero(const Matrix& values, Index t) {
    return static_cast<Index>((values.col(t).array() > 0.0).count());
}

} // namespace

EdgeActivityMatrix::EdgeActivityMatrix(Matrix values, TimeWindow window)
    : values_(std::move(values)), window_(window) {
    check_window(window_);
    check_nonnegative(values_, "edge activity");
}

Index EdgeActivityMatrix::active_count(Index t) const { return count_nonzero(values_, t); }

NodeActivityMatrix::NodeActivityMatrix(Matrix values, TimeWindow window)
    : values_(std::move(values)), window_(window) {
    check_window(window_);
    check_nonnegative(values_, "node activity");
}

Index NodeActivityMatrix::active_count(Index t) const { return count_nonzero(values_, t); }

WindowedEvents window_events(const EventList& events, double t0, double dt, Index timesteps) {
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0)) {
        throw ValidationError("window_events: dt must be positive and t0 finite");
    }
    if (timesteps < 1) throw ValidationError("window_events: T must be at least 1");
    if (events.empty()) throw ValidationError("window_events: event list is empty");

    const double t_end = t0 + static_cast<double>(timesteps) * dt;
    std::vector<IdPair> pairs;
    struct Binned {
        std::size_t pair;
        Index t;
        double count;
    };
    std::vector<Binned> binned;
    Index dropped = 0;
    for (const auto& ev : events) {
        if (!std::isfinite(ev.time)) throw ValidationError("window_events: non-finite event time");
        if (!(ev.count > 0.0) || !std::isfinite(ev.count)) {
            throw ValidationError("window_events: event count must be positive");
        }
        if (ev.source == ev.target) {
            throw ValidationError("window_events: self-loop event (\"" + ev.source + "\", \"" + ev.target + "\")");
        }
        if (ev.time < t0 || ev.time >= t_end) {
            ++dropped;
            continue;
        }
        auto t = static_cast<Index>(std::floor((ev.time - t0) / dt));
        // Guard rounding at the upper boundary of the last window.
        if (t >= timesteps) t = timesteps - 1;
        binned.push_back({pairs.size(), t, ev.count});
        pairs.emplace_back(ev.source, ev.target);
    }
    if (binned.empty()) {
        throw ValidationError("window_events: no event falls in [" + std::to_string(t0) + ", " +
                              std::to_string(t_end) + ")");
    }

    Graph g = build_graph(pairs);
    std::map<Edge, Index> edge_index;
    for (Index j = 0; j < g.m(); ++j) edge_index.emplace(g.edge(j), j);

    Matrix values = Matrix::Zero(g.m(), timesteps);
    for (const auto& b : binned) {
        Index u = g.find_node(pairs[b.pair].first);
        Index v = g.find_node(pairs[b.pair].second);
        if (u > v) std::swap(u, v);
        values(edge_index.at(Edge{u, v}), b.t) += b.count;
    }
    WindowedEvents out{std::move(g), EdgeActivityMatrix(std::move(values), TimeWindow{t0, dt}), dropped};
    return out;
}

NodeActivityMatrix project(const IncidenceMatrix& incidence, const EdgeActivityMatrix& activity) {
    if (incidence.cols() != activity.edges()) {
        throw ValidationError("project: incidence has " + std::to_string(incidence.cols()) +
                              " columns but activity has " + std::to_string(activity.edges()) + " rows");
    }
    Matrix nodes = incidence.sparse() * activity.values();
    return NodeActivityMatrix(std::move(nodes), activity.window());
}

} // namespace edgerec
