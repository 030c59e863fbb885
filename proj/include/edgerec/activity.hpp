#pragma once

#include <string>
#include <vector>

#include "edgerec/graph.hpp"
#include "edgerec/types.hpp"

namespace edgerec {

/// Half-open time windows [t0 + t*dt, t0 + (t+1)*dt).
struct TimeWindow {
    double t0 = 0.0;
    double dt = 1.0;

    bool operator==(const TimeWindow&) const = default;
};

/// m x T nonnegative activity per edge per timestep, rows in canonical edge
/// order.
class EdgeActivityMatrix {
  public:
    EdgeActivityMatrix() = default;
    /// Throws ValidationError on negative or non-finite entries.
    explicit EdgeActivityMatrix(Matrix values, TimeWindow window = {});

    Index edges() const { return values_.rows(); }
    Index timesteps() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    const TimeWindow& window() const { return window_; }

    /// Number of nonzero entries in column t (active edges s_t).
    Index active_count(Index t) const;

    bool operator==(const EdgeActivityMatrix& o) const { return window_ == o.window_ && values_ == o.values_; }

  private:
    Matrix values_;
    TimeWindow window_;
};

/// n x T nonnegative aggregated activity per node.
class NodeActivityMatrix {
  public:
    NodeActivityMatrix() = default;
    explicit NodeActivityMatrix(Matrix values, TimeWindow window = {});

    Index nodes() const { return values_.rows(); }
    Index timesteps() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    const TimeWindow& window() const { return window_; }

    Index active_count(Index t) const;

    bool operator==(const NodeActivityMatrix& o) const { return window_ == o.window_ && values_ == o.values_; }

  private:
    Matrix values_;
    TimeWindow window_;
};

struct Event {
    std::string source;
    std::string target;
    double time = 0.0;
    double count = 1.0;
};

using EventList = std::vector<Event>;

struct WindowedEvents {
    Graph graph;
    EdgeActivityMatrix activity;
    Index dropped = 0; ///< events outside [t0, t0 + T*dt)
};

/// Bins events into T half-open windows of width dt starting at t0.
/// The graph holds exactly the edges with at least one in-range event.
/// Throws ValidationError for dt <= 0, T < 1, invalid events, or when no
/// event falls in range.
WindowedEvents window_events(const EventList& events, double t0, double dt, Index timesteps);

/// N = B * E.
NodeActivityMatrix project(const IncidenceMatrix& incidence, const EdgeActivityMatrix& activity);

} // namespace edgerec
