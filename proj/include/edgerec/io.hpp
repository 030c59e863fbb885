#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "edgerec/activity.hpp"
#include "edgerec/graph.hpp"
#include "edgerec/types.hpp"

namespace edgerec::io {

/// Events file: UTF-8 CSV with header `source,target,time[,count]`.
/// Errors carry the line number and column name.
EventList parse_events(std::istream& in, std::string_view name = "<events>");
EventList read_events(const std::filesystem::path& path);
void write_events(const std::filesystem::path& path, const EventList& events);

/// Graph file: JSON object with sorted `nodes` and sorted `edges` index pairs.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(std::string_view text, std::string_view name = "<graph>");
void write_graph(const std::filesystem::path& path, const Graph& g);
Graph read_graph(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
/// Writes atomically enough for batch use: truncates and replaces content.
void write_file(const std::filesystem::path& path, std::string_view content);

enum class MatrixKind { Edge, Node, Estimate };

std::string_view to_string(MatrixKind kind);

/// Sidecar stored next to every matrix grid as `<grid>.json`.
struct MatrixMeta {
    MatrixKind kind = MatrixKind::Edge;
    Index rows = 0;
    Index timesteps = 0;
    TimeWindow window;
    std::string graph_sha256;

    bool operator==(const MatrixMeta&) const = default;
};

std::filesystem::path sidecar_path(const std::filesystem::path& grid);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

std::string matrix_to_csv(const Matrix& values);
Matrix matrix_from_csv(std::string_view text, std::string_view name = "<matrix>");

void write_matrix(const std::filesystem::path& path, const Matrix& values, const MatrixMeta& meta);

struct LoadedMatrix {
    Matrix values;
    MatrixMeta meta;
};

/// Reads a grid and its sidecar. When `graph_sha256` is given it must match
/// the sidecar's hash; shapes must match the sidecar.
LoadedMatrix read_matrix(const std::filesystem::path& path, std::optional<std::string> graph_sha256 = std::nullopt);

/// Plot-ready table: header row plus one observation per row.
class Table {
  public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    /// Cells are preformatted; the count must match the header.
    void add_row(std::vector<std::string> cells);
    std::string to_csv() const;
    std::size_t size() const { return rows_.size(); }

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace edgerec::io
