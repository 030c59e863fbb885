#include "edgerec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include "edgerec/errors.hpp"
#include "json.hpp"

namespace edgerec::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

[[noreturn]] void fail_at(std::string_view name, std::size_t line, std::string_view column, const std::string& what) {
    throw ValidationError(std::string(name) + ":" + std::to_string(line) + ": column '" + std::string(column) +
                          "': " + what);
}

MatrixKind parse_kind(const std::string& text) {
    if (text == "edge") return MatrixKind::Edge;
    if (text == "node") return MatrixKind::Node;
    if (text == "estimate") return MatrixKind::Estimate;
    throw ValidationError("unknown matrix kind '" + text + "'");
}

} // namespace

EventList parse_events(std::istream& in, std::string_view name) {
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> columns;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw ValidationError(std::string(name) + ": missing header row");
    const auto header = split_commas(line);
    width = header.size();
    for (std::size_t k = 0; k < header.size(); ++k) {
        const std::string key(header[k]);
        if (key != "source" && key != "target" && key != "time" && key != "count") {
            fail_at(name, line_no, key, "unexpected column (expected source,target,time[,count])");
        }
        if (!columns.emplace(key, k).second) fail_at(name, line_no, key, "duplicate column");
    }
    for (const char* required : {"source", "target", "time"}) {
        if (!columns.contains(required)) fail_at(name, line_no, required, "required column missing from header");
    }

    EventList events;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != width) {
            throw ValidationError(std::string(name) + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(width) + " fields, found " + std::to_string(fields.size()));
        }
        Event ev;
        ev.source = std::string(fields[columns.at("source")]);
        ev.target = std::string(fields[columns.at("target")]);
        if (ev.source.empty()) fail_at(name, line_no, "source", "empty node id");
        if (ev.target.empty()) fail_at(name, line_no, "target", "empty node id");
        if (ev.source == ev.target) fail_at(name, line_no, "target", "self-loop on '" + ev.source + "'");
        const auto time = parse_number(fields[columns.at("time")]);
        if (!time || !std::isfinite(*time)) fail_at(name, line_no, "time", "not a finite number");
        ev.time = *time;
        if (const auto it = columns.find("count"); it != columns.end() && !fields[it->second].empty()) {
            const auto count = parse_number(fields[it->second]);
            if (!count || !(*count > 0.0) || !std::isfinite(*count)) {
                fail_at(name, line_no, "count", "not a positive finite number");
            }
            ev.count = *count;
        }
        events.push_back(std::move(ev));
    }
    return events;
}

EventList read_events(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open events file " + path.string());
    return parse_events(in, path.string());
}

void write_events(const std::filesystem::path& path, const EventList& events) {
    std::string out = "source,target,time,count\n";
    for (const auto& ev : events) {
        out += ev.source + "," + ev.target + "," + format_double(ev.time) + "," + format_double(ev.count) + "\n";
    }
    write_file(path, out);
}

std::string graph_to_json(const Graph& g) {
    json doc;
    doc["nodes"] = g.node_ids();
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    doc["edges"] = std::move(edges);
    return doc.dump(1) + "\n";
}

Graph graph_from_json(std::string_view text, std::string_view name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(name) + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges")) {
        throw ValidationError(std::string(name) + ": graph JSON needs 'nodes' and 'edges'");
    }
    try {
        auto nodes = doc.at("nodes").get<std::vector<std::string>>();
        std::vector<Edge> edges;
        for (const auto& pair : doc.at("edges")) {
            if (!pair.is_array() || pair.size() != 2) throw ValidationError("edge entries must be [u, v] pairs");
            edges.push_back({pair[0].get<Index>(), pair[1].get<Index>()});
        }
        return Graph(std::move(nodes), std::move(edges));
    } catch (const json::exception& e) {
        throw ValidationError(std::string(name) + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(name) + ": " + e.what());
    }
}

void write_graph(const std::filesystem::path& path, const Graph& g) { write_file(path, graph_to_json(g)); }

Graph read_graph(const std::filesystem::path& path) { return graph_from_json(read_file(path), path.string()); }

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw NumericError("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < length; ++k) {
        out.push_back(hex[digest[k] >> 4]);
        out.push_back(hex[digest[k] & 0xF]);
    }
    return out;
}

std::string file_sha256(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError("write failed for " + path.string());
}

std::string_view to_string(MatrixKind kind) {
    switch (kind) {
    case MatrixKind::Edge: return "edge";
    case MatrixKind::Node: return "node";
    case MatrixKind::Estimate: return "estimate";
    }
    return "edge";
}

std::filesystem::path sidecar_path(const std::filesystem::path& grid) {
    auto sidecar = grid;
    sidecar += ".json";
    return sidecar;
}

std::string format_double(double value) {
    if (value == 0.0) return "0"; // folds -0
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) throw NumericError("format_double failed");
    return std::string(buffer, ptr);
}

std::string matrix_to_csv(const Matrix& values) {
    std::string out;
    for (Index r = 0; r < values.rows(); ++r) {
        for (Index c = 0; c < values.cols(); ++c) {
            if (c > 0) out.push_back(',');
            out += format_double(values(r, c));
        }
        out.push_back('\n');
    }
    return out;
}

Matrix matrix_from_csv(std::string_view text, std::string_view name) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (std::size_t k = 0; k < fields.size(); ++k) {
            const auto value = parse_number(fields[k]);
            if (!value || !std::isfinite(*value)) fail_at(name, line_no, "t=" + std::to_string(k), "not a finite number");
            row.push_back(*value);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ValidationError(std::string(name) + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(rows.front().size()) + " columns, found " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    Matrix values(static_cast<Index>(rows.size()), rows.empty() ? 0 : static_cast<Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) values(static_cast<Index>(r), static_cast<Index>(c)) = rows[r][c];
    }
    return values;
}

void write_matrix(const std::filesystem::path& path, const Matrix& values, const MatrixMeta& meta) {
    write_file(path, matrix_to_csv(values));
    json doc;
    doc["kind"] = std::string(to_string(meta.kind));
    doc["rows"] = meta.rows;
    doc["T"] = meta.timesteps;
    doc["t0"] = meta.window.t0;
    doc["dt"] = meta.window.dt;
    doc["graph_sha256"] = meta.graph_sha256;
    write_file(sidecar_path(path), doc.dump(1) + "\n");
}

LoadedMatrix read_matrix(const std::filesystem::path& path, std::optional<std::string> graph_sha256) {
    const auto side = sidecar_path(path);
    LoadedMatrix loaded;
    try {
        const json doc = json::parse(read_file(side));
        loaded.meta.kind = parse_kind(doc.at("kind").get<std::string>());
        loaded.meta.rows = doc.at("rows").get<Index>();
        loaded.meta.timesteps = doc.at("T").get<Index>();
        loaded.meta.window.t0 = doc.at("t0").get<double>();
        loaded.meta.window.dt = doc.at("dt").get<double>();
        loaded.meta.graph_sha256 = doc.at("graph_sha256").get<std::string>();
    } catch (const json::exception& e) {
        throw ValidationError(side.string() + ": " + e.what());
    }
    loaded.values = matrix_from_csv(read_file(path), path.string());
    if (loaded.values.rows() == 0 && loaded.meta.rows > 0) {
        throw ValidationError(path.string() + ": grid is empty but sidecar declares " + std::to_string(loaded.meta.rows) + " rows");
    }
    if (loaded.values.rows() != loaded.meta.rows ||
        (loaded.values.rows() > 0 && loaded.values.cols() != loaded.meta.timesteps)) {
        throw ValidationError(path.string() + ": grid is " + std::to_string(loaded.values.rows()) + " x " +
                              std::to_string(loaded.values.cols()) + " but sidecar declares " +
                              std::to_string(loaded.meta.rows) + " x " + std::to_string(loaded.meta.timesteps));
    }
    if (loaded.values.rows() == 0) loaded.values.resize(0, loaded.meta.timesteps);
    if (graph_sha256 && *graph_sha256 != loaded.meta.graph_sha256) {
        throw ValidationError(path.string() + ": sidecar graph hash does not match the graph file");
    }
    return loaded;
}

void Table::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) throw std::logic_error("Table: row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t k = 0; k < columns_.size(); ++k) {
        if (k > 0) out.push_back(',');
        out += columns_[k];
    }
    out.push_back('\n');
    for (const auto& row : rows_) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out.push_back(',');
            out += row[k];
        }
        out.push_back('\n');
    }
    return out;
}

} // namespace edgerec::io
