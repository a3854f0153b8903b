#include "skelcut/graph.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace skelcut {

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

// Splits text into lines, stripping a trailing '\r' so CRLF input parses.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

bool is_blank(const std::string& s) {
    for (char ch : s)
        if (ch != ' ' && ch != '\t') return false;
    return true;
}

// Parses exactly `count` whitespace-separated longs; rejects trailing junk.
bool parse_longs(const std::string& s, long* out, int count) {
    const char* p = s.c_str();
    char* end = nullptr;
    for (int i = 0; i < count; ++i) {
        errno = 0;
        const long v = std::strtol(p, &end, 10);
        if (end == p || errno == ERANGE) return false;
        out[i] = v;
        p = end;
    }
    while (*p == ' ' || *p == '\t') ++p;
    return *p == '\0';
}

bool parse_doubles(const std::string& s, double* out, int count) {
    const char* p = s.c_str();
    char* end = nullptr;
    for (int i = 0; i < count; ++i) {
        errno = 0;
        const double v = std::strtod(p, &end);
        if (end == p) return false;
        out[i] = v;
        p = end;
    }
    while (*p == ' ' || *p == '\t') ++p;
    return *p == '\0';
}

}  // namespace

Graph load_graph(const std::string& text) {
    const auto lines = split_lines(text);
    size_t pos = 0;
    // Returns the 1-based number of the next content line, or -1 at EOF.
    auto next_line = [&]() -> int {
        while (pos < lines.size()) {
            const auto& ln = lines[pos++];
            if (is_blank(ln) || ln[0] == '%') continue;
            return static_cast<int>(pos);
        }
        return -1;
    };

    int ln = next_line();
    if (ln < 0) throw std::runtime_error("empty graph file");
    long header[2];
    if (!parse_longs(lines[ln - 1], header, 2) || header[0] < 0 || header[1] < 0)
        fail(ln, "malformed header, expected \"<V> <E>\"");
    const long n = header[0];
    const long m = header[1];

    std::vector<std::pair<int, int>> edges;
    edges.reserve(m);
    std::unordered_set<long long> seen;
    seen.reserve(m * 2);
    for (long i = 0; i < m; ++i) {
        ln = next_line();
        if (ln < 0)
            throw std::runtime_error("unexpected end of file: expected " + std::to_string(m) +
                                     " edge lines");
        long uv[2];
        if (!parse_longs(lines[ln - 1], uv, 2))
            fail(ln, "malformed edge line, expected \"<u> <v>\"");
        long u = uv[0], v = uv[1];
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n) fail(ln, "vertex out of range");
        if (u == v) fail(ln, "self-loop");
        if (!seen.insert(u * n + v).second) fail(ln, "duplicate edge");
        edges.push_back({static_cast<int>(u), static_cast<int>(v)});
    }

    std::vector<Coord> coords;
    ln = next_line();
    if (ln >= 0 && lines[ln - 1].rfind("#coords", 0) == 0) {
        coords.reserve(n);
        for (long i = 0; i < n; ++i) {
            ln = next_line();
            if (ln < 0)
                throw std::runtime_error("unexpected end of file: expected " + std::to_string(n) +
                                         " coordinate lines");
            double xy[2];
            if (!parse_doubles(lines[ln - 1], xy, 2))
                fail(ln, "malformed coordinate line, expected \"<x> <y>\"");
            coords.push_back({xy[0], xy[1]});
        }
        ln = next_line();
    }
    if (ln >= 0) fail(ln, "unexpected content after graph data");

    return Graph(static_cast<int>(n), std::move(edges), std::move(coords));
}

std::string save_graph(const Graph& g) {
    std::string out;
    out += std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    if (g.has_coords()) {
        out += "#coords\n";
        char buf[64];
        for (const auto& c : g.coords()) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c.x, c.y);
            out += buf;
        }
    }
    return out;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return load_graph(body.str());
}

}  // namespace skelcut
