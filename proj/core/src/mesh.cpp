#include "conemetric/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace conemetric {

namespace {

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

} // namespace

PolyhedralSurface::PolyhedralSurface(std::vector<std::string> labels,
                                     std::vector<std::array<int, 3>> tris,
                                     std::vector<std::tuple<int, int, double>> edge_lengths)
    : vertex_labels(std::move(labels)), triangles(std::move(tris)) {
    for (const auto& [a, b, len] : edge_lengths) {
        if (!(len > 0.0)) throw invalid_mesh_error("edge lengths must be positive");
        lengths_.push_back({ordered(a, b), len});
    }
    std::sort(lengths_.begin(), lengths_.end());
    validate();
}

double PolyhedralSurface::edge_length(int a, int b) const {
    auto key = ordered(a, b);
    auto it = std::lower_bound(lengths_.begin(), lengths_.end(), key,
                               [](const auto& e, const auto& k) { return e.first < k; });
    if (it == lengths_.end() || it->first != key) {
        std::ostringstream msg;
        msg << "no length for edge (" << a << ", " << b << ")";
        throw invalid_mesh_error(msg.str());
    }
    return it->second;
}

int PolyhedralSurface::euler() const {
    return int(vertex_count()) - int(edge_count()) + int(triangle_count());
}

void PolyhedralSurface::validate() const {
    const int V = int(vertex_count());
    for (std::size_t i = 1; i < lengths_.size(); ++i)
        if (lengths_[i].first == lengths_[i - 1].first)
            throw invalid_mesh_error("duplicate edge in the length list");
    for (const auto& [edge, len] : lengths_) {
        if (edge.first < 0 || edge.second >= V)
            throw invalid_mesh_error("edge endpoint out of range");
        if (edge.first == edge.second)
            throw invalid_mesh_error(
                "loop edge: pair-keyed lengths cannot express one-vertex complexes");
    }

    // each triangle edge must be listed and shared by exactly two triangles
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& t : triangles) {
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            throw invalid_mesh_error("degenerate triangle (repeated vertex)");
        for (int v : t)
            if (v < 0 || v >= V) throw invalid_mesh_error("triangle vertex out of range");
        double a = edge_length(t[1], t[2]);
        double b = edge_length(t[0], t[2]);
        double c = edge_length(t[0], t[1]);
        if (!(a < b + c && b < a + c && c < a + b))
            throw invalid_mesh_error("triangle inequality fails");
        edge_use[ordered(t[0], t[1])]++;
        edge_use[ordered(t[1], t[2])]++;
        edge_use[ordered(t[0], t[2])]++;
    }
    if (edge_use.size() != lengths_.size())
        throw invalid_mesh_error("edge-length list does not match the triangle edges");
    for (const auto& [edge, uses] : edge_use)
        if (uses != 2)
            throw invalid_mesh_error("not a closed surface: an edge is not in exactly two triangles");

    // connected, and consistently orientable across shared edges
    {
        std::map<std::pair<int, int>, std::vector<int>> by_edge;
        for (int ti = 0; ti < int(triangles.size()); ++ti) {
            const auto& t = triangles[ti];
            by_edge[ordered(t[0], t[1])].push_back(ti);
            by_edge[ordered(t[1], t[2])].push_back(ti);
            by_edge[ordered(t[0], t[2])].push_back(ti);
        }
        // +1 if the stored winding of triangle ti traverses a -> b, else -1
        auto edge_sign = [&](int ti, int a, int b) {
            const auto& t = triangles[ti];
            for (int i = 0; i < 3; ++i)
                if (t[i] == a && t[(i + 1) % 3] == b) return 1;
            return -1;
        };
        std::vector<int> orient(triangles.size(), 0); // 0 unvisited, +1 keep, -1 flip
        std::vector<int> stack{0};
        orient[0] = 1;
        int seen = 1;
        while (!stack.empty()) {
            int ti = stack.back();
            stack.pop_back();
            const auto& t = triangles[ti];
            for (int i = 0; i < 3; ++i) {
                int a = t[i], b = t[(i + 1) % 3];
                for (int tj : by_edge[ordered(a, b)]) {
                    if (tj == ti) continue;
                    // adjacent faces must traverse the shared edge oppositely
                    int want = -orient[ti] * edge_sign(ti, a, b) * edge_sign(tj, a, b);
                    if (orient[tj] == 0) {
                        orient[tj] = want;
                        stack.push_back(tj);
                        ++seen;
                    } else if (orient[tj] != want) {
                        throw invalid_mesh_error("mesh is not orientable");
                    }
                }
            }
        }
        if (seen != int(triangles.size()))
            throw invalid_mesh_error("mesh is not connected");
    }

    // the link of every vertex must be a single cycle
    for (int v = 0; v < V; ++v) {
        std::map<int, int> degree;
        int incident = 0;
        for (const auto& t : triangles) {
            int pos = -1;
            for (int i = 0; i < 3; ++i)
                if (t[i] == v) pos = i;
            if (pos < 0) continue;
            ++incident;
            degree[t[(pos + 1) % 3]]++;
            degree[t[(pos + 2) % 3]]++;
        }
        if (incident == 0)
            throw invalid_mesh_error("isolated vertex " + vertex_labels[v]);
        for (const auto& [w, deg] : degree)
            if (deg != 2)
                throw invalid_mesh_error("vertex link is not a single cycle at " +
                                         vertex_labels[v]);
        if (int(degree.size()) != incident)
            throw invalid_mesh_error("vertex link is not a single cycle at " +
                                     vertex_labels[v]);
    }
}

PolyhedralSurface read_polyhedral_surface(std::istream& in) {
    auto next_data_line = [&](std::string& line) {
        while (std::getline(in, line)) {
            auto pos = line.find('#');
            if (pos != std::string::npos) line.erase(pos);
            if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
        }
        return false;
    };
    std::string line;
    if (!next_data_line(line)) throw parse_error("empty mesh file");
    std::istringstream counts(line);
    long long V = 0, T = 0, E = 0;
    if (!(counts >> V >> T >> E) || V <= 0 || T <= 0 || E <= 0)
        throw parse_error("expected counts line: V T E");

    std::vector<std::string> labels;
    for (long long i = 0; i < V; ++i) {
        if (!next_data_line(line)) throw parse_error("missing vertex label");
        std::istringstream ls(line);
        std::string label;
        ls >> label;
        labels.push_back(label);
    }
    std::vector<std::array<int, 3>> tris;
    for (long long i = 0; i < T; ++i) {
        if (!next_data_line(line)) throw parse_error("missing triangle line");
        std::istringstream ts(line);
        int a, b, c;
        if (!(ts >> a >> b >> c)) throw parse_error("expected triangle: i j k");
        tris.push_back({a, b, c});
    }
    std::vector<std::tuple<int, int, double>> lens;
    for (long long i = 0; i < E; ++i) {
        if (!next_data_line(line)) throw parse_error("missing edge-length line");
        std::istringstream es(line);
        int a, b;
        double len;
        if (!(es >> a >> b >> len)) throw parse_error("expected edge length: i j length");
        lens.push_back({a, b, len});
    }
    return PolyhedralSurface(std::move(labels), std::move(tris), std::move(lens));
}

PolyhedralSurface read_polyhedral_surface_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open mesh file: " + path);
    return read_polyhedral_surface(in);
}

AngleDefects angle_defects(const PolyhedralSurface& mesh) {
    const int V = int(mesh.vertex_count());
    std::vector<double> theta(V, 0.0);
    for (const auto& t : mesh.triangles) {
        for (int i = 0; i < 3; ++i) {
            int v = t[i], a = t[(i + 1) % 3], b = t[(i + 2) % 3];
            double lva = mesh.edge_length(v, a);
            double lvb = mesh.edge_length(v, b);
            double lab = mesh.edge_length(a, b);
            double c = (lva * lva + lvb * lvb - lab * lab) / (2.0 * lva * lvb);
            if (std::abs(c) > 1.0 + 1e-12)
                throw invalid_mesh_error("corner cosine outside [-1, 1] beyond tolerance");
            theta[v] += std::acos(std::clamp(c, -1.0, 1.0));
        }
    }
    std::vector<DivisorEntry> entries;
    for (int v = 0; v < V; ++v)
        entries.push_back({mesh.vertex_labels[v], theta[v] / two_pi - 1.0});
    // genus from chi = 2 - 2g; validate() guarantees a closed orientable complex
    int g = (2 - mesh.euler()) / 2;
    return {Divisor(SurfaceSpec(g), std::move(entries)), std::move(theta)};
}

DiscreteGaussBonnet discrete_gauss_bonnet(const PolyhedralSurface& mesh) {
    auto defects = angle_defects(mesh);
    double sum = 0.0;
    for (double th : defects.theta) sum += two_pi - th;
    double expected = two_pi * double(mesh.euler());
    return {sum, expected, std::abs(sum - expected)};
}

} // namespace conemetric
