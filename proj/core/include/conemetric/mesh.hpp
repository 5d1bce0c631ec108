#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "conemetric/divisor.hpp"

namespace conemetric {

// Closed orientable triangle mesh with intrinsic edge lengths. Geometry is
// Euclidean: every triangle is a flat triangle with the stored side lengths,
// so all curvature concentrates at vertices.
struct PolyhedralSurface {
    std::vector<std::string> vertex_labels;
    std::vector<std::array<int, 3>> triangles;

    PolyhedralSurface(std::vector<std::string> labels,
                      std::vector<std::array<int, 3>> tris,
                      std::vector<std::tuple<int, int, double>> edge_lengths);

    std::size_t vertex_count() const { return vertex_labels.size(); }
    std::size_t triangle_count() const { return triangles.size(); }
    std::size_t edge_count() const { return lengths_.size(); }
    int euler() const;
    double edge_length(int a, int b) const;

private:
    // lengths keyed by the sorted vertex pair; validated to cover exactly
    // the triangle edges of a closed surface complex
    std::vector<std::pair<std::pair<int, int>, double>> lengths_;
    void validate() const;
};

// Text format: a counts line "V T E", then V vertex labels (one per line),
// T lines "i j k" of zero-based vertex indices, then E lines "i j length".
PolyhedralSurface read_polyhedral_surface(std::istream& in);
PolyhedralSurface read_polyhedral_surface_file(const std::string& path);

struct AngleDefects {
    Divisor divisor;              // order theta_i / 2pi - 1 at every vertex
    std::vector<double> theta;    // total corner angle per vertex
};

// Total corner angle at each vertex by the law of cosines. A cosine outside
// [-1, 1] by more than 1e-12 is an invalid mesh, not a value to clamp away.
AngleDefects angle_defects(const PolyhedralSurface& mesh);

struct DiscreteGaussBonnet {
    double defect_sum; // sum of (2 pi - theta_i)
    double expected;   // 2 pi chi of the simplicial complex
    double residual;
};

DiscreteGaussBonnet discrete_gauss_bonnet(const PolyhedralSurface& mesh);

} // namespace conemetric
