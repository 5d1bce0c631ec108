#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "conemetric/mesh.hpp"

using namespace conemetric;

namespace {

std::string data_path(const char* name) {
    return std::string(CONEMETRIC_TEST_DATA) + "/" + name;
}

PolyhedralSurface unit_tetrahedron() {
    return PolyhedralSurface({"a", "b", "c", "d"},
                             {{{0, 1, 2}}, {{0, 3, 1}}, {{1, 3, 2}}, {{2, 3, 0}}},
                             {{0, 1, 1.0},
                              {0, 2, 1.0},
                              {0, 3, 1.0},
                              {1, 2, 1.0},
                              {1, 3, 1.0},
                              {2, 3, 1.0}});
}

// midpoint refinement: every edge splits, every face becomes four; all
// edge lengths halve (midsegments of equilateral triangles)
PolyhedralSurface subdivided_tetrahedron() {
    std::vector<std::array<int, 3>> base = {
        {{0, 1, 2}}, {{0, 3, 1}}, {{1, 3, 2}}, {{2, 3, 0}}};
    std::map<std::pair<int, int>, int> mid;
    int next = 4;
    auto midpoint = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = mid.find(key);
        if (it == mid.end()) it = mid.insert({key, next++}).first;
        return it->second;
    };
    std::vector<std::array<int, 3>> tris;
    for (auto [a, b, c] : base) {
        int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
        tris.push_back({a, ab, ca});
        tris.push_back({b, bc, ab});
        tris.push_back({c, ca, bc});
        tris.push_back({ab, bc, ca});
    }
    std::map<std::pair<int, int>, double> edges;
    for (const auto& t : tris)
        for (int e = 0; e < 3; ++e)
            edges[std::minmax(t[e], t[(e + 1) % 3])] = 0.5;
    std::vector<std::string> labels;
    for (int i = 0; i < next; ++i) labels.push_back("v" + std::to_string(i));
    std::vector<std::tuple<int, int, double>> lengths;
    for (const auto& [key, len] : edges) lengths.push_back({key.first, key.second, len});
    return PolyhedralSurface(std::move(labels), std::move(tris), std::move(lengths));
}

} // namespace

TEST(Mesh, TetrahedronDefects) {
    PolyhedralSurface t = unit_tetrahedron();
    EXPECT_EQ(t.euler(), 2);
    auto defects = angle_defects(t);
    ASSERT_EQ(defects.theta.size(), 4u);
    for (double theta : defects.theta) EXPECT_NEAR(theta, pi, 1e-13);
    for (const auto& e : defects.divisor.entries) EXPECT_NEAR(e.beta, -0.5, 1e-13);
    auto gb = discrete_gauss_bonnet(t);
    EXPECT_NEAR(gb.defect_sum, 2.0 * two_pi, 1e-12);
    EXPECT_DOUBLE_EQ(gb.expected, 2.0 * two_pi);
    EXPECT_LT(gb.residual, 1e-12);
}

TEST(Mesh, FixtureFilesRoundTrip) {
    auto tetra = read_polyhedral_surface_file(data_path("tetrahedron.off"));
    EXPECT_EQ(tetra.vertex_count(), 4u);
    EXPECT_LT(discrete_gauss_bonnet(tetra).residual, 1e-12);

    auto cube = read_polyhedral_surface_file(data_path("cube.off"));
    EXPECT_EQ(cube.vertex_count(), 8u);
    EXPECT_EQ(cube.edge_count(), 18u);
    EXPECT_EQ(cube.euler(), 2);
    auto defects = angle_defects(cube);
    // three square corners meet at each cube vertex
    for (double theta : defects.theta) EXPECT_NEAR(theta, 1.5 * pi, 1e-12);
    EXPECT_LT(discrete_gauss_bonnet(cube).residual, 1e-12);

    auto torus = read_polyhedral_surface_file(data_path("torus_grid.off"));
    EXPECT_EQ(torus.euler(), 0);
    auto gb = discrete_gauss_bonnet(torus);
    EXPECT_DOUBLE_EQ(gb.expected, 0.0);
    EXPECT_LT(gb.residual, 1e-12);
}

TEST(Mesh, DefectSumSurvivesRefinement) {
    auto fine = subdivided_tetrahedron();
    EXPECT_EQ(fine.vertex_count(), 10u);
    EXPECT_EQ(fine.triangle_count(), 16u);
    EXPECT_EQ(fine.edge_count(), 24u);
    EXPECT_EQ(fine.euler(), 2);
    auto gb = discrete_gauss_bonnet(fine);
    EXPECT_NEAR(gb.defect_sum, 2.0 * two_pi, 1e-12);
    // the original vertices keep their cone angle; midpoints are flat
    auto defects = angle_defects(fine);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(defects.theta[i], pi, 1e-13);
    for (int i = 4; i < 10; ++i) EXPECT_NEAR(defects.theta[i], two_pi, 1e-13);
}

TEST(Mesh, ParserReadsCommentsAndWhitespace) {
    std::istringstream in(
        "# a tetrahedron\n"
        "4 4 6\n"
        "a\nb\nc\nd\n"
        "0 1 2\n0 3 1\n1 3 2\n2 3 0\n"
        "# edges\n"
        "0 1 1.0\n0 2 1.0\n0 3 1.0\n1 2 1.0\n1 3 1.0\n2 3 1.0\n");
    auto t = read_polyhedral_surface(in);
    EXPECT_EQ(t.triangle_count(), 4u);
}

TEST(Mesh, ParserRejectsGarbage) {
    std::istringstream bad("4 4\n");
    EXPECT_THROW(read_polyhedral_surface(bad), parse_error);
    std::istringstream truncated("4 4 6\na\nb\nc\n");
    EXPECT_THROW(read_polyhedral_surface(truncated), parse_error);
}

TEST(Mesh, ValidationCatchesBrokenComplexes) {
    // nonpositive length
    EXPECT_THROW(PolyhedralSurface({"a", "b", "c", "d"},
                                   {{{0, 1, 2}}, {{0, 3, 1}}, {{1, 3, 2}}, {{2, 3, 0}}},
                                   {{0, 1, -1.0},
                                    {0, 2, 1.0},
                                    {0, 3, 1.0},
                                    {1, 2, 1.0},
                                    {1, 3, 1.0},
                                    {2, 3, 1.0}}),
                 invalid_mesh_error);
    // triangle inequality must be strict
    EXPECT_THROW(PolyhedralSurface({"a", "b", "c", "d"},
                                   {{{0, 1, 2}}, {{0, 3, 1}}, {{1, 3, 2}}, {{2, 3, 0}}},
                                   {{0, 1, 2.0},
                                    {0, 2, 1.0},
                                    {0, 3, 1.0},
                                    {1, 2, 1.0},
                                    {1, 3, 1.0},
                                    {2, 3, 1.0}}),
                 invalid_mesh_error);
    // missing edge length
    EXPECT_THROW(PolyhedralSurface({"a", "b", "c", "d"},
                                   {{{0, 1, 2}}, {{0, 3, 1}}, {{1, 3, 2}}, {{2, 3, 0}}},
                                   {{0, 1, 1.0},
                                    {0, 2, 1.0},
                                    {0, 3, 1.0},
                                    {1, 2, 1.0},
                                    {1, 3, 1.0}}),
                 invalid_mesh_error);
    // a boundary edge (single triangle is not closed)
    EXPECT_THROW(PolyhedralSurface({"a", "b", "c"}, {{{0, 1, 2}}},
                                   {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}),
                 invalid_mesh_error);
    // degenerate triangle with a repeated vertex
    EXPECT_THROW(PolyhedralSurface({"a", "b", "c", "d"},
                                   {{{0, 1, 1}}, {{0, 3, 1}}, {{1, 3, 2}}, {{2, 3, 0}}},
                                   {{0, 1, 1.0},
                                    {0, 2, 1.0},
                                    {0, 3, 1.0},
                                    {1, 2, 1.0},
                                    {1, 3, 1.0},
                                    {2, 3, 1.0}}),
                 invalid_mesh_error);
}

TEST(Mesh, AcceptsFlippedWindingOnOrientableComplex) {
    // windings are free: the complex only has to admit a consistent orientation
    PolyhedralSurface flipped({"a", "b", "c", "d"},
                              {{{0, 1, 2}}, {{0, 1, 3}}, {{1, 3, 2}}, {{2, 3, 0}}},
                              {{0, 1, 1.0},
                               {0, 2, 1.0},
                               {0, 3, 1.0},
                               {1, 2, 1.0},
                               {1, 3, 1.0},
                               {2, 3, 1.0}});
    auto gb = discrete_gauss_bonnet(flipped);
    EXPECT_NEAR(gb.defect_sum, 4.0 * pi, 1e-12);
}

TEST(Mesh, RejectsNonOrientableComplex) {
    // 6-vertex projective plane: closed (15 edges, all doubly covered,
    // links are 5-cycles) but no consistent orientation exists
    std::vector<std::array<int, 3>> faces = {{{0, 1, 3}},
                                             {{0, 1, 5}},
                                             {{0, 2, 4}},
                                             {{0, 2, 5}},
                                             {{0, 3, 4}},
                                             {{1, 2, 3}},
                                             {{1, 2, 4}},
                                             {{1, 4, 5}},
                                             {{2, 3, 5}},
                                             {{3, 4, 5}}};
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) edges.push_back({i, j, 1.0});
    EXPECT_THROW(PolyhedralSurface({"u", "v", "w", "x", "y", "z"}, faces, edges),
                 invalid_mesh_error);
}

TEST(Mesh, RejectsDisconnectedComplex) {
    // two disjoint tetrahedra in one container
    std::vector<std::string> labels;
    for (int i = 0; i < 8; ++i) labels.push_back("v" + std::to_string(i));
    std::vector<std::array<int, 3>> tris;
    std::vector<std::tuple<int, int, double>> edges;
    for (int off : {0, 4}) {
        for (auto t : {std::array<int, 3>{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}})
            tris.push_back({t[0] + off, t[1] + off, t[2] + off});
        for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})
            edges.push_back({a + off, b + off, 1.0});
    }
    EXPECT_THROW(PolyhedralSurface(labels, tris, edges), invalid_mesh_error);
}

TEST(Mesh, RejectsLoopEdges) {
    EXPECT_THROW(PolyhedralSurface({"a"}, {{{0, 0, 0}}}, {{0, 0, 1.0}}),
                 invalid_mesh_error);
}

TEST(Mesh, EdgeLengthLookup) {
    auto t = unit_tetrahedron();
    EXPECT_DOUBLE_EQ(t.edge_length(2, 3), 1.0);
    EXPECT_DOUBLE_EQ(t.edge_length(3, 2), 1.0);
    EXPECT_THROW(t.edge_length(0, 0), invalid_mesh_error);
}
