#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "conemetric/errors.hpp"

namespace conemetric {

// Discretized torus C / (Z + tau Z): node (i, j) sits at lattice coordinates
// (i/N, j/N), i.e. at z = i/N + tau j/N in the flat chart.
struct TorusGrid {
    int n = 0;
    std::complex<double> tau{0.0, 1.0};

    TorusGrid() = default;
    TorusGrid(int N, std::complex<double> t) : n(N), tau(t) {
        if (N < 32 || (N & (N - 1)) != 0)
            throw validation_error("grid resolution must be a power of two, at least 32");
        if (!(t.imag() > 0.0)) throw validation_error("Im(tau) must be positive");
    }

    double area() const { return tau.imag(); }
    double cell_area() const { return area() / (double(n) * double(n)); }
    // widest node spacing along the two lattice directions
    double spacing() const { return std::max(1.0, std::abs(tau)) / double(n); }
    bool operator==(const TorusGrid& o) const { return n == o.n && tau == o.tau; }

    // shortest representative of the lattice-coordinate offset (da, db),
    // measured in the flat |dz| metric
    double min_image_distance(double da, double db) const;
    // chart displacement (x, y) of that shortest representative
    std::pair<double, double> min_image_vector(double da, double db) const;
};

struct ScalarField {
    TorusGrid grid;
    std::vector<double> v; // row-major, v[i * n + j]

    ScalarField() = default;
    explicit ScalarField(const TorusGrid& g, double fill = 0.0)
        : grid(g), v(std::size_t(g.n) * std::size_t(g.n), fill) {}

    double& at(int i, int j) { return v[std::size_t(i) * grid.n + j]; }
    double at(int i, int j) const { return v[std::size_t(i) * grid.n + j]; }

    double sum() const;     // compensated
    double mean() const;
    double sup_abs() const;
    void require_same_grid(const ScalarField& o) const;
    void require_finite(const char* what) const;
};

// Lattice quadrature of field x weight over the torus: exact for smooth
// periodic integrands (trapezoid rule closes up on itself).
double integrate(const ScalarField& field, const ScalarField& weight);

// Binary container: magic "CMF1", u64 N, f64 Re tau, f64 Im tau, then
// N*N row-major f64 samples. All little-endian.
void write_field(std::ostream& out, const ScalarField& f);
void write_field_file(const std::string& path, const ScalarField& f);
ScalarField read_field(std::istream& in);
ScalarField read_field_file(const std::string& path);

void write_field_csv(std::ostream& out, const ScalarField& f);

} // namespace conemetric
