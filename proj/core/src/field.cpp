#include "conemetric/field.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace conemetric {

double TorusGrid::min_image_distance(double da, double db) const {
    auto [x, y] = min_image_vector(da, db);
    return std::hypot(x, y);
}

std::pair<double, double> TorusGrid::min_image_vector(double da, double db) const {
    da -= std::round(da);
    db -= std::round(db);
    double best = std::numeric_limits<double>::infinity();
    std::pair<double, double> out{0.0, 0.0};
    // reduced offsets lie in [-1/2, 1/2)^2; a 5x5 shift search covers even
    // strongly sheared lattices
    for (int k = -2; k <= 2; ++k) {
        for (int l = -2; l <= 2; ++l) {
            double a = da + k, b = db + l;
            double x = a + tau.real() * b;
            double y = tau.imag() * b;
            double d = std::hypot(x, y);
            if (d < best) {
                best = d;
                out = {x, y};
            }
        }
    }
    return out;
}

double ScalarField::sum() const {
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

double ScalarField::mean() const { return sum() / double(v.size()); }

double ScalarField::sup_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void ScalarField::require_same_grid(const ScalarField& o) const {
    if (!(grid == o.grid)) throw shape_error("fields live on different grids");
}

void ScalarField::require_finite(const char* what) const {
    for (double x : v)
        if (!std::isfinite(x))
            throw validation_error(std::string(what) + " contains a non-finite sample");
}

double integrate(const ScalarField& field, const ScalarField& weight) {
    field.require_same_grid(weight);
    double s = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < field.v.size(); ++i) {
        double y = field.v[i] * weight.v[i] - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s * field.grid.cell_area();
}

namespace {

constexpr char kMagic[4] = {'C', 'M', 'F', '1'};

template <typename T>
void put(std::ostream& out, T value) {
    // assumes a little-endian host, checked at startup below
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T value;
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw parse_error("truncated field container");
    return value;
}

[[maybe_unused]] const bool kLittleEndianChecked = [] {
    std::uint16_t probe = 1;
    char low;
    std::memcpy(&low, &probe, 1);
    if (low != 1) throw std::runtime_error("field container IO requires a little-endian host");
    return true;
}();

} // namespace

void write_field(std::ostream& out, const ScalarField& f) {
    out.write(kMagic, 4);
    put<std::uint64_t>(out, std::uint64_t(f.grid.n));
    put<double>(out, f.grid.tau.real());
    put<double>(out, f.grid.tau.imag());
    out.write(reinterpret_cast<const char*>(f.v.data()),
              std::streamsize(f.v.size() * sizeof(double)));
    if (!out) throw error("field write failed");
}

void write_field_file(const std::string& path, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    write_field(out, f);
}

ScalarField read_field(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw parse_error("not a CMF1 field container");
    auto n64 = get<std::uint64_t>(in);
    double tre = get<double>(in);
    double tim = get<double>(in);
    if (n64 > (1u << 16)) throw parse_error("unreasonable field resolution");
    TorusGrid grid(int(n64), {tre, tim});
    ScalarField f(grid);
    in.read(reinterpret_cast<char*>(f.v.data()),
            std::streamsize(f.v.size() * sizeof(double)));
    if (!in) throw parse_error("truncated field container payload");
    return f;
}

ScalarField read_field_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open field file: " + path);
    return read_field(in);
}

void write_field_csv(std::ostream& out, const ScalarField& f) {
    out.precision(17);
    for (int i = 0; i < f.grid.n; ++i) {
        for (int j = 0; j < f.grid.n; ++j) {
            if (j) out << ',';
            out << f.at(i, j);
        }
        out << '\n';
    }
}

} // namespace conemetric
