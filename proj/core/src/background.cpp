#include "conemetric/background.hpp"

#include <cmath>
#include <sstream>

namespace conemetric {

double TorusDivisor::sum_orders() const {
    double s = 0.0;
    for (const auto& p : points) s += p.beta;
    return s;
}

Divisor TorusDivisor::divisor() const {
    std::vector<DivisorEntry> entries;
    for (const auto& p : points) entries.push_back({p.label, p.beta});
    return Divisor(SurfaceSpec(1), std::move(entries));
}

namespace {

// coefficients of t^7 .. t^13 in the 13th-order smoothstep
constexpr double kC[7] = {1716.0, -9009.0, 20020.0, -24024.0, 16380.0, -6006.0, 924.0};

double horner(const double* c, int len, double t) {
    double acc = 0.0;
    for (int k = len - 1; k >= 0; --k) acc = acc * t + c[k];
    return acc;
}

} // namespace

double smoothstep13(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double t7 = t * t * t;
    t7 *= t7;
    t7 *= t; // t^7
    return t7 * horner(kC, 7, t);
}

double smoothstep13_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double c[7];
    for (int k = 0; k < 7; ++k) c[k] = kC[k] * double(7 + k);
    double t6 = t * t * t;
    t6 *= t6; // t^6
    return t6 * horner(c, 7, t);
}

double smoothstep13_d2(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    double c[7];
    for (int k = 0; k < 7; ++k) c[k] = kC[k] * double(7 + k) * double(6 + k);
    double t5 = t * t;
    t5 *= t5;
    t5 *= t; // t^5
    return t5 * horner(c, 7, t);
}

namespace {

// symmetric bump on (0, 1), peak 1, same smoothness class as the step
double bump01(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return smoothstep13(std::min(1.0, 2.0 * t)) * smoothstep13(std::min(1.0, 2.0 * (1.0 - t)));
}

} // namespace

std::vector<bool> BackgroundMetric::region_mask(double factor) const {
    const int n = grid.n;
    std::vector<bool> mask(std::size_t(n) * n, true);
    for (std::size_t pi = 0; pi < divisor.points.size(); ++pi) {
        const auto& p = divisor.points[pi];
        double rad = factor * delta[pi];
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double r = grid.min_image_distance(double(i) / n - p.a, double(j) / n - p.b);
                if (r < rad) mask[std::size_t(i) * n + j] = false;
            }
        }
    }
    return mask;
}

BackgroundMetric build_background(const TorusDivisor& d, double delta,
                                  const TorusGrid& grid) {
    if (!(delta > 0.0)) throw configuration_error("blending radius must be positive");
    if (!(delta > 4.0 * grid.spacing())) {
        std::ostringstream msg;
        msg << "blending radius " << delta << " must exceed four node spacings ("
            << 4.0 * grid.spacing() << ")";
        throw configuration_error(msg.str());
    }
    // the blending disk around each point must embed: no lattice translate
    // of a point may fall inside its own delta-disk
    {
        auto len = [&](double m, double n) {
            return std::abs(std::complex<double>(m, 0.0) + grid.tau * n);
        };
        double lmin = std::min(std::min(len(1, 0), len(0, 1)),
                               std::min(len(1, 1), len(1, -1)));
        if (!(2.0 * delta < lmin))
            throw configuration_error("blending disks wrap around the torus");
    }

    BackgroundMetric bg;
    bg.grid = grid;
    bg.delta.assign(d.points.size(), delta);

    // snap points to nodes; the snapped divisor is what the solve uses
    const int n = grid.n;
    bg.divisor = d;
    for (auto& p : bg.divisor.points) {
        auto wrap = [n](double x) {
            long k = std::lround(x * n);
            k %= n;
            if (k < 0) k += n;
            return double(k) / n;
        };
        p.a = wrap(p.a);
        p.b = wrap(p.b);
    }
    for (std::size_t i = 0; i < bg.divisor.points.size(); ++i) {
        for (std::size_t j = i + 1; j < bg.divisor.points.size(); ++j) {
            const auto& pi = bg.divisor.points[i];
            const auto& pj = bg.divisor.points[j];
            double sep = grid.min_image_distance(pi.a - pj.a, pi.b - pj.b);
            if (!(sep > 4.0 * delta)) {
                std::ostringstream msg;
                msg << "points " << pi.label << " and " << pj.label
                    << " are separated by " << sep << " <= 4 delta";
                throw configuration_error(msg.str());
            }
        }
    }

    bg.w0 = ScalarField(grid);
    bg.rhoK1 = ScalarField(grid);
    const double half = 0.5 * delta;
    const double cell = grid.cell_area();

    for (const auto& p : bg.divisor.points) {
        double defect_sum = 0.0, defect_comp = 0.0;
        double bump_sum = 0.0, bump_comp = 0.0;
        std::vector<double> source(std::size_t(n) * n, 0.0);
        std::vector<double> bump(std::size_t(n) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                std::size_t idx = std::size_t(i) * n + j;
                double r = grid.min_image_distance(double(i) / n - p.a,
                                                   double(j) / n - p.b);
                if (r == 0.0) {
                    // the node at the point itself: finite placeholder for the
                    // log pole; no solve reads it through rhoK1 (zero there)
                    bg.w0.v[idx] += p.beta * std::log(0.5 * grid.spacing());
                    continue;
                }
                double L = std::log(r);
                if (r >= delta) continue;
                if (r <= half) {
                    bg.w0.v[idx] += p.beta * L;
                    continue;
                }
                double t = (r - half) / half;
                double chi = 1.0 - smoothstep13(t);
                double chi1 = -smoothstep13_d1(t) / half;
                double chi2 = -smoothstep13_d2(t) / (half * half);
                bg.w0.v[idx] += p.beta * chi * L;
                double s = -p.beta * (chi2 * L + chi1 * L / r + 2.0 * chi1 / r);
                source[idx] = s;
                double y = s * cell - defect_comp;
                double tt = defect_sum + y;
                defect_comp = (tt - defect_sum) - y;
                defect_sum = tt;
                double bmp = bump01(t);
                bump[idx] = bmp;
                double yb = bmp * cell - bump_comp;
                double tb = bump_sum + yb;
                bump_comp = (tb - bump_sum) - yb;
                bump_sum = tb;
            }
        }
        // lattice defect of this point's compatibility integral; absorbed by
        // a radial in-annulus correction so the discrete identity
        // sum(rho K1) * cell = 2 pi sum(beta) holds to rounding
        double defect = defect_sum - two_pi * p.beta;
        bg.raw_compat_defects.push_back(defect);
        double scale = bump_sum > 0.0 ? defect / bump_sum : 0.0;
        for (std::size_t idx = 0; idx < source.size(); ++idx)
            bg.rhoK1.v[idx] += source[idx] - scale * bump[idx];
    }

    bg.rho = ScalarField(grid);
    bg.K1 = ScalarField(grid);
    for (std::size_t idx = 0; idx < bg.rho.v.size(); ++idx) {
        bg.rho.v[idx] = std::exp(2.0 * bg.w0.v[idx]);
        bg.K1.v[idx] = bg.rhoK1.v[idx] / bg.rho.v[idx];
    }
    bg.rho.require_finite("background density");
    return bg;
}

} // namespace conemetric
