#include "conemetric/solver.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace conemetric {

namespace {

inline int wrap(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

} // namespace

ScalarField fd4_delta0(const ScalarField& u) {
    const int n = u.grid.n;
    const double h = 1.0 / double(n);
    const double re = u.grid.tau.real(), im = u.grid.tau.imag();
    const double caa = 1.0 + (re / im) * (re / im);
    const double cab = -re / (im * im);
    const double cbb = 1.0 / (im * im);

    auto at = [&](int i, int j) { return u.at(wrap(i, n), wrap(j, n)); };
    ScalarField out(u.grid);
    const double inv12h2 = 1.0 / (12.0 * h * h);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double daa = (-at(i - 2, j) + 16.0 * at(i - 1, j) - 30.0 * at(i, j) +
                          16.0 * at(i + 1, j) - at(i + 2, j)) * inv12h2;
            double dbb = (-at(i, j - 2) + 16.0 * at(i, j - 1) - 30.0 * at(i, j) +
                          16.0 * at(i, j + 1) - at(i, j + 2)) * inv12h2;
            double mixed = 0.0;
            if (cab != 0.0) {
                // fourth-order first-derivative stencil applied in each axis
                auto da = [&](int jj) {
                    return (at(i - 2, jj) - 8.0 * at(i - 1, jj) + 8.0 * at(i + 1, jj) -
                            at(i + 2, jj)) / (12.0 * h);
                };
                mixed = (da(j - 2) - 8.0 * da(j - 1) + 8.0 * da(j + 1) - da(j + 2)) /
                        (12.0 * h);
            }
            out.at(i, j) = -(caa * daa + 2.0 * cab * mixed + cbb * dbb);
        }
    }
    return out;
}

double curvature_deviation_sup(const BackgroundMetric& bg, const ScalarField& u,
                               const ScalarField* K_target, double region_factor) {
    u.require_same_grid(bg.w0);
    if (K_target) K_target->require_same_grid(bg.w0);
    ScalarField lap = fd4_delta0(u);
    auto mask = bg.region_mask(region_factor);
    double sup = 0.0;
    for (std::size_t idx = 0; idx < lap.v.size(); ++idx) {
        if (!mask[idx]) continue;
        double wt = u.v[idx] + bg.w0.v[idx];
        double k = std::exp(-2.0 * wt) * (lap.v[idx] + bg.rhoK1.v[idx]);
        double target = K_target ? K_target->v[idx] : 0.0;
        sup = std::max(sup, std::abs(k - target));
    }
    return sup;
}

namespace {

// periodic Catmull-Rom interpolation at fractional lattice coordinates
double interp_bicubic(const ScalarField& f, double a, double b) {
    const int n = f.grid.n;
    double ga = a * n, gb = b * n;
    double fa = std::floor(ga), fb = std::floor(gb);
    int ia = int(fa), ib = int(fb);
    double ta = ga - fa, tb = gb - fb;
    auto weights = [](double t, double w[4]) {
        w[0] = -0.5 * t + t * t - 0.5 * t * t * t;
        w[1] = 1.0 - 2.5 * t * t + 1.5 * t * t * t;
        w[2] = 0.5 * t + 2.0 * t * t - 1.5 * t * t * t;
        w[3] = -0.5 * t * t + 0.5 * t * t * t;
    };
    double wa[4], wb[4];
    weights(ta, wa);
    weights(tb, wb);
    double acc = 0.0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            acc += wa[p] * wb[q] * f.at(wrap(ia + p - 1, n), wrap(ib + q - 1, n));
    return acc;
}

// analytic w0 at an arbitrary chart point given by lattice coordinates
double w0_analytic(const BackgroundMetric& bg, double a, double b) {
    double w = 0.0;
    for (std::size_t pi = 0; pi < bg.divisor.points.size(); ++pi) {
        const auto& p = bg.divisor.points[pi];
        double r = bg.grid.min_image_distance(a - p.a, b - p.b);
        if (r >= bg.delta[pi] || r == 0.0) continue;
        double half = 0.5 * bg.delta[pi];
        double chi = r <= half ? 1.0 : 1.0 - smoothstep13((r - half) / half);
        w += p.beta * chi * std::log(r);
    }
    return w;
}

double circle_length(const BackgroundMetric& bg, const ScalarField& u,
                     const TorusPoint& p, double eps) {
    const int M = 720;
    const double re = bg.grid.tau.real(), im = bg.grid.tau.imag();
    double sum = 0.0, comp = 0.0;
    for (int k = 0; k < M; ++k) {
        double phi = (double(k) + 0.5) * (two_pi / M);
        double x = eps * std::cos(phi), y = eps * std::sin(phi);
        // chart offset back to lattice coordinates
        double db = y / im;
        double da = x - re * db;
        double a = p.a + da, b = p.b + db;
        double wt = interp_bicubic(u, a, b) + w0_analytic(bg, a, b);
        double val = std::exp(wt) - comp;
        double t = sum + val;
        comp = (t - sum) - val;
        sum = t;
    }
    return sum * eps * (two_pi / M);
}

} // namespace

std::vector<ConeAngleError> holonomy_cone_angles(const BackgroundMetric& bg,
                                                 const ScalarField& u) {
    std::vector<ConeAngleError> out;
    for (std::size_t pi = 0; pi < bg.divisor.points.size(); ++pi) {
        const auto& p = bg.divisor.points[pi];
        double e0 = bg.delta[pi] / 8.0;
        double L1 = circle_length(bg, u, p, e0);
        double L2 = circle_length(bg, u, p, 2.0 * e0);
        double L3 = circle_length(bg, u, p, 4.0 * e0);
        double s1 = std::log2(L2 / L1);
        double s2 = std::log2(L3 / L2);
        double theta_hat = two_pi * (4.0 * s1 - s2) / 3.0;
        double expected = two_pi * (1.0 + p.beta);
        out.push_back({p.label, expected, theta_hat, std::abs(theta_hat - expected)});
    }
    return out;
}

SolveReport flat_metric(const TorusDivisor& d, const TorusGrid& grid, double delta) {
    if (euler_char(d.divisor()) != 0.0)
        throw hypothesis_error("a flat representative needs chi(S, beta) = 0");
    BackgroundMetric bg = build_background(d, delta, grid);
    SpectralEngine engine(grid);

    ScalarField rhs(grid);
    for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] = -bg.rhoK1.v[i];
    ScalarField u = engine.poisson_solve(rhs);

    SolveReport r;
    r.mode = "flat";
    r.grid = grid;
    r.divisor = bg.divisor;
    r.delta = bg.delta;
    r.raw_compat_defects = bg.raw_compat_defects;
    r.iterations = 1; // one linear solve

    ScalarField lap = engine.laplacian(u);
    double res = 0.0;
    for (std::size_t i = 0; i < lap.v.size(); ++i)
        res = std::max(res, std::abs(lap.v[i] + bg.rhoK1.v[i]));
    r.residual_sup = res;

    r.curvature_error_sup = curvature_deviation_sup(bg, u, nullptr, r.curvature_region_factor);
    r.cone_angle_errors = holonomy_cone_angles(bg, u);

    r.gauss_bonnet.total = integrate(bg.K1, bg.rho);
    r.gauss_bonnet.expected = two_pi * euler_char(d.divisor());
    r.gauss_bonnet.residual = std::abs(r.gauss_bonnet.total - r.gauss_bonnet.expected);

    r.w_total = ScalarField(grid);
    for (std::size_t i = 0; i < u.v.size(); ++i)
        r.w_total.v[i] = u.v[i] + bg.w0.v[i];
    r.u = std::move(u);
    return r;
}

ScalarField flat_metric_exact(const TorusDivisor& d, const TorusGrid& grid) {
    if (d.sum_orders() != 0.0)
        throw hypothesis_error("the lattice flat oracle needs sum(beta) = 0");
    const int n = grid.n;
    ScalarField rhs(grid);
    for (const auto& p : d.points) {
        long ia = std::lround(p.a * n), jb = std::lround(p.b * n);
        int i0 = wrap(int(ia), n), j0 = wrap(int(jb), n);
        // unit point mass minus uniform density, scaled by -2 pi beta;
        // the same uniform sample is reused so the lattice mean vanishes
        // exactly in floating point
        double uniform = two_pi * p.beta / grid.area();
        for (double& v : rhs.v) v += uniform;
        rhs.at(i0, j0) -= uniform * double(n) * double(n);
    }
    return SpectralEngine(grid).poisson_solve(rhs);
}

ScalarField seeded_initial_guess(const TorusGrid& grid, std::uint64_t seed) {
    static constexpr int modes[8][2] = {{1, 0}, {0, 1},  {1, 1}, {1, -1},
                                        {2, 0}, {0, 2},  {2, 1}, {1, 2}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> amp(-0.3, 0.3);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    double c[8], ph[8];
    for (int m = 0; m < 8; ++m) {
        c[m] = amp(rng);
        ph[m] = phase(rng);
    }
    const int n = grid.n;
    ScalarField f(grid);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double a = double(i) / n, b = double(j) / n;
            double v = 0.0;
            for (int m = 0; m < 8; ++m)
                v += c[m] * std::cos(two_pi * (modes[m][0] * a + modes[m][1] * b) + ph[m]);
            f.at(i, j) = v;
        }
    }
    return f;
}

ScalarField annulus_bump_curvature(const BackgroundMetric& bg, std::size_t point_index,
                                   double inner, double outer, double width,
                                   double target_integral) {
    if (point_index >= bg.divisor.points.size())
        throw domain_error("bump center index out of range");
    if (!(inner >= bg.delta[point_index]))
        throw configuration_error("bump support must clear the blending disk");
    if (!(outer > inner) || !(width > 0.0) || !(2.0 * width <= outer - inner))
        throw configuration_error("bump needs inner < outer with room for both ramps");
    const auto& p = bg.divisor.points[point_index];
    const int n = bg.grid.n;
    ScalarField psi(bg.grid);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double r = bg.grid.min_image_distance(double(i) / n - p.a, double(j) / n - p.b);
            double up = smoothstep13(std::clamp((r - inner) / width, 0.0, 1.0));
            double down = smoothstep13(std::clamp((outer - r) / width, 0.0, 1.0));
            psi.at(i, j) = up * down;
        }
    }
    double denom = integrate(psi, bg.rho);
    if (denom == 0.0) throw configuration_error("bump support carries no mass");
    double scale = target_integral / denom;
    for (double& v : psi.v) v *= scale;
    return psi;
}

SolveReport prescribed_curvature_solve(const TorusDivisor& d, const ScalarField& K,
                                       const TorusGrid& grid, double delta,
                                       const ScalarField* initial_guess) {
    if (!(euler_char(d.divisor()) < 0.0))
        throw hypothesis_error("prescribing K <= 0 needs chi(S, beta) < 0");
    K.require_same_grid(ScalarField(grid));
    K.require_finite("prescribed curvature");
    bool all_zero = true;
    for (double v : K.v) {
        if (v > 0.0) throw hypothesis_error("this existence case requires K <= 0");
        if (v != 0.0) all_zero = false;
    }
    if (all_zero)
        throw hypothesis_error("this existence case requires K not identically 0");

    BackgroundMetric bg = build_background(d, delta, grid);
    {
        auto disk = bg.region_mask(1.0);
        for (std::size_t i = 0; i < K.v.size(); ++i)
            if (!disk[i] && K.v[i] != 0.0)
                throw hypothesis_error(
                    "K must vanish on the blending disks around singular points");
    }
    SpectralEngine engine(grid);

    SolveReport r;
    r.mode = "curvature";
    r.grid = grid;
    r.divisor = bg.divisor;
    r.delta = bg.delta;
    r.raw_compat_defects = bg.raw_compat_defects;

    const std::size_t total = K.v.size();
    ScalarField u = initial_guess ? *initial_guess : ScalarField(grid);
    if (initial_guess) u.require_same_grid(K);

    auto rhoK_e2u = [&](const ScalarField& uu) {
        ScalarField out(grid);
        for (std::size_t i = 0; i < total; ++i)
            out.v[i] = bg.rho.v[i] * K.v[i] * std::exp(2.0 * uu.v[i]);
        return out;
    };
    auto residual = [&](const ScalarField& uu) {
        ScalarField F = engine.laplacian(uu);
        ScalarField nk = rhoK_e2u(uu);
        for (std::size_t i = 0; i < total; ++i) F.v[i] += bg.rhoK1.v[i] - nk.v[i];
        return F;
    };

    const double tol = r.newton_tolerance;
    const int newton_cap = 50;
    ScalarField F = residual(u);
    double sup = F.sup_abs();
    bool converged = false;

    for (int it = 0; it < newton_cap; ++it) {
        r.newton_history.push_back(sup);
        if (sup < tol) {
            converged = true;
            r.iterations = it;
            break;
        }
        // linearization: J v = Delta0 v + m v with m = -2 rho K e^{2u} >= 0
        ScalarField m(grid);
        {
            ScalarField nk = rhoK_e2u(u);
            for (std::size_t i = 0; i < total; ++i) m.v[i] = -2.0 * nk.v[i];
        }
        double mbar = m.mean();
        auto apply_J = [&](const ScalarField& v) {
            ScalarField jv = engine.laplacian(v);
            for (std::size_t i = 0; i < total; ++i) jv.v[i] += m.v[i] * v.v[i];
            return jv;
        };
        auto precondition = [&](const ScalarField& v) {
            return engine.shifted_inverse(v, mbar);
        };
        auto dot = [&](const ScalarField& x, const ScalarField& y) {
            double s = 0.0;
            for (std::size_t i = 0; i < total; ++i) s += x.v[i] * y.v[i];
            return s;
        };

        // PCG on J dir = -F
        ScalarField dir(grid);
        ScalarField res(grid);
        for (std::size_t i = 0; i < total; ++i) res.v[i] = -F.v[i];
        double b_sup = res.sup_abs();
        ScalarField z = precondition(res);
        ScalarField pdir = z;
        double rz = dot(res, z);
        for (int cg = 0; cg < 500; ++cg) {
            ScalarField jp = apply_J(pdir);
            double denom = dot(pdir, jp);
            if (denom <= 0.0) break; // loses positivity only through rounding
            double alpha = rz / denom;
            for (std::size_t i = 0; i < total; ++i) {
                dir.v[i] += alpha * pdir.v[i];
                res.v[i] -= alpha * jp.v[i];
            }
            if (res.sup_abs() < 1e-13 * std::max(1.0, b_sup)) break;
            z = precondition(res);
            double rz_next = dot(res, z);
            for (std::size_t i = 0; i < total; ++i)
                pdir.v[i] = z.v[i] + (rz_next / rz) * pdir.v[i];
            rz = rz_next;
        }

        // backtracking keeps sup|F| strictly decreasing
        double step = 1.0;
        ScalarField u_try(grid);
        ScalarField F_try(grid);
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            for (std::size_t i = 0; i < total; ++i)
                u_try.v[i] = u.v[i] + step * dir.v[i];
            F_try = residual(u_try);
            if (F_try.sup_abs() < sup) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            throw numerical_error("line search stalled: no descent in sup|F|");
        u = std::move(u_try);
        F = std::move(F_try);
        sup = F.sup_abs();
        r.iterations = it + 1;
    }
    if (!converged && sup >= tol) {
        if (r.newton_history.empty() || r.newton_history.back() != sup)
            r.newton_history.push_back(sup);
        std::ostringstream msg;
        msg << "no convergence in " << newton_cap << " steps: sup|F| = " << sup;
        throw numerical_error(msg.str());
    }
    if (converged && (r.newton_history.empty() || r.newton_history.back() >= tol))
        r.newton_history.push_back(sup);

    // no gauge freedom here: the exponential term pins the mean of u
    r.residual_sup = sup;
    r.curvature_error_sup = curvature_deviation_sup(bg, u, &K, r.curvature_region_factor);
    r.cone_angle_errors = holonomy_cone_angles(bg, u);
    {
        ScalarField ke2u(grid);
        for (std::size_t i = 0; i < total; ++i)
            ke2u.v[i] = K.v[i] * std::exp(2.0 * u.v[i]);
        r.gauss_bonnet.total = integrate(ke2u, bg.rho);
        r.gauss_bonnet.expected = two_pi * euler_char(d.divisor());
        r.gauss_bonnet.residual = std::abs(r.gauss_bonnet.total - r.gauss_bonnet.expected);
    }
    r.w_total = ScalarField(grid);
    for (std::size_t i = 0; i < total; ++i) r.w_total.v[i] = u.v[i] + bg.w0.v[i];
    r.u = std::move(u);
    return r;
}

} // namespace conemetric
