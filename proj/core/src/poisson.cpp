#include "conemetric/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

namespace conemetric {

namespace {

// FFTW's planner is process-global state; execution is thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

double fft_freq(int i, int n) { return i <= n / 2 - 1 ? double(i) : double(i - n); }

} // namespace

struct SpectralEngine::Impl {
    TorusGrid grid;
    std::vector<double> lambda; // Delta0 symbol per mode, row-major
    fftw_complex* buf = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    mutable std::mutex exec_mutex; // buf is shared by all transforms

    explicit Impl(const TorusGrid& g) : grid(g) {
        const int n = grid.n;
        lambda.resize(std::size_t(n) * n);
        const double re = grid.tau.real(), im = grid.tau.imag();
        for (int i = 0; i < n; ++i) {
            double m = fft_freq(i, n);
            for (int j = 0; j < n; ++j) {
                double nn = fft_freq(j, n);
                double skew = (nn - m * re) / im;
                lambda[std::size_t(i) * n + j] =
                    4.0 * pi_sq() * (m * m + skew * skew);
            }
        }
        buf = fftw_alloc_complex(std::size_t(n) * n);
        if (!buf) throw error("fftw allocation failed");
        std::lock_guard<std::mutex> lock(planner_mutex());
        // FFTW_ESTIMATE keeps planning deterministic and cheap
        forward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!forward || !backward) throw error("fftw planning failed");
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
        if (buf) fftw_free(buf);
    }

    static double pi_sq() {
        constexpr double pi_ = 3.14159265358979323846;
        return pi_ * pi_;
    }

    // applies op to the spectrum of f; op(hat, idx) mutates in place
    template <typename Op>
    ScalarField transform(const ScalarField& f, Op&& op) const {
        std::lock_guard<std::mutex> lock(exec_mutex);
        const std::size_t total = f.v.size();
        for (std::size_t i = 0; i < total; ++i) {
            buf[i][0] = f.v[i];
            buf[i][1] = 0.0;
        }
        fftw_execute(forward);
        for (std::size_t i = 0; i < total; ++i) op(buf[i], i);
        fftw_execute(backward);
        ScalarField out(grid);
        const double scale = 1.0 / double(total);
        for (std::size_t i = 0; i < total; ++i) out.v[i] = buf[i][0] * scale;
        return out;
    }
};

SpectralEngine::SpectralEngine(const TorusGrid& grid) : impl_(new Impl(grid)) {}
SpectralEngine::~SpectralEngine() = default;

const TorusGrid& SpectralEngine::grid() const { return impl_->grid; }

ScalarField SpectralEngine::poisson_solve(const ScalarField& rhs) const {
    if (!(rhs.grid == impl_->grid)) throw shape_error("rhs lives on a different grid");
    rhs.require_finite("poisson rhs");
    double mean = std::abs(rhs.mean());
    double sup = rhs.sup_abs();
    if (sup > 0.0 && mean >= compatibility_tolerance * sup)
        throw no_solution_error(
            "right-hand side has nonzero mean: the equation has no periodic solution");
    const auto& lambda = impl_->lambda;
    return impl_->transform(rhs, [&](fftw_complex& c, std::size_t i) {
        if (lambda[i] == 0.0) {
            c[0] = 0.0; // zero mode removed: mean-zero representative
            c[1] = 0.0;
        } else {
            c[0] /= lambda[i];
            c[1] /= lambda[i];
        }
    });
}

ScalarField SpectralEngine::laplacian(const ScalarField& u) const {
    if (!(u.grid == impl_->grid)) throw shape_error("field lives on a different grid");
    const auto& lambda = impl_->lambda;
    return impl_->transform(u, [&](fftw_complex& c, std::size_t i) {
        c[0] *= lambda[i];
        c[1] *= lambda[i];
    });
}

ScalarField SpectralEngine::shifted_inverse(const ScalarField& rhs, double shift) const {
    if (!(rhs.grid == impl_->grid)) throw shape_error("rhs lives on a different grid");
    if (!(shift > 0.0)) throw domain_error("shift must be positive");
    const auto& lambda = impl_->lambda;
    return impl_->transform(rhs, [&](fftw_complex& c, std::size_t i) {
        double d = lambda[i] + shift;
        c[0] /= d;
        c[1] /= d;
    });
}

ScalarField poisson_solve(const ScalarField& rhs) {
    return SpectralEngine(rhs.grid).poisson_solve(rhs);
}

} // namespace conemetric
