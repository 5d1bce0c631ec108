#pragma once

#include <memory>

#include "conemetric/field.hpp"

namespace conemetric {

// Spectral Laplacian machinery on one grid. The operator everywhere is
// Delta0 = -d^2/dx^2 - d^2/dy^2 (positive spectrum); on the mode
// exp(2 pi i (m a + n b)) of the lattice chart z = a + tau b its symbol is
// 4 pi^2 [m^2 + ((n - m Re tau) / Im tau)^2].
class SpectralEngine {
public:
    explicit SpectralEngine(const TorusGrid& grid);
    ~SpectralEngine();
    SpectralEngine(const SpectralEngine&) = delete;
    SpectralEngine& operator=(const SpectralEngine&) = delete;

    const TorusGrid& grid() const;

    // mean-zero u with Delta0 u = rhs; rejects rhs whose lattice mean
    // exceeds 1e-8 * sup|rhs| (the discrete solvability criterion)
    ScalarField poisson_solve(const ScalarField& rhs) const;

    // Delta0 applied spectrally
    ScalarField laplacian(const ScalarField& u) const;

    // (Delta0 + shift)^{-1} rhs for shift > 0; the Newton preconditioner
    ScalarField shifted_inverse(const ScalarField& rhs, double shift) const;

    static constexpr double compatibility_tolerance = 1e-8;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-off convenience wrapper.
ScalarField poisson_solve(const ScalarField& rhs);

} // namespace conemetric
