#pragma once

#include <cmath>
#include <functional>

#include "conemetric/errors.hpp"

namespace conemetric {

// Adaptive Simpson on [a, b] with absolute tolerance. Hitting the recursion
// cap is an error, never a silently degraded value.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12, int max_depth = 60);

} // namespace conemetric
