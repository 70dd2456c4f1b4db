#pragma once

#include <functional>
#include <vector>

#include "sdcn/matrix.hpp"
#include "sdcn/tape.hpp"

namespace sdcn {

// Builds a scalar loss over the given parameter leaves on a fresh tape.
using LossBuilder =
    std::function<GradTape::Var(GradTape&, const std::vector<GradTape::Var>&)>;

// Compares the tape's analytic gradients against central finite differences
// for every parameter entry. Returns the max over entries of
//   |analytic - central| / max(1, |central|).
// step must lie in [1e-6, 1e-4]; a non-finite loss raises NumericError.
double grad_check(const LossBuilder& build, std::vector<DenseMatrix> params, double step);

}  // namespace sdcn
