#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace revised::neural {

// Central finite differences (default step 1e-5) against an analytic
// gradient. loss() must recompute the scalar from the current contents of
// x. Relative error per coordinate is |fd - analytic| scaled by the larger
// magnitude, floored at 1e-4 so coordinates where both gradients vanish
// compare absolutely. Returns the maximum over coordinates.
double max_rel_error_fd(const std::function<double()>& loss, double* x, std::size_t n,
                        std::span<const double> analytic, double step = 1e-5);

// Canned layer checks over random parameters and inputs: build the layer,
// push a random input through a smooth scalar head, backpropagate, and
// compare every parameter and input coordinate against finite differences.
double grad_check_linear(std::uint64_t seed);
double grad_check_lstm(std::uint64_t seed, std::size_t steps);
double grad_check_softmax_nll(std::uint64_t seed);

}  // namespace revised::neural
