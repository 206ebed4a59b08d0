#pragma once

#include <span>

namespace cohcorr {

double product(std::span<const double> values);

// 1 - prod(values) for values in [0,1], summed as
// sum_k (1 - v_k) * v_0 ... v_{k-1} so nothing cancels when the product is near 1.
double one_minus_product(std::span<const double> values);

}  // namespace cohcorr
