#pragma once

#include <complex>
#include <vector>

namespace phasebound::detail {

// Unnormalized in-place DFT over a row-major multi-dimensional array:
// sign = -1 computes sum_j x_j e^{-2 pi i j.k / N}, sign = +1 the conjugate
// kernel. Plans are cached per (dims, sign) and shared; execution is safe
// from multiple threads on distinct buffers.
void dft_inplace(std::vector<std::complex<double>>& data, const std::vector<int>& dims,
                 int sign);

}  // namespace phasebound::detail
