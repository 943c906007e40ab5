#pragma once

#include <complex>
#include <vector>

namespace approxinv::detail {

/// In-place unnormalized DFT: X_k = sum_m x_m e^{-2 pi i k m / M}.
void fft_forward(std::vector<std::complex<double>>& data);
/// In-place unnormalized inverse: x_m = sum_k X_k e^{+2 pi i k m / M}.
void fft_backward(std::vector<std::complex<double>>& data);

}  // namespace approxinv::detail
