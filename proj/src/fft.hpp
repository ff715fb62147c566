#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace bfamily::detail {

/// Unnormalized real-to-complex and complex-to-real transforms of length n.
/// Plans are cached per length and shared; buffers are per call, so concurrent
/// use is safe.
void fft_forward(std::span<const double> in, std::span<std::complex<double>> out);
/// Destroys the contents of `in`.
void fft_backward(std::span<std::complex<double>> in, std::span<double> out);

}  // namespace bfamily::detail
