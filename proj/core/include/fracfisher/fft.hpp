#pragma once

#include <complex>
#include <vector>

namespace fracfisher::detail {

/// Unnormalized in-place DFT: forward computes sum_j v_j e^{-2 pi i jk/N},
/// backward the conjugate kernel. Thread-safe (plans are cached per size and
/// direction behind a mutex; execution runs concurrently).
void dft_inplace(std::vector<std::complex<double>>& v, bool forward);

}  // namespace fracfisher::detail
