#pragma once

#include "mspinn/core/numeric.hpp"

namespace mspinn {

/// Magnitudes |X_k| of the discrete Fourier transform of a real signal on a
/// uniform grid, for integer wavenumbers k = 0..floor(N/2). Direct O(N^2)
/// evaluation; requires N >= 4.
Vector dft_magnitude(std::span<const double> v);

/// argmax_k of dft_magnitude, ties broken toward the smaller wavenumber.
int dominant_wavenumber(std::span<const double> v);

}  // namespace mspinn
