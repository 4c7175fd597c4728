#include "mspinn/core/dft.hpp"

#include <cmath>
#include <numbers>

namespace mspinn {

Vector dft_magnitude(std::span<const double> v) {
  const int n = (int)v.size();
  if (n < 4) throw config_error("dft_magnitude: need at least 4 samples");
  const int half = n / 2;
  Vector mags(half + 1, 0.0);
  const double w0 = 2.0 * std::numbers::pi / n;
  for (int k = 0; k <= half; ++k) {
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = w0 * k * j;
      re += v[j] * std::cos(a);
      im -= v[j] * std::sin(a);
    }
    mags[k] = std::hypot(re, im);
  }
  return mags;
}

int dominant_wavenumber(std::span<const double> v) {
  const Vector mags = dft_magnitude(v);
  int best = 0;
  for (int k = 1; k < (int)mags.size(); ++k)
    if (mags[k] > mags[best]) best = k;
  return best;
}

}  // namespace mspinn
