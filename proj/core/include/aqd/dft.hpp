// SPDX-License-Identifier: Apache-2.0
//
// Unitary discrete Fourier transform with 1/sqrt(n) normalization on both
// directions, matching the forward transform kernel e^(-i 2 pi jk / n).
// Quadrature variances are preserved through the transform.

#ifndef AQD_DFT_HPP
#define AQD_DFT_HPP

#include <vector>

#include "aqd/types.hpp"

namespace aqd {

std::vector<Complex> unitary_dft(const std::vector<Complex>& v);
std::vector<Complex> unitary_idft(const std::vector<Complex>& v);

} // namespace aqd

#endif
