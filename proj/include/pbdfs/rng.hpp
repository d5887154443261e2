// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

namespace pbdfs::detail {

// uniform in [0,1); avoids std::uniform_real_distribution so draws are
// reproducible across standard libraries
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace pbdfs::detail
