#include "kernels_internal.hpp"

#include <cmath>

namespace fluxskel::simd::detail {

void magnitude_scalar(const float* xy, float* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const float x = xy[2 * i];
        const float y = xy[2 * i + 1];
        out[i] = std::sqrt(x * x + y * y);
    }
}

void threshold_gt_scalar(const float* in, float threshold, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] > threshold ? 1 : 0;
}

void or_within_scalar(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] |= dist[i] <= reach ? 1 : 0;
}

void and_beyond_scalar(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] &= dist[i] > reach ? 1 : 0;
}

void squared_diff_scalar(const float* a_xy, const float* b_xy, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(a_xy[2 * i]) - static_cast<double>(b_xy[2 * i]);
        const double dy = static_cast<double>(a_xy[2 * i + 1]) - static_cast<double>(b_xy[2 * i + 1]);
        out[i] = dx * dx + dy * dy;
    }
}

void dot_accumulate_scalar(const double* gx, const double* gy, double nx, double ny, double* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += gx[i] * nx + gy[i] * ny;
}

}  // namespace fluxskel::simd::detail
