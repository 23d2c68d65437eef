#pragma once

#include <cstddef>
#include <cstdint>

namespace fluxskel::simd::detail {

void magnitude_scalar(const float* xy, float* out, std::size_t n);
void threshold_gt_scalar(const float* in, float threshold, std::uint8_t* out, std::size_t n);
void or_within_scalar(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n);
void and_beyond_scalar(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n);
void squared_diff_scalar(const float* a_xy, const float* b_xy, double* out, std::size_t n);
void dot_accumulate_scalar(const double* gx, const double* gy, double nx, double ny, double* acc, std::size_t n);

#if defined(FLUXSKEL_HAVE_AVX2)
void magnitude_avx2(const float* xy, float* out, std::size_t n);
void threshold_gt_avx2(const float* in, float threshold, std::uint8_t* out, std::size_t n);
void or_within_avx2(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n);
void and_beyond_avx2(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n);
void squared_diff_avx2(const float* a_xy, const float* b_xy, double* out, std::size_t n);
void dot_accumulate_avx2(const double* gx, const double* gy, double nx, double ny, double* acc, std::size_t n);
#endif

}  // namespace fluxskel::simd::detail
