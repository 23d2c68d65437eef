// Compiled with -mavx2 only (no FMA), so every lane performs the same IEEE
// operations in the same order as the scalar reference.

#include "kernels_internal.hpp"

#include <immintrin.h>

#include <array>
#include <cstring>

namespace fluxskel::simd::detail {

namespace {

// Byte expansion of an 8-bit lane mask: bit k -> byte k = 0/1.
constexpr std::array<std::uint64_t, 256> make_mask_bytes() {
    std::array<std::uint64_t, 256> table{};
    for (unsigned m = 0; m < 256; ++m) {
        std::uint64_t v = 0;
        for (unsigned k = 0; k < 8; ++k) {
            if (m & (1u << k)) v |= std::uint64_t{1} << (8 * k);
        }
        table[m] = v;
    }
    return table;
}

constexpr auto kMaskBytes = make_mask_bytes();

// 16 x u16 compare dist <= reach, narrowed to 16 bytes of 0xFF / 0x00.
inline __m128i within_bytes(const std::uint16_t* dist, __m256i reach) {
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dist));
    const __m256i le = _mm256_cmpeq_epi16(_mm256_min_epu16(d, reach), d);
    return _mm_packs_epi16(_mm256_castsi256_si128(le), _mm256_extracti128_si256(le, 1));
}

}  // namespace

void magnitude_avx2(const float* xy, float* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 a = _mm256_loadu_ps(xy + 2 * i);      // x0 y0 x1 y1 | x2 y2 x3 y3
        const __m256 b = _mm256_loadu_ps(xy + 2 * i + 8);  // x4 y4 x5 y5 | x6 y6 x7 y7
        const __m256 sum = _mm256_hadd_ps(_mm256_mul_ps(a, a), _mm256_mul_ps(b, b));
        // hadd leaves pixels in order 0 1 4 5 | 2 3 6 7.
        const __m256d ordered = _mm256_permute4x64_pd(_mm256_castps_pd(sum), 0xD8);
        _mm256_storeu_ps(out + i, _mm256_sqrt_ps(_mm256_castpd_ps(ordered)));
    }
    magnitude_scalar(xy + 2 * i, out + i, n - i);
}

void threshold_gt_avx2(const float* in, float threshold, std::uint8_t* out, std::size_t n) {
    const __m256 t = _mm256_set1_ps(threshold);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 gt = _mm256_cmp_ps(_mm256_loadu_ps(in + i), t, _CMP_GT_OQ);
        const std::uint64_t bytes = kMaskBytes[static_cast<unsigned>(_mm256_movemask_ps(gt))];
        std::memcpy(out + i, &bytes, 8);
    }
    threshold_gt_scalar(in + i, threshold, out + i, n - i);
}

void or_within_avx2(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n) {
    const __m256i r = _mm256_set1_epi16(static_cast<short>(reach));
    const __m128i one = _mm_set1_epi8(1);
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const __m128i hit = _mm_and_si128(within_bytes(dist + i, r), one);
        __m128i* dst = reinterpret_cast<__m128i*>(out + i);
        _mm_storeu_si128(dst, _mm_or_si128(_mm_loadu_si128(dst), hit));
    }
    or_within_scalar(dist + i, reach, out + i, n - i);
}

void and_beyond_avx2(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n) {
    const __m256i r = _mm256_set1_epi16(static_cast<short>(reach));
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        const __m128i within = within_bytes(dist + i, r);
        __m128i* dst = reinterpret_cast<__m128i*>(out + i);
        _mm_storeu_si128(dst, _mm_andnot_si128(within, _mm_loadu_si128(dst)));
    }
    and_beyond_scalar(dist + i, reach, out + i, n - i);
}

void squared_diff_avx2(const float* a_xy, const float* b_xy, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256 a = _mm256_loadu_ps(a_xy + 2 * i);
        const __m256 b = _mm256_loadu_ps(b_xy + 2 * i);
        const __m256d d0 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_castps256_ps128(a)),
                                         _mm256_cvtps_pd(_mm256_castps256_ps128(b)));
        const __m256d d1 = _mm256_sub_pd(_mm256_cvtps_pd(_mm256_extractf128_ps(a, 1)),
                                         _mm256_cvtps_pd(_mm256_extractf128_ps(b, 1)));
        // hadd leaves pixels in order 0 2 1 3.
        const __m256d sum = _mm256_hadd_pd(_mm256_mul_pd(d0, d0), _mm256_mul_pd(d1, d1));
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(sum, 0xD8));
    }
    squared_diff_scalar(a_xy + 2 * i, b_xy + 2 * i, out + i, n - i);
}

void dot_accumulate_avx2(const double* gx, const double* gy, double nx, double ny, double* acc, std::size_t n) {
    const __m256d vx = _mm256_set1_pd(nx);
    const __m256d vy = _mm256_set1_pd(ny);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dot = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(gx + i), vx),
                                          _mm256_mul_pd(_mm256_loadu_pd(gy + i), vy));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), dot));
    }
    dot_accumulate_scalar(gx + i, gy + i, nx, ny, acc + i, n - i);
}

}  // namespace fluxskel::simd::detail
