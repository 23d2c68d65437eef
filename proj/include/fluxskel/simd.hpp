#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, on x86-64,
// an AVX2 variant compiled in its own translation unit. The active table is
// picked once at first use from the CPU features; FLUXSKEL_SIMD=scalar forces
// the reference path. Both variants produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fluxskel::simd {

enum class Isa { scalar, avx2 };

struct Kernels {
    Isa isa;
    const char* name;
    // out[i] = sqrt(xy[2i]^2 + xy[2i+1]^2), single precision.
    void (*magnitude)(const float* xy, float* out, std::size_t n);
    // out[i] = in[i] > threshold ? 1 : 0.
    void (*threshold_gt)(const float* in, float threshold, std::uint8_t* out, std::size_t n);
    // out[i] |= dist[i] <= reach.
    void (*or_within)(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n);
    // out[i] &= dist[i] > reach.
    void (*and_beyond)(const std::uint16_t* dist, std::uint16_t reach, std::uint8_t* out, std::size_t n);
    // out[i] = (a.x - b.x)^2 + (a.y - b.y)^2 on interleaved pairs, in double.
    void (*squared_diff)(const float* a_xy, const float* b_xy, double* out, std::size_t n);
    // acc[i] += gx[i] * nx + gy[i] * ny.
    void (*dot_accumulate)(const double* gx, const double* gy, double nx, double ny, double* acc,
                           std::size_t n);
};

const Kernels& scalar_kernels() noexcept;
/// Null when the ISA was not compiled in or the CPU lacks it.
const Kernels* kernels_for(Isa isa) noexcept;
std::vector<Isa> available_isas();

const Kernels& active() noexcept;
/// Pins the active table; used by tests and the CLI's --simd flag.
/// Returns false when the ISA is unavailable.
bool set_active(Isa isa) noexcept;

std::string_view isa_name(Isa isa) noexcept;
bool parse_isa(std::string_view text, Isa& out) noexcept;

}  // namespace fluxskel::simd
