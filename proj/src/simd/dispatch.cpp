#include <atomic>
#include <cstdlib>
#include <string_view>

#include "fluxskel/simd.hpp"
#include "kernels_internal.hpp"

namespace fluxskel::simd {

namespace {

constexpr Kernels kScalar{
    Isa::scalar,
    "scalar",
    detail::magnitude_scalar,
    detail::threshold_gt_scalar,
    detail::or_within_scalar,
    detail::and_beyond_scalar,
    detail::squared_diff_scalar,
    detail::dot_accumulate_scalar,
};

#if defined(FLUXSKEL_HAVE_AVX2)
constexpr Kernels kAvx2{
    Isa::avx2,
    "avx2",
    detail::magnitude_avx2,
    detail::threshold_gt_avx2,
    detail::or_within_avx2,
    detail::and_beyond_avx2,
    detail::squared_diff_avx2,
    detail::dot_accumulate_avx2,
};

bool cpu_has_avx2() noexcept {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}
#endif

const Kernels* best() noexcept {
    if (const char* env = std::getenv("FLUXSKEL_SIMD")) {
        Isa requested{};
        if (parse_isa(env, requested)) {
            if (const Kernels* k = kernels_for(requested)) return k;
        }
    }
#if defined(FLUXSKEL_HAVE_AVX2)
    if (cpu_has_avx2()) return &kAvx2;
#endif
    return &kScalar;
}

std::atomic<const Kernels*>& slot() noexcept {
    static std::atomic<const Kernels*> current{best()};
    return current;
}

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

const Kernels* kernels_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return &kScalar;
        case Isa::avx2:
#if defined(FLUXSKEL_HAVE_AVX2)
            return cpu_has_avx2() ? &kAvx2 : nullptr;
#else
            return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::scalar};
    if (kernels_for(Isa::avx2) != nullptr) out.push_back(Isa::avx2);
    return out;
}

const Kernels& active() noexcept { return *slot().load(std::memory_order_acquire); }

bool set_active(Isa isa) noexcept {
    const Kernels* k = kernels_for(isa);
    if (k == nullptr) return false;
    slot().store(k, std::memory_order_release);
    return true;
}

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool parse_isa(std::string_view text, Isa& out) noexcept {
    if (text == "scalar") {
        out = Isa::scalar;
        return true;
    }
    if (text == "avx2") {
        out = Isa::avx2;
        return true;
    }
    return false;
}

}  // namespace fluxskel::simd
