#pragma once

#include <stdexcept>
#include <string>

namespace fluxskel {

enum class Errc {
    file_not_found,
    malformed_image,
    unsupported_depth,
    io_error,
    bad_magic,
    dimension_overflow,
    length_mismatch,
    no_sites,
    no_skeleton,
    empty_mask,
    dimension_mismatch,
    empty_ground_truth,
    no_direction,
    invalid_argument,
    degenerate_shape,
};

/// Short, stable name of an error code ("malformed image", "no sites", ...).
const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
/// what() starts with errc_name(code), optionally followed by ": detail".
class Error : public std::runtime_error {
public:
    explicit Error(Errc code, const std::string& detail = {});

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace fluxskel
