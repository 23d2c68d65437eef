#include "fluxskel/error.hpp"

namespace fluxskel {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::file_not_found: return "file not found";
        case Errc::malformed_image: return "malformed image";
        case Errc::unsupported_depth: return "unsupported bit depth";
        case Errc::io_error: return "I/O error";
        case Errc::bad_magic: return "bad magic";
        case Errc::dimension_overflow: return "dimension overflow";
        case Errc::length_mismatch: return "length mismatch";
        case Errc::no_sites: return "no sites";
        case Errc::no_skeleton: return "no skeleton pixels";
        case Errc::empty_mask: return "empty mask";
        case Errc::dimension_mismatch: return "dimension mismatch";
        case Errc::empty_ground_truth: return "empty ground truth";
        case Errc::no_direction: return "no direction";
        case Errc::invalid_argument: return "invalid argument";
        case Errc::degenerate_shape: return "degenerate shape";
    }
    return "unknown error";
}

namespace {
std::string compose(Errc code, const std::string& detail) {
    std::string msg = errc_name(code);
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    return msg;
}
}  // namespace

Error::Error(Errc code, const std::string& detail) : std::runtime_error(compose(code, detail)), code_(code) {}

}  // namespace fluxskel
