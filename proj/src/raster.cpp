#include "fluxskel/raster.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "fluxskel/simd.hpp"

namespace fluxskel {

GridDims::GridDims(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) {
        throw Error(Errc::invalid_argument,
                    "grid dimensions must be positive, got " + std::to_string(w) + "x" + std::to_string(h));
    }
}

double GridDims::diagonal() const noexcept {
    return std::hypot(static_cast<double>(width), static_cast<double>(height));
}

std::size_t count_true(const BinaryMap& map) noexcept {
    return static_cast<std::size_t>(std::count(map.values().begin(), map.values().end(), std::uint8_t{1}));
}

bool is_subset(const BinaryMap& a, const BinaryMap& b) {
    if (a.dims() != b.dims()) throw Error(Errc::dimension_mismatch);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && !b[i]) return false;
    }
    return true;
}

BinaryMap set_difference(const BinaryMap& a, const BinaryMap& b) {
    if (a.dims() != b.dims()) throw Error(Errc::dimension_mismatch);
    BinaryMap out(a.dims());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] && !b[i]) ? 1 : 0;
    return out;
}

BinaryMap complement(const BinaryMap& map) {
    BinaryMap out(map.dims());
    for (std::size_t i = 0; i < map.size(); ++i) out[i] = map[i] ? 0 : 1;
    return out;
}

std::vector<Point> true_pixels(const BinaryMap& map) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (map[i]) pts.push_back(map.dims().point(i));
    }
    return pts;
}

FluxField::FluxField(GridDims dims, std::vector<float> interleaved) : dims_(dims), xy_(std::move(interleaved)) {
    if (xy_.size() != 2 * dims_.size()) throw Error(Errc::length_mismatch, "flux payload");
}

ScalarMap magnitude(const FluxField& field) {
    std::vector<float> mag(field.size());
    simd::active().magnitude(field.interleaved().data(), mag.data(), field.size());
    return ScalarMap(field.dims(), std::vector<double>(mag.begin(), mag.end()));
}

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) throw Error(Errc::file_not_found, path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(Errc::io_error, "read failed: " + path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open for writing: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

class PnmHeaderReader {
public:
    explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and '#' comments, then parses a decimal field.
    long long next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw Error(Errc::malformed_image, "expected header integer");
        }
        long long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > std::numeric_limits<int>::max()) throw Error(Errc::malformed_image, "header value too large");
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    std::size_t raster_start() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw Error(Errc::malformed_image, "missing separator before raster");
        }
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 2;  // past the magic
};

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32le(std::span<const std::uint8_t> b, std::size_t at) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

}  // namespace

std::vector<std::uint8_t> encode_pgm(const BinaryMap& map) {
    const std::string header =
        "P5\n" + std::to_string(map.width()) + " " + std::to_string(map.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + map.size());
    for (std::uint8_t bit : map.values()) out.push_back(bit ? 255 : 0);
    return out;
}

BinaryMap decode_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw Error(Errc::malformed_image, "not a binary PGM (P5)");
    }
    PnmHeaderReader header(bytes);
    const long long width = header.next_int();
    const long long height = header.next_int();
    const long long maxval = header.next_int();
    if (width < 1 || height < 1) throw Error(Errc::malformed_image, "zero dimension");
    if (maxval != 255) throw Error(Errc::unsupported_depth, "maxval " + std::to_string(maxval));
    const std::size_t start = header.raster_start();
    const GridDims dims(static_cast<int>(width), static_cast<int>(height));
    if (bytes.size() - start < dims.size()) throw Error(Errc::malformed_image, "truncated raster");

    BinaryMap map(dims);
    for (std::size_t i = 0; i < dims.size(); ++i) map[i] = bytes[start + i] >= 128 ? 1 : 0;
    return map;
}

BinaryMap read_binary_map(const std::filesystem::path& path) { return decode_pgm(read_file(path)); }

void write_binary_map(const BinaryMap& map, const std::filesystem::path& path) {
    write_file(path, encode_pgm(map));
}

std::vector<std::uint8_t> encode_flux(const FluxField& field) {
    std::vector<std::uint8_t> out;
    out.reserve(kFluxHeaderBytes + 8 * field.size());
    for (char c : {'F', 'L', 'X', '1'}) out.push_back(static_cast<std::uint8_t>(c));
    put_u32le(out, static_cast<std::uint32_t>(field.width()));
    put_u32le(out, static_cast<std::uint32_t>(field.height()));
    out.resize(kFluxHeaderBytes, 0);
    for (float v : field.interleaved()) put_u32le(out, std::bit_cast<std::uint32_t>(v));
    return out;
}

FluxField decode_flux(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kFluxHeaderBytes) throw Error(Errc::length_mismatch, "short header");
    if (!(bytes[0] == 'F' && bytes[1] == 'L' && bytes[2] == 'X' && bytes[3] == '1')) throw Error(Errc::bad_magic);
    const std::uint32_t width = get_u32le(bytes, 4);
    const std::uint32_t height = get_u32le(bytes, 8);
    constexpr std::uint64_t kMaxSide = static_cast<std::uint64_t>(std::numeric_limits<int>::max());
    if (width == 0 || height == 0 || width > kMaxSide || height > kMaxSide) {
        throw Error(Errc::dimension_overflow, std::to_string(width) + "x" + std::to_string(height));
    }
    const std::uint64_t pixels = static_cast<std::uint64_t>(width) * height;
    if (pixels > (std::numeric_limits<std::uint64_t>::max() - kFluxHeaderBytes) / 8 ||
        pixels > std::numeric_limits<std::size_t>::max() / 8) {
        throw Error(Errc::dimension_overflow);
    }
    if (bytes.size() != kFluxHeaderBytes + 8 * pixels) {
        throw Error(Errc::length_mismatch, "expected " + std::to_string(kFluxHeaderBytes + 8 * pixels) +
                                               " bytes, got " + std::to_string(bytes.size()));
    }
    std::vector<float> xy(2 * pixels);
    for (std::size_t i = 0; i < xy.size(); ++i) {
        xy[i] = std::bit_cast<float>(get_u32le(bytes, kFluxHeaderBytes + 4 * i));
        if (!std::isfinite(xy[i])) throw Error(Errc::malformed_image, "non-finite flux component");
    }
    return FluxField(GridDims(static_cast<int>(width), static_cast<int>(height)), std::move(xy));
}

FluxField read_flux(const std::filesystem::path& path) { return decode_flux(read_file(path)); }

void write_flux(const FluxField& field, const std::filesystem::path& path) {
    write_file(path, encode_flux(field));
}

}  // namespace fluxskel
