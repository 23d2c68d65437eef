#pragma once

// Raster containers shared by every module.
//
// Storage is row-major. Pixel (x, y) is column x, row y: x grows to the right
// and y grows downward. Flux vectors use the same axes, so a vector (0, +1)
// points one row down.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "fluxskel/error.hpp"

namespace fluxskel {

struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct GridDims {
    int width = 1;
    int height = 1;

    GridDims() = default;
    GridDims(int w, int h);

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width && y < height;
    }
    bool contains(Point p) const noexcept { return contains(p.x, p.y); }
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(x);
    }
    Point point(std::size_t idx) const noexcept {
        return {static_cast<int>(idx % static_cast<std::size_t>(width)),
                static_cast<int>(idx / static_cast<std::size_t>(width))};
    }
    double diagonal() const noexcept;

    friend bool operator==(const GridDims&, const GridDims&) = default;
};

/// Dense 2D raster of T in row-major order.
template <typename T>
class Raster {
public:
    using value_type = T;

    Raster() = default;
    explicit Raster(GridDims dims, T fill = T{}) : dims_(dims), data_(dims.size(), fill) {}
    Raster(GridDims dims, std::vector<T> data) : dims_(dims), data_(std::move(data)) {
        if (data_.size() != dims_.size()) throw Error(Errc::length_mismatch, "raster payload");
    }

    const GridDims& dims() const noexcept { return dims_; }
    int width() const noexcept { return dims_.width; }
    int height() const noexcept { return dims_.height; }
    std::size_t size() const noexcept { return data_.size(); }

    const T& at(int x, int y) const noexcept { return data_[dims_.index(x, y)]; }
    T& at(int x, int y) noexcept { return data_[dims_.index(x, y)]; }
    const T& at(Point p) const noexcept { return at(p.x, p.y); }
    T& at(Point p) noexcept { return at(p.x, p.y); }
    const T& operator[](std::size_t i) const noexcept { return data_[i]; }
    T& operator[](std::size_t i) noexcept { return data_[i]; }

    std::span<const T> values() const noexcept { return data_; }
    std::span<T> values() noexcept { return data_; }
    std::span<const T> row(int y) const noexcept {
        return std::span<const T>(data_).subspan(dims_.index(0, y), static_cast<std::size_t>(dims_.width));
    }
    std::span<T> row(int y) noexcept {
        return std::span<T>(data_).subspan(dims_.index(0, y), static_cast<std::size_t>(dims_.width));
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    GridDims dims_;
    std::vector<T> data_;
};

/// Boolean raster; every byte is 0 or 1.
using BinaryMap = Raster<std::uint8_t>;
using ScalarMap = Raster<double>;
/// Nearest-site coordinates; {-1, -1} marks an undefined label.
using LabelMap = Raster<Point>;

inline constexpr Point kNoLabel{-1, -1};

std::size_t count_true(const BinaryMap& map) noexcept;
bool is_subset(const BinaryMap& a, const BinaryMap& b);
BinaryMap set_difference(const BinaryMap& a, const BinaryMap& b);
BinaryMap complement(const BinaryMap& map);
std::vector<Point> true_pixels(const BinaryMap& map);

struct Vec2f {
    float x = 0.0f;
    float y = 0.0f;

    friend bool operator==(const Vec2f&, const Vec2f&) = default;
};

/// Two-channel flux raster stored as interleaved (fx, fy) 32-bit floats.
class FluxField {
public:
    FluxField() = default;
    explicit FluxField(GridDims dims) : dims_(dims), xy_(2 * dims.size(), 0.0f) {}
    FluxField(GridDims dims, std::vector<float> interleaved);

    const GridDims& dims() const noexcept { return dims_; }
    int width() const noexcept { return dims_.width; }
    int height() const noexcept { return dims_.height; }
    std::size_t size() const noexcept { return dims_.size(); }

    Vec2f at(int x, int y) const noexcept { return (*this)[dims_.index(x, y)]; }
    Vec2f at(Point p) const noexcept { return at(p.x, p.y); }
    Vec2f operator[](std::size_t i) const noexcept { return {xy_[2 * i], xy_[2 * i + 1]}; }
    void set(std::size_t i, Vec2f v) noexcept {
        xy_[2 * i] = v.x;
        xy_[2 * i + 1] = v.y;
    }
    void set(int x, int y, Vec2f v) noexcept { set(dims_.index(x, y), v); }

    std::span<const float> interleaved() const noexcept { return xy_; }
    std::span<float> interleaved() noexcept { return xy_; }

    friend bool operator==(const FluxField&, const FluxField&) = default;

private:
    GridDims dims_;
    std::vector<float> xy_;
};

/// Per-pixel Euclidean norm, evaluated in single precision.
ScalarMap magnitude(const FluxField& field);

// Image and flux file I/O. PGM (binary P5, maxval 255) is the only image codec.
BinaryMap read_binary_map(const std::filesystem::path& path);
void write_binary_map(const BinaryMap& map, const std::filesystem::path& path);

// FLX1: "FLX1", u32le width, u32le height, 8 zero bytes, then width*height
// pairs of f32le (fx, fy), row-major.
FluxField read_flux(const std::filesystem::path& path);
void write_flux(const FluxField& field, const std::filesystem::path& path);

std::vector<std::uint8_t> encode_flux(const FluxField& field);
FluxField decode_flux(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const BinaryMap& map);
BinaryMap decode_pgm(std::span<const std::uint8_t> bytes);

inline constexpr std::size_t kFluxHeaderBytes = 20;

}  // namespace fluxskel
