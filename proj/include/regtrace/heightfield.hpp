#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "regtrace/errors.hpp"

namespace regtrace {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

/// Axis-aligned pixel rectangle, indices inclusive on both ends.
struct PixelRegion {
    std::size_t min_col = 0;
    std::size_t min_row = 0;
    std::size_t max_col = 0;
    std::size_t max_row = 0;

    std::size_t width() const { return max_col - min_col + 1; }
    std::size_t height() const { return max_row - min_row + 1; }
    std::size_t area() const { return width() * height(); }
};

struct Mesh {
    struct Vertex {
        double x, y, z;
    };
    struct Face {
        std::uint32_t a, b, c;  // 0-based indices
    };
    std::vector<Vertex> vertices;
    std::vector<Face> faces;
};

/// Regular elevation grid. Values live at texel centers; `origin` is the
/// world position of the (0,0) texel center. A pristine copy of the initial
/// surface is kept so deformation can always be written relative to the
/// undeformed terrain.
class Heightmap {
  public:
    Heightmap(std::size_t cols, std::size_t rows, double resolution, Vec2 origin,
              std::vector<float> elevations);

    std::size_t cols() const { return cols_; }
    std::size_t rows() const { return rows_; }
    double resolution() const { return resolution_; }
    Vec2 origin() const { return origin_; }
    std::size_t texel_count() const { return cols_ * rows_; }

    float at(std::size_t col, std::size_t row) const { return elev_[row * cols_ + col]; }
    float& at(std::size_t col, std::size_t row) { return elev_[row * cols_ + col]; }
    float pristine_at(std::size_t col, std::size_t row) const {
        return pristine_[row * cols_ + col];
    }

    const std::vector<float>& elevations() const { return elev_; }
    const std::vector<float>& pristine() const { return pristine_; }

    struct PixelCoord {
        double col;
        double row;
        bool in_bounds;  // true iff the fractional coordinate lies inside the grid hull
    };

    PixelCoord world_to_pixel(Vec2 p) const;
    Vec2 pixel_to_world(double col, double row) const;

    /// Bilinear sample at a world position; throws OutOfBounds outside the
    /// convex hull of texel centers.
    double sample_bilinear(Vec2 p) const;

    /// One vertex per texel, two CCW triangles per cell (viewed from +z).
    Mesh export_mesh(std::optional<PixelRegion> region = std::nullopt) const;

    void save(const std::string& path) const;
    static Heightmap load(const std::string& path);

  private:
    std::size_t cols_;
    std::size_t rows_;
    double resolution_;
    Vec2 origin_;
    std::vector<float> elev_;
    std::vector<float> pristine_;
};

/// Wavefront-style text export: `v x y z` and 1-indexed `f i j k` lines.
void write_obj(const Mesh& mesh, const std::string& path);

}  // namespace regtrace
