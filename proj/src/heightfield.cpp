#include "regtrace/heightfield.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace regtrace {

namespace {

constexpr char kMagic[8] = {'R', 'G', 'T', 'R', 'A', 'C', 'E', '1'};

template <typename T>
void write_raw(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void read_raw(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

}  // namespace

Heightmap::Heightmap(std::size_t cols, std::size_t rows, double resolution, Vec2 origin,
                     std::vector<float> elevations)
    : cols_(cols), rows_(rows), resolution_(resolution), origin_(origin),
      elev_(std::move(elevations)) {
    if (cols_ < 2 || rows_ < 2)
        throw FormatError("heightmap must be at least 2x2 texels");
    if (!(resolution_ > 0.0))
        throw FormatError("heightmap resolution must be positive");
    if (elev_.size() != cols_ * rows_)
        throw FormatError("elevation buffer size does not match grid dimensions");
    pristine_ = elev_;
}

Heightmap::PixelCoord Heightmap::world_to_pixel(Vec2 p) const {
    double col = (p.x - origin_.x) / resolution_;
    double row = (p.y - origin_.y) / resolution_;
    bool in = col >= 0.0 && col <= double(cols_ - 1) && row >= 0.0 && row <= double(rows_ - 1);
    return {col, row, in};
}

Vec2 Heightmap::pixel_to_world(double col, double row) const {
    return {origin_.x + resolution_ * col, origin_.y + resolution_ * row};
}

double Heightmap::sample_bilinear(Vec2 p) const {
    auto pc = world_to_pixel(p);
    if (!pc.in_bounds)
        throw OutOfBounds("bilinear sample outside grid hull");
    std::size_t c0 = std::min(std::size_t(pc.col), cols_ - 2);
    std::size_t r0 = std::min(std::size_t(pc.row), rows_ - 2);
    double fc = pc.col - double(c0);
    double fr = pc.row - double(r0);
    double z00 = at(c0, r0);
    double z10 = at(c0 + 1, r0);
    double z01 = at(c0, r0 + 1);
    double z11 = at(c0 + 1, r0 + 1);
    return (1 - fr) * ((1 - fc) * z00 + fc * z10) + fr * ((1 - fc) * z01 + fc * z11);
}

Mesh Heightmap::export_mesh(std::optional<PixelRegion> region) const {
    PixelRegion r = region.value_or(PixelRegion{0, 0, cols_ - 1, rows_ - 1});
    r.max_col = std::min(r.max_col, cols_ - 1);
    r.max_row = std::min(r.max_row, rows_ - 1);
    if (r.min_col > r.max_col || r.min_row > r.max_row || r.width() < 2 || r.height() < 2)
        throw DegenerateRegion("mesh export needs a region of at least 2x2 texels");

    const std::size_t w = r.width();
    const std::size_t h = r.height();
    Mesh mesh;
    mesh.vertices.reserve(w * h);
    for (std::size_t row = r.min_row; row <= r.max_row; ++row) {
        for (std::size_t col = r.min_col; col <= r.max_col; ++col) {
            Vec2 p = pixel_to_world(double(col), double(row));
            mesh.vertices.push_back({p.x, p.y, double(at(col, row))});
        }
    }
    mesh.faces.reserve(2 * (w - 1) * (h - 1));
    for (std::size_t row = 0; row + 1 < h; ++row) {
        for (std::size_t col = 0; col + 1 < w; ++col) {
            auto v00 = std::uint32_t(row * w + col);
            auto v10 = v00 + 1;
            auto v01 = std::uint32_t((row + 1) * w + col);
            auto v11 = v01 + 1;
            mesh.faces.push_back({v00, v10, v11});
            mesh.faces.push_back({v00, v11, v01});
        }
    }
    return mesh;
}

void Heightmap::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open for writing: " + path);
    os.write(kMagic, sizeof(kMagic));
    write_raw(os, std::uint64_t(cols_));
    write_raw(os, std::uint64_t(rows_));
    write_raw(os, resolution_);
    write_raw(os, origin_.x);
    write_raw(os, origin_.y);
    os.write(reinterpret_cast<const char*>(elev_.data()),
             std::streamsize(elev_.size() * sizeof(float)));
    os.write(reinterpret_cast<const char*>(pristine_.data()),
             std::streamsize(pristine_.size() * sizeof(float)));
    if (!os)
        throw IoError("write failed: " + path);
}

Heightmap Heightmap::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open for reading: " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw FormatError("bad heightmap magic: " + path);
    std::uint64_t cols = 0, rows = 0;
    double resolution = 0, ox = 0, oy = 0;
    read_raw(is, cols);
    read_raw(is, rows);
    read_raw(is, resolution);
    read_raw(is, ox);
    read_raw(is, oy);
    if (!is || cols < 2 || rows < 2 || !(resolution > 0))
        throw FormatError("bad heightmap header: " + path);
    const std::size_t n = std::size_t(cols) * std::size_t(rows);
    std::vector<float> elev(n), pristine(n);
    is.read(reinterpret_cast<char*>(elev.data()), std::streamsize(n * sizeof(float)));
    is.read(reinterpret_cast<char*>(pristine.data()), std::streamsize(n * sizeof(float)));
    if (!is)
        throw FormatError("heightmap payload truncated: " + path);
    Heightmap map(cols, rows, resolution, {ox, oy}, std::move(elev));
    map.pristine_ = std::move(pristine);
    return map;
}

void write_obj(const Mesh& mesh, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open for writing: " + path);
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
        os << buf;
    }
    for (const auto& f : mesh.faces)
        os << "f " << f.a + 1 << ' ' << f.b + 1 << ' ' << f.c + 1 << '\n';
    if (!os)
        throw IoError("write failed: " + path);
}

}  // namespace regtrace
