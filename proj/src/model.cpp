/*
 * facedyn - 3D facial dynamics: morphable model fitting, sparse texture
 * mapping, and recurrent coefficient sequence prediction.
 *
 * File: src/model.cpp
 *
 * Copyright 2026 The facedyn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "facedyn/model.hpp"

#include <cstdio>
#include <cstring>
#include <memory>
#include <set>
#include <vector>

namespace facedyn {

namespace {

constexpr char kMagic[4] = {'F', 'M', 'M', '1'};

struct FileCloser
{
    void operator()(std::FILE* f) const
    {
        if (f)
            std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void read_exact(std::FILE* f, void* dst, std::size_t bytes, const char* what)
{
    if (std::fread(dst, 1, bytes, f) != bytes)
        throw FormatError(std::string("model file truncated while reading ") + what);
}

void write_exact(std::FILE* f, const void* src, std::size_t bytes, const char* what)
{
    if (std::fwrite(src, 1, bytes, f) != bytes)
        throw FileError(std::string("short write while writing ") + what);
}

std::uint32_t read_u32(std::FILE* f, const char* what)
{
    // Container is little-endian; assemble explicitly so the loader does not
    // depend on host byte order.
    unsigned char b[4];
    read_exact(f, b, 4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void write_u32(std::FILE* f, std::uint32_t v, const char* what)
{
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    write_exact(f, b, 4, what);
}

std::vector<float> read_f32(std::FILE* f, std::size_t count, const char* what)
{
    std::vector<float> v(count);
    read_exact(f, v.data(), count * sizeof(float), what);
    return v;
}

std::vector<std::uint32_t> read_u32s(std::FILE* f, std::size_t count, const char* what)
{
    std::vector<std::uint32_t> v(count);
    read_exact(f, v.data(), count * sizeof(std::uint32_t), what);
    return v;
}

} // namespace

void MorphableModel::validate() const
{
    const auto n = static_cast<std::int64_t>(mean_shape.size());
    if (n <= 0 || n % 3 != 0)
        throw DimensionError("mean_shape length must be a positive multiple of 3, got " +
                             std::to_string(n));
    if (shape_basis.cols() != kShapeCoeffs)
        throw DimensionError("shape_basis must have 40 columns, got " +
                             std::to_string(shape_basis.cols()));
    if (expr_basis.cols() != kExprCoeffs)
        throw DimensionError("expr_basis must have 10 columns, got " +
                             std::to_string(expr_basis.cols()));
    if (shape_basis.rows() != n || expr_basis.rows() != n)
        throw DimensionError("basis row counts must equal 3*n_vertices");

    const auto nv = static_cast<std::uint32_t>(n / 3);
    for (int t = 0; t < triangles.cols(); ++t)
        for (int r = 0; r < 3; ++r)
            if (triangles(r, t) >= nv)
                throw DimensionError("triangle " + std::to_string(t) + " references vertex " +
                                     std::to_string(triangles(r, t)) + " but model has " +
                                     std::to_string(nv) + " vertices");

    std::set<std::uint32_t> seen;
    for (std::uint32_t id : landmark_indices) {
        if (id >= nv)
            throw DimensionError("landmark index " + std::to_string(id) + " out of range [0, " +
                                 std::to_string(nv) + ")");
        if (!seen.insert(id).second)
            throw DimensionError("duplicate landmark vertex id " + std::to_string(id));
    }
}

MorphableModel load_model(const std::filesystem::path& path)
{
    FilePtr f(std::fopen(path.string().c_str(), "rb"));
    if (!f)
        throw FileError("cannot open model file: " + path.string());

    char magic[4];
    read_exact(f.get(), magic, 4, "magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("bad magic in " + path.string() + " (expected FMM1)");

    const std::uint32_t n = read_u32(f.get(), "vertex count");
    const std::uint32_t k = read_u32(f.get(), "triangle count");
    if (n == 0)
        throw DimensionError("model declares zero vertices");

    MorphableModel m;
    const std::size_t rows = static_cast<std::size_t>(n) * 3;

    const auto mean = read_f32(f.get(), rows, "mean shape");
    m.mean_shape.resize(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        m.mean_shape[static_cast<Eigen::Index>(i)] = mean[i];

    // Bases are stored row-major.
    const auto sb = read_f32(f.get(), rows * kShapeCoeffs, "shape basis");
    m.shape_basis.resize(static_cast<Eigen::Index>(rows), kShapeCoeffs);
    for (std::size_t r = 0; r < rows; ++r)
        for (int c = 0; c < kShapeCoeffs; ++c)
            m.shape_basis(static_cast<Eigen::Index>(r), c) = sb[r * kShapeCoeffs + c];

    const auto eb = read_f32(f.get(), rows * kExprCoeffs, "expression basis");
    m.expr_basis.resize(static_cast<Eigen::Index>(rows), kExprCoeffs);
    for (std::size_t r = 0; r < rows; ++r)
        for (int c = 0; c < kExprCoeffs; ++c)
            m.expr_basis(static_cast<Eigen::Index>(r), c) = eb[r * kExprCoeffs + c];

    const auto tris = read_u32s(f.get(), static_cast<std::size_t>(k) * 3, "triangles");
    m.triangles.resize(3, k);
    for (std::uint32_t t = 0; t < k; ++t)
        for (int r = 0; r < 3; ++r)
            m.triangles(r, t) = tris[static_cast<std::size_t>(t) * 3 + r];

    const auto lms = read_u32s(f.get(), kNumLandmarks, "landmark indices");
    for (int i = 0; i < kNumLandmarks; ++i)
        m.landmark_indices[static_cast<std::size_t>(i)] = lms[static_cast<std::size_t>(i)];

    if (std::fgetc(f.get()) != EOF)
        throw FormatError("trailing bytes after model payload in " + path.string());

    m.validate();
    return m;
}

void save_model(const MorphableModel& model, const std::filesystem::path& path)
{
    model.validate();
    FilePtr f(std::fopen(path.string().c_str(), "wb"));
    if (!f)
        throw FileError("cannot open model file for writing: " + path.string());

    write_exact(f.get(), kMagic, 4, "magic");
    write_u32(f.get(), static_cast<std::uint32_t>(model.n_vertices()), "vertex count");
    write_u32(f.get(), static_cast<std::uint32_t>(model.n_triangles()), "triangle count");

    const auto rows = static_cast<std::size_t>(model.mean_shape.size());
    std::vector<float> buf;
    buf.reserve(rows * kShapeCoeffs);

    buf.resize(rows);
    for (std::size_t i = 0; i < rows; ++i)
        buf[i] = static_cast<float>(model.mean_shape[static_cast<Eigen::Index>(i)]);
    write_exact(f.get(), buf.data(), buf.size() * sizeof(float), "mean shape");

    buf.resize(rows * kShapeCoeffs);
    for (std::size_t r = 0; r < rows; ++r)
        for (int c = 0; c < kShapeCoeffs; ++c)
            buf[r * kShapeCoeffs + c] = static_cast<float>(model.shape_basis(static_cast<Eigen::Index>(r), c));
    write_exact(f.get(), buf.data(), buf.size() * sizeof(float), "shape basis");

    buf.resize(rows * kExprCoeffs);
    for (std::size_t r = 0; r < rows; ++r)
        for (int c = 0; c < kExprCoeffs; ++c)
            buf[r * kExprCoeffs + c] = static_cast<float>(model.expr_basis(static_cast<Eigen::Index>(r), c));
    write_exact(f.get(), buf.data(), buf.size() * sizeof(float), "expression basis");

    std::vector<std::uint32_t> tri(static_cast<std::size_t>(model.n_triangles()) * 3);
    for (int t = 0; t < model.n_triangles(); ++t)
        for (int r = 0; r < 3; ++r)
            tri[static_cast<std::size_t>(t) * 3 + static_cast<std::size_t>(r)] = model.triangles(r, t);
    write_exact(f.get(), tri.data(), tri.size() * sizeof(std::uint32_t), "triangles");

    write_exact(f.get(), model.landmark_indices.data(), kNumLandmarks * sizeof(std::uint32_t),
                "landmark indices");
}

Shape3D evaluate_shape(const MorphableModel& model, const CoeffVector& c)
{
    const Eigen::Index rows = model.mean_shape.size();
    Shape3D out;
    out.vertices.resize(3, rows / 3);
    double* dst = out.vertices.data();
    const double* mean = model.mean_shape.data();

    // Hand-rolled kernel: the per-row dot products are independent, and the
    // serial reference in facedyn::ref must stay a different code path.
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < rows; ++i) {
        double acc = mean[i];
        for (int j = 0; j < kShapeCoeffs; ++j)
            acc += model.shape_basis(i, j) * c.alpha_s[j];
        for (int j = 0; j < kExprCoeffs; ++j)
            acc += model.expr_basis(i, j) * c.alpha_exp[j];
        dst[i] = acc; // vertex-major layout matches the 3xN column-major map
    }
    return out;
}

ProjectedVerts project(const Shape3D& shape, const CoeffVector& c)
{
    const Eigen::Index n = shape.vertices.cols();
    ProjectedVerts out;
    out.xy.resize(2, n);
    out.depth.resize(n);

    const Eigen::Matrix<double, 3, 4>& p = c.pose;
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = shape.vertices(0, i);
        const double y = shape.vertices(1, i);
        const double z = shape.vertices(2, i);
        out.xy(0, i) = p(0, 0) * x + p(0, 1) * y + p(0, 2) * z + p(0, 3);
        out.xy(1, i) = p(1, 0) * x + p(1, 1) * y + p(1, 2) * z + p(1, 3);
        out.depth[i] = p(2, 0) * x + p(2, 1) * y + p(2, 2) * z + p(2, 3);
    }
    return out;
}

Eigen::Matrix<double, 2, kNumLandmarks> landmarks_from_coeffs(const MorphableModel& model,
                                                              const CoeffVector& c)
{
    const Shape3D shape = evaluate_shape(model, c);
    const ProjectedVerts proj = project(shape, c);
    Eigen::Matrix<double, 2, kNumLandmarks> lms;
    for (int i = 0; i < kNumLandmarks; ++i)
        lms.col(i) = proj.xy.col(model.landmark_indices[static_cast<std::size_t>(i)]);
    return lms;
}

CoeffVector recombine(const CoeffVector& base, const CoeffVector& donor, bool take_pose,
                      bool take_shape, bool take_expr)
{
    CoeffVector out = base;
    if (take_pose)
        out.pose = donor.pose;
    if (take_shape)
        out.alpha_s = donor.alpha_s;
    if (take_expr)
        out.alpha_exp = donor.alpha_exp;
    return out;
}

} // namespace facedyn
