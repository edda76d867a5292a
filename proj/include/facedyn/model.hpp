/*
 * facedyn - 3D facial dynamics: morphable model fitting, sparse texture
 * mapping, and recurrent coefficient sequence prediction.
 *
 * File: include/facedyn/model.hpp
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
#pragma once

#ifndef FACEDYN_MODEL_HPP
#define FACEDYN_MODEL_HPP

#include "facedyn/types.hpp"

#include "Eigen/Core"

#include <array>
#include <cstdint>
#include <filesystem>

namespace facedyn {

/**
 * A linear 3D morphable face model: mean shape plus 40 shape and 10
 * expression basis columns, a triangle mesh over the vertices, and the
 * vertex ids of the 68-point landmark set.
 *
 * Vertex coordinates are stored vertex-major: the 3N-vector is
 * (x0, y0, z0, x1, y1, z1, ...). Triangle vertex indices are 0-based;
 * they are converted to 1-based only at the OBJ export boundary.
 *
 * Immutable after load; safe to share across threads.
 */
struct MorphableModel
{
    Eigen::VectorXd mean_shape;                          // 3N
    Eigen::MatrixXd shape_basis;                         // 3N x 40
    Eigen::MatrixXd expr_basis;                          // 3N x 10
    Eigen::Matrix<std::uint32_t, 3, Eigen::Dynamic> triangles; // 3 x K
    std::array<std::uint32_t, kNumLandmarks> landmark_indices{};

    int n_vertices() const { return static_cast<int>(mean_shape.size() / 3); }
    int n_triangles() const { return static_cast<int>(triangles.cols()); }

    /**
     * Checks all structural invariants (basis column counts, row counts being
     * 3*N, triangle and landmark indices in range, landmark ids distinct).
     * Throws DimensionError describing the first violation found.
     */
    void validate() const;
};

/**
 * Loads a model from the FMM1 binary container.
 *
 * Throws FileError if the file is missing/unreadable, FormatError on a
 * magic mismatch or truncated payload, DimensionError if the contents
 * violate a model invariant.
 */
MorphableModel load_model(const std::filesystem::path& path);

/** Writes the FMM1 binary container. Exact inverse of load_model. */
void save_model(const MorphableModel& model, const std::filesystem::path& path);

/**
 * Evaluates the linear model: mean + shape_basis * alpha_s + expr_basis * alpha_exp,
 * reshaped to 3xN. Pose is not applied here.
 */
Shape3D evaluate_shape(const MorphableModel& model, const CoeffVector& c);

/**
 * Applies the 3x4 pose block to homogeneous vertices. xy is the first two
 * rows of the camera-space points, depth the third (kept for occlusion).
 */
ProjectedVerts project(const Shape3D& shape, const CoeffVector& c);

/** Projected positions of the 68 landmark vertices, one column per landmark. */
Eigen::Matrix<double, 2, kNumLandmarks> landmarks_from_coeffs(const MorphableModel& model,
                                                              const CoeffVector& c);

/**
 * Returns `base` with the flagged blocks replaced by `donor`'s blocks.
 * Unflagged blocks are copied bit-identically from `base`.
 */
CoeffVector recombine(const CoeffVector& base, const CoeffVector& donor, bool take_pose,
                      bool take_shape, bool take_expr);

} // namespace facedyn

#endif /* FACEDYN_MODEL_HPP */
