/*
 * facedyn - 3D facial dynamics: morphable model fitting, sparse texture
 * mapping, and recurrent coefficient sequence prediction.
 *
 * File: include/facedyn/types.hpp
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

#ifndef FACEDYN_TYPES_HPP
#define FACEDYN_TYPES_HPP

#include "Eigen/Core"

#include <stdexcept>
#include <string>

namespace facedyn {

// Coefficient layout, fixed by the model family: 12 pose + 40 shape + 10 expression.
inline constexpr int kShapeCoeffs = 40;
inline constexpr int kExprCoeffs = 10;
inline constexpr int kPoseCoeffs = 12;
inline constexpr int kCoeffDim = kPoseCoeffs + kShapeCoeffs + kExprCoeffs; // 62
inline constexpr int kNumLandmarks = 68;

/** Base class for all errors thrown by this library. */
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/** A required file is missing or cannot be opened/read/written. */
class FileError : public Error
{
public:
    using Error::Error;
};

/** A file exists but its magic, version or layout is not what we expect. */
class FormatError : public Error
{
public:
    using Error::Error;
};

/** Contents violate a structural invariant (dimension mismatch, bad index, ...). */
class DimensionError : public Error
{
public:
    using Error::Error;
};

/** Numeric failure: singular system, NaN loss, non-finite input. */
class NumericError : public Error
{
public:
    using Error::Error;
};

/**
 * A 62-dim 3DMM coefficient vector: a 3x4 pose block (scaled rotation in the
 * left 3x3, translation in the last column), 40 shape coefficients and 10
 * expression coefficients.
 *
 * The flattened order is pose (row-major, 12), alpha_s (40), alpha_exp (10).
 */
struct CoeffVector
{
    Eigen::Matrix<double, 3, 4> pose = identity_pose();
    Eigen::Matrix<double, kShapeCoeffs, 1> alpha_s =
        Eigen::Matrix<double, kShapeCoeffs, 1>::Zero();
    Eigen::Matrix<double, kExprCoeffs, 1> alpha_exp =
        Eigen::Matrix<double, kExprCoeffs, 1>::Zero();

    static Eigen::Matrix<double, 3, 4> identity_pose()
    {
        Eigen::Matrix<double, 3, 4> p = Eigen::Matrix<double, 3, 4>::Zero();
        p.block<3, 3>(0, 0).setIdentity();
        return p;
    }

    /** Flattens to the canonical 62-vector (pose row-major, then alpha_s, then alpha_exp). */
    Eigen::Matrix<double, kCoeffDim, 1> flatten() const
    {
        Eigen::Matrix<double, kCoeffDim, 1> out;
        int k = 0;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c)
                out[k++] = pose(r, c);
        out.segment<kShapeCoeffs>(kPoseCoeffs) = alpha_s;
        out.segment<kExprCoeffs>(kPoseCoeffs + kShapeCoeffs) = alpha_exp;
        return out;
    }

    static CoeffVector from_flat(const Eigen::Matrix<double, kCoeffDim, 1>& v)
    {
        CoeffVector c;
        int k = 0;
        for (int r = 0; r < 3; ++r)
            for (int col = 0; col < 4; ++col)
                c.pose(r, col) = v[k++];
        c.alpha_s = v.segment<kShapeCoeffs>(kPoseCoeffs);
        c.alpha_exp = v.segment<kExprCoeffs>(kPoseCoeffs + kShapeCoeffs);
        return c;
    }

    bool all_finite() const
    {
        return pose.allFinite() && alpha_s.allFinite() && alpha_exp.allFinite();
    }
};

/** Reconstructed model-space vertices, one column per vertex. */
struct Shape3D
{
    Eigen::Matrix3Xd vertices; // 3 x N
};

/** Image-plane vertex positions with the camera-space z retained for occlusion. */
struct ProjectedVerts
{
    Eigen::Matrix2Xd xy;    // 2 x N, pixels
    Eigen::VectorXd depth;  // N, camera-space z
};

} // namespace facedyn

#endif /* FACEDYN_TYPES_HPP */
