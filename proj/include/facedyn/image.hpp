/*
 * facedyn - 3D facial dynamics: morphable model fitting, sparse texture
 * mapping, and recurrent coefficient sequence prediction.
 *
 * File: include/facedyn/image.hpp
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

#ifndef FACEDYN_IMAGE_HPP
#define FACEDYN_IMAGE_HPP

#include "facedyn/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace facedyn {

using Rgb = std::array<std::uint8_t, 3>;

/** Interleaved 8-bit RGB image, row-major, origin at the top-left. */
struct ImageRGB
{
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // 3 * width * height

    ImageRGB() = default;
    ImageRGB(int w, int h, Rgb fill = {0, 0, 0}) : width(w), height(h)
    {
        data.resize(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3);
        for (std::size_t i = 0; i < data.size(); i += 3) {
            data[i] = fill[0];
            data[i + 1] = fill[1];
            data[i + 2] = fill[2];
        }
    }

    Rgb at(int x, int y) const
    {
        const std::size_t o = 3 * (static_cast<std::size_t>(y) * width + x);
        return {data[o], data[o + 1], data[o + 2]};
    }

    void set(int x, int y, Rgb c)
    {
        const std::size_t o = 3 * (static_cast<std::size_t>(y) * width + x);
        data[o] = c[0];
        data[o + 1] = c[1];
        data[o + 2] = c[2];
    }

    bool same_size(const ImageRGB& o) const { return width == o.width && height == o.height; }
};

/** Single-channel boolean mask with the same addressing as ImageRGB. */
struct MaskImage
{
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // 0 or 1

    MaskImage() = default;
    MaskImage(int w, int h) : width(w), height(h)
    {
        data.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
    }

    bool at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }

    std::size_t count() const
    {
        std::size_t n = 0;
        for (auto v : data)
            n += v;
        return n;
    }
};

/**
 * Samples with bilinear filtering. `sx`, `sy` are continuous pixel
 * coordinates where (0.5, 0.5) is the center of texel (0, 0); coordinates
 * are clamped to the image border.
 */
Rgb sample_bilinear(const ImageRGB& img, double sx, double sy);

/** Nearest-texel sampling under the same coordinate convention. */
Rgb sample_nearest(const ImageRGB& img, double sx, double sy);

/** Reads an 8-bit PNG (gray/palette/alpha inputs are expanded to RGB). */
ImageRGB read_png(const std::filesystem::path& path);

/** Writes an 8-bit RGB PNG with fixed encoder settings (byte-deterministic). */
void write_png(const ImageRGB& img, const std::filesystem::path& path);

/** Writes a mask as an 8-bit gray PNG with values 0/255. */
void write_mask_png(const MaskImage& mask, const std::filesystem::path& path);

/** Reads a 0/255 gray (or RGB) PNG back into a boolean mask (nonzero = true). */
MaskImage read_mask_png(const std::filesystem::path& path);

} // namespace facedyn

#endif /* FACEDYN_IMAGE_HPP */
