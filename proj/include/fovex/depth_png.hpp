#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fovex/core.hpp"

// PNG containers: depth is 16-bit single-channel grayscale with
// value = meters * 256 and 0 = invalid; images are 8-bit RGB.

namespace fovex {

/// Loads a 16-bit grayscale PNG as metric depth (stored / 256.0).
/// Throws bit_depth_mismatch for other bit depths, bad_format otherwise.
DepthMap load_depth_png(const std::string& path);

/// Stores depth as round(meters * 256), clamped to the representable
/// 0 .. 255.996 m. save(load(x)) reproduces the depth samples bit-exactly.
void save_depth_png(const DepthMap& d, const std::string& path);

/// Same 16-bit container for uncertainty rasters (meters * 256).
void save_uncertainty_png(const UncertaintyMap& u, const std::string& path);

ImageFrame load_image_png(const std::string& path);
void save_image_png(const ImageFrame& f, const std::string& path);

/// 8-bit grayscale raster (error-map visualization).
void save_gray8_png(const std::vector<std::uint8_t>& values, int width, int height,
                    const std::string& path);

}  // namespace fovex
