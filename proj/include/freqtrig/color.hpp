#pragma once

#include "freqtrig/image.hpp"

namespace freqtrig {

// Full-range BT.601. Chroma is offset by 128 so all three channels live on
// the 0-255 scale.

/// Throws InvalidInput unless `img` is tagged RGB with three channels.
Image rgb_to_yuv(const Image& img);

/// Exact inverse of rgb_to_yuv. No clamping.
Image yuv_to_rgb(const Image& img);

/// Luma plane (Y) of an RGB or YUV image.
Grid luma(const Image& img);

}  // namespace freqtrig
