#pragma once

#include "stroketext/image.hpp"

namespace stroketext {

// Exact Euclidean distance transform of a binary mask: for every foreground
// pixel, the distance to the nearest background pixel; 0 on background.
// The image border is treated as background, so edge-touching foreground
// still gets finite distances.
DistanceMap distance_transform(const BinaryMask& mask);

// Distance from every pixel of the grid to the nearest ON pixel of `seeds`
// (no virtual border). If `seeds` is empty, every value is `empty_value`.
DistanceMap distance_to_set(const BinaryMask& seeds, double empty_value);

}  // namespace stroketext
