#pragma once

#include <cstdint>
#include <filesystem>

#include "nudge2d/spectral_field.hpp"

namespace nudge2d {

/// Binary checkpoint, format version 1 (see docs/checkpoint.md).
///
/// Layout, little-endian:
///   char[8]  magic "NDG2CKPT"
///   uint32   version
///   uint32   N
///   float64  L
///   float64  time
///   float64  u1 coefficients, N * (N/2 + 1) (re, im) pairs in storage order
///   float64  u2 coefficients, same layout
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const std::filesystem::path& path, const VelocityState& state);
VelocityState load_checkpoint(const std::filesystem::path& path);

}  // namespace nudge2d
