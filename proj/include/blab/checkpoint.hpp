/// @file checkpoint.hpp
/// Binary state checkpoints: magic "CBLB", version, grid shape, time, and the
/// three coefficient arrays as interleaved little-endian doubles.

#pragma once

#include "blab/dynamics.hpp"

#include <string>

namespace blab {

void save_checkpoint(const std::string& path, const FlowState& state);

/// Throws std::runtime_error on a bad magic, unknown version, or truncation.
FlowState load_checkpoint(const std::string& path);

} // namespace blab
