#pragma once
#include <stdexcept>
#include <string>

#include <nlos/core/impulse_response.hpp>
#include <nlos/core/volume.hpp>

namespace nlos::io {

using core::ImpulseResponse;
using core::ReconstructionVolume;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Wrong magic/version or malformed header fields.
struct FormatError : IoError {
  using IoError::IoError;
};
/// File ends before the declared payload.
struct TruncationError : IoError {
  using IoError::IoError;
};
/// Header counts are zero or inconsistent with the payload length.
struct CountMismatchError : IoError {
  using IoError::IoError;
};

/// .nlosh container: "NLOSH1" magic, f64 headers, f32 payload, little-endian
/// on every host. Writes are atomic (temp file + rename).
void write_h(const std::string &path, const ImpulseResponse &h);
ImpulseResponse read_h(const std::string &path);

/// .nlosv container: "NLOSV1" magic, same conventions. The f32 payload is
/// the format's precision; voxel data is widened to double on read.
void write_vol(const std::string &path, const ReconstructionVolume &vol);
ReconstructionVolume read_vol(const std::string &path);

/// Serialized bytes without touching the filesystem (golden-file tests).
std::string serialize_h(const ImpulseResponse &h);
std::string serialize_vol(const ReconstructionVolume &vol);

/// Atomic write helper: writes to path + ".tmp", then renames.
void atomic_write(const std::string &path, const std::string &bytes);

} // namespace nlos::io
