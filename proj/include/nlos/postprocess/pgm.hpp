#pragma once
#include <optional>
#include <string>

#include <nlos/core/medium.hpp>
#include <nlos/postprocess/postprocess.hpp>

namespace nlos::postprocess {

/// Binary PGM (P5), 8-bit, row-major, with a comment line recording the
/// view, the reconstruction wavelength, and (when known) the medium
/// parameters. Intensities are normalized to [0, 255] on write.
void write_pgm(const std::string &path, const Image &img, View view, double lambda,
               std::optional<MediumParams> medium = std::nullopt);

} // namespace nlos::postprocess
