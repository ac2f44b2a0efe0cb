#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace motor {

struct PngDims {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
};

// Reads width/height from the IHDR chunk; nullopt if the file is not a PNG.
std::optional<PngDims> read_png_dims(const std::string& path);

// Writes a single-color RGB PNG of the given side length.
void write_solid_png(const std::string& path, int side_px, std::uint8_t r,
                     std::uint8_t g, std::uint8_t b);

}  // namespace motor
