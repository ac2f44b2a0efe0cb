#include "motor/png_io.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace motor {

namespace {

const unsigned char kPngSig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v >> 24));
  out.push_back(static_cast<unsigned char>(v >> 16));
  out.push_back(static_cast<unsigned char>(v >> 8));
  out.push_back(static_cast<unsigned char>(v));
}

void put_chunk(std::vector<unsigned char>& out, const char type[4],
               const std::vector<unsigned char>& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  uLong crc = crc32(0L, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::optional<PngDims> read_png_dims(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  unsigned char hdr[24];
  in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
  if (in.gcount() != sizeof hdr) return std::nullopt;
  if (std::memcmp(hdr, kPngSig, 8) != 0) return std::nullopt;
  if (std::memcmp(hdr + 12, "IHDR", 4) != 0) return std::nullopt;
  auto be32 = [&](int off) {
    return (std::uint32_t(hdr[off]) << 24) | (std::uint32_t(hdr[off + 1]) << 16) |
           (std::uint32_t(hdr[off + 2]) << 8) | std::uint32_t(hdr[off + 3]);
  };
  return PngDims{be32(16), be32(20)};
}

void write_solid_png(const std::string& path, int side_px, std::uint8_t r,
                     std::uint8_t g, std::uint8_t b) {
  if (side_px < 1) throw std::invalid_argument("side_px must be positive");
  const auto side = static_cast<std::uint32_t>(side_px);

  // raw scanlines: filter byte 0 + RGB pixels
  std::vector<unsigned char> raw;
  raw.reserve(side * (1 + side * 3));
  for (std::uint32_t y = 0; y < side; ++y) {
    raw.push_back(0);
    for (std::uint32_t x = 0; x < side; ++x) {
      raw.push_back(r);
      raw.push_back(g);
      raw.push_back(b);
    }
  }

  uLongf comp_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<unsigned char> comp(comp_size);
  if (compress2(comp.data(), &comp_size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
    throw std::runtime_error("png deflate failed");
  comp.resize(comp_size);

  std::vector<unsigned char> ihdr;
  put_u32(ihdr, side);
  put_u32(ihdr, side);
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // color type: truecolor
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);

  std::vector<unsigned char> file;
  file.insert(file.end(), kPngSig, kPngSig + 8);
  put_chunk(file, "IHDR", ihdr);
  put_chunk(file, "IDAT", comp);
  put_chunk(file, "IEND", {});

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(file.data()), static_cast<std::streamsize>(file.size()));
}

}  // namespace motor
