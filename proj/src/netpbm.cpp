#include "netpbm.hpp"

#include <cmath>
#include <fstream>

namespace nf {

namespace {

// Netpbm header token: skips whitespace and '#' comment lines.
int64_t next_header_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (!std::isspace(c)) {
      break;
    } else {
      c = in.get();
    }
  }
  if (c == EOF || !std::isdigit(c)) {
    throw Error(ErrorCode::Format, path + ": malformed netpbm header");
  }
  int64_t value = 0;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1000000000) throw Error(ErrorCode::Format, path + ": header value out of range");
    c = in.get();
  }
  if (c != EOF) in.unget();
  return value;
}

struct PnmHeader {
  int width = 0;
  int height = 0;
  int maxval = 0;
};

PnmHeader read_header(std::istream& in, const std::string& path, const char* magic) {
  char m[2];
  if (!in.read(m, 2) || m[0] != magic[0] || m[1] != magic[1]) {
    throw Error(ErrorCode::Format,
                path + ": not a binary " + magic + " netpbm file");
  }
  PnmHeader h;
  h.width = static_cast<int>(next_header_int(in, path));
  h.height = static_cast<int>(next_header_int(in, path));
  h.maxval = static_cast<int>(next_header_int(in, path));
  if (h.width < 1 || h.height < 1) {
    throw Error(ErrorCode::Format, path + ": image dimensions must be positive");
  }
  // Exactly one whitespace byte separates the header from the raster.
  const int sep = in.get();
  if (sep == EOF || !std::isspace(sep)) {
    throw Error(ErrorCode::Format, path + ": missing raster separator");
  }
  return h;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, path + ": cannot open for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, path + ": cannot open for writing");
  return out;
}

uint8_t to_byte(float v) {
  return static_cast<uint8_t>(std::lround(static_cast<double>(clamp01(v)) * 255.0));
}

}  // namespace

RgbImage read_ppm8(const std::string& path) {
  std::ifstream in = open_in(path);
  const PnmHeader h = read_header(in, path, "P6");
  if (h.maxval != 255) {
    throw Error(ErrorCode::Format, path + ": expected 8-bit PPM (maxval 255)");
  }
  RgbImage img(h.width, h.height);
  std::vector<uint8_t> raw(img.data.size());
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw Error(ErrorCode::Format, path + ": truncated pixel data");
  }
  for (size_t i = 0; i < raw.size(); ++i) img.data[i] = static_cast<float>(raw[i] / 255.0);
  return img;
}

void write_ppm8(const RgbImage& img, const std::string& path) {
  if (img.empty()) throw Error(ErrorCode::Empty, "cannot write empty image");
  std::ofstream out = open_out(path);
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  std::vector<uint8_t> raw(img.data.size());
  for (size_t i = 0; i < raw.size(); ++i) raw[i] = to_byte(img.data[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::Io, path + ": write failed");
}

void write_pgm8(const GrayImage& img, const std::string& path) {
  if (img.empty()) throw Error(ErrorCode::Empty, "cannot write empty image");
  std::ofstream out = open_out(path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<uint8_t> raw(img.data.size());
  for (size_t i = 0; i < raw.size(); ++i) raw[i] = to_byte(img.data[i]);
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::Io, path + ": write failed");
}

ThermalFrame read_pgm16(const std::string& path) {
  std::ifstream in = open_in(path);
  const PnmHeader h = read_header(in, path, "P5");
  if (h.maxval != 65535) {
    throw Error(ErrorCode::Format,
                path + ": expected 16-bit thermal PGM (maxval 65535)");
  }
  ThermalFrame frame(h.width, h.height);
  std::vector<uint8_t> raw(frame.counts.size() * 2);
  if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
    throw Error(ErrorCode::Format, path + ": truncated pixel data");
  }
  for (size_t i = 0; i < frame.counts.size(); ++i) {
    frame.counts[i] = static_cast<uint16_t>((raw[i * 2] << 8) | raw[i * 2 + 1]);
  }
  return frame;
}

void write_pgm16(const ThermalFrame& frame, const std::string& path) {
  if (frame.empty()) throw Error(ErrorCode::Empty, "cannot write empty frame");
  std::ofstream out = open_out(path);
  out << "P5\n" << frame.width << " " << frame.height << "\n65535\n";
  std::vector<uint8_t> raw(frame.counts.size() * 2);
  for (size_t i = 0; i < frame.counts.size(); ++i) {
    raw[i * 2] = static_cast<uint8_t>(frame.counts[i] >> 8);
    raw[i * 2 + 1] = static_cast<uint8_t>(frame.counts[i] & 0xFF);
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(ErrorCode::Io, path + ": write failed");
}

}  // namespace nf
