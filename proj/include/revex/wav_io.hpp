// Copyright 2026 Revex Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef REVEX_WAV_IO_HPP_
#define REVEX_WAV_IO_HPP_

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "revex/waveform.hpp"

namespace revex {

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
  os.write(b, 4);
}
inline void put_u16(std::ostream& os, std::uint16_t v) {
  char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
  os.write(b, 2);
}
inline std::uint32_t get_u32(const unsigned char* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (std::uint32_t(p[3]) << 24);
}
inline std::uint16_t get_u16(const unsigned char* p) { return std::uint16_t(p[0] | (p[1] << 8)); }

}  // namespace detail

// Reads a mono RIFF/WAVE file. PCM16 and IEEE float32 are supported.
template <typename T = double>
Waveform<T> read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open wav file: " + path);
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (raw.size() < 44 || std::memcmp(raw.data(), "RIFF", 4) != 0 || std::memcmp(raw.data() + 8, "WAVE", 4) != 0)
    throw DataError("not a RIFF/WAVE file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= raw.size()) {
    const std::uint32_t chunk_len = detail::get_u32(raw.data() + pos + 4);
    if (std::memcmp(raw.data() + pos, "fmt ", 4) == 0 && pos + 8 + 16 <= raw.size()) {
      const unsigned char* p = raw.data() + pos + 8;
      format = detail::get_u16(p);
      channels = detail::get_u16(p + 2);
      rate = detail::get_u32(p + 4);
      bits = detail::get_u16(p + 14);
    } else if (std::memcmp(raw.data() + pos, "data", 4) == 0) {
      data = raw.data() + pos + 8;
      data_len = chunk_len;
      if (pos + 8 + data_len > raw.size()) throw DataError("truncated wav data chunk: " + path);
    }
    pos += 8 + chunk_len + (chunk_len & 1);
  }
  if (!data) throw DataError("wav file has no data chunk: " + path);
  if (channels != 1) throw DataError("expected mono wav, got " + std::to_string(channels) + " channels: " + path);

  Waveform<T> w;
  w.sample_rate = static_cast<double>(rate);
  if (format == 1 && bits == 16) {
    const Index n = data_len / 2;
    w.samples.resize(n);
    for (Index i = 0; i < n; ++i) {
      const std::int16_t s = static_cast<std::int16_t>(detail::get_u16(data + 2 * i));
      w.samples[i] = static_cast<T>(s) / T(32768);
    }
  } else if (format == 3 && bits == 32) {
    const Index n = data_len / 4;
    w.samples.resize(n);
    for (Index i = 0; i < n; ++i) {
      std::uint32_t u = detail::get_u32(data + 4 * i);
      float v;
      std::memcpy(&v, &u, 4);
      w.samples[i] = static_cast<T>(v);
    }
  } else {
    throw DataError("unsupported wav encoding (format=" + std::to_string(format) +
                    ", bits=" + std::to_string(bits) + "): " + path);
  }
  return w;
}

// Writes 16-bit PCM mono. Samples are clamped to [-1, 1).
template <typename T>
void write_wav(const std::string& path, const Waveform<T>& w) {
  validate(w);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write wav file: " + path);
  const std::uint32_t n = static_cast<std::uint32_t>(w.size());
  const std::uint32_t data_len = n * 2;
  f.write("RIFF", 4);
  detail::put_u32(f, 36 + data_len);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  detail::put_u32(f, 16);
  detail::put_u16(f, 1);  // PCM
  detail::put_u16(f, 1);  // mono
  detail::put_u32(f, static_cast<std::uint32_t>(w.sample_rate));
  detail::put_u32(f, static_cast<std::uint32_t>(w.sample_rate) * 2);
  detail::put_u16(f, 2);
  detail::put_u16(f, 16);
  f.write("data", 4);
  detail::put_u32(f, data_len);
  for (std::uint32_t i = 0; i < n; ++i) {
    double v = static_cast<double>(w.samples[i]) * 32768.0;
    v = std::max(-32768.0, std::min(32767.0, std::round(v)));
    detail::put_u16(f, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!f) throw IoError("short write: " + path);
}

}  // namespace revex

#endif  // REVEX_WAV_IO_HPP_
