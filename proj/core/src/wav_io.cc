// core/src/wav_io.cc

// Copyright 2026  The meetkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "meetkit/wav_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace meetkit {
namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV codec assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
T Load(const std::string& bytes, std::size_t pos) {
  if (pos + sizeof(T) > bytes.size()) throw WavError("truncated WAV header");
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  return v;
}

template <typename T>
void Store(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

AudioBuffer DecodeWav(const std::string& bytes) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw WavError("not a RIFF/WAVE file");
  }
  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  std::size_t data_pos = 0, data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const auto size = Load<std::uint32_t>(bytes, pos + 4);
    const std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16) throw WavError("fmt chunk too short");
      format = Load<std::uint16_t>(bytes, body);
      channels = Load<std::uint16_t>(bytes, body + 2);
      rate = Load<std::uint32_t>(bytes, body + 4);
      block_align = Load<std::uint16_t>(bytes, body + 12);
      bits = Load<std::uint16_t>(bytes, body + 14);
      if (format == kFormatExtensible) {
        if (size < 40) throw WavError("extensible fmt chunk too short");
        // First two bytes of the subformat GUID carry the plain format tag.
        format = Load<std::uint16_t>(bytes, body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      data_pos = body;
      data_size = std::min<std::size_t>(size, bytes.size() - body);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw WavError("missing fmt chunk");
  if (!have_data) throw WavError("missing data chunk");
  if (channels == 0) throw WavError("zero channels in fmt chunk");
  if (rate == 0) throw WavError("zero sample rate in fmt chunk");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool f32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !f32) {
    throw WavError("unsupported WAV codec (format " + std::to_string(format) +
                   ", " + std::to_string(bits) + " bits)");
  }
  const std::size_t sample_bytes = bits / 8;
  if (block_align != channels * sample_bytes) {
    throw WavError("inconsistent block alignment");
  }
  if (data_size % block_align != 0) {
    throw WavError("data size is not a whole number of frames "
                   "(channel-length mismatch)");
  }
  const std::size_t frames = data_size / block_align;
  AudioBuffer out(channels, frames, static_cast<int>(rate));
  const char* p = bytes.data() + data_pos;
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::size_t c = 0; c < channels; ++c) {
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        out.at(c, n) = v / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        out.at(c, n) = v;
      }
      p += sample_bytes;
    }
  }
  return out;
}

std::string EncodeWav(const AudioBuffer& audio, WavEncoding encoding) {
  const bool pcm16 = encoding == WavEncoding::kPcm16;
  const std::uint16_t channels = static_cast<std::uint16_t>(audio.channels());
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint16_t block_align = channels * (bits / 8);
  const std::uint32_t data_size =
      static_cast<std::uint32_t>(audio.length() * block_align);

  std::string out;
  out.reserve(44 + data_size);
  out += "RIFF";
  Store<std::uint32_t>(out, 36 + data_size);
  out += "WAVEfmt ";
  Store<std::uint32_t>(out, 16);
  Store<std::uint16_t>(out, pcm16 ? kFormatPcm : kFormatFloat);
  Store<std::uint16_t>(out, channels);
  Store<std::uint32_t>(out, static_cast<std::uint32_t>(audio.sample_rate()));
  Store<std::uint32_t>(out, static_cast<std::uint32_t>(audio.sample_rate()) *
                                block_align);
  Store<std::uint16_t>(out, block_align);
  Store<std::uint16_t>(out, bits);
  out += "data";
  Store<std::uint32_t>(out, data_size);
  for (std::size_t n = 0; n < audio.length(); ++n) {
    for (std::size_t c = 0; c < audio.channels(); ++c) {
      const double v = audio.at(c, n);
      if (pcm16) {
        const double q = std::round(std::clamp(v, -1.0, 1.0) * 32768.0);
        Store<std::int16_t>(
            out, static_cast<std::int16_t>(std::clamp(q, -32768.0, 32767.0)));
      } else {
        Store<float>(out, static_cast<float>(v));
      }
    }
  }
  return out;
}

AudioBuffer ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  try {
    return DecodeWav(bytes);
  } catch (const WavError& e) {
    throw WavError(path.string() + ": " + e.what());
  }
}

void WriteWav(const std::filesystem::path& path, const AudioBuffer& audio,
              WavEncoding encoding) {
  const std::string bytes = EncodeWav(audio, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WavError("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw WavError("write failed for " + path.string());
}

}  // namespace meetkit
