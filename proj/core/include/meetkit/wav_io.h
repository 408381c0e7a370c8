// core/include/meetkit/wav_io.h

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

#ifndef MEETKIT_WAV_IO_H_
#define MEETKIT_WAV_IO_H_

#include <filesystem>
#include <stdexcept>
#include <string>

#include "meetkit/audio_buffer.h"

namespace meetkit {

enum class WavEncoding { kPcm16, kFloat32 };

/// Thrown for malformed or unsupported RIFF/WAVE content.
class WavError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads PCM16 or IEEE float32 RIFF/WAVE (WAVE_FORMAT_EXTENSIBLE included).
AudioBuffer ReadWav(const std::filesystem::path& path);

/// PCM16 samples are clipped to [-1, 1) and rounded to the nearest step.
void WriteWav(const std::filesystem::path& path, const AudioBuffer& audio,
              WavEncoding encoding = WavEncoding::kFloat32);

/// In-memory variants used by the file functions.
AudioBuffer DecodeWav(const std::string& bytes);
std::string EncodeWav(const AudioBuffer& audio, WavEncoding encoding);

}  // namespace meetkit

#endif  // MEETKIT_WAV_IO_H_
