// core/src/room_sim.cc

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

#include "meetkit/room_sim.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "meetkit/filter.h"
#include "meetkit/rng.h"

namespace meetkit {
namespace {

constexpr int kSincHalfWidth = 32;
constexpr int kMaxPlacementAttempts = 10000;

// Adds amp * hann(t / W) * sinc(t), t = n - tau, for |t| < W.
void AddFractionalImpulse(std::vector<double>& h, double tau, double amp) {
  const double w = kSincHalfWidth;
  const long long first = static_cast<long long>(std::ceil(tau - w));
  const long long last = static_cast<long long>(std::floor(tau + w));
  const double t0 = static_cast<double>(first) - tau;
  const double pi = std::numbers::pi;
  double sin_base = std::sin(pi * t0);
  // Phasor for cos(pi * t / W), rotated one sample per step.
  std::complex<double> phasor = std::polar(1.0, pi * t0 / w);
  const std::complex<double> rot = std::polar(1.0, pi / w);
  const long long size = static_cast<long long>(h.size());
  for (long long n = first; n <= last; ++n) {
    const double t = static_cast<double>(n) - tau;
    if (n >= 0 && n < size && std::abs(t) < w) {
      const double sinc =
          std::abs(t) < 1e-9 ? 1.0 : sin_base / (pi * t);
      const double win = 0.5 * (1.0 + phasor.real());
      h[static_cast<std::size_t>(n)] += amp * win * sinc;
    }
    sin_base = -sin_base;
    phasor *= rot;
  }
}

double Axis(const Vec3& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); }

std::vector<double> FitLength(const AudioBuffer& noise, std::size_t len,
                              Rng& rng) {
  auto in = noise.channel(0);
  std::vector<double> out(len);
  const std::size_t n = in.size();
  const std::size_t offset = static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(n) - 1));
  for (std::size_t i = 0; i < len; ++i) out[i] = in[(offset + i) % n];
  return out;
}

}  // namespace

double Distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

void RoomSpec::Validate() const {
  if (!(dimensions.x > 0.0 && dimensions.y > 0.0 && dimensions.z > 0.0)) {
    throw std::invalid_argument("room dimensions must be positive");
  }
  if (!(sound_speed > 0.0)) {
    throw std::invalid_argument("speed of sound must be positive");
  }
  if (t60) {
    if (!(*t60 > 0.0)) throw std::invalid_argument("T60 must be positive");
  } else {
    for (double b : reflection) {
      if (!(b >= 0.0 && b <= 1.0)) {
        throw std::invalid_argument("reflection coefficients must be in [0,1]");
      }
    }
  }
}

bool RoomSpec::Contains(const Vec3& p) const {
  return p.x > 0.0 && p.x < dimensions.x && p.y > 0.0 &&
         p.y < dimensions.y && p.z > 0.0 && p.z < dimensions.z;
}

double EyringReflection(const Vec3& d, double t60, double sound_speed) {
  const double volume = d.x * d.y * d.z;
  const double surface = 2.0 * (d.x * d.y + d.x * d.z + d.y * d.z);
  // T60 = 24 ln(10) V / (-c S ln(1 - alpha)), beta = sqrt(1 - alpha)
  return std::exp(-12.0 * std::numbers::ln10 * volume /
                  (sound_speed * surface * t60));
}

namespace {

constexpr double kFitTopDb = -5.0;
constexpr double kFitBottomDb = -25.0;
constexpr double kHighPassHz = 100.0;
constexpr int kCalibrationIterations = 40;
constexpr double kMinLogReflection = -4.0;
constexpr double kMaxLogReflection = -1e-5;

// T60 of an energy sequence by backward integration. Returns 0 when the
// curve drops through the fit range in a single step and +inf when it
// never reaches the bottom of the range.
double DecayT60(std::span<const double> energy, int fs) {
  std::vector<double> edc(energy.size() + 1, 0.0);
  for (std::size_t i = energy.size(); i-- > 0;) edc[i] = edc[i + 1] + energy[i];
  if (!(edc[0] > 0.0)) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  bool reached = false;
  long long t_top = -1, t_bottom = -1;
  for (std::size_t i = 0; i < energy.size(); ++i) {
    const double db = 10.0 * std::log10(edc[i] / edc[0]);
    if (db <= kFitTopDb && t_top < 0) t_top = static_cast<long long>(i);
    if (db < kFitBottomDb) {
      reached = true;
      t_bottom = static_cast<long long>(i);
      break;
    }
    if (db <= kFitTopDb) {
      const double t = static_cast<double>(i) / fs;
      sx += t;
      sy += db;
      sxx += t * t;
      sxy += t * db;
      ++n;
    }
  }
  if (!reached) return std::numeric_limits<double>::infinity();
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  // Sparse responses give staircase curves whose fit can be nearly flat;
  // fall back to the crossing times in that case.
  const double span_t60 = 3.0 * static_cast<double>(t_bottom - t_top) / fs;
  if (!(slope < 0.0) || -60.0 / slope > 4.0 * span_t60) return span_t60;
  return -60.0 / slope;
}

void HighPass(std::vector<double>& h, int fs) {
  const double w = 2.0 * std::numbers::pi * kHighPassHz / fs;
  const double r1 = std::exp(-w);
  const double b1 = 2.0 * r1 * std::cos(w);
  const double b2 = -r1 * r1;
  const double a1 = -(1.0 + r1);
  double y0 = 0.0, y1 = 0.0, y2 = 0.0;
  for (double& v : h) {
    y2 = y1;
    y1 = y0;
    y0 = b1 * y1 + b2 * y2 + v;
    v = y0 + a1 * y1 + r1 * y2;
  }
}

std::array<int, 3> ImageOrders(const Vec3& dims, double c,
                               const RirOptions& options) {
  std::array<int, 3> order;
  for (int a = 0; a < 3; ++a) {
    const double reach = options.duration * c / (2.0 * Axis(dims, a));
    order[a] = std::min(options.max_order,
                        static_cast<int>(std::ceil(reach)) + 1);
  }
  return order;
}

void CheckOptions(const RirOptions& options) {
  if (options.sample_rate <= 0 || !(options.duration > 0.0) ||
      options.max_order < 0 || !(options.min_relative_amplitude >= 0.0)) {
    throw std::invalid_argument("invalid RIR options");
  }
}

}  // namespace

double SchroederT60(std::span<const double> rir, int sample_rate) {
  if (sample_rate <= 0) throw std::invalid_argument("bad sample rate");
  std::vector<double> energy(rir.size());
  for (std::size_t i = 0; i < rir.size(); ++i) energy[i] = rir[i] * rir[i];
  const double t = DecayT60(energy, sample_rate);
  return std::isfinite(t) ? t : 0.0;
}

double CalibratedReflection(const RoomSpec& room, const Vec3& source,
                            const Vec3& mic, double target_t60,
                            const RirOptions& options) {
  CheckOptions(options);
  if (!(target_t60 > 0.0)) throw std::invalid_argument("T60 must be positive");
  const Vec3& d = room.dimensions;
  const double c = room.sound_speed;
  const double fs = options.sample_rate;
  const std::size_t length =
      static_cast<std::size_t>(std::llround(options.duration * fs));
  const auto order = ImageOrders(d, c, options);

  struct Image {
    int reflections;
    std::size_t bin;
    double weight;
  };
  std::vector<Image> images;
  int max_reflections = 0;
  for (int mx = -order[0]; mx <= order[0]; ++mx) {
    for (int qx = 0; qx <= 1; ++qx) {
      const double dx = (1 - 2 * qx) * source.x - mic.x + 2.0 * mx * d.x;
      const int nx = std::abs(mx - qx) + std::abs(mx);
      for (int my = -order[1]; my <= order[1]; ++my) {
        for (int qy = 0; qy <= 1; ++qy) {
          const double dy = (1 - 2 * qy) * source.y - mic.y + 2.0 * my * d.y;
          const int ny = std::abs(my - qy) + std::abs(my);
          for (int mz = -order[2]; mz <= order[2]; ++mz) {
            for (int qz = 0; qz <= 1; ++qz) {
              const double dz =
                  (1 - 2 * qz) * source.z - mic.z + 2.0 * mz * d.z;
              const double dist2 = dx * dx + dy * dy + dz * dz;
              const double tau = std::sqrt(dist2) / c * fs;
              if (tau >= static_cast<double>(length)) continue;
              const int n = nx + ny + std::abs(mz - qz) + std::abs(mz);
              max_reflections = std::max(max_reflections, n);
              images.push_back({n, static_cast<std::size_t>(tau), 1.0 / dist2});
            }
          }
        }
      }
    }
  }
  if (images.empty()) {
    throw std::invalid_argument("RIR duration shorter than the direct path");
  }

  std::vector<double> energy(length), power(max_reflections + 1);
  double lo = kMinLogReflection, hi = kMaxLogReflection;
  for (int it = 0; it < kCalibrationIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    for (int k = 0; k <= max_reflections; ++k) power[k] = std::exp(2.0 * k * mid);
    std::fill(energy.begin(), energy.end(), 0.0);
    for (const Image& im : images) energy[im.bin] += power[im.reflections] * im.weight;
    if (DecayT60(energy, options.sample_rate) > target_t60) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

std::array<double, 6> EffectiveReflections(const RoomSpec& room,
                                           const Vec3& source, const Vec3& mic,
                                           const RirOptions& options) {
  if (!room.t60) return room.reflection;
  std::array<double, 6> out;
  if (room.t60_model == T60Model::kEyring) {
    out.fill(EyringReflection(room.dimensions, *room.t60, room.sound_speed));
  } else {
    out.fill(CalibratedReflection(room, source, mic, *room.t60, options));
  }
  return out;
}

void ArraySpec::Validate(const RoomSpec& room) const {
  if (mics.empty()) throw std::invalid_argument("array needs >= 1 microphone");
  if (!room.Contains(source)) {
    throw std::invalid_argument("source position outside the room");
  }
  for (std::size_t m = 0; m < mics.size(); ++m) {
    if (!room.Contains(mics[m])) {
      throw std::invalid_argument("microphone " + std::to_string(m) +
                                  " outside the room");
    }
  }
}

std::vector<Vec3> UniformCircularArray(std::size_t mics, double radius) {
  std::vector<Vec3> out(mics);
  for (std::size_t m = 0; m < mics; ++m) {
    const double a = 2.0 * std::numbers::pi * m / static_cast<double>(mics);
    out[m] = {radius * std::cos(a), radius * std::sin(a), 0.0};
  }
  return out;
}

AudioBuffer Rir::ToAudio() const {
  return AudioBuffer::FromChannels(taps, sample_rate);
}

Rir Rir::FromAudio(const AudioBuffer& audio) {
  Rir r;
  r.sample_rate = audio.sample_rate();
  for (std::size_t c = 0; c < audio.channels(); ++c) {
    auto ch = audio.channel(c);
    r.taps.emplace_back(ch.begin(), ch.end());
  }
  return r;
}

Rir Rir::EarlyPart(double early_s) const {
  if (!(early_s >= 0.0)) throw std::invalid_argument("early part must be >= 0");
  Rir out = *this;
  const auto keep = static_cast<std::size_t>(std::llround(early_s * sample_rate));
  for (auto& h : out.taps) {
    std::size_t peak = 0;
    for (std::size_t i = 1; i < h.size(); ++i) {
      if (std::abs(h[i]) > std::abs(h[peak])) peak = i;
    }
    for (std::size_t i = peak + keep + 1; i < h.size(); ++i) h[i] = 0.0;
  }
  return out;
}

Rir GenerateRir(const RoomSpec& room, const ArraySpec& array,
                const RirOptions& options) {
  room.Validate();
  array.Validate(room);
  CheckOptions(options);
  const double fs = options.sample_rate;
  const double c = room.sound_speed;
  const std::size_t length =
      static_cast<std::size_t>(std::llround(options.duration * fs));
  for (const auto& mic : array.mics) {
    const double direct = Distance(mic, array.source) / c * fs;
    if (direct >= static_cast<double>(length)) {
      throw std::invalid_argument(
          "RIR duration shorter than the direct-path delay");
    }
  }

  const auto beta = EffectiveReflections(room, array.source, array.mics[0],
                                         options);
  const Vec3& dims = room.dimensions;
  const auto order = ImageOrders(dims, c, options);
  const double max_delay = static_cast<double>(length) + kSincHalfWidth;

  Rir rir;
  rir.sample_rate = options.sample_rate;
  rir.taps.assign(array.mics.size(), std::vector<double>(length, 0.0));
  const double four_pi = 4.0 * std::numbers::pi;

  for (std::size_t m = 0; m < array.mics.size(); ++m) {
    const Vec3& r = array.mics[m];
    const Vec3& s = array.source;
    const double direct_amp = 1.0 / (four_pi * Distance(r, s));
    const double cutoff = options.min_relative_amplitude * direct_amp;
    auto& h = rir.taps[m];

    for (int mx = -order[0]; mx <= order[0]; ++mx) {
      for (int qx = 0; qx <= 1; ++qx) {
        const double dx = (1 - 2 * qx) * s.x - r.x + 2.0 * mx * dims.x;
        const double gx = std::pow(beta[0], std::abs(mx - qx)) *
                          std::pow(beta[1], std::abs(mx));
        if (gx == 0.0 && (mx != 0 || qx != 0)) continue;
        for (int my = -order[1]; my <= order[1]; ++my) {
          for (int qy = 0; qy <= 1; ++qy) {
            const double dy = (1 - 2 * qy) * s.y - r.y + 2.0 * my * dims.y;
            const double gy = gx * std::pow(beta[2], std::abs(my - qy)) *
                              std::pow(beta[3], std::abs(my));
            if (gy == 0.0 && (my != 0 || qy != 0)) continue;
            for (int mz = -order[2]; mz <= order[2]; ++mz) {
              for (int qz = 0; qz <= 1; ++qz) {
                const double dz =
                    (1 - 2 * qz) * s.z - r.z + 2.0 * mz * dims.z;
                double gain = gy * std::pow(beta[4], std::abs(mz - qz)) *
                              std::pow(beta[5], std::abs(mz));
                const bool is_direct = mx == 0 && my == 0 && mz == 0 &&
                                       qx == 0 && qy == 0 && qz == 0;
                if (is_direct) gain = 1.0;
                const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
                const double tau = dist / c * fs;
                if (tau >= max_delay) continue;
                const double amp = gain / (four_pi * dist);
                if (!is_direct && amp < cutoff) continue;
                AddFractionalImpulse(h, tau, amp);
              }
            }
          }
        }
      }
    }
    if (options.high_pass) HighPass(h, options.sample_rate);
  }
  return rir;
}

AudioBuffer SimulateArray(const AudioBuffer& source, const Rir& rir,
                          const std::optional<DirectionalNoise>& noise,
                          std::uint64_t seed) {
  if (source.channels() != 1) {
    throw std::invalid_argument("simulate_array: source must be mono");
  }
  if (rir.taps.empty() || rir.taps.front().empty()) {
    throw std::invalid_argument("simulate_array: empty RIR");
  }
  if (rir.sample_rate != source.sample_rate()) {
    throw std::invalid_argument("simulate_array: sample rate mismatch");
  }
  const std::size_t mics = rir.mics();
  const std::size_t n = source.length();
  AudioBuffer out(mics, n, source.sample_rate());
  for (std::size_t m = 0; m < mics; ++m) {
    const auto full = Convolve(source.channel(0), rir.taps[m]);
    std::copy_n(full.begin(), n, out.channel(m).begin());
  }
  if (!noise || noise->sources.empty()) return out;

  const auto& spec = *noise;
  if (spec.mics.size() != mics) {
    throw std::invalid_argument("simulate_array: noise mic count mismatch");
  }
  for (const auto& src : spec.sources) {
    if (src.sample_rate() != source.sample_rate()) {
      throw std::invalid_argument("simulate_array: noise rate mismatch");
    }
  }
  Rng rng(seed);
  Vec3 centre;
  for (const auto& p : spec.mics) {
    centre.x += p.x / mics;
    centre.y += p.y / mics;
    centre.z += p.z / mics;
  }
  RirOptions rir_opts = spec.rir_options;
  rir_opts.sample_rate = source.sample_rate();
  const Vec3& d = spec.room.dimensions;
  std::vector<NoiseImage> images;
  for (const auto& src : spec.sources) {
    Vec3 pos;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed;
         ++attempt) {
      pos = {rng.Uniform(spec.wall_margin, d.x - spec.wall_margin),
             rng.Uniform(spec.wall_margin, d.y - spec.wall_margin),
             rng.Uniform(spec.wall_margin, d.z - spec.wall_margin)};
      placed = Distance(pos, centre) >= spec.min_array_distance;
    }
    if (!placed) {
      throw std::invalid_argument("simulate_array: cannot place noise source");
    }
    images.push_back(
        {src, GenerateRir(spec.room, ArraySpec{spec.mics, pos}, rir_opts)});
  }
  AddNoiseImages(out, images, spec.snr_db, spec.reference_channel,
                 rng.NextU64());
  return out;
}

void AddNoiseImages(AudioBuffer& x, const std::vector<NoiseImage>& noises,
                    double snr_db, std::size_t reference_channel,
                    std::uint64_t seed) {
  if (noises.empty()) return;
  if (reference_channel >= x.channels()) {
    throw std::invalid_argument("add_noise: bad reference channel");
  }
  const std::size_t n = x.length();
  Rng rng(seed);
  AudioBuffer noise_img(x.channels(), n, x.sample_rate());
  for (const auto& [src, rir] : noises) {
    if (src.channels() != 1 || src.length() == 0) {
      throw std::invalid_argument("add_noise: noise must be non-empty mono");
    }
    if (src.sample_rate() != x.sample_rate() ||
        rir.sample_rate != x.sample_rate()) {
      throw std::invalid_argument("add_noise: sample rate mismatch");
    }
    if (rir.mics() != x.channels()) {
      throw std::invalid_argument("add_noise: noise RIR channel mismatch");
    }
    const auto signal = FitLength(src, n, rng);
    for (std::size_t m = 0; m < x.channels(); ++m) {
      const auto full = Convolve(signal, rir.taps[m]);
      auto dst = noise_img.channel(m);
      for (std::size_t i = 0; i < n; ++i) dst[i] += full[i];
    }
  }
  const double ps = MeanPower(x.channel(reference_channel));
  const double pn = MeanPower(noise_img.channel(reference_channel));
  if (!(ps > 0.0) || !(pn > 0.0)) {
    throw std::invalid_argument("add_noise: zero-power signal or noise");
  }
  const double gain = std::sqrt(ps / (pn * std::pow(10.0, snr_db / 10.0)));
  auto o = x.data();
  auto z = noise_img.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += gain * z[i];
}

void RoomSamplingRanges::Validate() const {
  const Vec3& lo = min_dimensions;
  const Vec3& hi = max_dimensions;
  if (!(lo.x > 0 && lo.y > 0 && lo.z > 0) || lo.x > hi.x || lo.y > hi.y ||
      lo.z > hi.z) {
    throw std::invalid_argument("room ranges: invalid dimension bounds");
  }
  if (t60_min < 0 || t60_min > t60_max) {
    throw std::invalid_argument("room ranges: invalid T60 bounds");
  }
  if (array_geometry.empty()) {
    throw std::invalid_argument("room ranges: empty array geometry");
  }
  if (array_height_min > array_height_max ||
      source_height_min > source_height_max) {
    throw std::invalid_argument("room ranges: invalid height bounds");
  }
  if (2 * wall_margin >= std::min(lo.x, lo.y) ||
      source_height_max > lo.z - wall_margin ||
      source_height_min < wall_margin || array_height_max >= lo.z ||
      array_height_min <= 0) {
    throw std::invalid_argument(
        "room ranges: heights or margins infeasible for the smallest room");
  }
}

std::pair<RoomSpec, ArraySpec> SampleRoomConfig(const RoomSamplingRanges& r,
                                                std::uint64_t seed) {
  r.Validate();
  Rng rng(seed);
  RoomSpec room;
  room.dimensions = {rng.Uniform(r.min_dimensions.x, r.max_dimensions.x),
                     rng.Uniform(r.min_dimensions.y, r.max_dimensions.y),
                     rng.Uniform(r.min_dimensions.z, r.max_dimensions.z)};
  if (r.t60_max > 0.0) room.t60 = rng.Uniform(r.t60_min, r.t60_max);
  const Vec3& d = room.dimensions;

  double radius = 0.0;
  for (const auto& p : r.array_geometry) {
    radius = std::max(radius, std::hypot(p.x, p.y));
  }
  const double jx = std::max(0.0, std::min(r.array_jitter,
                                           d.x / 2 - r.wall_margin - radius));
  const double jy = std::max(0.0, std::min(r.array_jitter,
                                           d.y / 2 - r.wall_margin - radius));
  const Vec3 centre{d.x / 2 + rng.Uniform(-jx, jx),
                    d.y / 2 + rng.Uniform(-jy, jy),
                    rng.Uniform(r.array_height_min, r.array_height_max)};
  ArraySpec array;
  for (const auto& p : r.array_geometry) {
    array.mics.push_back({centre.x + p.x, centre.y + p.y, centre.z + p.z});
  }

  bool placed = false;
  for (int attempt = 0; attempt < kMaxPlacementAttempts && !placed;
       ++attempt) {
    array.source = {rng.Uniform(r.wall_margin, d.x - r.wall_margin),
                    rng.Uniform(r.wall_margin, d.y - r.wall_margin),
                    rng.Uniform(r.source_height_min, r.source_height_max)};
    placed = true;
    for (const auto& m : array.mics) {
      if (Distance(m, array.source) < r.source_array_distance) placed = false;
    }
  }
  if (!placed) {
    throw std::invalid_argument("room ranges: cannot place the source");
  }
  array.Validate(room);
  return {room, array};
}

}  // namespace meetkit
