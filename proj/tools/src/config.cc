// tools/src/config.cc

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

#include "meetkit/tools/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "meetkit/augment.h"

namespace meetkit {
namespace {

namespace pt = boost::property_tree;

std::string Trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::string FormatDouble(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

double ParseDouble(const std::string& text) {
  const std::string t = Trim(text);
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw ConfigError("not a number: '" + text + "'");
  }
  return v;
}

template <typename Int>
Int ParseInt(const std::string& text) {
  const std::string t = Trim(text);
  Int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw ConfigError("not an integer: '" + text + "'");
  }
  return v;
}

bool ParseBool(const std::string& text) {
  const std::string t = Trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("not a boolean: '" + text + "'");
}

Vec3 ParseVec3(const std::string& text) {
  const auto v = ParseDoubleList(text);
  if (v.size() != 3) throw ConfigError("expected x,y,z: '" + text + "'");
  return {v[0], v[1], v[2]};
}

std::string FormatList(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += FormatDouble(v[i]);
  }
  return out;
}

std::string FormatList(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i];
  }
  return out;
}

// Binds "section.key" names to config fields. With a tree it parses values
// into the fields; without one it only records defaults for documentation.
class Binder {
 public:
  explicit Binder(const pt::ptree* tree) : tree_(tree) {}

  struct Entry {
    std::string key, value, doc;
  };
  const std::vector<Entry>& entries() const { return entries_; }

  void Bind(const std::string& key, const std::string& doc,
            std::function<std::string()> show,
            std::function<void(const std::string&)> parse) {
    entries_.push_back({key, show(), doc});
    known_.insert(key);
    if (!tree_) return;
    if (auto v = tree_->get_optional<std::string>(pt::ptree::path_type(key, '.'))) {
      try {
        parse(*v);
      } catch (const std::exception& e) {
        throw ConfigError(key + ": " + e.what());
      }
    }
  }

  void Double(const std::string& key, double& v, const std::string& doc) {
    Bind(key, doc, [&] { return FormatDouble(v); },
         [&](const std::string& s) { v = ParseDouble(s); });
  }
  void Int(const std::string& key, int& v, const std::string& doc) {
    Bind(key, doc, [&] { return std::to_string(v); },
         [&](const std::string& s) { v = ParseInt<int>(s); });
  }
  void Size(const std::string& key, std::size_t& v, const std::string& doc) {
    Bind(key, doc, [&] { return std::to_string(v); },
         [&](const std::string& s) { v = ParseInt<std::size_t>(s); });
  }
  void U64(const std::string& key, std::uint64_t& v, const std::string& doc) {
    Bind(key, doc, [&] { return std::to_string(v); },
         [&](const std::string& s) { v = ParseInt<std::uint64_t>(s); });
  }
  void Bool(const std::string& key, bool& v, const std::string& doc) {
    Bind(key, doc, [&] { return std::string(v ? "true" : "false"); },
         [&](const std::string& s) { v = ParseBool(s); });
  }
  void String(const std::string& key, std::string& v, const std::string& doc) {
    Bind(key, doc, [&] { return v; },
         [&](const std::string& s) { v = Trim(s); });
  }
  void Point(const std::string& key, Vec3& v, const std::string& doc) {
    Bind(key, doc,
         [&] { return FormatList(std::vector<double>{v.x, v.y, v.z}); },
         [&](const std::string& s) { v = ParseVec3(s); });
  }

  void CheckUnknown() const {
    if (!tree_) return;
    for (const auto& [section, body] : *tree_) {
      if (body.empty()) {
        throw ConfigError("key outside a section: " + section);
      }
      for (const auto& [key, value] : body) {
        const std::string full = section + "." + key;
        if (!known_.count(full)) throw ConfigError("unknown key: " + full);
      }
    }
  }

 private:
  const pt::ptree* tree_;
  std::vector<Entry> entries_;
  std::set<std::string> known_;
};

void BindAll(Binder& b, PipelineConfig& c) {
  b.U64("pipeline.seed", c.seed, "global seed; per-utterance streams derive from it");
  b.Int("pipeline.workers", c.workers, "parallel utterance workers");
  b.Bind("pipeline.stages", "comma list from augment,simulate,wpe,beamform,features",
         [&] { return FormatList(c.stages); },
         [&](const std::string& s) { c.stages = ParseStringList(s); });
  b.Bind("pipeline.output_encoding", "float32 or pcm16",
         [&] {
           return std::string(c.output_encoding == WavEncoding::kPcm16 ? "pcm16"
                                                                       : "float32");
         },
         [&](const std::string& s) {
           const auto t = Trim(s);
           if (t == "pcm16") {
             c.output_encoding = WavEncoding::kPcm16;
           } else if (t == "float32") {
             c.output_encoding = WavEncoding::kFloat32;
           } else {
             throw ConfigError("expected float32 or pcm16");
           }
         });

  b.Size("stft.fft_size", c.stft.fft_size, "STFT size for WPE");
  b.Size("stft.hop", c.stft.hop, "STFT hop for WPE");

  b.Int("wpe.taps", c.wpe.taps, "prediction filter taps per channel");
  b.Int("wpe.delay", c.wpe.delay, "prediction delay in frames");
  b.Int("wpe.iterations", c.wpe.iterations, "variance re-estimation passes");
  b.Double("wpe.epsilon", c.wpe.epsilon, "relative diagonal loading");

  b.Double("beamform.segment_ms", c.beamform.segment_ms, "TDOA analysis window");
  b.Double("beamform.step_ms", c.beamform.step_ms, "TDOA analysis step");
  b.Double("beamform.max_lag_ms", c.beamform.max_lag_ms, "largest delay searched");
  b.Int("beamform.n_peaks", c.beamform.n_peaks, "GCC-PHAT candidates per segment");
  b.Double("beamform.transition_weight", c.beamform.transition_weight,
           "Viterbi penalty on delay jumps");
  b.Double("beamform.reference_window_s", c.beamform.reference_window_s,
           "audio used to pick the reference channel");

  b.Point("room.min_dimensions", c.room.min_dimensions, "smallest room L,W,H in m");
  b.Point("room.max_dimensions", c.room.max_dimensions, "largest room L,W,H in m");
  b.Double("room.t60_min", c.room.t60_min, "lowest T60 in s");
  b.Double("room.t60_max", c.room.t60_max, "highest T60 in s");
  b.Bind("room.t60_model", "image (calibrated on the image lattice) or eyring",
         [&] {
           return std::string(c.t60_model == T60Model::kEyring ? "eyring" : "image");
         },
         [&](const std::string& s) {
           const auto t = Trim(s);
           if (t == "eyring") {
             c.t60_model = T60Model::kEyring;
           } else if (t == "image") {
             c.t60_model = T60Model::kImageCalibrated;
           } else {
             throw ConfigError("expected image or eyring");
           }
         });
  b.Int("room.array_mics", c.array_mics, "microphones on the circular array");
  b.Double("room.array_radius", c.array_radius, "array radius in m");
  b.Double("room.array_jitter", c.room.array_jitter,
           "horizontal offset of the array from the room centre in m");
  b.Double("room.array_height_min", c.room.array_height_min, "array height range");
  b.Double("room.array_height_max", c.room.array_height_max, "array height range");
  b.Double("room.source_height_min", c.room.source_height_min, "talker height range");
  b.Double("room.source_height_max", c.room.source_height_max, "talker height range");
  b.Double("room.wall_margin", c.room.wall_margin, "minimum talker distance to walls");
  b.Double("room.source_array_distance", c.room.source_array_distance,
           "minimum talker distance to any microphone");

  b.Double("rir.duration", c.rir.duration, "RIR length in s");
  b.Int("rir.max_order", c.rir.max_order, "image order limit per axis");
  b.Bool("rir.high_pass", c.rir.high_pass, "100 Hz high-pass on each RIR");

  b.String("simulate.noise_scp", c.simulate.noise_scp,
           "wav.scp of noise recordings (empty: no noise)");
  b.Double("simulate.snr_min", c.simulate.snr_min, "SNR range in dB");
  b.Double("simulate.snr_max", c.simulate.snr_max, "SNR range in dB");
  b.Int("simulate.noise_sources", c.simulate.noise_sources, "noise sources per room");
  b.Double("simulate.early_ms", c.simulate.early_ms,
           "early reverberation kept in the reference signal");

  b.Bind("augment.speed_factors", "speed perturbation factors",
         [&] { return FormatList(c.augment.speed_factors); },
         [&](const std::string& s) { c.augment.speed_factors = ParseDoubleList(s); });
  b.Double("augment.pitch_max_semitones", c.augment.pitch_max_semitones,
           "pitch shift drawn uniformly within +-this");
  b.Double("augment.pitch_probability", c.augment.pitch_probability,
           "chance of a pitch shift in the pipeline stage");
  b.String("augment.noise_scp", c.augment.noise_scp,
           "wav.scp of additive noise (empty: no noise)");
  b.Double("augment.snr_min", c.augment.snr_min, "SNR range in dB");
  b.Double("augment.snr_max", c.augment.snr_max, "SNR range in dB");
  b.Bool("augment.reverb", c.augment.reverb, "convolve with a sampled room RIR");
  b.Double("augment.eq_probability", c.augment.eq_probability,
           "chance of a random EQ filter");
  b.Double("augment.eq_weight_min", c.augment.eq_weight_min, "EQ wet fraction range");
  b.Double("augment.eq_weight_max", c.augment.eq_weight_max, "EQ wet fraction range");

  b.Double("overlap.p2", c.overlap.speaker_probabilities[0], "probability of 2 speakers");
  b.Double("overlap.p3", c.overlap.speaker_probabilities[1], "probability of 3 speakers");
  b.Double("overlap.p4", c.overlap.speaker_probabilities[2], "probability of 4 speakers");
  b.Double("overlap.ratio_min", c.overlap.overlap_min, "target overlap ratio range");
  b.Double("overlap.ratio_max", c.overlap.overlap_max, "target overlap ratio range");
  b.Int("overlap.utterances_per_speaker", c.overlap.utterances_per_speaker,
        "utterances drawn per speaker");
  b.Double("overlap.max_gain_db", c.overlap.max_gain_db, "utterance gain range +-dB");

  b.Double("features.frame_length_ms", c.features.fbank.frames.frame_length_ms,
           "analysis frame length");
  b.Double("features.frame_shift_ms", c.features.fbank.frames.frame_shift_ms,
           "analysis frame shift");
  b.Int("features.num_bins", c.features.fbank.num_bins, "mel filters");
  b.Double("features.low_hz", c.features.fbank.low_hz, "lowest mel edge");
  b.Double("features.high_hz", c.features.fbank.high_hz,
           "highest mel edge at 16 kHz, scaled with the rate");
  b.Double("features.dither", c.features.fbank.dither, "seeded dither amplitude");
  b.Bool("features.use_pitch", c.features.use_pitch, "append 3 pitch columns");
  b.Double("features.pitch_min_hz", c.features.pitch.min_hz, "pitch search range");
  b.Double("features.pitch_max_hz", c.features.pitch.max_hz, "pitch search range");

  b.Bool("spec_augment.enabled", c.spec_augment, "mask features after extraction");
  b.Int("spec_augment.num_freq_masks", c.spec_augment_config.num_freq_masks,
        "frequency masks");
  b.Int("spec_augment.max_freq_width", c.spec_augment_config.max_freq_width,
        "widest frequency mask in bins");
  b.Int("spec_augment.num_time_masks", c.spec_augment_config.num_time_masks,
        "time masks");
  b.Int("spec_augment.max_time_width", c.spec_augment_config.max_time_width,
        "widest time mask in frames");

  b.Bind("rover.costs", "alignment costs match,substitution,insertion,deletion",
         [&] {
           return std::to_string(c.costs.match) + "," +
                  std::to_string(c.costs.substitution) + "," +
                  std::to_string(c.costs.insertion) + "," +
                  std::to_string(c.costs.deletion);
         },
         [&](const std::string& s) { c.costs = ParseAlignCosts(s); });
  b.Double("rover.alpha", c.rover_alpha, "frequency vs confidence weight");
}

template <typename F>
void Check(const char* block, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("[") + block + "] " + e.what());
  }
}

}  // namespace

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : ParseStringList(text)) out.push_back(ParseDouble(item));
  return out;
}

std::vector<std::string> ParseStringList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

AlignCosts ParseAlignCosts(const std::string& text) {
  const auto v = ParseStringList(text);
  if (v.size() != 4) throw ConfigError("costs need m,s,i,d: '" + text + "'");
  AlignCosts c{ParseInt<int>(v[0]), ParseInt<int>(v[1]), ParseInt<int>(v[2]),
               ParseInt<int>(v[3])};
  try {
    c.Validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return c;
}

void AugmentPolicy::Validate() const {
  if (speed_factors.empty()) throw std::invalid_argument("no speed factors");
  for (double f : speed_factors) {
    if (!(f >= kMinSpeedFactor && f <= kMaxSpeedFactor)) {
      throw std::invalid_argument("speed factor outside [0.5, 2]");
    }
  }
  if (!(pitch_max_semitones >= 0.0 && pitch_max_semitones <= kMaxPitchSemitones)) {
    throw std::invalid_argument("pitch_max_semitones must be in [0, 4]");
  }
  if (!(pitch_probability >= 0.0 && pitch_probability <= 1.0) ||
      !(eq_probability >= 0.0 && eq_probability <= 1.0)) {
    throw std::invalid_argument("probabilities must be in [0, 1]");
  }
  if (!(snr_min <= snr_max)) throw std::invalid_argument("snr_min > snr_max");
  if (!(eq_weight_min >= 0.0 && eq_weight_min <= eq_weight_max &&
        eq_weight_max <= 1.0)) {
    throw std::invalid_argument("EQ weights must satisfy 0 <= min <= max <= 1");
  }
}

void SimulateConfig::Validate() const {
  if (!(snr_min <= snr_max)) throw std::invalid_argument("snr_min > snr_max");
  if (noise_sources < 1) throw std::invalid_argument("noise_sources must be >= 1");
  if (!(early_ms >= 0.0)) throw std::invalid_argument("early_ms must be >= 0");
}

void PipelineConfig::Validate() const {
  Check("pipeline", [&] {
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < stages.size(); ++i) {
      const auto& s = stages[i];
      if (std::find(kKnownStages.begin(), kKnownStages.end(), s) ==
          kKnownStages.end()) {
        throw std::invalid_argument("unknown stage '" + s + "'");
      }
      if (!seen.insert(s).second) {
        throw std::invalid_argument("stage '" + s + "' listed twice");
      }
      if (s == "features" && i + 1 != stages.size()) {
        throw std::invalid_argument("features must be the last stage");
      }
    }
    if (seen.count("simulate") && seen.count("augment")) {
      const auto a = std::find(stages.begin(), stages.end(), "augment");
      const auto b = std::find(stages.begin(), stages.end(), "simulate");
      if (a > b) throw std::invalid_argument("augment must precede simulate");
    }
  });
  Check("stft", [&] { stft.Validate(); });
  Check("wpe", [&] { wpe.Validate(); });
  Check("beamform", [&] { beamform.Validate(); });
  Check("room", [&] {
    if (array_mics < 1 || !(array_radius >= 0.0)) {
      throw std::invalid_argument("bad array geometry");
    }
    room.Validate();
  });
  Check("rir", [&] {
    if (!(rir.duration > 0.0) || rir.max_order < 0) {
      throw std::invalid_argument("duration must be > 0 and max_order >= 0");
    }
  });
  Check("simulate", [&] { simulate.Validate(); });
  Check("augment", [&] { augment.Validate(); });
  Check("overlap", [&] { overlap.Validate(); });
  Check("features", [&] {
    features.fbank.Validate(kDefaultSampleRate);
    features.pitch.Validate(kDefaultSampleRate);
  });
  Check("spec_augment", [&] { spec_augment_config.Validate(); });
  Check("rover", [&] {
    costs.Validate();
    if (!(rover_alpha >= 0.0 && rover_alpha <= 1.0)) {
      throw std::invalid_argument("alpha must be in [0, 1]");
    }
  });
}

PipelineConfig ParsePipelineConfig(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  PipelineConfig c;
  Binder b(&tree);
  BindAll(b, c);
  b.CheckUnknown();
  c.room.array_geometry = UniformCircularArray(
      static_cast<std::size_t>(std::max(c.array_mics, 0)), c.array_radius);
  c.features.pitch.frames = c.features.fbank.frames;
  c.Validate();
  return c;
}

PipelineConfig LoadPipelineConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  PipelineConfig c = ParsePipelineConfig(in);
  for (std::string* p : {&c.augment.noise_scp, &c.simulate.noise_scp}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) {
      *p = (path.parent_path() / *p).string();
    }
  }
  return c;
}

void WriteDefaultConfig(std::ostream& out) {
  PipelineConfig c;
  Binder b(nullptr);
  BindAll(b, c);
  std::string section;
  for (const auto& e : b.entries()) {
    const auto dot = e.key.find('.');
    const std::string sec = e.key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) out << '\n';
      out << '[' << sec << "]\n";
      section = sec;
    }
    out << "; " << e.doc << '\n' << e.key.substr(dot + 1) << " = " << e.value << '\n';
  }
}

}  // namespace meetkit
