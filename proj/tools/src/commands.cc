// tools/src/commands.cc

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

#include "meetkit/tools/cli.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "meetkit/augment.h"
#include "meetkit/beamformer.h"
#include "meetkit/cer.h"
#include "meetkit/features.h"
#include "meetkit/manifest.h"
#include "meetkit/overlap_sim.h"
#include "meetkit/room_sim.h"
#include "meetkit/rover.h"
#include "meetkit/sot.h"
#include "meetkit/wav_io.h"
#include "meetkit/wpe.h"
#include "meetkit/tools/config.h"
#include "meetkit/tools/pipeline.h"

namespace meetkit {
namespace {

namespace fs = std::filesystem;

/// Parameter validation failures are usage errors.
template <typename F>
void CheckParams(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

PipelineConfig LoadConfigOrDefault(const std::string& path) {
  if (path.empty()) return PipelineConfig{};
  if (!fs::exists(path)) throw ConfigError("config not found: " + path);
  return LoadPipelineConfig(path);
}

void RequireFile(const fs::path& p) {
  if (!fs::exists(p)) throw DataError("input not found: " + p.string());
}

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

std::string FormatVec(const Vec3& v) {
  return Fmt("%.3f", v.x) + "," + Fmt("%.3f", v.y) + "," + Fmt("%.3f", v.z);
}

std::vector<std::string> WhitespaceTokens(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::ofstream OpenOutput(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw DataError("cannot write " + p.string());
  return f;
}

/// Writes to the file when a path is given, otherwise to out.
void Emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    auto f = OpenOutput(path);
    f << text;
  }
}

// ---------------------------------------------------------------- commands

struct SimulateRirsArgs {
  std::string config, out;
  int count = 10;
  std::uint64_t seed = 0;
};

int SimulateRirs(const SimulateRirsArgs& a, std::ostream&) {
  const PipelineConfig cfg = LoadConfigOrDefault(a.config);
  if (a.count < 0) throw ConfigError("--count must be >= 0");
  fs::create_directories(a.out);
  std::ofstream index = OpenOutput(fs::path(a.out) / "index.tsv");
  index << "rir\tpath\tdimensions\tt60_target\tt60_measured\tsource\tmics\n";
  for (int i = 0; i < a.count; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "rir%05d", i);
    auto [room, array] = SampleRoomConfig(cfg.room, DeriveSeed(a.seed, id));
    room.t60_model = cfg.t60_model;
    const Rir rir = GenerateRir(room, array, cfg.rir);
    const std::string name = std::string(id) + ".wav";
    WriteWav(fs::path(a.out) / name, rir.ToAudio(), WavEncoding::kFloat32);
    std::string mics;
    for (const auto& m : array.mics) {
      if (!mics.empty()) mics += ";";
      mics += FormatVec(m);
    }
    index << id << '\t' << name << '\t'
          << Fmt("%.3f", room.dimensions.x) << "x" << Fmt("%.3f", room.dimensions.y)
          << "x" << Fmt("%.3f", room.dimensions.z) << '\t'
          << Fmt("%.4f", room.t60.value_or(0.0)) << '\t'
          << Fmt("%.4f", SchroederT60(rir.taps[0], rir.sample_rate)) << '\t'
          << FormatVec(array.source) << '\t' << mics << '\n';
  }
  spdlog::info("simulate-rirs: wrote {} RIRs to {}", a.count, a.out);
  return kExitOk;
}

struct SimulateArrayArgs {
  std::string source, rir, out;
  std::vector<std::string> noises, noise_rirs;
  double snr = 10.0;
  std::uint64_t seed = 0;
};

int SimulateArrayCmd(const SimulateArrayArgs& a, std::ostream&) {
  if (a.noises.size() != a.noise_rirs.size()) {
    throw ConfigError("--noise and --noise-rir must be given the same number of times");
  }
  RequireFile(a.source);
  RequireFile(a.rir);
  for (const auto& p : a.noises) RequireFile(p);
  for (const auto& p : a.noise_rirs) RequireFile(p);
  const AudioBuffer source = ReadWav(a.source);
  if (source.channels() != 1) throw DataError("source must be mono");
  const Rir rir = Rir::FromAudio(ReadWav(a.rir));
  if (rir.sample_rate != source.sample_rate()) {
    throw DataError("source and RIR sample rates differ");
  }
  AudioBuffer out = SimulateArray(source, rir);
  if (!a.noises.empty()) {
    std::vector<NoiseImage> images;
    for (std::size_t i = 0; i < a.noises.size(); ++i) {
      NoiseImage img{ReadWav(a.noises[i]).ExtractChannel(0),
                     Rir::FromAudio(ReadWav(a.noise_rirs[i]))};
      if (img.rir.mics() != rir.mics()) {
        throw DataError("noise RIR channel count differs from source RIR");
      }
      images.push_back(std::move(img));
    }
    AddNoiseImages(out, images, a.snr, 0, a.seed);
  }
  WriteWav(a.out, out, WavEncoding::kFloat32);
  return kExitOk;
}

struct SimulateOverlapArgs {
  std::string pools, config, out;
  int count = 10;
  std::uint64_t seed = 0;
};

int SimulateOverlapCmd(const SimulateOverlapArgs& a, std::ostream&) {
  const PipelineConfig cfg = LoadConfigOrDefault(a.config);
  if (a.count < 0) throw ConfigError("--count must be >= 0");
  RequireFile(a.pools);
  SpeakerPools pools;
  for (const auto& e : ReadDatasetFile(a.pools)) {
    const fs::path p = ResolveEntry(a.pools, e.path);
    RequireFile(p);
    AudioBuffer audio = ReadWav(p);
    if (audio.channels() != 1) throw DataError("pool utterance is not mono: " + e.utterance);
    pools[e.speaker].push_back({e.utterance, e.speaker, std::move(audio), e.transcript});
  }
  const fs::path out(a.out);
  fs::create_directories(out / "timeline");
  std::vector<KeyValue> wavs, text, timelines;
  std::ofstream stats = OpenOutput(out / "overlap.tsv");
  stats << "mixture\tspeakers\tutterances\tduration\toverlap_ratio\n";
  for (int i = 0; i < a.count; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "mix%06d", i);
    const MeetingMixture mix = SimulateOverlap(pools, cfg.overlap, DeriveSeed(a.seed, id));
    const std::string wav = std::string(id) + ".wav";
    const std::string tl = "timeline/" + std::string(id) + ".tsv";
    WriteWav(out / wav, mix.audio, cfg.output_encoding);
    {
      std::ofstream f = OpenOutput(out / tl);
      WriteTimeline(f, mix.Timeline());
    }
    wavs.emplace_back(id, wav);
    timelines.emplace_back(id, tl);
    text.emplace_back(id, mix.reference.ToString());
    stats << id << '\t' << mix.n_speakers << '\t' << mix.timeline.size() << '\t'
          << Fmt("%.4f", mix.audio.duration()) << '\t' << Fmt("%.4f", mix.overlap_ratio)
          << '\n';
  }
  WriteKeyValueFile(out / "wav.scp", wavs);
  WriteKeyValueFile(out / "text", text);
  WriteKeyValueFile(out / "timeline.scp", timelines);
  spdlog::info("simulate-overlap: wrote {} mixtures to {}", a.count, a.out);
  return kExitOk;
}

struct AugmentArgs {
  std::string manifest, config, out, noise_scp;
  std::uint64_t seed = 0;
  bool keep_original = false;
};

int AugmentCmd(const AugmentArgs& a, std::ostream&) {
  PipelineConfig cfg = LoadConfigOrDefault(a.config);
  if (!a.noise_scp.empty()) cfg.augment.noise_scp = a.noise_scp;
  CheckParams([&] { cfg.augment.Validate(); });
  RequireFile(a.manifest);
  const auto entries = ReadDatasetFile(a.manifest);
  for (const auto& e : entries) RequireFile(ResolveEntry(a.manifest, e.path));
  const std::vector<AudioBuffer> noises =
      cfg.augment.noise_scp.empty() ? std::vector<AudioBuffer>{}
                                    : LoadNoiseBank(cfg.augment.noise_scp);
  const fs::path out(a.out);
  fs::create_directories(out);
  std::vector<DatasetEntry> rows;
  int failed = 0;
  for (const auto& e : entries) {
    try {
      const AudioBuffer x = ReadWav(ResolveEntry(a.manifest, e.path));
      if (x.channels() != 1) throw DataError("augment needs mono input");
      if (a.keep_original) {
        WriteWav(out / (e.utterance + ".wav"), x, cfg.output_encoding);
        rows.push_back({e.utterance, e.utterance + ".wav", e.speaker, e.transcript});
      }
      for (auto& copy :
           AugmentCopies(x, cfg, noises, DeriveSeed(a.seed, e.utterance + "/augment"))) {
        const std::string id = e.utterance + "-" + copy.suffix;
        WriteWav(out / (id + ".wav"), copy.audio, cfg.output_encoding);
        rows.push_back({id, id + ".wav", e.speaker, e.transcript});
      }
    } catch (const std::exception& ex) {
      spdlog::warn("augment: {} failed: {}", e.utterance, ex.what());
      ++failed;
    }
  }
  WriteDatasetFile(out / "dataset.tsv", rows);
  spdlog::info("augment: {} copies from {} utterances", rows.size(), entries.size());
  return failed ? kExitPartial : kExitOk;
}

struct WpeArgs {
  std::string in, out, config;
  WpeConfig wpe;
};

int WpeCmd(const WpeArgs& a, std::ostream&) {
  const PipelineConfig cfg = LoadConfigOrDefault(a.config);
  CheckParams([&] { a.wpe.Validate(); });
  RequireFile(a.in);
  WriteWav(a.out, Wpe(ReadWav(a.in), a.wpe, cfg.stft), cfg.output_encoding);
  return kExitOk;
}

struct BeamformArgs {
  std::string in, out, dump_tdoa;
  BeamformConfig bf;
};

int BeamformCmd(const BeamformArgs& a, std::ostream&) {
  CheckParams([&] { a.bf.Validate(); });
  RequireFile(a.in);
  const AudioBuffer x = ReadWav(a.in);
  if (x.channels() < 2) throw DataError("beamform needs at least 2 channels");
  const BeamformResult r = Beamform(x, a.bf);
  WriteWav(a.out, r.output, WavEncoding::kFloat32);
  if (!a.dump_tdoa.empty()) {
    std::ofstream f = OpenOutput(a.dump_tdoa);
    f << "segment\tchannel\tlag\tscore\tweight\n";
    for (std::size_t k = 0; k < r.track.segments.count; ++k) {
      for (std::size_t c = 0; c < x.channels(); ++c) {
        f << k << '\t' << c << '\t' << r.track.delays[c][k] << '\t'
          << Fmt("%.6f", r.track.scores[c][k]) << '\t'
          << Fmt("%.6f", r.weights.weights[c][k]) << '\n';
      }
    }
  }
  return kExitOk;
}

struct FeaturesArgs {
  std::string manifest, config, out;
  std::uint64_t seed = 0;
  bool spec_augment = false;
  bool no_pitch = false;
};

int FeaturesCmd(const FeaturesArgs& a, std::ostream&) {
  PipelineConfig cfg = LoadConfigOrDefault(a.config);
  if (a.no_pitch) cfg.features.use_pitch = false;
  const bool spec = a.spec_augment || cfg.spec_augment;
  CheckParams([&] { cfg.Validate(); });
  RequireFile(a.manifest);
  const auto entries = ReadKeyValueFile(a.manifest);
  for (const auto& [utt, path] : entries) RequireFile(ResolveEntry(a.manifest, path));
  const fs::path out(a.out);
  fs::create_directories(out);
  std::ofstream index = OpenOutput(out / "feats.tsv");
  int failed = 0;
  for (const auto& [utt, path] : entries) {
    try {
      AudioBuffer x = ReadWav(ResolveEntry(a.manifest, path));
      if (x.channels() != 1) x = x.ExtractChannel(0);
      FeatureMatrix f =
          ComputeFeatures(x, cfg.features, DeriveSeed(a.seed, utt + "/features"));
      if (spec) {
        f = SpecAugment(f, cfg.spec_augment_config,
                        DeriveSeed(a.seed, utt + "/spec_augment"));
      }
      WriteFeatureFile(out / (utt + ".mkfm"), f);
      index << utt << '\t' << utt << ".mkfm\t" << f.rows() << '\t' << f.cols() << '\n';
    } catch (const std::exception& ex) {
      spdlog::warn("features: {} failed: {}", utt, ex.what());
      ++failed;
    }
  }
  return failed ? kExitPartial : kExitOk;
}

struct SotArgs {
  std::string timeline, text, out, split;
};

int SotCmd(const SotArgs& a, std::ostream& out) {
  std::ostringstream s;
  if (!a.split.empty()) {
    if (!a.timeline.empty() || !a.text.empty()) {
      throw ConfigError("--split cannot be combined with --timeline/--text");
    }
    RequireFile(a.split);
    for (const auto& [id, sot] : ReadKeyValueFile(a.split)) {
      const auto segments = SotSplit(sot);
      for (std::size_t i = 0; i < segments.size(); ++i) {
        s << id << '\t' << i << '\t' << segments[i] << '\n';
      }
    }
  } else {
    if (a.timeline.empty() || a.text.empty()) {
      throw ConfigError("sot-serialize needs --timeline and --text (or --split)");
    }
    RequireFile(a.timeline);
    RequireFile(a.text);
    std::map<std::string, std::string> text;
    for (auto& [k, v] : ReadKeyValueFile(a.text, true)) text[k] = v;
    std::vector<SotUtterance> utts;
    for (const auto& e : ReadTimelineFile(a.timeline)) {
      auto it = text.find(e.utterance);
      if (it == text.end()) throw DataError("no transcript for " + e.utterance);
      if (WhitespaceTokens(it->second).empty()) continue;
      utts.push_back({it->second, e.start, e.speaker});
    }
    s << SotSerialize(std::move(utts)).ToString() << '\n';
  }
  Emit(a.out, out, s.str());
  return kExitOk;
}

struct ScoreArgs {
  std::string ref, hyp, out;
  bool keep_sc = false, keep_space = false, permutation = false;
};

int ScoreCmd(const ScoreArgs& a, std::ostream& out) {
  RequireFile(a.ref);
  RequireFile(a.hyp);
  const CerOptions opts{!a.keep_sc, !a.keep_space};
  std::map<std::string, std::string> hyps;
  for (auto& [k, v] : ReadKeyValueFile(a.hyp, true)) hyps[k] = v;
  std::ostringstream s;
  s << "utterance\treference_length\tsubstitutions\tdeletions\tinsertions\terrors\tcer\n";
  auto row = [&](const std::string& id, const CerReport& r) {
    s << id << '\t' << r.reference_length << '\t' << r.substitutions << '\t'
      << r.deletions << '\t' << r.insertions << '\t' << r.errors() << '\t'
      << Fmt("%.4f", r.reference_length ? r.cer() : 0.0) << '\n';
  };
  CerReport total;
  std::set<std::string> seen;
  for (const auto& [id, ref] : ReadKeyValueFile(a.ref, true)) {
    seen.insert(id);
    auto it = hyps.find(id);
    if (it == hyps.end()) spdlog::warn("score-cer: no hypothesis for {}", id);
    const std::string hyp = it == hyps.end() ? std::string() : it->second;
    if (ScoringUnits(ref, opts).empty()) {
      spdlog::warn("score-cer: empty reference for {}, skipped", id);
      continue;
    }
    CerReport r;
    if (a.permutation) {
      r = PermutationCer(SotSplit(ref),
                         hyp.empty() ? std::vector<std::string>{} : SotSplit(hyp), opts);
    } else {
      r = Cer(ref, hyp, opts);
    }
    row(id, r);
    total += r;
  }
  for (const auto& [id, h] : hyps) {
    if (!seen.count(id)) spdlog::warn("score-cer: hypothesis {} has no reference", id);
  }
  row("TOTAL", total);
  Emit(a.out, out, s.str());
  return kExitOk;
}

struct RoverArgs {
  std::vector<std::string> hyps, ctms;
  std::string out, unit = "char", costs = "0,4,3,3";
  double alpha = 1.0;
};

std::vector<std::string> Tokenize(const std::string& text, bool chars) {
  if (!chars) return WhitespaceTokens(text);
  std::vector<std::string> out;
  for (auto& c : Utf8Chars(text)) {
    if (c.size() == 1 && std::isspace(static_cast<unsigned char>(c[0]))) continue;
    out.push_back(c);
  }
  return out;
}

/// CTM rows per recording in file order: (token, confidence).
std::map<std::string, std::vector<std::pair<std::string, double>>> ReadCtm(
    const fs::path& p) {
  RequireFile(p);
  std::ifstream in(p);
  std::map<std::string, std::vector<std::pair<std::string, double>>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = WhitespaceTokens(line);
    if (f.empty() || f[0][0] == ';') continue;
    if (f.size() != 6) {
      throw DataError(p.string() + ":" + std::to_string(lineno) + ": expected 6 fields");
    }
    double conf;
    try {
      std::size_t used = 0;
      conf = std::stod(f[5], &used);
      if (used != f[5].size() || !(conf >= 0.0 && conf <= 1.0)) throw std::exception();
    } catch (...) {
      throw DataError(p.string() + ":" + std::to_string(lineno) + ": bad confidence");
    }
    out[f[0]].emplace_back(f[4], conf);
  }
  return out;
}

int RoverCmd(const RoverArgs& a, std::ostream& out) {
  if (a.hyps.size() < 2) throw ConfigError("rover needs at least two --hyp manifests");
  if (!a.ctms.empty() && a.ctms.size() != a.hyps.size()) {
    throw ConfigError("--ctm must be given once per --hyp");
  }
  if (a.unit != "char" && a.unit != "word") throw ConfigError("--unit must be char or word");
  if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) throw ConfigError("--alpha must be in [0, 1]");
  AlignCosts costs;
  CheckParams([&] { costs = ParseAlignCosts(a.costs); });
  const bool chars = a.unit == "char";

  std::vector<std::map<std::string, std::string>> systems;
  std::vector<std::string> order;
  std::set<std::string> known;
  for (const auto& p : a.hyps) {
    RequireFile(p);
    std::map<std::string, std::string> m;
    for (auto& [k, v] : ReadKeyValueFile(p, true)) {
      if (known.insert(k).second) order.push_back(k);
      m[k] = v;
    }
    systems.push_back(std::move(m));
  }
  std::vector<std::map<std::string, std::vector<std::pair<std::string, double>>>> ctms;
  for (const auto& p : a.ctms) ctms.push_back(ReadCtm(p));

  std::vector<KeyValue> fused;
  for (const auto& id : order) {
    std::vector<Hypothesis> hyps;
    for (std::size_t k = 0; k < systems.size(); ++k) {
      auto it = systems[k].find(id);
      Hypothesis h =
          MakeHypothesis(Tokenize(it == systems[k].end() ? "" : it->second, chars));
      if (!ctms.empty()) {
        auto c = ctms[k].find(id);
        const std::size_t n = c == ctms[k].end() ? 0 : c->second.size();
        if (n != h.size()) {
          throw DataError("ctm token count for " + id + " differs from hypothesis " +
                          a.hyps[k]);
        }
        for (std::size_t t = 0; t < n; ++t) {
          if (c->second[t].first != h[t].text) {
            throw DataError("ctm token mismatch for " + id + " in " + a.ctms[k]);
          }
          h[t].confidence = c->second[t].second;
        }
      }
      hyps.push_back(std::move(h));
    }
    const auto tokens = Rover(hyps, a.alpha, costs);
    std::string text;
    for (const auto& t : tokens) {
      if (!chars && !text.empty()) text += ' ';
      text += t;
    }
    fused.emplace_back(id, text);
  }
  std::ostringstream s;
  WriteKeyValue(s, fused);
  Emit(a.out, out, s.str());
  return kExitOk;
}

struct PipelineArgs {
  std::string config, manifest, ref_scp, out;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  bool print_default = false;
};

int PipelineCmd(const PipelineArgs& a, std::ostream& out) {
  if (a.print_default) {
    WriteDefaultConfig(out);
    return kExitOk;
  }
  if (a.manifest.empty() || a.out.empty()) {
    throw ConfigError("pipeline needs --manifest and --out");
  }
  PipelineConfig cfg = LoadConfigOrDefault(a.config);
  if (a.workers) cfg.workers = *a.workers;
  if (a.seed) cfg.seed = *a.seed;
  PipelineOptions opts{a.manifest, a.out, std::nullopt};
  if (!a.ref_scp.empty()) opts.reference_scp = a.ref_scp;
  const PipelineResult r = RunPipeline(cfg, opts);
  out << "utterances: " << r.utterances << ", failed: " << r.failed << '\n';
  return r.exit_code;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"meetkit: multi-channel meeting ASR front-end toolkit", "meetkit"};
  app.require_subcommand(1);
  bool verbose = false, quiet = false;
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Only log errors");
  std::function<int()> run;

  SimulateRirsArgs rirs;
  auto* c = app.add_subcommand("simulate-rirs", "Sample rooms and write multi-channel RIRs");
  c->add_option("--config", rirs.config, "Pipeline config (room, rir sections)");
  c->add_option("--count", rirs.count, "Number of rooms")->capture_default_str();
  c->add_option("--seed", rirs.seed, "Random seed")->capture_default_str();
  c->add_option("--out", rirs.out, "Output directory")->required();
  c->callback([&] { run = [&] { return SimulateRirs(rirs, out); }; });

  SimulateArrayArgs arr;
  c = app.add_subcommand("simulate-array", "Render a mono source through an array RIR");
  c->add_option("--source", arr.source, "Mono source WAV")->required();
  c->add_option("--rir", arr.rir, "Multi-channel RIR WAV")->required();
  c->add_option("--out", arr.out, "Output WAV")->required();
  c->add_option("--noise", arr.noises, "Mono noise WAV (repeatable)");
  c->add_option("--noise-rir", arr.noise_rirs, "RIR for the matching --noise");
  c->add_option("--snr", arr.snr, "Noise SNR in dB on channel 0")->capture_default_str();
  c->add_option("--seed", arr.seed, "Random seed")->capture_default_str();
  c->callback([&] { run = [&] { return SimulateArrayCmd(arr, out); }; });

  SimulateOverlapArgs ov;
  c = app.add_subcommand("simulate-overlap", "Mix single-speaker utterances into meetings");
  c->add_option("--pools", ov.pools, "Dataset TSV: utt, wav, speaker, transcript")->required();
  c->add_option("--config", ov.config, "Pipeline config (overlap section)");
  c->add_option("--count", ov.count, "Number of mixtures")->capture_default_str();
  c->add_option("--seed", ov.seed, "Random seed")->capture_default_str();
  c->add_option("--out", ov.out, "Output directory")->required();
  c->callback([&] { run = [&] { return SimulateOverlapCmd(ov, out); }; });

  AugmentArgs aug;
  c = app.add_subcommand("augment", "Write augmented copies of a dataset");
  c->add_option("--manifest", aug.manifest, "Dataset TSV: utt, wav, speaker, transcript")
      ->required();
  c->add_option("--config", aug.config, "Pipeline config (augment section)");
  c->add_option("--noise-scp", aug.noise_scp, "wav.scp of noise recordings");
  c->add_option("--seed", aug.seed, "Random seed")->capture_default_str();
  c->add_option("--out", aug.out, "Output directory")->required();
  c->add_flag("--keep-original", aug.keep_original, "Also copy the originals");
  c->callback([&] { run = [&] { return AugmentCmd(aug, out); }; });

  WpeArgs wpe;
  c = app.add_subcommand("wpe", "Multi-channel WPE dereverberation");
  c->add_option("--in", wpe.in, "Multi-channel input WAV")->required();
  c->add_option("--out", wpe.out, "Output WAV")->required();
  c->add_option("--config", wpe.config, "Pipeline config (stft section)");
  c->add_option("--taps", wpe.wpe.taps, "Prediction taps")->capture_default_str();
  c->add_option("--delay", wpe.wpe.delay, "Prediction delay in frames")->capture_default_str();
  c->add_option("--iters", wpe.wpe.iterations, "Iterations")->capture_default_str();
  c->callback([&] { run = [&] { return WpeCmd(wpe, out); }; });

  BeamformArgs bf;
  c = app.add_subcommand("beamform", "Weighted delay-and-sum beamforming");
  c->add_option("--in", bf.in, "Multi-channel input WAV")->required();
  c->add_option("--out", bf.out, "Mono output WAV")->required();
  c->add_option("--segment-ms", bf.bf.segment_ms, "Analysis segment")->capture_default_str();
  c->add_option("--step-ms", bf.bf.step_ms, "Segment step")->capture_default_str();
  c->add_option("--max-lag-ms", bf.bf.max_lag_ms, "TDOA search range")->capture_default_str();
  c->add_option("--npeaks", bf.bf.n_peaks, "GCC-PHAT candidates")->capture_default_str();
  c->add_option("--trans-weight", bf.bf.transition_weight, "Viterbi transition weight")
      ->capture_default_str();
  c->add_option("--dump-tdoa", bf.dump_tdoa, "Write per-segment TDOA TSV");
  c->callback([&] { run = [&] { return BeamformCmd(bf, out); }; });

  FeaturesArgs feats;
  c = app.add_subcommand("features", "Fbank plus pitch features");
  c->add_option("--manifest", feats.manifest, "wav.scp")->required();
  c->add_option("--config", feats.config, "Pipeline config (features section)");
  c->add_option("--out", feats.out, "Output directory")->required();
  c->add_option("--seed", feats.seed, "Random seed")->capture_default_str();
  c->add_flag("--spec-augment", feats.spec_augment, "Apply SpecAugment masks");
  c->add_flag("--no-pitch", feats.no_pitch, "Fbank only");
  c->callback([&] { run = [&] { return FeaturesCmd(feats, out); }; });

  SotArgs sot;
  c = app.add_subcommand("sot-serialize", "Build or split serialized transcripts");
  c->add_option("--timeline", sot.timeline, "Timeline TSV: utt, speaker, start, dur");
  c->add_option("--text", sot.text, "Text manifest: utt, transcript");
  c->add_option("--split", sot.split, "Text manifest of serialized transcripts to split");
  c->add_option("--out", sot.out, "Output file (default stdout)");
  c->callback([&] { run = [&] { return SotCmd(sot, out); }; });

  ScoreArgs score;
  c = app.add_subcommand("score-cer", "Character error rate per utterance and total");
  c->add_option("--ref", score.ref, "Reference text manifest")->required();
  c->add_option("--hyp", score.hyp, "Hypothesis text manifest")->required();
  c->add_option("--out", score.out, "Output TSV (default stdout)");
  c->add_flag("--keep-sc", score.keep_sc, "Score <sc> tokens");
  c->add_flag("--keep-space", score.keep_space, "Score whitespace characters");
  c->add_flag("--permutation", score.permutation,
              "Split on <sc> and score the best stream assignment");
  c->callback([&] { run = [&] { return ScoreCmd(score, out); }; });

  RoverArgs rv;
  c = app.add_subcommand("rover", "Fuse hypotheses by word transition network voting");
  c->add_option("--hyp", rv.hyps, "Hypothesis text manifest (repeat, order matters)")
      ->required();
  c->add_option("--ctm", rv.ctms, "Confidence CTM per --hyp");
  c->add_option("--out", rv.out, "Output text manifest (default stdout)");
  c->add_option("--alpha", rv.alpha, "Frequency weight in [0, 1]")->capture_default_str();
  c->add_option("--unit", rv.unit, "Token unit: char or word")->capture_default_str();
  c->add_option("--costs", rv.costs, "Alignment costs m,s,i,d")->capture_default_str();
  c->callback([&] { run = [&] { return RoverCmd(rv, out); }; });

  PipelineArgs pl;
  c = app.add_subcommand("pipeline", "Run a configured stage chain over a manifest");
  c->add_option("--config", pl.config, "Pipeline config");
  c->add_option("--manifest", pl.manifest, "wav.scp");
  c->add_option("--ref-scp", pl.ref_scp, "Clean references for SI-SDR");
  c->add_option("--out", pl.out, "Run directory");
  c->add_option("--workers", pl.workers, "Override worker count");
  c->add_option("--seed", pl.seed, "Override seed");
  c->add_flag("--print-default-config", pl.print_default, "Print every key and exit");
  c->callback([&] { run = [&] { return PipelineCmd(pl, out); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  spdlog::set_level(quiet ? spdlog::level::err
                          : verbose ? spdlog::level::debug : spdlog::level::info);
  try {
    return run();
  } catch (const ConfigError& e) {
    err << "meetkit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "meetkit: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace meetkit
