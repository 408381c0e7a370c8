// tools/src/pipeline.cc

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

#include "meetkit/tools/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include <spdlog/spdlog.h>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "meetkit/beamformer.h"
#include "meetkit/metrics.h"
#include "meetkit/room_sim.h"
#include "meetkit/wav_io.h"
#include "meetkit/wpe.h"

namespace meetkit {
namespace {

namespace fs = std::filesystem;

RoomSamplingRanges MonoRanges(const PipelineConfig& cfg) {
  RoomSamplingRanges r = cfg.room;
  r.array_geometry = {Vec3{}};
  return r;
}

AudioBuffer PickNoise(const std::vector<AudioBuffer>& noises, Rng& rng) {
  const auto k = rng.UniformInt(0, static_cast<std::int64_t>(noises.size()) - 1);
  return noises[static_cast<std::size_t>(k)];
}

double Semitones(const AugmentPolicy& p, Rng& rng) {
  double st = 0.0;
  while (st == 0.0) st = rng.Uniform(-p.pitch_max_semitones, p.pitch_max_semitones);
  return st;
}

AudioBuffer Reverberate(const AudioBuffer& x, const PipelineConfig& cfg, Rng& rng) {
  return AddReverb(x, SampleMonoRir(cfg, rng, x.sample_rate()));
}

std::string FormatMetric(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

std::optional<double> MaybeSiSdr(const std::optional<AudioBuffer>& ref,
                                 const AudioBuffer& audio,
                                 std::size_t ref_channel = 0) {
  if (!ref || ref->length() != audio.length() || audio.empty()) return {};
  const auto clean = ref->channel(std::min(ref_channel, ref->channels() - 1));
  if (!(MeanPower(clean) > 0.0)) return {};
  return SiSdr(clean, audio.channel(0));
}

bool SafeId(const std::string& id) {
  return !id.empty() && id.find('/') == std::string::npos &&
         id.find('\\') == std::string::npos && id != "." && id != "..";
}

struct Inputs {
  std::vector<KeyValue> utterances;
  std::vector<fs::path> paths;
  std::map<std::string, fs::path> references;
  std::vector<AudioBuffer> augment_noises;
  std::vector<AudioBuffer> simulate_noises;
};

Inputs CheckInputs(const PipelineConfig& cfg, const PipelineOptions& opt) {
  Inputs in;
  if (!fs::exists(opt.manifest)) {
    throw DataError("manifest not found: " + opt.manifest.string());
  }
  try {
    in.utterances = ReadKeyValueFile(opt.manifest);
  } catch (const ManifestError& e) {
    throw DataError(e.what());
  }
  std::vector<std::string> missing;
  for (const auto& [utt, entry] : in.utterances) {
    if (!SafeId(utt)) throw DataError("utterance id not usable as a file name: " + utt);
    const fs::path p = ResolveEntry(opt.manifest, entry);
    if (!fs::exists(p)) missing.push_back(p.string());
    in.paths.push_back(p);
  }
  if (opt.reference_scp) {
    if (!fs::exists(*opt.reference_scp)) {
      throw DataError("reference scp not found: " + opt.reference_scp->string());
    }
    for (const auto& [utt, entry] : ReadKeyValueFile(*opt.reference_scp)) {
      const fs::path p = ResolveEntry(*opt.reference_scp, entry);
      if (!fs::exists(p)) missing.push_back(p.string());
      in.references[utt] = p;
    }
    for (const auto& [utt, entry] : in.utterances) {
      if (!in.references.count(utt)) {
        throw DataError("no reference for utterance " + utt);
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " missing input file(s):";
    for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 5); ++i) {
      msg += " " + missing[i];
    }
    throw DataError(msg);
  }
  const auto uses = [&](const char* s) {
    return std::find(cfg.stages.begin(), cfg.stages.end(), s) != cfg.stages.end();
  };
  if (uses("augment") && !cfg.augment.noise_scp.empty()) {
    in.augment_noises = LoadNoiseBank(cfg.augment.noise_scp);
  }
  if (uses("simulate") && !cfg.simulate.noise_scp.empty()) {
    in.simulate_noises = LoadNoiseBank(cfg.simulate.noise_scp);
  }
  return in;
}

struct UtteranceResult {
  std::vector<StageRow> rows;
  std::vector<double> seconds;  // per row
  std::vector<std::string> outputs;  // per row, file name relative to stage dir
  std::vector<std::string> extra;    // per row, extra manifest columns
  bool has_reference_output = false;
};

UtteranceResult ProcessUtterance(const PipelineConfig& cfg, const Inputs& in,
                                 std::size_t index, const fs::path& out_dir) {
  UtteranceResult res;
  const std::string& utt = in.utterances[index].first;
  AudioBuffer audio;
  std::optional<AudioBuffer> ref;
  std::optional<double> baseline;
  std::size_t ref_channel = 0;
  try {
    audio = ReadWav(in.paths[index]);
    if (auto it = in.references.find(utt); it != in.references.end()) {
      ref = ReadWav(it->second);
      baseline = MaybeSiSdr(ref, audio);
    }
  } catch (const std::exception& e) {
    StageRow row{utt, "read", false, 0, 0, {}, {}, e.what()};
    res.rows.push_back(row);
    res.seconds.push_back(0.0);
    res.outputs.emplace_back();
    res.extra.emplace_back();
    return res;
  }

  for (const auto& stage : cfg.stages) {
    StageRow row{utt, stage, true, 0, 0, {}, {}, {}};
    std::string output, extra;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const std::uint64_t seed = DeriveSeed(cfg.seed, utt + "/" + stage);
      if (stage == "features") {
        if (audio.channels() != 1) audio = audio.ExtractChannel(0);
        FeatureMatrix f = ComputeFeatures(audio, cfg.features, seed);
        if (cfg.spec_augment) {
          f = SpecAugment(f, cfg.spec_augment_config,
                          DeriveSeed(cfg.seed, utt + "/spec_augment"));
        }
        output = utt + ".mkfm";
        WriteFeatureFile(out_dir / stage / output, f);
        row.channels = f.cols();
        row.samples = f.rows();
        extra = std::to_string(f.rows()) + "\t" + std::to_string(f.cols());
      } else {
        if (stage == "augment") {
          if (audio.channels() != 1) throw std::invalid_argument("augment needs mono input");
          audio = AugmentOnce(audio, cfg, in.augment_noises, seed);
          ref.reset();
          baseline.reset();
        } else if (stage == "simulate") {
          if (audio.channels() != 1) throw std::invalid_argument("simulate needs mono input");
          SimulatedRecording sim = SimulateRecording(audio, cfg, in.simulate_noises, seed);
          audio = std::move(sim.array);
          ref = std::move(sim.reference);
          baseline = MaybeSiSdr(ref, audio);
          WriteWav(out_dir / stage / "ref" / (utt + ".wav"), *ref, cfg.output_encoding);
          res.has_reference_output = true;
        } else if (stage == "wpe") {
          audio = Wpe(audio, cfg.wpe, cfg.stft);
        } else if (stage == "beamform") {
          if (audio.channels() < 2) throw std::invalid_argument("beamform needs >= 2 channels");
          BeamformResult bf = Beamform(audio, cfg.beamform);
          audio = std::move(bf.output);
          ref_channel = bf.track.reference;
        }
        output = utt + ".wav";
        WriteWav(out_dir / stage / output, audio, cfg.output_encoding);
        row.channels = audio.channels();
        row.samples = audio.length();
        row.si_sdr = MaybeSiSdr(ref, audio, ref_channel);
        if (row.si_sdr && baseline) row.si_sdr_delta = *row.si_sdr - *baseline;
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.message = e.what();
      spdlog::warn("{}: stage {} failed: {}", utt, stage, e.what());
    }
    res.rows.push_back(row);
    res.seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    res.outputs.push_back(output);
    res.extra.push_back(extra);
    if (!row.ok) break;
  }
  return res;
}

void WriteReports(const PipelineConfig& cfg, const fs::path& out_dir,
                  const std::vector<UtteranceResult>& results,
                  const PipelineResult& summary) {
  std::ofstream tsv(out_dir / "report.tsv");
  tsv << "utterance\tstage\tstatus\tchannels\tsamples\tsi_sdr\tsi_sdr_delta\tmessage\n";
  for (const auto& r : summary.rows) {
    tsv << r.utterance << '\t' << r.stage << '\t' << (r.ok ? "ok" : "failed") << '\t'
        << r.channels << '\t' << r.samples << '\t' << FormatMetric(r.si_sdr) << '\t'
        << FormatMetric(r.si_sdr_delta) << '\t' << r.message << '\n';
  }
  if (!tsv) throw DataError("cannot write report.tsv");

  std::ofstream txt(out_dir / "report.txt");
  txt << "utterances: " << summary.utterances << "\nfailed: " << summary.failed
      << "\nworkers: " << cfg.workers << "\nseed: " << cfg.seed << "\n\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %6s %6s %10s %14s\n", "stage", "ok",
                "failed", "seconds", "mean_delta_dB");
  txt << line;
  for (const auto& stage : cfg.stages) {
    std::size_t ok = 0, failed = 0, with_delta = 0;
    double secs = 0.0, delta = 0.0;
    for (const auto& res : results) {
      for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& r = res.rows[i];
        if (r.stage != stage) continue;
        (r.ok ? ok : failed) += 1;
        secs += res.seconds[i];
        if (r.si_sdr_delta) {
          delta += *r.si_sdr_delta;
          ++with_delta;
        }
      }
    }
    std::snprintf(line, sizeof(line), "%-10s %6zu %6zu %10.3f %14s\n", stage.c_str(), ok,
                  failed, secs,
                  with_delta ? FormatMetric(delta / with_delta).c_str() : "-");
    txt << line;
  }
}

}  // namespace

fs::path ResolveEntry(const fs::path& manifest, const std::string& entry) {
  fs::path p(entry);
  if (p.is_absolute()) return p;
  return manifest.parent_path() / p;
}

std::vector<AudioBuffer> LoadNoiseBank(const fs::path& scp) {
  if (!fs::exists(scp)) throw DataError("noise scp not found: " + scp.string());
  std::vector<AudioBuffer> out;
  for (const auto& [id, entry] : ReadKeyValueFile(scp)) {
    const fs::path p = ResolveEntry(scp, entry);
    if (!fs::exists(p)) throw DataError("noise file not found: " + p.string());
    AudioBuffer a = ReadWav(p);
    if (a.empty()) throw DataError("empty noise file: " + p.string());
    out.push_back(a.ExtractChannel(0));
  }
  if (out.empty()) throw DataError("noise scp is empty: " + scp.string());
  return out;
}

Rir SampleMonoRir(const PipelineConfig& cfg, Rng& rng, int sample_rate) {
  auto [room, array] = SampleRoomConfig(MonoRanges(cfg), rng.NextU64());
  room.t60_model = cfg.t60_model;
  RirOptions opts = cfg.rir;
  opts.sample_rate = sample_rate;
  return GenerateRir(room, array, opts);
}

EqSpec RandomEq(const AugmentPolicy& policy, Rng& rng, int sample_rate) {
  EqSpec spec;
  const auto kind = rng.UniformInt(0, 3);
  spec.weight = rng.Uniform(policy.eq_weight_min, policy.eq_weight_max);
  const double nyquist = sample_rate / 2.0;
  switch (kind) {
    case 0:
      spec.kind = EqKind::kLowPass;
      spec.cutoff_hz = rng.Uniform(0.25, 0.9) * nyquist;
      break;
    case 1:
      spec.kind = EqKind::kHighPass;
      spec.cutoff_hz = rng.Uniform(50.0, 400.0);
      break;
    case 2:
      spec.kind = EqKind::kDeEmphasis;
      spec.coefficient = 0.97;
      break;
    default: {
      spec.kind = EqKind::kResponseCurve;
      double f = 100.0;
      while (f < nyquist) {
        spec.curve.emplace_back(f, rng.Uniform(-6.0, 6.0));
        f *= 2.0;
      }
      break;
    }
  }
  return spec;
}

std::vector<AugmentedCopy> AugmentCopies(const AudioBuffer& x,
                                         const PipelineConfig& cfg,
                                         const std::vector<AudioBuffer>& noises,
                                         std::uint64_t seed) {
  const AugmentPolicy& p = cfg.augment;
  Rng rng(seed);
  std::vector<AugmentedCopy> out;
  for (double f : p.speed_factors) {
    char name[32];
    std::snprintf(name, sizeof(name), "sp%g", f);
    out.push_back({name, SpeedPerturb(x, f)});
  }
  if (p.pitch_max_semitones > 0.0) {
    out.push_back({"pitch", PitchShift(x, Semitones(p, rng))});
  }
  if (!noises.empty()) {
    AudioBuffer y = p.reverb ? Reverberate(x, cfg, rng) : x;
    y = MixNoise(y, PickNoise(noises, rng), rng.Uniform(p.snr_min, p.snr_max),
                 rng.NextU64());
    out.push_back({"noise", std::move(y)});
  } else if (p.reverb) {
    out.push_back({"reverb", Reverberate(x, cfg, rng)});
  }
  if (p.eq_probability > 0.0) {
    out.push_back({"eq", EqFilter(x, RandomEq(p, rng, x.sample_rate()))});
  }
  return out;
}

AudioBuffer AugmentOnce(const AudioBuffer& x, const PipelineConfig& cfg,
                        const std::vector<AudioBuffer>& noises,
                        std::uint64_t seed) {
  const AugmentPolicy& p = cfg.augment;
  Rng rng(seed);
  const auto k = rng.UniformInt(0, static_cast<std::int64_t>(p.speed_factors.size()) - 1);
  AudioBuffer y = SpeedPerturb(x, p.speed_factors[static_cast<std::size_t>(k)]);
  if (p.pitch_max_semitones > 0.0 && rng.Uniform() < p.pitch_probability) {
    y = PitchShift(y, Semitones(p, rng));
  }
  if (p.reverb) y = Reverberate(y, cfg, rng);
  if (!noises.empty()) {
    y = MixNoise(y, PickNoise(noises, rng), rng.Uniform(p.snr_min, p.snr_max),
                 rng.NextU64());
  }
  if (rng.Uniform() < p.eq_probability) {
    y = EqFilter(y, RandomEq(p, rng, y.sample_rate()));
  }
  return y;
}

SimulatedRecording SimulateRecording(const AudioBuffer& source,
                                     const PipelineConfig& cfg,
                                     const std::vector<AudioBuffer>& noises,
                                     std::uint64_t seed) {
  Rng rng(seed);
  auto [room, geometry] = SampleRoomConfig(cfg.room, rng.NextU64());
  room.t60_model = cfg.t60_model;
  RirOptions opts = cfg.rir;
  opts.sample_rate = source.sample_rate();
  const Rir rir = GenerateRir(room, geometry, opts);

  std::optional<DirectionalNoise> noise;
  if (!noises.empty()) {
    DirectionalNoise dn;
    for (int i = 0; i < cfg.simulate.noise_sources; ++i) {
      dn.sources.push_back(PickNoise(noises, rng));
    }
    dn.snr_db = rng.Uniform(cfg.simulate.snr_min, cfg.simulate.snr_max);
    dn.room = room;
    dn.mics = geometry.mics;
    dn.rir_options = opts;
    noise = std::move(dn);
  }
  SimulatedRecording out;
  out.array = SimulateArray(source, rir, noise, rng.NextU64());
  const Rir early = rir.EarlyPart(cfg.simulate.early_ms / 1000.0);
  out.reference = SimulateArray(source, early);
  out.room = room;
  out.geometry = geometry;
  return out;
}

PipelineResult RunPipeline(const PipelineConfig& cfg, const PipelineOptions& options) {
  cfg.Validate();
  const Inputs in = CheckInputs(cfg, options);
  const fs::path& out_dir = options.output_dir;
  fs::create_directories(out_dir);
  for (const auto& stage : cfg.stages) {
    fs::create_directories(out_dir / stage);
    if (stage == "simulate") fs::create_directories(out_dir / stage / "ref");
  }

  const std::size_t n = in.utterances.size();
  std::vector<UtteranceResult> results(n);
  spdlog::info("pipeline: {} utterance(s), stages {}, {} worker(s)", n,
               cfg.stages.size(), cfg.workers);
  tbb::task_arena arena(cfg.workers);
  arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, 1),
                      [&](const tbb::blocked_range<std::size_t>& r) {
                        for (std::size_t i = r.begin(); i != r.end(); ++i) {
                          results[i] = ProcessUtterance(cfg, in, i, out_dir);
                        }
                      });
  });

  PipelineResult summary;
  summary.utterances = n;
  std::map<std::string, std::vector<KeyValue>> manifests;
  std::vector<KeyValue> refs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& res = results[i];
    bool ok = true;
    for (std::size_t k = 0; k < res.rows.size(); ++k) {
      const auto& row = res.rows[k];
      summary.rows.push_back(row);
      ok = ok && row.ok;
      if (!row.ok) continue;
      std::string value = res.outputs[k];
      if (!res.extra[k].empty()) value += "\t" + res.extra[k];
      manifests[row.stage].emplace_back(row.utterance, value);
      if (row.stage == "simulate" && res.has_reference_output) {
        refs.emplace_back(row.utterance, "ref/" + row.utterance + ".wav");
      }
    }
    if (!ok) ++summary.failed;
  }
  for (const auto& stage : cfg.stages) {
    const char* name = stage == "features" ? "feats.tsv" : "wav.scp";
    WriteKeyValueFile(out_dir / stage / name, manifests[stage]);
  }
  if (std::find(cfg.stages.begin(), cfg.stages.end(), "simulate") != cfg.stages.end()) {
    WriteKeyValueFile(out_dir / "simulate" / "ref.scp", refs);
  }
  summary.exit_code = summary.failed ? kExitPartial : kExitOk;
  WriteReports(cfg, out_dir, results, summary);
  spdlog::info("pipeline: done, {} failed", summary.failed);
  return summary;
}

}  // namespace meetkit
