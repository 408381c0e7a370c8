// tests/acceptance/criteria_data.cc

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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "criteria.h"
#include "meetkit/augment.h"
#include "meetkit/cer.h"
#include "meetkit/features.h"
#include "meetkit/manifest.h"
#include "meetkit/overlap_sim.h"
#include "meetkit/rover.h"
#include "meetkit/sot.h"
#include "meetkit/wav_io.h"
#include "meetkit/tools/cli.h"
#include "oracles.h"
#include "signals.h"

namespace meetkit::acceptance {
namespace {

namespace fs = std::filesystem;

constexpr int kFs = 16000;

std::string Printf(const char* fmt, double a, double b = 0, double c = 0,
                   double d = 0, double e = 0) {
  char buf[320];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d, e);
  return buf;
}

/// UTF-8 encoding of CJK ideograph number k (from U+4E00).
std::string Hanzi(int k) {
  const unsigned cp = 0x4E00u + static_cast<unsigned>(k);
  std::string s;
  s += static_cast<char>(0xE0 | (cp >> 12));
  s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
  s += static_cast<char>(0x80 | (cp & 0x3F));
  return s;
}

std::vector<std::string> RandomChars(Rng& rng, std::size_t n, int alphabet) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Hanzi(static_cast<int>(rng.UniformInt(0, alphabet - 1))));
  }
  return out;
}

std::string Join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& t : v) s += t;
  return s;
}

double MeasuredSnr(const AudioBuffer& clean, const AudioBuffer& mixed) {
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < clean.data().size(); ++i) {
    const double n = mixed.data()[i] - clean.data()[i];
    ps += clean.data()[i] * clean.data()[i];
    pn += n * n;
  }
  return 10.0 * std::log10(ps / pn);
}

std::string ReadAll(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Relative path -> contents of every file under root.
std::map<std::string, std::string> Snapshot(const fs::path& root,
                                            const std::string& skip) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), root).generic_string();
    if (rel == skip) continue;
    out[rel] = ReadAll(e.path());
  }
  return out;
}

}  // namespace

Outcome OverlapStatistics(const Context&) {
  Rng rng(DeriveSeed(7, "pools"));
  SpeakerPools pools;
  std::map<std::string, const Utterance*> by_id;
  for (int s = 0; s < 8; ++s) {
    const std::string spk = "spk" + std::to_string(s);
    for (int u = 0; u < 4; ++u) {
      Utterance utt;
      utt.id = spk + "_u" + std::to_string(u);
      utt.speaker = spk;
      utt.audio = AudioBuffer::Mono(testing::SpeechLike(rng.Uniform(1.0, 4.0), kFs, rng));
      utt.transcript = Join(RandomChars(rng, 8, 50));
      pools[spk].push_back(std::move(utt));
    }
  }
  for (const auto& [spk, list] : pools) {
    for (const auto& u : list) by_id[u.id] = &u;
  }

  const OverlapPolicy policy;
  int hist[5] = {0, 0, 0, 0, 0};
  double ratio_sum = 0.0, worst_ratio_diff = 0.0, worst_sample_diff = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MeetingMixture m = SimulateOverlap(pools, policy, DeriveSeed(7, std::to_string(i)));
    if (m.n_speakers < 2 || m.n_speakers > 4) return {false, "speaker count out of range"};
    ++hist[m.n_speakers];
    std::vector<std::pair<double, double>> intervals;
    std::vector<double> rebuilt(m.audio.length(), 0.0);
    for (const auto& p : m.timeline) {
      intervals.emplace_back(static_cast<double>(p.onset), static_cast<double>(p.end()));
      const auto src = by_id.at(p.id)->audio.channel(0);
      const double g = std::pow(10.0, p.gain_db / 20.0);
      for (std::size_t k = 0; k < p.length; ++k) rebuilt[p.onset + k] += g * src[k];
    }
    const double oracle =
        testing::SweepOverlapRatio(intervals, static_cast<double>(m.audio.length()));
    worst_ratio_diff = std::max(worst_ratio_diff, std::abs(oracle - m.overlap_ratio));
    for (std::size_t k = 0; k < rebuilt.size(); ++k) {
      worst_sample_diff = std::max(worst_sample_diff, std::abs(rebuilt[k] - m.audio.at(0, k)));
    }
    ratio_sum += oracle;
  }
  const double f2 = hist[2] / 1000.0, f3 = hist[3] / 1000.0, f4 = hist[4] / 1000.0;
  const double mean = ratio_sum / 1000.0;
  const bool hist_ok = std::abs(f2 - 0.5) <= 0.03 && std::abs(f3 - 0.3) <= 0.03 &&
                       std::abs(f4 - 0.2) <= 0.03;
  const bool mean_ok = mean >= policy.overlap_min && mean <= policy.overlap_max;
  const bool sum_ok = worst_sample_diff <= 1e-12 && worst_ratio_diff <= 1e-12;
  return {hist_ok && mean_ok && sum_ok,
          Printf("speakers 2/3/4 = %.1f/%.1f/%.1f%%, mean overlap %.3f in [0.25, 0.5], "
                 "max rebuild error %.1e",
                 100 * f2, 100 * f3, 100 * f4, mean, worst_sample_diff) +
              Printf(", max ratio error vs sweep %.1e", worst_ratio_diff)};
}

Outcome AugmentContracts(const Context&) {
  Rng rng(DeriveSeed(8, "augment"));
  double worst_snr = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = static_cast<std::size_t>(rng.UniformInt(1600, 16000));
    const auto nn = static_cast<std::size_t>(rng.UniformInt(800, 24000));
    const AudioBuffer x = AudioBuffer::Mono(testing::WhiteNoise(n, rng, rng.Uniform(0.01, 0.5)));
    const AudioBuffer noise = AudioBuffer::Mono(testing::WhiteNoise(nn, rng, rng.Uniform(0.01, 0.5)));
    const double snr = rng.Uniform(-5.0, 30.0);
    const AudioBuffer y = MixNoise(x, noise, snr, rng.NextU64());
    worst_snr = std::max(worst_snr, std::abs(MeasuredSnr(x, y) - snr));
  }

  double worst_len = 0.0;
  for (std::size_t n : {16000u, 16001u, 12345u, 48000u, 7919u}) {
    const AudioBuffer x = AudioBuffer::Mono(testing::WhiteNoise(n, rng, 0.1));
    for (double f : {0.9, 1.0, 1.1}) {
      const double expected = static_cast<double>(n) / f;
      worst_len = std::max(worst_len,
                           std::abs(static_cast<double>(SpeedPerturb(x, f).length()) - expected));
    }
  }

  const AudioBuffer tone = AudioBuffer::Mono(testing::Tone(440.0, 1.0, kFs));
  const AudioBuffer shifted = PitchShift(tone, 2.0);
  const double peak = testing::PeakFrequency(shifted.channel(0), kFs, 400.0, 600.0);
  const double target = 440.0 * std::pow(2.0, 2.0 / 12.0);

  const bool pass = worst_snr <= 0.01 && worst_len <= 2.0 && std::abs(peak - target) <= 2.0;
  return {pass, Printf("SNR error max %.2e dB over 1000 (bar 0.01); speed length error max "
                       "%.1f samples (bar 2); +2 st tone peak %.2f Hz (want %.2f +- 2)",
                       worst_snr, worst_len, peak, target)};
}

Outcome FeatureContracts(const Context&) {
  Rng rng(DeriveSeed(9, "features"));
  const FeatureMatrix f =
      ComputeFeatures(AudioBuffer::Mono(testing::SpeechLike(1.0, kFs, rng)));
  bool frames_ok = true;
  for (std::size_t n : {400u, 401u, 559u, 560u, 12345u, 16000u, 16001u, 48000u}) {
    const std::size_t expected = (n - 400) / 160 + 1;
    const FeatureMatrix g = ComputeFeatures(AudioBuffer::Mono(testing::WhiteNoise(n, rng, 0.1)));
    frames_ok = frames_ok && g.rows() == expected && g.cols() == 83;
  }

  const std::size_t rows = 300, cols = 83;
  FeatureMatrix ones(rows, cols, 1.0);
  ones.layout = {{"fbank", 0, 80}, {"pitch", 80, 3}};
  const SpecAugmentConfig cfg;
  const auto pf = testing::MaskCoverage(80, cfg.max_freq_width, cfg.num_freq_masks);
  const auto pt = testing::MaskCoverage(rows, cfg.max_time_width, cfg.num_time_masks);
  double keep_f = 3.0, keep_t = 0.0;  // pitch columns are never frequency-masked
  for (double p : pf) keep_f += 1.0 - p;
  for (double p : pt) keep_t += 1.0 - p;
  const double expected = 1.0 - (keep_f / cols) * (keep_t / rows);
  std::size_t masked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const FeatureMatrix m = SpecAugment(ones, cfg, DeriveSeed(9, std::to_string(trial)));
    for (double v : m.data()) masked += v == 0.0;
  }
  const double observed = static_cast<double>(masked) / (10000.0 * rows * cols);
  const double rel = std::abs(observed / expected - 1.0);
  const bool pass = f.cols() == 83 && frames_ok && rel <= 0.01;
  return {pass, Printf("%.0f dims; frame counts ", static_cast<double>(f.cols())) +
                    (frames_ok ? "match" : "MISMATCH") +
                    Printf("; masked fraction %.5f vs closed form %.5f (relative gap %.2f%%, "
                           "bar 1%%)",
                           observed, expected, 100.0 * rel)};
}

Outcome ScoringFusion(const Context&) {
  Rng rng(DeriveSeed(10, "cer"));
  int exact = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ref = RandomChars(rng, static_cast<std::size_t>(rng.UniformInt(1, 40)), 6);
    const auto hyp = RandomChars(rng, static_cast<std::size_t>(rng.UniformInt(0, 40)), 6);
    const CerReport r = Cer(Join(ref), Join(hyp));
    const auto o = testing::LevenshteinOracle(ref, hyp);
    exact += r.substitutions == o.substitutions && r.deletions == o.deletions &&
             r.insertions == o.insertions && r.errors() == o.distance &&
             r.reference_length == ref.size();
  }

  int below_all = 0, below_median = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto ref = RandomChars(rng, 60, 30);
    std::vector<Hypothesis> hyps;
    std::vector<double> cers;
    for (int s = 0; s < 3; ++s) {
      std::vector<std::string> h;
      for (const auto& c : ref) {
        if (rng.Uniform() >= 0.1) {
          h.push_back(c);
          continue;
        }
        const double op = rng.Uniform();
        if (op < 1.0 / 3.0) {
          std::string sub = c;
          while (sub == c) sub = Hanzi(static_cast<int>(rng.UniformInt(0, 29)));
          h.push_back(sub);
        } else if (op < 2.0 / 3.0) {
          h.push_back(c);
          h.push_back(Hanzi(static_cast<int>(rng.UniformInt(0, 29))));
        }
      }
      cers.push_back(static_cast<double>(testing::LevenshteinOracle(ref, h).distance) / ref.size());
      hyps.push_back(MakeHypothesis(h));
    }
    const auto fused = Rover(hyps, 1.0, AlignCosts{});
    const double fused_cer =
        static_cast<double>(testing::LevenshteinOracle(ref, fused).distance) / ref.size();
    below_all += fused_cer < *std::min_element(cers.begin(), cers.end());
    below_median += fused_cer < testing::Median(cers);
  }
  const bool pass = exact == 1000 && below_all >= 80 && below_median >= 95;
  return {pass, Printf("CER counts exact on %.0f/1000 pairs; ROVER below every system in "
                       "%.0f/100 (bar 80), below median in %.0f/100 (bar 95)",
                       exact, below_all, below_median)};
}

Outcome Reproducibility(const Context& ctx) {
  const fs::path root = ctx.workdir / "reproducibility";
  fs::remove_all(root);
  fs::create_directories(root / "audio");
  Rng rng(DeriveSeed(11, "corpus"));
  {
    std::ofstream scp(root / "wav.scp");
    for (int i = 0; i < 4; ++i) {
      const std::string id = "utt" + std::to_string(i);
      WriteWav(root / "audio" / (id + ".wav"),
               AudioBuffer::Mono(testing::SpeechLike(2.0, kFs, rng)), WavEncoding::kPcm16);
      scp << id << "\taudio/" << id << ".wav\n";
    }
    std::ofstream noise(root / "noise.scp");
    for (int i = 0; i < 2; ++i) {
      const std::string id = "noise" + std::to_string(i);
      WriteWav(root / "audio" / (id + ".wav"),
               AudioBuffer::Mono(testing::Babble(3.0, kFs, 3, rng)), WavEncoding::kPcm16);
      noise << id << "\taudio/" << id << ".wav\n";
    }
    std::ofstream cfg(root / "run.ini");
    cfg << "[pipeline]\nseed = 2024\n"
           "stages = augment,simulate,wpe,beamform,features\n\n"
           "[augment]\nnoise_scp = noise.scp\n\n"
           "[simulate]\nnoise_scp = noise.scp\n\n"
           "[spec_augment]\nenabled = true\n";
  }
  std::ostringstream out, err;
  auto run = [&](const std::string& dir, int workers) {
    return RunCli({"-q", "pipeline", "--config", (root / "run.ini").string(), "--manifest",
                   (root / "wav.scp").string(), "--out", (root / dir).string(), "--workers",
                   std::to_string(workers)},
                  out, err);
  };
  const int a = run("run_w1", 1), b = run("run_w1_again", 1), c = run("run_w8", 8);
  if (a || b || c) {
    return {false, "pipeline exit codes " + std::to_string(a) + "/" + std::to_string(b) +
                       "/" + std::to_string(c) + ": " + err.str()};
  }
  // report.txt carries wall-clock timings and the worker count.
  const auto s1 = Snapshot(root / "run_w1", "report.txt");
  const auto s2 = Snapshot(root / "run_w1_again", "report.txt");
  const auto s8 = Snapshot(root / "run_w8", "report.txt");
  std::size_t bytes = 0;
  for (const auto& [k, v] : s1) bytes += v.size();
  const bool same = s1 == s2 && s1 == s8 && s1.size() > 10;
  return {same, Printf("%.0f artifacts (%.1f MB) ", static_cast<double>(s1.size()),
                       bytes / 1e6) +
                    (same ? "bitwise identical" : "DIFFER") +
                    " across a repeat run and 1 vs 8 workers (report.txt timings excluded)"};
}

const std::vector<Criterion>& AllCriteria() {
  static const std::vector<Criterion> all = {
      {1, "STFT round trip", 10, StftRoundTrip},
      {2, "GCC-PHAT delay recovery", 10, GccPhatDelays},
      {3, "RIR T60", 120, RirT60},
      {4, "array geometry consistency", 60, ArrayGeometry},
      {5, "front-end end to end", 300, FrontEnd},
      {6, "WPE tail suppression", 60, WpeTail},
      {7, "overlap simulator statistics", 120, OverlapStatistics},
      {8, "augmentation contracts", 60, AugmentContracts},
      {9, "feature contracts", 60, FeatureContracts},
      {10, "scoring and fusion oracles", 60, ScoringFusion},
      {11, "pipeline reproducibility", 300, Reproducibility},
  };
  return all;
}

}  // namespace meetkit::acceptance
