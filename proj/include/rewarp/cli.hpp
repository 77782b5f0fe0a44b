#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rewarp/align.hpp"
#include "rewarp/metrics.hpp"
#include "rewarp/synth.hpp"

namespace rewarp {

// Everything the commands take from flags and/or a flat key=value config
// file; flags override the file. Defaults follow the paper where it states
// them (K=6, N=3, alpha=0.85, n=12).
struct CliConfig {
  AlignConfig align;
  BlendMode blend = BlendMode::average;
  std::string out_dir = ".";
  bool write_trace = false;
  std::uint64_t seed = 0;
  bool include_times = true;
  int verbosity = 0;
};

// Parses one key=value per line; '#' starts a comment. Throws IoError on an
// unreadable file, Error on an unknown key or bad value.
void apply_config_file(CliConfig& cfg, const std::string& path);
void apply_config_entry(CliConfig& cfg, const std::string& key,
                        const std::string& value);

// ---------------------------------------------------------------------------
// Suite manifest
// ---------------------------------------------------------------------------

struct ManifestEntry {
  std::string id;
  std::string ref_path;  // relative to the manifest directory
  std::string tgt_path;
  SceneSpec spec;
  GroundTruth gt;
  Bucket bucket = Bucket::high;
  std::uint64_t gt_field_checksum = 0;
};

struct SuiteManifest {
  std::uint64_t seed = 0;
  int size = 256;
  std::vector<ManifestEntry> entries;
};

// FNV-1a over the ground-truth correspondence, sampled on a stride-4
// lattice of the reference frame.
std::uint64_t gt_field_checksum(const SceneSpec& spec);

// Renders every spec into out_dir as PNG pairs plus manifest.json.
SuiteManifest export_suite(const std::vector<SceneSpec>& specs,
                           std::uint64_t seed, int size,
                           const std::string& out_dir);

std::string manifest_json(const SuiteManifest& m);
SuiteManifest load_manifest(const std::string& path);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct EvalOptions {
  bool use_tps = true;          // --warp h+tps (default) vs h
  int workers = 0;              // 0: decide from REWARP_THREADS/hardware
  bool include_times = true;    // --timing wall (default) vs none
};

// Stitches every manifest entry (optionally in parallel; result order and
// bytes are worker-count independent) and fills ground-truth metrics.
SuiteReport run_suite(const SuiteManifest& manifest,
                      const std::string& manifest_dir, const AlignConfig& cfg,
                      BlendMode mode, const EvalOptions& opts);

// GT metrics for one stitched result (corner error; EPE of the composed
// warp over the GT overlap).
void fill_gt_metrics(const SceneSpec& spec, const GroundTruth& gt,
                     StitchResult& result);

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

// Subcommands: stitch, multistitch, synth, eval. Exit codes: 0 success,
// 1 usage/I-O error, 2 stitching failure.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without argv[0]

}  // namespace rewarp
