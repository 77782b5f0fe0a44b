#pragma once

#include <optional>
#include <vector>

#include "rewarp/core.hpp"
#include "rewarp/homography.hpp"
#include "rewarp/metrics.hpp"
#include "rewarp/tps.hpp"
#include "rewarp/warp.hpp"

namespace rewarp {

struct AlignConfig {
  int iters_h = 6;      // K
  int iters_t = 3;      // N
  double alpha = 0.85;  // sequence-loss weight
  double lambda_local = 1.0;
  double max_step_corner_px = 16.0;  // trust region, H-stage
  double max_step_ctrl_px = 4.0;     // trust region, T-stage
  int pyramid_levels = 2;
  int control_grid_n = 12;
  double area_cap = 16.0;
  double huber_delta = 0.01;   // smooth-L1 knee, intensity units
  double min_corr = 0.2;       // flow confidence floor
  int max_loss_samples = 16384;
  double mpsnr_cap_db = 99.0;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Cost volume
// ---------------------------------------------------------------------------

// Banded multi-level correlation volume between mean/variance-normalized
// 7x7 grayscale patch descriptors at 1/8 resolution. Level l+1 pools the
// target axes of level l by 2x (built from 2x-mean-pooled target
// descriptors, which is the same thing).
class CostVolume {
public:
  static constexpr int kCell = 8;       // descriptor stride in pixels
  static constexpr int kPatch = 7;      // descriptor patch side, in cells
  static constexpr int kBandRadius = 16;  // stored offsets per axis

  struct Level {
    int tgt_cw = 0, tgt_ch = 0;  // target cells at this level
    int scale = 1;               // target cells span scale*kCell pixels
    std::vector<float> corr;     // [ref_cell][band_offset]
  };

  int ref_cw = 0, ref_ch = 0;
  std::vector<Level> levels;

  // Correlation of ref cell (px,py) against the target cell at
  // (px,py)+offset in level coordinates; 0 outside the band or image.
  float at(int level, int px, int py, int ox, int oy) const;

  // Full-resolution center of a reference cell.
  static Vec2 cell_center(int px, int py) {
    return {px * static_cast<double>(kCell) + (kCell - 1) / 2.0,
            py * static_cast<double>(kCell) + (kCell - 1) / 2.0};
  }
};

// Throws ImageTooSmall when either side of either image is below 64.
CostVolume build_cost_volume(const Image& ref, const Image& tgt,
                             const AlignConfig& cfg = {});

// One gathered lookup window per reference cell, per pyramid level.
struct CostSlice {
  int radius = 4;  // window half-width, in level cells
  struct CellWindow {
    std::vector<float> values;         // (2r+1)^2 per level, level-major
    std::vector<std::uint8_t> in_band;  // same layout
  };
  std::vector<CellWindow> cells;  // ref_cw * ref_ch, row-major
  int levels = 0;
};

// Gathers correlation windows around the current correspondence estimate.
// `grid` holds full-resolution target coordinates per reference cell
// (ref_cw x ref_ch); out-of-band entries come back flagged and zero.
CostSlice lookup(const CostVolume& cv, const Grid& grid);

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

struct TraceEntry {
  char stage = 'H';  // 'H' or 'T'
  int iteration = 0;
  std::vector<Vec2> delta;        // 4 corners or (n-2)^2 control points
  std::vector<Vec2> accumulated;  // running sum after this iteration
  double loss_before = 0.0;
  double loss_after = 0.0;
  bool accepted = false;
};

struct AlignTrace {
  std::vector<TraceEntry> entries;

  // Eq. 11/12-style diagnostic: sum_k alpha^(K-k) * loss_after_k over one
  // stage's entries.
  double weighted_sequence_loss(char stage, double alpha) const;
};

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

struct HStageResult {
  Homography h;  // maps reference coords to target coords (sampling)
  CornerDisplacement total;
  AlignTrace trace;
};

// Recurrent global alignment: per iteration, a corner-displacement update is
// least-squares fitted to the cost-volume argmax flow over overlap cells,
// refined by damped Gauss-Newton on the smooth-L1 photometric objective, and
// accepted only if the masked L1 loss does not increase. Throws NoOverlap
// when an accepted state has an empty overlap.
HStageResult h_stage(const Image& ref, const Image& tgt, const CostVolume& cv,
                     const AlignConfig& cfg);

struct TStageResult {
  ControlGrid grid;
  AlignTrace trace;
};

// Recurrent residual alignment over the interior control displacements.
// j_t must be the target pre-warped by h over the reference grid; cv built
// from (ref, j_t). Dirichlet edges are enforced before every evaluation.
TStageResult t_stage(const Image& ref, const Image& j_t, const CostVolume& cv,
                     const Homography& h, const AlignConfig& cfg);

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

struct StitchResult {
  Image stitched;
  Canvas canvas;
  Homography h;            // reference -> target sampling homography
  ControlGrid local;       // final control grid (valid when iters_t > 0)
  bool has_local = false;
  Metrics metrics;
  AlignTrace trace;
  std::optional<FailureKind> failure;

  bool ok() const { return !failure.has_value(); }
};

// Full pipeline: cost volume, H-stage, re-warp, T-stage, Eq. 6 grid
// composition, canvas, blend, metrics. NoOverlap/UnreasonableWarp surface
// as failure results, never as exceptions.
StitchResult stitch(const Image& ref, const Image& tgt, const AlignConfig& cfg,
                    BlendMode mode = BlendMode::average);

struct MultiStitchResult {
  Image stitched;
  std::vector<std::optional<FailureKind>> per_target;
  std::vector<AlignTrace> traces;
  bool ok = false;  // at least one target aligned
};

// Aligns each target to the reference independently, composes all layers on
// one canvas, and blends pairwise in input order.
MultiStitchResult multi_stitch(const Image& ref,
                               const std::vector<Image>& targets,
                               const AlignConfig& cfg,
                               BlendMode mode = BlendMode::average);

}  // namespace rewarp
