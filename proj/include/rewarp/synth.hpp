#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "rewarp/core.hpp"
#include "rewarp/homography.hpp"
#include "rewarp/tps.hpp"

namespace rewarp {

// Off-plane sprite: a disk of scene content at a different depth, displaced
// by `shift` relative to the plane-induced correspondence.
struct ParallaxLayer {
  Vec2 center;    // reference-frame coords
  double radius = 0.0;
  Vec2 shift;     // induced parallax displacement, target-frame px
};

// Fully deterministic recipe for one synthetic pair. The ground-truth
// correspondence from reference coords r to target coords is
//   C(r) = H_gt * r + F_gt(r) + layer shift (inside a layer footprint),
// and the pair renders an analytic band-limited texture so the
// correspondence is exact by construction.
struct SceneSpec {
  int width = 256;
  int height = 256;
  std::uint64_t seed = 0;
  Homography h_gt;  // reference -> target sampling homography
  std::optional<ControlGrid> tps_gt;
  std::vector<ParallaxLayer> layers;
  double noise_sigma = 0.0;
};

// Eq.-2 style parallax error: A2 * A1^{-1} * x1 - H * x1, perspective
// divided. Throws SingularHomography when A1 is not invertible.
Vec2 parallax_error(Vec2 x1, const Homography& h, const Homography& a1,
                    const Homography& a2);

struct GroundTruth {
  CornerDisplacement corner_disp;  // of the reference corners under h_gt
  double overlap_ratio = 0.0;
};

struct SynthPair {
  Image ref;
  Image tgt;
  GroundTruth gt;
};

// Ground-truth correspondence C(r), including TPS residual and layer shifts.
Vec2 gt_correspond(const SceneSpec& spec, Vec2 r);

// Renders (ref, tgt): the target samples the analytic texture directly and
// the reference samples it through C, so tgt[C(r)] == ref[r] exactly before
// noise. Per-cell gradient energy of the texture stays above a floor.
SynthPair generate_pair(const SceneSpec& spec);

// Deterministic stratified suite: counts[0]/[1]/[2] specs with ground-truth
// overlap ratio in the low (<=0.30), mid (0.31-0.60), high (>0.60) buckets.
std::vector<SceneSpec> generate_suite(std::uint64_t seed,
                                      std::array<int, 3> counts,
                                      int size = 256);

// Exposed for tests: the analytic texture value at any real coordinate.
double synth_texture(std::uint64_t seed, Vec2 p);

}  // namespace rewarp
