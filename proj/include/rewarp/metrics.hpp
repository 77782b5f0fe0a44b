#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rewarp/core.hpp"

namespace rewarp {

enum class FailureKind { NoOverlap, UnreasonableWarp };

std::string to_string(FailureKind f);

enum class Bucket { low, mid, high };

std::string to_string(Bucket b);

// Overlap-ratio buckets: <=0.30 low, <=0.60 mid, else high.
Bucket bucketize(double ratio);

struct Metrics {
  std::optional<double> mpsnr;  // dB; absent iff failure present
  double overlap_ratio = 0.0;
  Bucket bucket = Bucket::high;
  std::optional<double> corner_error;  // px, ground-truth runs only
  std::optional<double> epe;           // px, ground-truth runs only
  std::optional<FailureKind> failure;
  double time_ms = 0.0;
};

// Valid-region-only PSNR: 10*log10(1/MSE) with the MSE averaged over valid
// pixels and all channels, capped at cap_db when MSE < 1e-10. Throws
// EmptyMask when no pixel is valid.
double mpsnr(const Image& a, const Image& b, const OverlapMask& valid,
             double cap_db = 99.0);

struct SuiteResult {
  std::string id;
  Metrics metrics;
};

struct BucketSummary {
  int count = 0;
  int successes = 0;
  double mean_mpsnr = 0.0;  // over successes
};

struct SuiteReport {
  std::vector<SuiteResult> results;  // ordered by id
  BucketSummary per_bucket[3];
  double average_mpsnr = 0.0;  // over all successes
  double failure_pct = 0.0;
  double mean_time_ms = 0.0;
  int total = 0;
  int failures = 0;
};

SuiteReport suite_report(std::vector<SuiteResult> results);

// JSON per the report schema; include_times=false omits time_ms and
// mean_time_ms so reports can be compared byte-for-byte.
std::string report_json(const SuiteReport& report, bool include_times = true);

// Aligned text table.
std::string report_table(const SuiteReport& report);

}  // namespace rewarp
