// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "radnet/dsp/pipeline.hpp"
#include "radnet/sim/radar.hpp"

namespace radnet::sim {

// On-disk dataset layout: one directory per split (train/val/test), each
// holding manifest.txt (flat "key value" lines) and per-frame binary
// records. Records are little-endian; complex payloads store interleaved
// I/Q real64 pairs in row-major element order.
enum class RecordKind : uint32_t { Adc = 0, Rd = 1, Rad = 2 };

struct FrameRecord {
  RecordKind kind = RecordKind::Adc;
  Tensor data;  // complex for ADC, real for RD/RAD
  Scene scene;
};

struct DatasetManifest {
  int64_t version = 1;
  std::string preset;  // HD | LD | desk
  std::string kind = "adc";
  int64_t frames = 0;
  uint64_t seed = 0;
  // Preprocessing provenance (RD/RAD datasets).
  bool window = false;
  bool shift = false;
  // Frozen normalization constants; empty for raw ADC datasets.
  dsp::ChannelStats stats;
  // Radar configuration snapshot (documentation + sanity checks).
  RadarConfig radar;
};

std::string frame_filename(int64_t index);

void write_frame(const std::filesystem::path& file, const FrameRecord& rec);
FrameRecord read_frame(const std::filesystem::path& file);

void write_manifest(const std::filesystem::path& file,
                    const DatasetManifest& m);
DatasetManifest read_manifest(const std::filesystem::path& file);

// Convenience view of one split directory.
class SplitReader {
 public:
  explicit SplitReader(const std::filesystem::path& dir);
  const DatasetManifest& manifest() const { return manifest_; }
  int64_t size() const { return manifest_.frames; }
  FrameRecord frame(int64_t index) const;

 private:
  std::filesystem::path dir_;
  DatasetManifest manifest_;
};

}  // namespace radnet::sim
