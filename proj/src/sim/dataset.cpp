// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/sim/dataset.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "radnet/core/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "dataset records are written little-endian");

namespace radnet::sim {

namespace {

constexpr uint32_t kMagic = 0x46444152;  // "RADF"
constexpr uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("dataset record truncated");
  return v;
}

}  // namespace

std::string frame_filename(int64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06lld.bin",
                static_cast<long long>(index));
  return buf;
}

void write_frame(const std::filesystem::path& file, const FrameRecord& rec) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw IoError("cannot write frame record: " + file.string());
  put(os, kMagic);
  put(os, kVersion);
  put(os, static_cast<uint32_t>(rec.kind));
  put(os, static_cast<int64_t>(rec.scene.frame_id));
  const Shape& s = rec.data.shape();
  put(os, static_cast<uint32_t>(s.size()));
  for (int64_t d : s) put(os, d);

  const int64_t n = rec.data.numel();
  if (rec.kind == RecordKind::Adc) {
    RN_CHECK(rec.data.is_complex(), "write_frame: ADC record must be complex");
    for (int64_t i = 0; i < n; ++i) {
      put(os, rec.data.re()[i]);
      put(os, rec.data.im()[i]);
    }
  } else {
    RN_CHECK(!rec.data.is_complex(), "write_frame: RD/RAD record must be real");
    os.write(reinterpret_cast<const char*>(rec.data.re()),
             static_cast<std::streamsize>(n * sizeof(double)));
  }

  put(os, static_cast<uint32_t>(rec.scene.targets.size()));
  for (const Target& t : rec.scene.targets) {
    put(os, t.range_m);
    put(os, t.velocity_mps);
    put(os, t.azimuth_deg);
    put(os, t.amplitude);
    put(os, static_cast<int64_t>(t.class_id));
  }
  if (!os) throw IoError("failed writing frame record: " + file.string());
}

FrameRecord read_frame(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw IoError("cannot open frame record: " + file.string());
  RN_CHECK(get<uint32_t>(is) == kMagic, "frame record: bad magic");
  RN_CHECK(get<uint32_t>(is) == kVersion, "frame record: unknown version");

  FrameRecord rec;
  rec.kind = static_cast<RecordKind>(get<uint32_t>(is));
  rec.scene.frame_id = get<int64_t>(is);
  const uint32_t ndim = get<uint32_t>(is);
  Shape s(ndim);
  for (auto& d : s) d = get<int64_t>(is);

  const int64_t n = shape_numel(s);
  if (rec.kind == RecordKind::Adc) {
    rec.data = Tensor::zeros(s, Dtype::Complex128);
    for (int64_t i = 0; i < n; ++i) {
      rec.data.re()[i] = get<double>(is);
      rec.data.im()[i] = get<double>(is);
    }
  } else {
    rec.data = Tensor::zeros(s, Dtype::Real64);
    is.read(reinterpret_cast<char*>(rec.data.re()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!is) throw IoError("dataset record truncated");
  }

  const uint32_t nt = get<uint32_t>(is);
  rec.scene.targets.resize(nt);
  for (auto& t : rec.scene.targets) {
    t.range_m = get<double>(is);
    t.velocity_mps = get<double>(is);
    t.azimuth_deg = get<double>(is);
    t.amplitude = get<double>(is);
    t.class_id = get<int64_t>(is);
  }
  return rec;
}

void write_manifest(const std::filesystem::path& file,
                    const DatasetManifest& m) {
  std::ofstream os(file);
  if (!os) throw IoError("cannot write manifest: " + file.string());
  os.precision(17);
  os << "format_version " << m.version << "\n";
  os << "preset " << m.preset << "\n";
  os << "kind " << m.kind << "\n";
  os << "frames " << m.frames << "\n";
  os << "seed " << m.seed << "\n";
  os << "window " << (m.window ? 1 : 0) << "\n";
  os << "shift " << (m.shift ? 1 : 0) << "\n";
  os << "n_tx " << m.radar.n_tx << "\n";
  os << "n_rx " << m.radar.n_rx << "\n";
  os << "tx_multiplexed " << (m.radar.tx_multiplexed ? 1 : 0) << "\n";
  os << "samples_per_chirp " << m.radar.samples_per_chirp << "\n";
  os << "chirps_per_frame " << m.radar.chirps_per_frame << "\n";
  os << "bandwidth_hz " << m.radar.bandwidth_hz << "\n";
  os << "chirp_duration_s " << m.radar.chirp_duration_s << "\n";
  os << "sample_rate_hz " << m.radar.sample_rate_hz << "\n";
  os << "carrier_hz " << m.radar.carrier_hz << "\n";
  os << "element_spacing_m " << m.radar.element_spacing_m << "\n";
  os << "noise_std " << m.radar.noise_std << "\n";
  if (!m.stats.mu.empty()) {
    os << "stats_mu";
    for (double v : m.stats.mu) os << " " << v;
    os << "\n";
    os << "stats_sigma";
    for (double v : m.stats.sigma) os << " " << v;
    os << "\n";
  }
  if (!os) throw IoError("failed writing manifest: " + file.string());
}

DatasetManifest read_manifest(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw IoError("cannot open manifest: " + file.string());
  DatasetManifest m;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "format_version") ls >> m.version;
    else if (key == "preset") ls >> m.preset;
    else if (key == "kind") ls >> m.kind;
    else if (key == "frames") ls >> m.frames;
    else if (key == "seed") ls >> m.seed;
    else if (key == "window") { int v; ls >> v; m.window = v != 0; }
    else if (key == "shift") { int v; ls >> v; m.shift = v != 0; }
    else if (key == "n_tx") ls >> m.radar.n_tx;
    else if (key == "n_rx") ls >> m.radar.n_rx;
    else if (key == "tx_multiplexed") { int v; ls >> v; m.radar.tx_multiplexed = v != 0; }
    else if (key == "samples_per_chirp") ls >> m.radar.samples_per_chirp;
    else if (key == "chirps_per_frame") ls >> m.radar.chirps_per_frame;
    else if (key == "bandwidth_hz") ls >> m.radar.bandwidth_hz;
    else if (key == "chirp_duration_s") ls >> m.radar.chirp_duration_s;
    else if (key == "sample_rate_hz") ls >> m.radar.sample_rate_hz;
    else if (key == "carrier_hz") ls >> m.radar.carrier_hz;
    else if (key == "element_spacing_m") ls >> m.radar.element_spacing_m;
    else if (key == "noise_std") ls >> m.radar.noise_std;
    else if (key == "stats_mu") {
      double v;
      while (ls >> v) m.stats.mu.push_back(v);
    } else if (key == "stats_sigma") {
      double v;
      while (ls >> v) m.stats.sigma.push_back(v);
    }
    // Unknown keys are ignored so the schema can grow.
  }
  RN_CHECK(!m.preset.empty(), "manifest: missing preset");
  return m;
}

SplitReader::SplitReader(const std::filesystem::path& dir) : dir_(dir) {
  const auto mf = dir / "manifest.txt";
  if (!std::filesystem::exists(mf))
    throw IoError("dataset split missing manifest: " + mf.string());
  manifest_ = read_manifest(mf);
}

FrameRecord SplitReader::frame(int64_t index) const {
  RN_CHECK(index >= 0 && index < manifest_.frames,
           "SplitReader: frame index out of range");
  return read_frame(dir_ / frame_filename(index));
}

}  // namespace radnet::sim
