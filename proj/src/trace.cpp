// Copyright 2026 The PLA Toolkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "pla/channel.hpp"
#include "pla/error.hpp"

namespace pla {
namespace {

constexpr std::string_view kTraceHeader = "snapshot_id,subcarrier_index,amplitude,phase_radians";

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::parse, "trace line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, const char* name) {
  field = trim(field);
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || field.empty()) {
    parse_error(line, std::string("malformed ") + name + " '" + std::string(field) + "'");
  }
  return value;
}

struct PendingSnapshot {
  std::uint64_t id = 0;
  std::vector<double> amplitudes;
  std::vector<double> phases;
  std::vector<bool> seen;
  std::size_t filled = 0;
  std::size_t first_line = 0;
};

}  // namespace

TraceStore read_trace_csv(std::istream& in, std::string path_label) {
  TraceSource source;
  source.path = std::move(path_label);
  std::vector<ChannelSnapshot> snapshots;
  std::size_t L = 0;
  bool header_seen = false;
  bool have_pending = false;
  PendingSnapshot pending;
  std::size_t line_no = 0;

  auto flush = [&](std::size_t at_line) {
    if (!have_pending) return;
    if (L == 0) {
      // First snapshot fixes L: indices must be exactly 0..max.
      L = pending.seen.size();
      if (L < 2) parse_error(at_line, "snapshot " + std::to_string(pending.id) + " has fewer than two subcarriers");
    }
    if (pending.seen.size() != L || pending.filled != L) {
      parse_error(at_line, "snapshot " + std::to_string(pending.id) + " (starting at line " +
                               std::to_string(pending.first_line) + ") does not cover subcarriers 0.." +
                               std::to_string(L - 1));
    }
    snapshots.emplace_back(std::move(pending.amplitudes), std::move(pending.phases));
    pending = PendingSnapshot{};
    have_pending = false;
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto meta = trim(line.substr(1));
      constexpr std::string_view key = "bandwidth=";
      if (meta.starts_with(key)) source.bandwidth = std::string(trim(meta.substr(key.size())));
      continue;
    }
    if (!header_seen) {
      if (line != kTraceHeader) {
        parse_error(line_no, "expected header '" + std::string(kTraceHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    std::string_view fields[4];
    std::size_t n = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (n == 4) parse_error(line_no, "expected 4 fields");
        fields[n++] = line.substr(start, i - start);
        start = i + 1;
      }
    }
    if (n != 4) parse_error(line_no, "expected 4 fields");

    const auto id = parse_field<std::uint64_t>(fields[0], line_no, "snapshot_id");
    const auto sub = parse_field<std::uint64_t>(fields[1], line_no, "subcarrier_index");
    const auto amp = parse_field<double>(fields[2], line_no, "amplitude");
    const auto phase = parse_field<double>(fields[3], line_no, "phase_radians");

    if (!std::isfinite(amp) || amp <= 0.0) parse_error(line_no, "amplitude must be positive");
    if (!is_wrapped(phase)) parse_error(line_no, "phase out of range (-pi, pi]");

    if (have_pending && id != pending.id) {
      if (id < pending.id) parse_error(line_no, "snapshot_id is not monotone");
      flush(line_no);
    }
    if (!have_pending) {
      have_pending = true;
      pending.id = id;
      pending.first_line = line_no;
      if (L != 0) {
        pending.amplitudes.assign(L, 0.0);
        pending.phases.assign(L, 0.0);
        pending.seen.assign(L, false);
      }
    }
    if (L != 0 && sub >= L) {
      parse_error(line_no, "subcarrier_index " + std::to_string(sub) + " outside [0, " +
                               std::to_string(L - 1) + "]");
    }
    if (sub >= pending.seen.size()) {
      if (sub > 4096) parse_error(line_no, "subcarrier_index too large");
      pending.amplitudes.resize(sub + 1, 0.0);
      pending.phases.resize(sub + 1, 0.0);
      pending.seen.resize(sub + 1, false);
    }
    if (pending.seen[sub]) parse_error(line_no, "duplicate subcarrier_index " + std::to_string(sub));
    pending.seen[sub] = true;
    pending.amplitudes[sub] = amp;
    pending.phases[sub] = phase;
    ++pending.filled;
  }
  if (!header_seen) parse_error(line_no + 1, "missing header row");
  flush(line_no);
  if (snapshots.empty()) parse_error(line_no + 1, "trace holds no snapshots");
  source.subcarriers = L;
  return TraceStore(std::move(snapshots), std::move(source));
}

TraceStore read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open trace file '" + path + "'");
  return read_trace_csv(in, path);
}

void write_trace_csv(std::ostream& out, std::span<const ChannelSnapshot> snapshots,
                     std::string_view bandwidth) {
  if (!bandwidth.empty()) out << "# bandwidth=" << bandwidth << '\n';
  out << kTraceHeader << '\n';
  char buf[128];
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    const auto& snap = snapshots[s];
    for (std::size_t l = 0; l < snap.size(); ++l) {
      std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g,%.17g\n", s, l, snap.amplitudes()[l],
                    snap.phases()[l]);
      out << buf;
    }
  }
}

}  // namespace pla
