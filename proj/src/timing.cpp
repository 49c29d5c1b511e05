// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/timing.hpp"

#include <json.hpp>

#include "care/errors.hpp"

namespace care {

namespace {

double boot_time_us(std::uint32_t n_frames, bool care_enabled,
                    std::uint32_t recovered_frames, const TimingParams& params) {
  double first = care_enabled
                     ? double(params.cycles_first_frame_with_care)
                     : double(params.cycles_first_frame_without_care);
  double rest_total = care_enabled
                          ? double(params.cycles_rest_frames_total_with_care)
                          : double(params.cycles_rest_frames_total_without_care);
  double rest_per_frame = rest_total / double(kReferenceFrameCount);
  double boot_cycles = first + double(n_frames - 1) * rest_per_frame;
  double recovery_us = double(recovered_frames) * params.reflash_us_per_frame;
  return (boot_cycles + recovery_us * params.freq_mhz) / params.freq_mhz;
}

}  // namespace

CostReport estimate(std::uint32_t n_frames, bool care_enabled,
                    std::uint32_t recovered_frames, const TimingParams& params) {
  if (n_frames == 0)
    throw CareError(ErrorCode::InvalidFrameCount, "cannot cost a zero-frame boot");
  if (params.freq_mhz <= 0.0)
    throw CareError(ErrorCode::InvalidArgument, "freq_mhz must be positive");
  if (recovered_frames > n_frames)
    throw CareError(ErrorCode::InvalidArgument,
                    "recovered " + std::to_string(recovered_frames) + " of " +
                        std::to_string(n_frames) + " frames");
  if (!care_enabled && recovered_frames > 0)
    throw CareError(ErrorCode::InvalidArgument,
                    "recovery needs the resilience engine enabled");

  CostReport report;
  report.n_frames = n_frames;
  report.care_enabled = care_enabled;
  report.recovered_frames = recovered_frames;

  double first = care_enabled
                     ? double(params.cycles_first_frame_with_care)
                     : double(params.cycles_first_frame_without_care);
  double rest_total = care_enabled
                          ? double(params.cycles_rest_frames_total_with_care)
                          : double(params.cycles_rest_frames_total_without_care);
  report.boot_cycles =
      first + double(n_frames - 1) * rest_total / double(kReferenceFrameCount);
  report.recovery_us = double(recovered_frames) * params.reflash_us_per_frame;
  report.total_cycles = report.boot_cycles + report.recovery_us * params.freq_mhz;
  report.time_us = report.total_cycles / params.freq_mhz;
  report.energy = params.energy_coeff * report.time_us;

  // The Table-3 style delta: time with the unit minus time without it, at
  // this frame count. A plain report on either side carries the same number.
  if (care_enabled) {
    report.delta_vs_baseline_us =
        report.time_us - boot_time_us(n_frames, false, 0, params);
  } else {
    report.delta_vs_baseline_us =
        boot_time_us(n_frames, true, 0, params) - report.time_us;
  }
  return report;
}

double overhead_percent(std::uint32_t n_frames, const TimingParams& params) {
  double without = boot_time_us(n_frames, false, 0, params);
  double with = boot_time_us(n_frames, true, 0, params);
  return (with - without) / without * 100.0;
}

TimingParams load_timing_params(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CareError(ErrorCode::ParseError, std::string("timing params: ") + e.what());
  }
  try {
    TimingParams params;
    params.freq_mhz = doc.at("freq_mhz").get<double>();
    params.cycles_first_frame_without_care =
        doc.at("cycles_first_frame").at("without_care").get<std::uint64_t>();
    params.cycles_first_frame_with_care =
        doc.at("cycles_first_frame").at("with_care").get<std::uint64_t>();
    params.cycles_rest_frames_total_without_care =
        doc.at("cycles_rest_frames_total").at("without_care").get<std::uint64_t>();
    params.cycles_rest_frames_total_with_care =
        doc.at("cycles_rest_frames_total").at("with_care").get<std::uint64_t>();
    params.reflash_us_per_frame = doc.at("reflash_us_per_frame").get<double>();
    params.energy_coeff = doc.at("energy_coeff").get<double>();
    return params;
  } catch (const nlohmann::json::exception& e) {
    throw CareError(ErrorCode::ParseError, std::string("timing params: ") + e.what());
  }
}

std::string save_timing_params(const TimingParams& params) {
  nlohmann::ordered_json doc;
  doc["freq_mhz"] = params.freq_mhz;
  doc["cycles_first_frame"] = {{"without_care", params.cycles_first_frame_without_care},
                               {"with_care", params.cycles_first_frame_with_care}};
  doc["cycles_rest_frames_total"] = {
      {"without_care", params.cycles_rest_frames_total_without_care},
      {"with_care", params.cycles_rest_frames_total_with_care}};
  doc["reflash_us_per_frame"] = params.reflash_us_per_frame;
  doc["energy_coeff"] = params.energy_coeff;
  return doc.dump(2) + "\n";
}

}  // namespace care
