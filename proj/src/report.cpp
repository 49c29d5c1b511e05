// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/report.hpp"

#include "care/bytes.hpp"
#include "care/version.hpp"

namespace care {

Json chain_report_to_json(const ChainReport& report) {
  Json doc;
  if (report.structural != StructuralFailure::None)
    doc["verdict"] = "structural_failure";
  else if (report.failing_frames.empty())
    doc["verdict"] = "all_verified";
  else
    doc["verdict"] = "frames_failed";
  doc["structural"] = structural_failure_name(report.structural);
  doc["frames"] = Json::array();
  for (const FrameVerdict& verdict : report.frames) {
    doc["frames"].push_back({{"frame_number", verdict.frame_number},
                             {"integrity_ok", verdict.integrity_ok},
                             {"authenticity_ok", verdict.authenticity_ok},
                             {"failure", frame_failure_name(verdict.failure)}});
  }
  doc["chain"] = report.chain;
  doc["failing_frames"] = report.failing_frames;
  return doc;
}

Json recovery_report_to_json(const RecoveryReport& report) {
  Json doc;
  doc["recovered_frames"] = report.recovered_frames;
  doc["bytes_reflashed"] = report.bytes_reflashed;
  doc["reflash_time_us"] = report.reflash_time_us;
  doc["locked"] = report.locked;
  doc["post_recovery_chain"] = chain_report_to_json(report.post_recovery_chain);
  return doc;
}

Json cost_report_to_json(const CostReport& report) {
  Json doc;
  doc["n_frames"] = report.n_frames;
  doc["care_enabled"] = report.care_enabled;
  doc["recovered_frames"] = report.recovered_frames;
  doc["boot_cycles"] = report.boot_cycles;
  doc["recovery_us"] = report.recovery_us;
  doc["total_cycles"] = report.total_cycles;
  doc["time_us"] = report.time_us;
  doc["energy"] = report.energy;
  doc["delta_vs_baseline_us"] = report.delta_vs_baseline_us;
  return doc;
}

Json boot_report_to_json(const BootReport& report) {
  Json doc;
  doc["trigger"] = boot_trigger_name(report.trigger);
  doc["outcome"] = report.boot_ok ? "boot_ok" : "secure_halt";
  if (report.halt_reason) doc["halt_reason"] = halt_reason_name(*report.halt_reason);
  doc["state_trace"] = Json::array();
  for (const BootState& state : report.state_trace)
    doc["state_trace"].push_back(boot_state_name(state));
  doc["chain"] = chain_report_to_json(report.chain);
  doc["recovery"] =
      report.recovery ? recovery_report_to_json(*report.recovery) : Json(nullptr);
  doc["cost"] = cost_report_to_json(report.cost);
  doc["secure_ibex_flag"] = report.secure_ibex_flag;
  return doc;
}

Json mutation_record_to_json(const MutationRecord& record) {
  Json doc;
  doc["attack"] = attack_spec_to_json(record.applied);
  doc["pre_digest"] = to_hex(record.pre_digest.bytes);
  doc["post_digest"] = to_hex(record.post_digest.bytes);
  doc["blocked"] = record.blocked;
  doc["changed"] = record.changed();
  return doc;
}

Json make_envelope(const std::string& command, const ReportInputs& inputs,
                   Json payload) {
  Json doc;
  doc["tool"] = kToolName;
  doc["tool_version"] = kToolVersion;
  doc["command"] = command;

  Json in;
  if (!inputs.paths.empty()) {
    Json paths;
    for (const auto& [label, path] : inputs.paths) paths[label] = path;
    in["paths"] = std::move(paths);
  }
  if (!inputs.digests.empty()) {
    Json digests;
    for (const auto& [label, hex] : inputs.digests) digests[label] = hex;
    in["sha256"] = std::move(digests);
  }
  if (inputs.seed) in["seed"] = *inputs.seed;
  if (inputs.care_enabled) in["care"] = *inputs.care_enabled;
  if (inputs.trigger) in["trigger"] = *inputs.trigger;
  if (!inputs.corrupt_frames.empty()) in["corrupt_frames"] = inputs.corrupt_frames;
  if (!inputs.attacks.empty()) {
    in["attacks"] = Json::array();
    for (const MutationRecord& record : inputs.attacks)
      in["attacks"].push_back(mutation_record_to_json(record));
  }
  doc["inputs"] = std::move(in);
  doc["report"] = std::move(payload);
  return doc;
}

std::string to_report_text(const Json& document) { return document.dump(2) + "\n"; }

}  // namespace care
