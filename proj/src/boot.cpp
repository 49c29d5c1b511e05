// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/boot.hpp"

#include "care/errors.hpp"

namespace care {

const char* boot_trigger_name(BootTrigger trigger) {
  switch (trigger) {
    case BootTrigger::PowerOn: return "power_on";
    case BootTrigger::HardwareReset: return "hardware_reset";
    case BootTrigger::GpioPin7: return "gpio_pin7";
  }
  return "unknown";
}

BootTrigger boot_trigger_from_name(const std::string& name) {
  if (name == "power_on") return BootTrigger::PowerOn;
  if (name == "hardware_reset") return BootTrigger::HardwareReset;
  if (name == "gpio_pin7") return BootTrigger::GpioPin7;
  throw CareError(ErrorCode::ParseError, "unknown boot trigger '" + name + "'");
}

const char* halt_reason_name(HaltReason reason) {
  switch (reason) {
    case HaltReason::VerificationFailed: return "verification_failed";
    case HaltReason::MissingRecoveryData: return "missing_recovery_data";
    case HaltReason::PostRecoveryVerificationFailed:
      return "post_recovery_verification_failed";
    case HaltReason::ImageParseFailure: return "image_parse_failure";
    case HaltReason::ManifestMismatch: return "manifest_mismatch";
  }
  return "unknown";
}

std::string boot_state_name(const BootState& state) {
  switch (state.stage) {
    case BootStage::PowerOn: return "power_on";
    case BootStage::FsblInit: return "fsbl_init";
    case BootStage::PmpApplied: return "pmp_applied";
    case BootStage::Bootstrapping:
      return "bootstrapping:" + std::to_string(state.frame_index);
    case BootStage::RecoveryTriggered: return "recovery_triggered";
    case BootStage::ReVerifying: return "re_verifying";
    case BootStage::BootOk: return "boot_ok";
    case BootStage::SecureHalt:
      return std::string("secure_halt:") + halt_reason_name(state.reason);
  }
  return "unknown";
}

namespace {

void push_stage(BootReport& report, BootStage stage) {
  report.state_trace.push_back({stage, 0, HaltReason::VerificationFailed});
}

void push_frame(BootReport& report, std::uint32_t index) {
  report.state_trace.push_back(
      {BootStage::Bootstrapping, index, HaltReason::VerificationFailed});
}

BootReport halt(BootReport report, HaltReason reason) {
  report.state_trace.push_back({BootStage::SecureHalt, 0, reason});
  report.boot_ok = false;
  report.halt_reason = reason;
  return report;
}

}  // namespace

BootReport boot(Device& device, BootTrigger trigger, const BootConfig& config) {
  BootReport report;
  report.trigger = trigger;
  report.secure_ibex_flag = config.secure_ibex_flag;
  push_stage(report, BootStage::PowerOn);

  // FSBL: pull identity, master key, and golden data out of secure ROM, then
  // derive the per-device frame key.
  auto rom_bytes =
      device.rom_read(AccessSource::SecureBoot, device.rom_base(), device.rom_size());
  RomContents rom = parse_rom(rom_bytes);
  Key256 frame_key = derive_key(rom.master_key, rom.identity, kFrameSigningPurpose);
  push_stage(report, BootStage::FsblInit);

  // Wall off ROM from everything that is not the boot path before any
  // untrusted byte is looked at.
  std::uint64_t rom_limit = device.rom_base() + device.rom_size();
  PmpRule rom_guard[] = {
      {device.rom_base(), rom_limit, AccessSource::UntrustedCode, false, false, false, true},
      {device.rom_base(), rom_limit, AccessSource::Dma, false, false, false, true},
  };
  device.apply_pmp_rules(rom_guard);
  push_stage(report, BootStage::PmpApplied);

  std::uint32_t n_frames = static_cast<std::uint32_t>(rom.manifest.entries.size());

  if (device.flash_size() == 0) {
    report.cost = estimate(n_frames, config.care_enabled, 0, config.timing_params);
    report.chain.structural = StructuralFailure::ImageParseFailure;
    return halt(std::move(report), HaltReason::ImageParseFailure);
  }

  auto flash = device.read(AccessSource::SecureBoot, device.flash_base(),
                           device.flash_size());
  report.chain = verify_image(flash, rom.manifest, rom.identity, frame_key);

  if (report.chain.structural != StructuralFailure::None) {
    // Nothing frame-shaped to recover; the resilience engine works on
    // frames, not on files that fail to parse or match the wrong device.
    report.cost = estimate(n_frames, config.care_enabled, 0, config.timing_params);
    return halt(std::move(report),
                report.chain.structural == StructuralFailure::ImageParseFailure
                    ? HaltReason::ImageParseFailure
                    : HaltReason::ManifestMismatch);
  }

  for (std::uint32_t i = 0; i < n_frames; ++i) push_frame(report, i);

  if (report.chain.all_verified()) {
    if (config.care_enabled) device.lock_memory();
    report.cost = estimate(n_frames, config.care_enabled, 0, config.timing_params);
    push_stage(report, BootStage::BootOk);
    report.boot_ok = true;
    return report;
  }

  if (!config.care_enabled) {
    report.cost = estimate(n_frames, false, 0, config.timing_params);
    return halt(std::move(report), HaltReason::VerificationFailed);
  }

  push_stage(report, BootStage::RecoveryTriggered);
  RecoveryReport recovery;
  try {
    recovery = recover(device, rom, report.chain.failing_frames, frame_key,
                       config.timing_params);
  } catch (const CareError& e) {
    if (e.code() == ErrorCode::MissingRecoveryData) {
      report.cost = estimate(n_frames, true, 0, config.timing_params);
      return halt(std::move(report), HaltReason::MissingRecoveryData);
    }
    throw;
  }
  push_stage(report, BootStage::ReVerifying);

  std::uint32_t recovered =
      static_cast<std::uint32_t>(recovery.recovered_frames.size());
  bool verified = recovery.post_recovery_chain.all_verified();
  report.recovery = std::move(recovery);
  report.cost = estimate(n_frames, true, recovered, config.timing_params);

  if (!verified)
    return halt(std::move(report), HaltReason::PostRecoveryVerificationFailed);

  push_stage(report, BootStage::BootOk);
  report.boot_ok = true;
  return report;
}

}  // namespace care
