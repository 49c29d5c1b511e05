// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "care/device.hpp"
#include "care/recovery.hpp"
#include "care/timing.hpp"
#include "care/verify.hpp"

namespace care {

// How the boot was entered. All three behave identically; devices in the
// field differ only in which pin or event woke them up.
enum class BootTrigger : std::uint8_t { PowerOn, HardwareReset, GpioPin7 };

const char* boot_trigger_name(BootTrigger trigger);
BootTrigger boot_trigger_from_name(const std::string& name);

enum class BootStage : std::uint8_t {
  PowerOn,
  FsblInit,
  PmpApplied,
  Bootstrapping,  // carries the frame index
  RecoveryTriggered,
  ReVerifying,
  BootOk,
  SecureHalt,  // carries the reason
};

enum class HaltReason : std::uint8_t {
  VerificationFailed,  // chain failed and no resilience engine to invoke
  MissingRecoveryData,
  PostRecoveryVerificationFailed,
  ImageParseFailure,
  ManifestMismatch,
};

const char* halt_reason_name(HaltReason reason);

struct BootState {
  BootStage stage = BootStage::PowerOn;
  std::uint32_t frame_index = 0;        // Bootstrapping only
  HaltReason reason = HaltReason::VerificationFailed;  // SecureHalt only

  bool operator==(const BootState&) const = default;
};

std::string boot_state_name(const BootState& state);

struct BootConfig {
  bool care_enabled = true;
  // Recorded in the report for provenance; the simulator models none of the
  // core hardening features behind it.
  bool secure_ibex_flag = false;
  TimingParams timing_params{};
};

struct BootReport {
  BootTrigger trigger = BootTrigger::PowerOn;
  std::vector<BootState> state_trace;
  ChainReport chain;
  std::optional<RecoveryReport> recovery;
  CostReport cost;
  bool boot_ok = false;
  std::optional<HaltReason> halt_reason;
  bool secure_ibex_flag = false;
};

/// Runs the secure-boot state machine against the device's current flash.
/// With care_enabled = false the chain is still evaluated (the simulator has
/// to surface corruption either way) but a failure halts immediately: no
/// recovery, no lockdown, baseline cost accounting. All failures surface as
/// SecureHalt in the report, never as exceptions.
BootReport boot(Device& device, BootTrigger trigger, const BootConfig& config);

}  // namespace care
