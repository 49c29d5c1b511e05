// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "care/attack.hpp"
#include "care/boot.hpp"

namespace care {

struct SimulationOptions {
  std::vector<AttackSpec> attacks;  // injected before the boot, in order
  bool care_enabled = true;
  BootTrigger trigger = BootTrigger::PowerOn;
  TimingParams timing_params{};
};

struct SimulationResult {
  std::vector<MutationRecord> mutations;
  BootReport report;
};

/// Provisions a device from golden artifacts (image bytes as flash, the
/// image's payloads as ROM recovery data, the manifest as the ROM golden
/// manifest), injects the attacks, and boots. The image must parse strictly
/// and agree with the manifest entry by entry; anything else throws, since a
/// broken golden input is an operator error, not an attack.
SimulationResult simulate_image(std::span<const std::uint8_t> image_bytes,
                                const GoldenManifest& manifest, const Key256& master,
                                const SimulationOptions& options);

}  // namespace care
