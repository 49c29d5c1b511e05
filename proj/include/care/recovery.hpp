// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "care/device.hpp"
#include "care/timing.hpp"
#include "care/verify.hpp"

namespace care {

struct RecoveryReport {
  std::vector<std::uint32_t> recovered_frames;
  std::uint64_t bytes_reflashed = 0;
  double reflash_time_us = 0.0;
  bool locked = false;
  ChainReport post_recovery_chain;
};

/// Re-flashes every frame in `failing_frames` from the golden payloads held
/// in ROM, locks memory, and re-verifies the whole image. All recovery data
/// is checked for presence before any flash byte changes, so a frame with no
/// golden copy aborts cleanly (MissingRecoveryData) instead of leaving the
/// image half repaired. Throws AlreadyLocked when flash is no longer writable
/// by the boot path, i.e. recovery ran once already.
RecoveryReport recover(Device& device, const RomContents& rom,
                       std::span<const std::uint32_t> failing_frames,
                       const Key256& frame_key, const TimingParams& params = {});

}  // namespace care
