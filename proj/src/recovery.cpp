// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/recovery.hpp"

#include <algorithm>

#include "care/errors.hpp"

namespace care {

RecoveryReport recover(Device& device, const RomContents& rom,
                       std::span<const std::uint32_t> failing_frames,
                       const Key256& frame_key, const TimingParams& params) {
  if (device.locked())
    throw CareError(ErrorCode::AlreadyLocked, "recovery already ran this boot");

  std::vector<std::uint32_t> frames(failing_frames.begin(), failing_frames.end());
  std::sort(frames.begin(), frames.end());
  frames.erase(std::unique(frames.begin(), frames.end()), frames.end());

  // Check the whole worklist before touching flash; a missing golden copy
  // must not leave the image half repaired.
  for (std::uint32_t f : frames) {
    if (f >= rom.manifest.entries.size())
      throw CareError(ErrorCode::OutOfRange,
                      "frame " + std::to_string(f) + " outside the manifest");
    if (!rom.recovery.present[f])
      throw CareError(ErrorCode::MissingRecoveryData,
                      "no golden payload for frame " + std::to_string(f));
  }

  for (std::uint32_t f : frames) {
    const ManifestEntry& entry = rom.manifest.entries[f];
    Frame frame;
    frame.header.frame_number = entry.frame_number;
    frame.header.offset = entry.offset;
    frame.header.payload_len = entry.payload_len;
    frame.payload = rom.recovery.payloads[f];
    frame.header.tag = compute_frame_tag(frame_key, frame);

    std::uint64_t slot = kFlashBase + kImageHeaderSize + std::uint64_t(f) * kFrameSize;
    device.erase_flash(AccessSource::SecureBoot, slot, kFrameSize);
    auto bytes = encode_frame(frame);
    device.write(AccessSource::SecureBoot, slot, bytes);
  }

  device.lock_memory();

  RecoveryReport report;
  report.recovered_frames = frames;
  report.bytes_reflashed = std::uint64_t(frames.size()) * kPayloadSize;
  report.reflash_time_us = double(frames.size()) * params.reflash_us_per_frame;
  report.locked = device.locked();

  auto flash = device.read(AccessSource::SecureBoot, kFlashBase, device.flash_size());
  report.post_recovery_chain =
      verify_image(flash, rom.manifest, rom.identity, frame_key);
  return report;
}

}  // namespace care
