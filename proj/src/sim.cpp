// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/sim.hpp"

#include "care/errors.hpp"

namespace care {

SimulationResult simulate_image(std::span<const std::uint8_t> image_bytes,
                                const GoldenManifest& manifest, const Key256& master,
                                const SimulationOptions& options) {
  FirmwareImage image = parse_image(image_bytes);
  if (manifest.entries.size() != image.frames.size())
    throw CareError(ErrorCode::FrameCountMismatch,
                    "manifest covers " + std::to_string(manifest.entries.size()) +
                        " frames, image has " + std::to_string(image.frames.size()));
  for (std::size_t i = 0; i < image.frames.size(); ++i) {
    const Frame& frame = image.frames[i];
    const ManifestEntry& entry = manifest.entries[i];
    if (entry.frame_number != frame.header.frame_number ||
        entry.offset != frame.header.offset ||
        entry.payload_len != frame.header.payload_len ||
        !(entry.golden_digest == sha256_digest(frame.payload)))
      throw CareError(ErrorCode::FrameCountMismatch,
                      "manifest entry " + std::to_string(i) +
                          " does not describe the image frame");
  }

  RomContents rom;
  rom.identity = image.identity;
  rom.master_key = master;
  rom.manifest = manifest;
  rom.recovery.present.assign(image.frames.size(), true);
  rom.recovery.payloads.reserve(image.frames.size());
  for (const Frame& frame : image.frames) rom.recovery.payloads.push_back(frame.payload);

  Device device(rom, image_bytes);

  SimulationResult result;
  result.mutations.reserve(options.attacks.size());
  for (const AttackSpec& attack : options.attacks)
    result.mutations.push_back(inject(device, attack));

  BootConfig config;
  config.care_enabled = options.care_enabled;
  config.timing_params = options.timing_params;
  result.report = boot(device, options.trigger, config);
  return result;
}

}  // namespace care
