// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "care/crypto.hpp"
#include "care/frame.hpp"

namespace care {

enum class FrameFailure : std::uint8_t {
  None,
  MalformedFrame,   // undecodable slot, or slot/manifest numbering mismatch
  DigestMismatch,   // integrity: payload hash differs from the golden digest
  TagMismatch,      // authenticity: HMAC over the header bindings differs
};

const char* frame_failure_name(FrameFailure failure);

struct FrameVerdict {
  std::uint32_t frame_number = 0;
  bool integrity_ok = false;
  bool authenticity_ok = false;
  FrameFailure failure = FrameFailure::None;

  // failure is None exactly when both checks passed and the header bindings
  // agree with the manifest, so it doubles as the frame's chain verdict.
  bool ok() const { return failure == FrameFailure::None; }
};

enum class StructuralFailure : std::uint8_t {
  None,
  ImageParseFailure,  // file header unreadable; nothing frame-level to report
  ManifestMismatch,   // identity, version, or frame count disagrees with ROM
};

const char* structural_failure_name(StructuralFailure failure);

struct ChainReport {
  StructuralFailure structural = StructuralFailure::None;
  std::vector<FrameVerdict> frames;
  // chain[0] is the trust anchor (always true); chain[i + 1] covers frame i.
  std::vector<bool> chain;
  std::vector<std::uint32_t> failing_frames;

  bool all_verified() const {
    return structural == StructuralFailure::None &&
           (chain.empty() || chain.back()) && failing_frames.empty();
  }
};

/// Verifies one decoded frame against its manifest entry. Both the digest and
/// the tag are always computed; a malformed binding (frame_number or offset or
/// payload_len differing from the entry) reports MalformedFrame. Throws
/// FrameNumberMismatch when called with an entry for a different frame.
FrameVerdict verify_frame(const Frame& frame, const ManifestEntry& entry,
                          const Key256& frame_key);

/// Walks every frame slot of a serialized image and folds the per-frame
/// results into the chain: the anchor is trusted, and each link holds only if
/// the previous link held and the frame passed both checks.
ChainReport verify_image(std::span<const std::uint8_t> image_bytes,
                         const GoldenManifest& manifest,
                         const DeviceIdentity& rom_identity,
                         const Key256& frame_key);

}  // namespace care
