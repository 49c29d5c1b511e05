// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/verify.hpp"

#include "care/errors.hpp"

namespace care {

const char* frame_failure_name(FrameFailure failure) {
  switch (failure) {
    case FrameFailure::None: return "none";
    case FrameFailure::MalformedFrame: return "malformed_frame";
    case FrameFailure::DigestMismatch: return "digest_mismatch";
    case FrameFailure::TagMismatch: return "tag_mismatch";
  }
  return "unknown";
}

const char* structural_failure_name(StructuralFailure failure) {
  switch (failure) {
    case StructuralFailure::None: return "none";
    case StructuralFailure::ImageParseFailure: return "image_parse_failure";
    case StructuralFailure::ManifestMismatch: return "manifest_mismatch";
  }
  return "unknown";
}

FrameVerdict verify_frame(const Frame& frame, const ManifestEntry& entry,
                          const Key256& frame_key) {
  if (frame.header.frame_number != entry.frame_number)
    throw CareError(ErrorCode::FrameNumberMismatch,
                    "frame " + std::to_string(frame.header.frame_number) +
                        " checked against manifest entry " +
                        std::to_string(entry.frame_number));

  FrameVerdict verdict;
  verdict.frame_number = entry.frame_number;

  // Both checks always run; an attacker learns nothing about which one
  // tripped from timing.
  Digest256 digest = sha256_digest(frame.payload);
  verdict.integrity_ok = constant_time_eq(digest.bytes, entry.golden_digest.bytes);

  auto message = frame_tag_message(digest, frame.header.frame_number,
                                   frame.header.offset, frame.header.payload_len);
  Tag256 expected = hmac_tag(frame_key, message);
  verdict.authenticity_ok =
      constant_time_eq(expected.bytes, frame.header.tag.bytes);

  bool binding_ok = frame.header.offset == entry.offset &&
                    frame.header.payload_len == entry.payload_len;
  if (!binding_ok)
    verdict.failure = FrameFailure::MalformedFrame;
  else if (!verdict.integrity_ok)
    verdict.failure = FrameFailure::DigestMismatch;
  else if (!verdict.authenticity_ok)
    verdict.failure = FrameFailure::TagMismatch;
  return verdict;
}

ChainReport verify_image(std::span<const std::uint8_t> image_bytes,
                         const GoldenManifest& manifest,
                         const DeviceIdentity& rom_identity,
                         const Key256& frame_key) {
  ChainReport report;

  ImageHeaderInfo info;
  try {
    info = parse_image_header(image_bytes);
  } catch (const CareError&) {
    report.structural = StructuralFailure::ImageParseFailure;
    return report;
  }
  if (image_bytes.size() !=
      kImageHeaderSize + std::size_t(info.frame_count) * kFrameSize) {
    report.structural = StructuralFailure::ImageParseFailure;
    return report;
  }
  if (info.identity != rom_identity ||
      info.frame_count != manifest.entries.size()) {
    report.structural = StructuralFailure::ManifestMismatch;
    return report;
  }

  std::size_t n = manifest.entries.size();
  report.chain.reserve(n + 1);
  report.chain.push_back(true);  // the ROM anchor, trusted by construction
  for (std::size_t i = 0; i < n; ++i) {
    const ManifestEntry& entry = manifest.entries[i];
    FrameVerdict verdict;
    verdict.frame_number = entry.frame_number;
    verdict.failure = FrameFailure::MalformedFrame;

    bool decoded = false;
    Frame frame;
    try {
      frame = decode_frame(frame_slot(image_bytes, static_cast<std::uint32_t>(i)));
      decoded = true;
    } catch (const CareError&) {
      // verdict stays MalformedFrame with both checks false
    }
    if (decoded) {
      if (frame.header.frame_number != entry.frame_number) {
        // A frame parked in the wrong slot; checking it against this slot's
        // entry would throw, and it cannot be trusted either way.
      } else {
        verdict = verify_frame(frame, entry, frame_key);
      }
    }

    report.frames.push_back(verdict);
    report.chain.push_back(report.chain.back() && verdict.ok());
    if (!verdict.ok()) report.failing_frames.push_back(entry.frame_number);
  }
  return report;
}

}  // namespace care
