// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "care/crypto.hpp"
#include "care/identity.hpp"

namespace care {

// Frame wire format, 1024 bytes total, all scalars little-endian:
//
//   offset  size  field
//        0     2  magic            (0xC0DE)
//        2     2  format_version   (1)
//        4     4  frame_number     (0-based)
//        8     4  offset           (flash byte address, frame_number * 968)
//       12     2  payload_len      (1..=968)
//       14     2  flags            (reserved, must be zero)
//       16     8  reserved         (must be zero)
//       24    32  tag              (HMAC-SHA256)
//       56   968  payload          (zero padded beyond payload_len)
//
// The tag covers sha256(payload) || frame_number || offset || payload_len so
// that relocating a frame or rewriting its header fields breaks authenticity.

inline constexpr std::uint16_t kFrameMagic = 0xC0DE;
inline constexpr std::uint16_t kFormatVersion = 1;
inline constexpr std::size_t kHeaderSize = 56;
inline constexpr std::size_t kPayloadSize = 968;
inline constexpr std::size_t kFrameSize = 1024;
inline constexpr std::size_t kImageHeaderSize = 64;
inline constexpr std::array<std::uint8_t, 8> kImageMagic = {'C', 'A', 'R', 'E',
                                                            'I', 'M', 'G', '1'};
inline constexpr std::array<std::uint8_t, 8> kManifestMagic = {'C', 'A', 'R', 'E',
                                                               'M', 'A', 'N', '1'};
inline constexpr std::size_t kManifestEntrySize = 44;
inline constexpr std::string_view kFrameSigningPurpose = "frame-signing";

struct FrameHeader {
  std::uint16_t magic = kFrameMagic;
  std::uint16_t format_version = kFormatVersion;
  std::uint32_t frame_number = 0;
  std::uint32_t offset = 0;
  std::uint16_t payload_len = 0;
  std::uint16_t flags = 0;
  Tag256 tag{};

  bool operator==(const FrameHeader&) const = default;
};

struct Frame {
  FrameHeader header;
  std::array<std::uint8_t, kPayloadSize> payload{};

  bool operator==(const Frame&) const = default;
};

struct FirmwareImage {
  DeviceIdentity identity;
  std::uint16_t format_version = kFormatVersion;
  std::vector<Frame> frames;
};

struct ManifestEntry {
  std::uint32_t frame_number = 0;
  std::uint32_t offset = 0;
  std::uint16_t payload_len = 0;
  Digest256 golden_digest{};

  bool operator==(const ManifestEntry&) const = default;
};

struct GoldenManifest {
  std::vector<ManifestEntry> entries;

  bool operator==(const GoldenManifest&) const = default;
};

struct SplitPayload {
  std::array<std::uint8_t, kPayloadSize> payload{};
  std::uint16_t payload_len = 0;
};

struct BuildResult {
  FirmwareImage image;
  GoldenManifest manifest;
};

/// Splits firmware into 968-byte payloads; the last one is zero padded and
/// payload_len records the true byte count. Throws EmptyFirmware.
std::vector<SplitPayload> split_payloads(std::span<const std::uint8_t> firmware);

/// Builds the signed image and the matching golden manifest. The frame key is
/// derive_key(master, identity, "frame-signing"); one key for the whole image.
BuildResult build_image(std::span<const std::uint8_t> firmware,
                        const DeviceIdentity& identity, const Key256& master);

/// The byte string covered by the frame tag.
std::vector<std::uint8_t> frame_tag_message(const Digest256& payload_digest,
                                            std::uint32_t frame_number,
                                            std::uint32_t offset,
                                            std::uint16_t payload_len);

Tag256 compute_frame_tag(const Key256& frame_key, const Frame& frame);

std::array<std::uint8_t, kFrameSize> encode_frame(const Frame& frame);

/// Parses exactly 1024 bytes. Throws BadLength, BadMagic, UnsupportedVersion,
/// or ReservedFieldSet; the message names the failing field.
Frame decode_frame(std::span<const std::uint8_t> bytes);

struct ImageHeaderInfo {
  std::uint16_t format_version = 0;
  std::uint32_t frame_count = 0;
  DeviceIdentity identity;
};

/// Validates and reads the 64-byte image file header only.
ImageHeaderInfo parse_image_header(std::span<const std::uint8_t> bytes);

/// The 1024-byte slot of frame `index` inside an image file.
std::span<const std::uint8_t> frame_slot(std::span<const std::uint8_t> image_bytes,
                                         std::uint32_t index);

std::vector<std::uint8_t> serialize_image(const FirmwareImage& image);
FirmwareImage parse_image(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_manifest(const GoldenManifest& manifest);
GoldenManifest parse_manifest(std::span<const std::uint8_t> bytes);

/// Inverse of build_image: concatenates payload[0..payload_len) per frame.
/// Throws GapInFrames when frame numbering is not contiguous from zero.
std::vector<std::uint8_t> reassemble(const FirmwareImage& image);

}  // namespace care
