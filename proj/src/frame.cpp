// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/frame.hpp"

#include <algorithm>
#include <cstring>

#include "care/bytes.hpp"
#include "care/errors.hpp"

namespace care {

std::vector<SplitPayload> split_payloads(std::span<const std::uint8_t> firmware) {
  if (firmware.empty())
    throw CareError(ErrorCode::EmptyFirmware, "firmware input is empty");

  std::vector<SplitPayload> out;
  out.reserve((firmware.size() + kPayloadSize - 1) / kPayloadSize);
  for (std::size_t pos = 0; pos < firmware.size(); pos += kPayloadSize) {
    SplitPayload sp;
    std::size_t take = std::min(kPayloadSize, firmware.size() - pos);
    std::memcpy(sp.payload.data(), firmware.data() + pos, take);
    sp.payload_len = static_cast<std::uint16_t>(take);
    out.push_back(sp);
  }
  return out;
}

std::vector<std::uint8_t> frame_tag_message(const Digest256& payload_digest,
                                            std::uint32_t frame_number,
                                            std::uint32_t offset,
                                            std::uint16_t payload_len) {
  std::vector<std::uint8_t> msg(32 + 4 + 4 + 2);
  std::span<std::uint8_t> s(msg);
  std::memcpy(msg.data(), payload_digest.bytes.data(), 32);
  put_u32(s, 32, frame_number);
  put_u32(s, 36, offset);
  put_u16(s, 40, payload_len);
  return msg;
}

Tag256 compute_frame_tag(const Key256& frame_key, const Frame& frame) {
  Digest256 digest = sha256_digest(frame.payload);
  auto msg = frame_tag_message(digest, frame.header.frame_number,
                               frame.header.offset, frame.header.payload_len);
  return hmac_tag(frame_key, msg);
}

BuildResult build_image(std::span<const std::uint8_t> firmware,
                        const DeviceIdentity& identity, const Key256& master) {
  Key256 frame_key = derive_key(master, identity, kFrameSigningPurpose);
  auto payloads = split_payloads(firmware);

  BuildResult result;
  result.image.identity = identity;
  result.image.frames.reserve(payloads.size());
  result.manifest.entries.reserve(payloads.size());

  for (std::size_t i = 0; i < payloads.size(); ++i) {
    Frame frame;
    frame.header.frame_number = static_cast<std::uint32_t>(i);
    frame.header.offset = static_cast<std::uint32_t>(i * kPayloadSize);
    frame.header.payload_len = payloads[i].payload_len;
    frame.payload = payloads[i].payload;
    frame.header.tag = compute_frame_tag(frame_key, frame);
    result.image.frames.push_back(frame);

    ManifestEntry entry;
    entry.frame_number = frame.header.frame_number;
    entry.offset = frame.header.offset;
    entry.payload_len = frame.header.payload_len;
    entry.golden_digest = sha256_digest(frame.payload);
    result.manifest.entries.push_back(entry);
  }
  return result;
}

std::array<std::uint8_t, kFrameSize> encode_frame(const Frame& frame) {
  std::array<std::uint8_t, kFrameSize> out{};
  std::span<std::uint8_t> s(out);
  put_u16(s, 0, frame.header.magic);
  put_u16(s, 2, frame.header.format_version);
  put_u32(s, 4, frame.header.frame_number);
  put_u32(s, 8, frame.header.offset);
  put_u16(s, 12, frame.header.payload_len);
  put_u16(s, 14, frame.header.flags);
  // bytes 16..24 stay zero (reserved)
  std::memcpy(out.data() + 24, frame.header.tag.bytes.data(), 32);
  std::memcpy(out.data() + kHeaderSize, frame.payload.data(), kPayloadSize);
  return out;
}

Frame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kFrameSize)
    throw CareError(ErrorCode::BadLength,
                    "frame is " + std::to_string(bytes.size()) + " bytes, expected " +
                        std::to_string(kFrameSize));

  Frame frame;
  frame.header.magic = get_u16(bytes, 0);
  if (frame.header.magic != kFrameMagic)
    throw CareError(ErrorCode::BadMagic, "frame magic");
  frame.header.format_version = get_u16(bytes, 2);
  if (frame.header.format_version != kFormatVersion)
    throw CareError(ErrorCode::UnsupportedVersion,
                    "frame format_version " + std::to_string(frame.header.format_version));
  frame.header.frame_number = get_u32(bytes, 4);
  frame.header.offset = get_u32(bytes, 8);
  frame.header.payload_len = get_u16(bytes, 12);
  if (frame.header.payload_len == 0 || frame.header.payload_len > kPayloadSize)
    throw CareError(ErrorCode::BadLength,
                    "payload_len " + std::to_string(frame.header.payload_len));
  frame.header.flags = get_u16(bytes, 14);
  if (frame.header.flags != 0)
    throw CareError(ErrorCode::ReservedFieldSet, "flags");
  for (std::size_t i = 16; i < 24; ++i)
    if (bytes[i] != 0) throw CareError(ErrorCode::ReservedFieldSet, "reserved");
  std::memcpy(frame.header.tag.bytes.data(), bytes.data() + 24, 32);
  std::memcpy(frame.payload.data(), bytes.data() + kHeaderSize, kPayloadSize);
  return frame;
}

ImageHeaderInfo parse_image_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kImageHeaderSize)
    throw CareError(ErrorCode::TruncatedFile,
                    "image header needs " + std::to_string(kImageHeaderSize) +
                        " bytes, got " + std::to_string(bytes.size()));
  if (!std::equal(kImageMagic.begin(), kImageMagic.end(), bytes.begin()))
    throw CareError(ErrorCode::BadMagic, "image magic");

  ImageHeaderInfo info;
  info.format_version = get_u16(bytes, 8);
  if (info.format_version != kFormatVersion)
    throw CareError(ErrorCode::UnsupportedVersion,
                    "image format_version " + std::to_string(info.format_version));
  info.frame_count = get_u32(bytes, 10);
  if (info.frame_count == 0)
    throw CareError(ErrorCode::InvalidFrameCount, "image frame_count is zero");
  info.identity = decode_identity(bytes.data() + 14);
  for (std::size_t i = 40; i < kImageHeaderSize; ++i)
    if (bytes[i] != 0) throw CareError(ErrorCode::ReservedFieldSet, "image reserved");
  return info;
}

std::span<const std::uint8_t> frame_slot(std::span<const std::uint8_t> image_bytes,
                                         std::uint32_t index) {
  std::size_t start = kImageHeaderSize + std::size_t(index) * kFrameSize;
  if (start + kFrameSize > image_bytes.size())
    throw CareError(ErrorCode::OutOfRange,
                    "frame slot " + std::to_string(index) + " past end of image");
  return image_bytes.subspan(start, kFrameSize);
}

std::vector<std::uint8_t> serialize_image(const FirmwareImage& image) {
  std::vector<std::uint8_t> out(kImageHeaderSize +
                                image.frames.size() * kFrameSize);
  std::span<std::uint8_t> s(out);
  std::copy(kImageMagic.begin(), kImageMagic.end(), out.begin());
  put_u16(s, 8, image.format_version);
  put_u32(s, 10, static_cast<std::uint32_t>(image.frames.size()));
  auto encoded = encode_identity(image.identity);
  std::memcpy(out.data() + 14, encoded.data(), encoded.size());
  // bytes 40..64 stay zero (reserved)
  for (std::size_t i = 0; i < image.frames.size(); ++i) {
    auto bytes = encode_frame(image.frames[i]);
    std::memcpy(out.data() + kImageHeaderSize + i * kFrameSize, bytes.data(),
                kFrameSize);
  }
  return out;
}

FirmwareImage parse_image(std::span<const std::uint8_t> bytes) {
  ImageHeaderInfo info = parse_image_header(bytes);
  std::size_t expected = kImageHeaderSize + std::size_t(info.frame_count) * kFrameSize;
  if (bytes.size() < expected)
    throw CareError(ErrorCode::TruncatedFile,
                    "image declares " + std::to_string(info.frame_count) +
                        " frames but holds " + std::to_string(bytes.size()) + " bytes");
  if (bytes.size() > expected)
    throw CareError(ErrorCode::FrameCountMismatch,
                    "image has trailing bytes past frame " +
                        std::to_string(info.frame_count - 1));

  FirmwareImage image;
  image.format_version = info.format_version;
  image.identity = info.identity;
  image.frames.reserve(info.frame_count);
  for (std::uint32_t i = 0; i < info.frame_count; ++i) {
    Frame frame = decode_frame(frame_slot(bytes, i));
    if (frame.header.frame_number != i)
      throw CareError(ErrorCode::GapInFrames,
                      "slot " + std::to_string(i) + " holds frame " +
                          std::to_string(frame.header.frame_number));
    image.frames.push_back(frame);
  }
  return image;
}

std::vector<std::uint8_t> serialize_manifest(const GoldenManifest& manifest) {
  std::vector<std::uint8_t> out(12 + manifest.entries.size() * kManifestEntrySize);
  std::span<std::uint8_t> s(out);
  std::copy(kManifestMagic.begin(), kManifestMagic.end(), out.begin());
  put_u32(s, 8, static_cast<std::uint32_t>(manifest.entries.size()));
  for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
    const ManifestEntry& e = manifest.entries[i];
    std::size_t at = 12 + i * kManifestEntrySize;
    put_u32(s, at, e.frame_number);
    put_u32(s, at + 4, e.offset);
    put_u16(s, at + 8, e.payload_len);
    // two pad bytes stay zero
    std::memcpy(out.data() + at + 12, e.golden_digest.bytes.data(), 32);
  }
  return out;
}

GoldenManifest parse_manifest(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12)
    throw CareError(ErrorCode::TruncatedFile, "manifest header");
  if (!std::equal(kManifestMagic.begin(), kManifestMagic.end(), bytes.begin()))
    throw CareError(ErrorCode::BadMagic, "manifest magic");
  std::uint32_t count = get_u32(bytes, 8);
  if (bytes.size() != 12 + std::size_t(count) * kManifestEntrySize)
    throw CareError(ErrorCode::TruncatedFile,
                    "manifest declares " + std::to_string(count) + " entries but holds " +
                        std::to_string(bytes.size()) + " bytes");

  GoldenManifest manifest;
  manifest.entries.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    std::size_t at = 12 + std::size_t(i) * kManifestEntrySize;
    ManifestEntry e;
    e.frame_number = get_u32(bytes, at);
    e.offset = get_u32(bytes, at + 4);
    e.payload_len = get_u16(bytes, at + 8);
    if (get_u16(bytes, at + 10) != 0)
      throw CareError(ErrorCode::ReservedFieldSet, "manifest entry padding");
    std::memcpy(e.golden_digest.bytes.data(), bytes.data() + at + 12, 32);
    manifest.entries.push_back(e);
  }
  return manifest;
}

std::vector<std::uint8_t> reassemble(const FirmwareImage& image) {
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < image.frames.size(); ++i) {
    const Frame& frame = image.frames[i];
    if (frame.header.frame_number != i)
      throw CareError(ErrorCode::GapInFrames,
                      "frame numbering breaks at index " + std::to_string(i));
    out.insert(out.end(), frame.payload.begin(),
               frame.payload.begin() + frame.header.payload_len);
  }
  return out;
}

}  // namespace care
