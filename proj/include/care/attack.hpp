// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "care/crypto.hpp"
#include "care/device.hpp"
#include "care/frame.hpp"

namespace care {

// Everything the modeled adversary can do to writable memory. Frame-scoped
// attacks act through the UntrustedCode source; DmaWrite acts through Dma.
// Whether they land is the PMP's call, not the harness's.

struct BitFlip {
  std::uint32_t frame = 0;
  std::uint32_t byte_offset = 0;  // within the 1024-byte slot
  std::uint8_t bit = 0;           // 0..7

  bool operator==(const BitFlip&) const = default;
};

struct PayloadReplace {
  std::uint32_t frame = 0;
  std::array<std::uint8_t, kPayloadSize> payload{};

  bool operator==(const PayloadReplace&) const = default;
};

enum class HeaderField : std::uint8_t {
  Magic,
  FormatVersion,
  FrameNumber,
  Offset,
  PayloadLen,
  Flags,
  TagPrefix,  // first eight tag bytes
};

const char* header_field_name(HeaderField field);
HeaderField header_field_from_name(const std::string& name);

struct HeaderTamper {
  std::uint32_t frame = 0;
  HeaderField field = HeaderField::FrameNumber;
  std::uint64_t value = 0;  // masked to the field width on injection

  bool operator==(const HeaderTamper&) const = default;
};

struct Relocate {
  std::uint32_t source_frame = 0;
  std::uint32_t destination_frame = 0;

  bool operator==(const Relocate&) const = default;
};

struct DmaWrite {
  std::uint64_t address = 0;
  std::vector<std::uint8_t> bytes;

  bool operator==(const DmaWrite&) const = default;
};

using AttackVariant =
    std::variant<BitFlip, PayloadReplace, HeaderTamper, Relocate, DmaWrite>;

struct AttackSpec {
  AttackVariant variant;

  bool operator==(const AttackSpec&) const = default;
};

struct MutationRecord {
  AttackSpec applied;
  Digest256 pre_digest{};   // whole flash, before
  Digest256 post_digest{};  // whole flash, after
  bool blocked = false;

  bool changed() const { return !(pre_digest == post_digest); }
};

/// Applies one attack to the device. The PMP verdict for every byte the
/// attack would touch is evaluated first; if any write is denied the whole
/// attack is blocked and flash stays untouched (a real bus fault aborts the
/// burst). Throws OutOfRange for coordinates outside flash.
MutationRecord inject(Device& device, const AttackSpec& attack);

/// Deterministic campaign: `n_attacks` specs drawn uniformly over the five
/// variants with valid coordinates for a frame_count-frame image. Identical
/// across platforms for a given seed. Throws InvalidArgument for n_attacks
/// == 0 or frame_count == 0.
std::vector<AttackSpec> random_campaign(std::uint32_t frame_count,
                                        std::uint64_t seed,
                                        std::uint32_t n_attacks);

/// Campaign files: one JSON document listing the attacks plus the seed and
/// frame count they were generated for.
std::string serialize_campaign(const std::vector<AttackSpec>& attacks,
                               std::uint64_t seed, std::uint32_t frame_count);

struct CampaignFile {
  std::uint64_t seed = 0;
  std::uint32_t frame_count = 0;
  std::vector<AttackSpec> attacks;
};

CampaignFile parse_campaign(const std::string& json_text);

}  // namespace care
