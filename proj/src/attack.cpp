// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/attack.hpp"

#include <json.hpp>

#include "care/bytes.hpp"
#include "care/errors.hpp"
#include "care/report.hpp"
#include "care/rng.hpp"

namespace care {

const char* header_field_name(HeaderField field) {
  switch (field) {
    case HeaderField::Magic: return "magic";
    case HeaderField::FormatVersion: return "format_version";
    case HeaderField::FrameNumber: return "frame_number";
    case HeaderField::Offset: return "offset";
    case HeaderField::PayloadLen: return "payload_len";
    case HeaderField::Flags: return "flags";
    case HeaderField::TagPrefix: return "tag_prefix";
  }
  return "unknown";
}

HeaderField header_field_from_name(const std::string& name) {
  if (name == "magic") return HeaderField::Magic;
  if (name == "format_version") return HeaderField::FormatVersion;
  if (name == "frame_number") return HeaderField::FrameNumber;
  if (name == "offset") return HeaderField::Offset;
  if (name == "payload_len") return HeaderField::PayloadLen;
  if (name == "flags") return HeaderField::Flags;
  if (name == "tag_prefix") return HeaderField::TagPrefix;
  throw CareError(ErrorCode::ParseError, "unknown header field '" + name + "'");
}

namespace {

struct FieldLayout {
  std::size_t offset;
  std::size_t width;
};

FieldLayout header_field_layout(HeaderField field) {
  switch (field) {
    case HeaderField::Magic: return {0, 2};
    case HeaderField::FormatVersion: return {2, 2};
    case HeaderField::FrameNumber: return {4, 4};
    case HeaderField::Offset: return {8, 4};
    case HeaderField::PayloadLen: return {12, 2};
    case HeaderField::Flags: return {14, 2};
    case HeaderField::TagPrefix: return {24, 8};
  }
  throw CareError(ErrorCode::InvalidArgument, "bad header field");
}

struct PlannedWrite {
  std::uint64_t address;
  std::vector<std::uint8_t> bytes;
};

std::uint64_t slot_address(const Device& device, std::uint32_t frame) {
  std::uint64_t addr =
      device.flash_base() + kImageHeaderSize + std::uint64_t(frame) * kFrameSize;
  if (addr + kFrameSize > device.flash_base() + device.flash_size())
    throw CareError(ErrorCode::OutOfRange,
                    "frame " + std::to_string(frame) + " outside flash");
  return addr;
}

// Attacks read current bytes through the same source they write with, so a
// rule that cuts off reads would surface here too.
std::vector<PlannedWrite> plan(Device& device, const AttackSpec& attack,
                               AccessSource source) {
  std::vector<PlannedWrite> writes;

  if (const auto* flip = std::get_if<BitFlip>(&attack.variant)) {
    if (flip->byte_offset >= kFrameSize)
      throw CareError(ErrorCode::OutOfRange,
                      "byte offset " + std::to_string(flip->byte_offset));
    if (flip->bit > 7)
      throw CareError(ErrorCode::InvalidArgument, "bit index " + std::to_string(flip->bit));
    std::uint64_t addr = slot_address(device, flip->frame) + flip->byte_offset;
    auto current = device.read(source, addr, 1);
    writes.push_back({addr, {static_cast<std::uint8_t>(current[0] ^ (1u << flip->bit))}});
  } else if (const auto* replace = std::get_if<PayloadReplace>(&attack.variant)) {
    std::uint64_t addr = slot_address(device, replace->frame) + kHeaderSize;
    writes.push_back({addr, {replace->payload.begin(), replace->payload.end()}});
  } else if (const auto* tamper = std::get_if<HeaderTamper>(&attack.variant)) {
    FieldLayout layout = header_field_layout(tamper->field);
    std::uint64_t addr = slot_address(device, tamper->frame) + layout.offset;
    std::vector<std::uint8_t> bytes(layout.width);
    for (std::size_t i = 0; i < layout.width; ++i)
      bytes[i] = static_cast<std::uint8_t>(tamper->value >> (8 * i));
    writes.push_back({addr, std::move(bytes)});
  } else if (const auto* relocate = std::get_if<Relocate>(&attack.variant)) {
    std::uint64_t src = slot_address(device, relocate->source_frame);
    std::uint64_t dst = slot_address(device, relocate->destination_frame);
    auto src_bytes = device.read(source, src, kFrameSize);
    auto dst_bytes = device.read(source, dst, kFrameSize);
    writes.push_back({dst, std::move(src_bytes)});
    writes.push_back({src, std::move(dst_bytes)});
  } else if (const auto* dma = std::get_if<DmaWrite>(&attack.variant)) {
    if (dma->bytes.empty())
      throw CareError(ErrorCode::InvalidArgument, "dma write with no bytes");
    if (dma->address < device.flash_base() ||
        dma->address + dma->bytes.size() > device.flash_base() + device.flash_size())
      throw CareError(ErrorCode::OutOfRange,
                      "dma write at " + std::to_string(dma->address));
    writes.push_back({dma->address, dma->bytes});
  }
  return writes;
}

}  // namespace

MutationRecord inject(Device& device, const AttackSpec& attack) {
  AccessSource source = std::holds_alternative<DmaWrite>(attack.variant)
                            ? AccessSource::Dma
                            : AccessSource::UntrustedCode;

  MutationRecord record;
  record.applied = attack;
  record.pre_digest = device.flash_digest();

  auto writes = plan(device, attack, source);

  // All-or-nothing: a burst that faults anywhere lands nowhere.
  for (const PlannedWrite& w : writes) {
    if (!device.evaluate_access(source, AccessKind::Write, w.address, w.bytes.size())) {
      device.check_access(source, AccessKind::Write, w.address, w.bytes.size());
      record.blocked = true;
      record.post_digest = record.pre_digest;
      return record;
    }
  }

  for (const PlannedWrite& w : writes) device.write(source, w.address, w.bytes);
  record.post_digest = device.flash_digest();
  return record;
}

std::vector<AttackSpec> random_campaign(std::uint32_t frame_count,
                                        std::uint64_t seed,
                                        std::uint32_t n_attacks) {
  if (n_attacks == 0)
    throw CareError(ErrorCode::InvalidArgument, "campaign with zero attacks");
  if (frame_count == 0)
    throw CareError(ErrorCode::InvalidArgument, "campaign for a zero-frame image");

  Xoshiro256StarStar rng(seed);
  std::uint64_t image_size = kImageHeaderSize + std::uint64_t(frame_count) * kFrameSize;

  std::vector<AttackSpec> attacks;
  attacks.reserve(n_attacks);
  for (std::uint32_t i = 0; i < n_attacks; ++i) {
    switch (rng.bounded(5)) {
      case 0: {
        BitFlip flip;
        flip.frame = static_cast<std::uint32_t>(rng.bounded(frame_count));
        flip.byte_offset = static_cast<std::uint32_t>(rng.bounded(kFrameSize));
        flip.bit = static_cast<std::uint8_t>(rng.bounded(8));
        attacks.push_back({flip});
        break;
      }
      case 1: {
        PayloadReplace replace;
        replace.frame = static_cast<std::uint32_t>(rng.bounded(frame_count));
        rng.fill(replace.payload);
        attacks.push_back({replace});
        break;
      }
      case 2: {
        HeaderTamper tamper;
        tamper.frame = static_cast<std::uint32_t>(rng.bounded(frame_count));
        tamper.field = static_cast<HeaderField>(rng.bounded(7));
        tamper.value = rng.next();
        attacks.push_back({tamper});
        break;
      }
      case 3: {
        Relocate relocate;
        relocate.source_frame = static_cast<std::uint32_t>(rng.bounded(frame_count));
        relocate.destination_frame =
            frame_count == 1
                ? 0
                : static_cast<std::uint32_t>(
                      (relocate.source_frame + 1 + rng.bounded(frame_count - 1)) %
                      frame_count);
        attacks.push_back({relocate});
        break;
      }
      default: {
        DmaWrite dma;
        std::uint64_t len = 1 + rng.bounded(16);
        dma.address = kFlashBase + rng.bounded(image_size - len + 1);
        dma.bytes.resize(len);
        rng.fill(dma.bytes);
        attacks.push_back({dma});
        break;
      }
    }
  }
  return attacks;
}

// The JSON shape of one attack is shared by campaign files and report
// envelopes; attack_spec_to_json/attack_spec_from_json (declared in
// report.hpp) are the single source of truth for it.

nlohmann::ordered_json attack_spec_to_json(const AttackSpec& attack) {
  nlohmann::ordered_json entry;
  if (const auto* flip = std::get_if<BitFlip>(&attack.variant)) {
    entry["variant"] = "bit_flip";
    entry["frame"] = flip->frame;
    entry["byte_offset"] = flip->byte_offset;
    entry["bit"] = flip->bit;
  } else if (const auto* replace = std::get_if<PayloadReplace>(&attack.variant)) {
    entry["variant"] = "payload_replace";
    entry["frame"] = replace->frame;
    entry["payload_hex"] = to_hex(replace->payload);
  } else if (const auto* tamper = std::get_if<HeaderTamper>(&attack.variant)) {
    entry["variant"] = "header_tamper";
    entry["frame"] = tamper->frame;
    entry["field"] = header_field_name(tamper->field);
    entry["value"] = tamper->value;
  } else if (const auto* relocate = std::get_if<Relocate>(&attack.variant)) {
    entry["variant"] = "relocate";
    entry["src_frame"] = relocate->source_frame;
    entry["dst_frame"] = relocate->destination_frame;
  } else if (const auto* dma = std::get_if<DmaWrite>(&attack.variant)) {
    entry["variant"] = "dma_write";
    entry["address"] = dma->address;
    entry["bytes_hex"] = to_hex(dma->bytes);
  }
  return entry;
}

AttackSpec attack_spec_from_json(const nlohmann::ordered_json& entry) {
  std::string variant = entry.at("variant").get<std::string>();
  if (variant == "bit_flip") {
    BitFlip flip;
    flip.frame = entry.at("frame").get<std::uint32_t>();
    flip.byte_offset = entry.at("byte_offset").get<std::uint32_t>();
    flip.bit = entry.at("bit").get<std::uint8_t>();
    return {flip};
  }
  if (variant == "payload_replace") {
    PayloadReplace replace;
    replace.frame = entry.at("frame").get<std::uint32_t>();
    auto payload = from_hex(entry.at("payload_hex").get<std::string>());
    if (payload.size() != kPayloadSize)
      throw CareError(ErrorCode::BadLength, "payload_hex must cover a full payload");
    std::copy(payload.begin(), payload.end(), replace.payload.begin());
    return {replace};
  }
  if (variant == "header_tamper") {
    HeaderTamper tamper;
    tamper.frame = entry.at("frame").get<std::uint32_t>();
    tamper.field = header_field_from_name(entry.at("field").get<std::string>());
    tamper.value = entry.at("value").get<std::uint64_t>();
    return {tamper};
  }
  if (variant == "relocate") {
    Relocate relocate;
    relocate.source_frame = entry.at("src_frame").get<std::uint32_t>();
    relocate.destination_frame = entry.at("dst_frame").get<std::uint32_t>();
    return {relocate};
  }
  if (variant == "dma_write") {
    DmaWrite dma;
    dma.address = entry.at("address").get<std::uint64_t>();
    dma.bytes = from_hex(entry.at("bytes_hex").get<std::string>());
    return {dma};
  }
  throw CareError(ErrorCode::ParseError, "unknown attack variant '" + variant + "'");
}

std::string serialize_campaign(const std::vector<AttackSpec>& attacks,
                               std::uint64_t seed, std::uint32_t frame_count) {
  nlohmann::ordered_json doc;
  doc["format"] = "care-campaign/1";
  doc["seed"] = seed;
  doc["frame_count"] = frame_count;
  doc["attacks"] = nlohmann::ordered_json::array();
  for (const AttackSpec& attack : attacks)
    doc["attacks"].push_back(attack_spec_to_json(attack));
  return doc.dump(2) + "\n";
}

CampaignFile parse_campaign(const std::string& json_text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CareError(ErrorCode::ParseError, std::string("campaign: ") + e.what());
  }

  try {
    if (doc.at("format").get<std::string>() != "care-campaign/1")
      throw CareError(ErrorCode::ParseError, "unknown campaign format");

    CampaignFile campaign;
    campaign.seed = doc.at("seed").get<std::uint64_t>();
    campaign.frame_count = doc.at("frame_count").get<std::uint32_t>();
    for (const auto& entry : doc.at("attacks"))
      campaign.attacks.push_back(attack_spec_from_json(entry));
    return campaign;
  } catch (const nlohmann::json::exception& e) {
    throw CareError(ErrorCode::ParseError, std::string("campaign: ") + e.what());
  }
}

}  // namespace care
