// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/device.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "care/bytes.hpp"
#include "care/errors.hpp"

namespace care {

const char* access_source_name(AccessSource source) {
  switch (source) {
    case AccessSource::SecureBoot: return "secure_boot";
    case AccessSource::UntrustedCode: return "untrusted_code";
    case AccessSource::Dma: return "dma";
  }
  return "unknown";
}

const char* access_kind_name(AccessKind kind) {
  switch (kind) {
    case AccessKind::Read: return "read";
    case AccessKind::Write: return "write";
    case AccessKind::Execute: return "execute";
  }
  return "unknown";
}

namespace {

AccessSource access_source_from_name(const std::string& name) {
  if (name == "secure_boot") return AccessSource::SecureBoot;
  if (name == "untrusted_code") return AccessSource::UntrustedCode;
  if (name == "dma") return AccessSource::Dma;
  throw CareError(ErrorCode::ParseError, "unknown access source '" + name + "'");
}

bool ranges_intersect(std::uint64_t a_base, std::uint64_t a_len,
                      std::uint64_t b_base, std::uint64_t b_limit) {
  return a_base < b_limit && b_base < a_base + a_len;
}

bool range_contained(std::uint64_t a_base, std::uint64_t a_len,
                     std::uint64_t b_base, std::uint64_t b_limit) {
  return a_base >= b_base && a_base + a_len <= b_limit;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CareError(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  return data;
}

void write_file_bytes(const std::filesystem::path& path,
                      std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CareError(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw CareError(ErrorCode::IoError, "short write to " + path.string());
}

}  // namespace

std::vector<std::uint8_t> serialize_rom(const RomContents& rom) {
  if (rom.recovery.present.size() != rom.manifest.entries.size() ||
      rom.recovery.payloads.size() != rom.manifest.entries.size())
    throw CareError(ErrorCode::FrameCountMismatch,
                    "recovery data covers " + std::to_string(rom.recovery.present.size()) +
                        " frames, manifest " + std::to_string(rom.manifest.entries.size()));

  auto manifest_blob = serialize_manifest(rom.manifest);
  std::size_t n = rom.manifest.entries.size();
  std::vector<std::uint8_t> out(74 + manifest_blob.size() + 4 + n * (1 + kPayloadSize));
  std::span<std::uint8_t> s(out);

  std::copy(kRomMagic.begin(), kRomMagic.end(), out.begin());
  std::copy(kFsblMarker.begin(), kFsblMarker.end(), out.begin() + 8);
  auto encoded = encode_identity(rom.identity);
  std::memcpy(out.data() + 16, encoded.data(), encoded.size());
  std::memcpy(out.data() + kRomMasterKeyOffset, rom.master_key.bytes.data(), 32);
  std::memcpy(out.data() + 74, manifest_blob.data(), manifest_blob.size());

  std::size_t at = 74 + manifest_blob.size();
  put_u32(s, at, static_cast<std::uint32_t>(n));
  at += 4;
  for (std::size_t i = 0; i < n; ++i) {
    out[at] = rom.recovery.present[i] ? 1 : 0;
    std::memcpy(out.data() + at + 1, rom.recovery.payloads[i].data(), kPayloadSize);
    at += 1 + kPayloadSize;
  }
  return out;
}

RomContents parse_rom(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 74 + 12)
    throw CareError(ErrorCode::TruncatedFile, "rom blob header");
  if (!std::equal(kRomMagic.begin(), kRomMagic.end(), bytes.begin()))
    throw CareError(ErrorCode::BadMagic, "rom magic");
  if (!std::equal(kFsblMarker.begin(), kFsblMarker.end(), bytes.begin() + 8))
    throw CareError(ErrorCode::BadMagic, "fsbl marker");

  RomContents rom;
  rom.identity = decode_identity(bytes.data() + 16);
  std::memcpy(rom.master_key.bytes.data(), bytes.data() + kRomMasterKeyOffset, 32);
  rom.master_key.role = KeyRole::Master;

  std::uint32_t manifest_count = get_u32(bytes, 74 + 8);
  std::size_t manifest_size = 12 + std::size_t(manifest_count) * kManifestEntrySize;
  if (74 + manifest_size > bytes.size())
    throw CareError(ErrorCode::TruncatedFile, "rom manifest");
  rom.manifest = parse_manifest(bytes.subspan(74, manifest_size));

  std::size_t at = 74 + manifest_size;
  if (at + 4 > bytes.size())
    throw CareError(ErrorCode::TruncatedFile, "rom recovery header");
  std::uint32_t recovery_count = get_u32(bytes, at);
  at += 4;
  if (recovery_count != manifest_count)
    throw CareError(ErrorCode::FrameCountMismatch,
                    "rom holds " + std::to_string(recovery_count) +
                        " recovery slots for " + std::to_string(manifest_count) +
                        " manifest entries");
  if (bytes.size() != at + std::size_t(recovery_count) * (1 + kPayloadSize))
    throw CareError(ErrorCode::TruncatedFile, "rom recovery payloads");

  rom.recovery.present.reserve(recovery_count);
  rom.recovery.payloads.reserve(recovery_count);
  for (std::uint32_t i = 0; i < recovery_count; ++i) {
    rom.recovery.present.push_back(bytes[at] != 0);
    std::array<std::uint8_t, kPayloadSize> payload;
    std::memcpy(payload.data(), bytes.data() + at + 1, kPayloadSize);
    rom.recovery.payloads.push_back(payload);
    at += 1 + kPayloadSize;
  }
  return rom;
}

Device::Device(const RomContents& rom, std::span<const std::uint8_t> image_bytes,
               std::size_t ram_size)
    : rom_(serialize_rom(rom)),
      ram_(ram_size, 0),
      flash_(image_bytes.begin(), image_bytes.end()) {}

std::optional<Device::Region> Device::region_of(std::uint64_t address,
                                                std::uint64_t length) const {
  const Region regions[] = {
      {kRomBase, rom_.size(), false},
      {kRamBase, ram_.size(), true},
      {kFlashBase, flash_.size(), true},
  };
  for (const Region& r : regions) {
    if (address >= r.base && address + length <= r.base + r.size) return r;
  }
  return std::nullopt;
}

bool Device::decide(AccessSource source, AccessKind kind, std::uint64_t address,
                    std::uint64_t length,
                    std::optional<std::size_t>& rule_index) const {
  rule_index = std::nullopt;

  // Mask ROM: there is no write path, whatever the rules say.
  if (kind == AccessKind::Write &&
      ranges_intersect(address, length, kRomBase, kRomBase + rom_.size()))
    return false;

  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const PmpRule& rule = rules_[i];
    if (rule.source != source) continue;
    if (!ranges_intersect(address, length, rule.base, rule.limit)) continue;
    rule_index = i;
    // A partial overlap never grants access: the burst strays outside the
    // granting rule's window.
    if (!range_contained(address, length, rule.base, rule.limit)) return false;
    switch (kind) {
      case AccessKind::Read: return rule.allow_read;
      case AccessKind::Write: return rule.allow_write;
      case AccessKind::Execute: return rule.allow_execute;
    }
  }

  // Default policy: ROM answers only to the secure boot path; everything
  // else is open until a rule says otherwise.
  if (source != AccessSource::SecureBoot &&
      ranges_intersect(address, length, kRomBase, kRomBase + rom_.size()))
    return false;
  return true;
}

bool Device::check_access(AccessSource source, AccessKind kind,
                          std::uint64_t address, std::uint64_t length) {
  if (length == 0)
    throw CareError(ErrorCode::InvalidArgument, "zero-length access");
  std::optional<std::size_t> rule_index;
  bool allowed = decide(source, kind, address, length, rule_index);
  access_log_.push_back({source, kind, address, length, allowed, rule_index});
  return allowed;
}

bool Device::evaluate_access(AccessSource source, AccessKind kind,
                             std::uint64_t address, std::uint64_t length) const {
  if (length == 0)
    throw CareError(ErrorCode::InvalidArgument, "zero-length access");
  std::optional<std::size_t> rule_index;
  return decide(source, kind, address, length, rule_index);
}

std::vector<std::uint8_t> Device::read(AccessSource source, std::uint64_t address,
                                       std::size_t length) {
  if (!check_access(source, AccessKind::Read, address, length))
    throw CareError(ErrorCode::AccessDenied,
                    std::string(access_source_name(source)) + " read at " +
                        std::to_string(address));
  auto region = region_of(address, length);
  if (!region)
    throw CareError(ErrorCode::OutOfRange,
                    "read of " + std::to_string(length) + " at " + std::to_string(address));

  const std::uint8_t* backing = nullptr;
  if (region->base == kRomBase) backing = rom_.data();
  else if (region->base == kRamBase) backing = ram_.data();
  else backing = flash_.data();
  std::size_t offset = address - region->base;
  return {backing + offset, backing + offset + length};
}

void Device::write(AccessSource source, std::uint64_t address,
                   std::span<const std::uint8_t> data) {
  if (!check_access(source, AccessKind::Write, address, data.size()))
    throw CareError(ErrorCode::AccessDenied,
                    std::string(access_source_name(source)) + " write at " +
                        std::to_string(address));
  auto region = region_of(address, data.size());
  if (!region)
    throw CareError(ErrorCode::OutOfRange,
                    "write of " + std::to_string(data.size()) + " at " +
                        std::to_string(address));

  std::uint8_t* backing = region->base == kRamBase ? ram_.data() : flash_.data();
  std::memcpy(backing + (address - region->base), data.data(), data.size());
}

std::vector<std::uint8_t> Device::rom_read(AccessSource source, std::uint64_t address,
                                           std::size_t length) {
  if (address < kRomBase || address + length > kRomBase + rom_.size())
    throw CareError(ErrorCode::OutOfRange,
                    "rom read of " + std::to_string(length) + " at " +
                        std::to_string(address));
  return read(source, address, length);
}

void Device::erase_flash(AccessSource source, std::uint64_t address,
                         std::size_t length) {
  if (!check_access(source, AccessKind::Write, address, length))
    throw CareError(ErrorCode::AccessDenied,
                    std::string(access_source_name(source)) + " erase at " +
                        std::to_string(address));
  if (address < kFlashBase || address + length > kFlashBase + flash_.size())
    throw CareError(ErrorCode::OutOfRange,
                    "erase of " + std::to_string(length) + " at " +
                        std::to_string(address));
  // NOR-style erase: bits float back to one.
  std::memset(flash_.data() + (address - kFlashBase), 0xFF, length);
}

void Device::apply_pmp_rules(std::span<const PmpRule> rules) {
  std::vector<PmpRule> accepted;
  for (const PmpRule& rule : rules) {
    if (rule.base >= rule.limit)
      throw CareError(ErrorCode::InvalidArgument, "pmp rule base >= limit");
    bool duplicate = false;
    for (const PmpRule& existing : rules_) {
      if (existing == rule) {
        duplicate = true;
        break;
      }
      if (existing.locked && existing.source == rule.source &&
          ranges_intersect(rule.base, rule.limit - rule.base, existing.base,
                           existing.limit))
        throw CareError(ErrorCode::LockedRuleConflict,
                        "rule [" + std::to_string(rule.base) + ", " +
                            std::to_string(rule.limit) + ") shadows a locked rule");
    }
    if (!duplicate) accepted.push_back(rule);
  }
  if (rules_.size() + accepted.size() > kMaxPmpRules)
    throw CareError(ErrorCode::TooManyRules,
                    "rule table would hold " +
                        std::to_string(rules_.size() + accepted.size()) + " entries");
  rules_.insert(rules_.end(), accepted.begin(), accepted.end());
}

Digest256 Device::flash_digest() const { return sha256_digest(flash_); }

std::vector<PmpRule> Device::lockdown_rules() const {
  std::uint64_t flash_limit = kFlashBase + flash_.size();
  std::uint64_t ram_limit = kRamBase + ram_.size();
  return {
      {kFlashBase, flash_limit, AccessSource::UntrustedCode, true, false, true, true},
      {kFlashBase, flash_limit, AccessSource::Dma, true, false, false, true},
      {kRamBase, ram_limit, AccessSource::UntrustedCode, true, true, false, true},
      {kRamBase, ram_limit, AccessSource::Dma, true, true, false, true},
  };
}

void Device::lock_memory() { apply_pmp_rules(lockdown_rules()); }

bool Device::locked() const {
  for (const PmpRule& wanted : lockdown_rules()) {
    if (std::find(rules_.begin(), rules_.end(), wanted) == rules_.end())
      return false;
  }
  return true;
}

void Device::save_snapshot(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_file_bytes(dir / "rom.bin", rom_);
  write_file_bytes(dir / "ram.bin", ram_);
  write_file_bytes(dir / "flash.bin", flash_);

  nlohmann::ordered_json doc;
  doc["rules"] = nlohmann::ordered_json::array();
  for (const PmpRule& rule : rules_) {
    doc["rules"].push_back({{"base", rule.base},
                            {"limit", rule.limit},
                            {"source", access_source_name(rule.source)},
                            {"allow_read", rule.allow_read},
                            {"allow_write", rule.allow_write},
                            {"allow_execute", rule.allow_execute},
                            {"locked", rule.locked}});
  }
  std::string text = doc.dump(2) + "\n";
  write_file_bytes(dir / "pmp.json",
                   std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                             text.size()));
}

Device Device::load_snapshot(const std::filesystem::path& dir) {
  Device device;
  device.rom_ = read_file_bytes(dir / "rom.bin");
  device.ram_ = read_file_bytes(dir / "ram.bin");
  device.flash_ = read_file_bytes(dir / "flash.bin");

  auto pmp_bytes = read_file_bytes(dir / "pmp.json");
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(pmp_bytes.begin(), pmp_bytes.end());
  } catch (const nlohmann::json::exception& e) {
    throw CareError(ErrorCode::ParseError, std::string("pmp.json: ") + e.what());
  }
  for (const auto& entry : doc.at("rules")) {
    PmpRule rule;
    rule.base = entry.at("base").get<std::uint64_t>();
    rule.limit = entry.at("limit").get<std::uint64_t>();
    rule.source = access_source_from_name(entry.at("source").get<std::string>());
    rule.allow_read = entry.at("allow_read").get<bool>();
    rule.allow_write = entry.at("allow_write").get<bool>();
    rule.allow_execute = entry.at("allow_execute").get<bool>();
    rule.locked = entry.at("locked").get<bool>();
    device.rules_.push_back(rule);
  }
  return device;
}

}  // namespace care
