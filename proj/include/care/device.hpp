// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "care/crypto.hpp"
#include "care/frame.hpp"
#include "care/identity.hpp"

namespace care {

// Address space of the simulated device. Flash is sized to the exact image it
// was provisioned with, so any write past the image is a range fault rather
// than a silent landing in slack space.
inline constexpr std::uint64_t kRomBase = 0x8000;
inline constexpr std::uint64_t kRamBase = 0x1000'0000;
inline constexpr std::uint64_t kFlashBase = 0x2000'0000;
inline constexpr std::size_t kDefaultRamSize = 64 * 1024;

inline constexpr std::array<std::uint8_t, 8> kRomMagic = {'C', 'A', 'R', 'E',
                                                          'R', 'O', 'M', '1'};
inline constexpr std::array<std::uint8_t, 8> kFsblMarker = {'C', 'A', 'R', 'E',
                                                            'F', 'S', 'B', 'L'};
inline constexpr std::size_t kRomMasterKeyOffset = 42;

enum class AccessSource : std::uint8_t { SecureBoot, UntrustedCode, Dma };
enum class AccessKind : std::uint8_t { Read, Write, Execute };

const char* access_source_name(AccessSource source);
const char* access_kind_name(AccessKind kind);

struct PmpRule {
  std::uint64_t base = 0;
  std::uint64_t limit = 0;  // exclusive
  AccessSource source = AccessSource::SecureBoot;
  bool allow_read = false;
  bool allow_write = false;
  bool allow_execute = false;
  bool locked = false;

  bool operator==(const PmpRule&) const = default;
};

inline constexpr std::size_t kMaxPmpRules = 16;

struct AccessRecord {
  AccessSource source;
  AccessKind kind;
  std::uint64_t address = 0;
  std::uint64_t length = 0;
  bool allowed = false;
  // Index of the deciding rule, or nullopt when the default policy decided.
  std::optional<std::size_t> rule_index;
};

/// Recovery payloads baked into secure ROM next to the golden manifest.
struct RomRecoveryData {
  std::vector<bool> present;
  std::vector<std::array<std::uint8_t, kPayloadSize>> payloads;
};

struct RomContents {
  DeviceIdentity identity;
  Key256 master_key{.bytes = {}, .role = KeyRole::Master};
  GoldenManifest manifest;
  RomRecoveryData recovery;
};

std::vector<std::uint8_t> serialize_rom(const RomContents& rom);
RomContents parse_rom(std::span<const std::uint8_t> bytes);

class Device {
 public:
  /// Provisions ROM from `rom` and flash with the exact image bytes.
  Device(const RomContents& rom, std::span<const std::uint8_t> image_bytes,
         std::size_t ram_size = kDefaultRamSize);

  std::uint64_t rom_base() const { return kRomBase; }
  std::uint64_t ram_base() const { return kRamBase; }
  std::uint64_t flash_base() const { return kFlashBase; }
  std::size_t rom_size() const { return rom_.size(); }
  std::size_t ram_size() const { return ram_.size(); }
  std::size_t flash_size() const { return flash_.size(); }

  /// Mediated accesses. Denied or out-of-range accesses throw AccessDenied /
  /// OutOfRange after the attempt is logged.
  std::vector<std::uint8_t> read(AccessSource source, std::uint64_t address,
                                 std::size_t length);
  void write(AccessSource source, std::uint64_t address,
             std::span<const std::uint8_t> data);
  std::vector<std::uint8_t> rom_read(AccessSource source, std::uint64_t address,
                                     std::size_t length);
  void erase_flash(AccessSource source, std::uint64_t address, std::size_t length);

  /// Appends rules atomically: either all take effect or none do. A rule
  /// identical to an existing one is skipped. Throws TooManyRules or
  /// LockedRuleConflict (a new rule may not intersect a locked rule's range
  /// for the same source).
  void apply_pmp_rules(std::span<const PmpRule> rules);

  /// Policy check without performing an access; the verdict is logged.
  bool check_access(AccessSource source, AccessKind kind, std::uint64_t address,
                    std::uint64_t length);

  /// Same policy decision as check_access but with no logging, for replaying
  /// a recorded access log against the rule set.
  bool evaluate_access(AccessSource source, AccessKind kind, std::uint64_t address,
                       std::uint64_t length) const;

  const std::vector<PmpRule>& pmp_rules() const { return rules_; }
  const std::vector<AccessRecord>& access_log() const { return access_log_; }

  /// Raw views for assertions and whole-flash digests; not mediated.
  std::span<const std::uint8_t> flash_bytes() const { return flash_; }
  std::span<const std::uint8_t> rom_bytes() const { return rom_; }

  Digest256 flash_digest() const;

  /// Post-boot lockdown: flash write-protected and RAM non-executable for
  /// everything but the secure boot path, via locked rules. Idempotent.
  void lock_memory();
  bool locked() const;

  /// Persists rom.bin, flash.bin, ram.bin, and pmp.json under `dir`.
  void save_snapshot(const std::filesystem::path& dir) const;
  static Device load_snapshot(const std::filesystem::path& dir);

 private:
  Device() = default;

  struct Region {
    std::uint64_t base;
    std::uint64_t size;
    bool writable;  // by policy-allowed writers
  };

  std::optional<Region> region_of(std::uint64_t address, std::uint64_t length) const;
  bool decide(AccessSource source, AccessKind kind, std::uint64_t address,
              std::uint64_t length, std::optional<std::size_t>& rule_index) const;
  std::vector<PmpRule> lockdown_rules() const;

  std::vector<std::uint8_t> rom_;
  std::vector<std::uint8_t> ram_;
  std::vector<std::uint8_t> flash_;
  std::vector<PmpRule> rules_;
  std::vector<AccessRecord> access_log_;
};

}  // namespace care
