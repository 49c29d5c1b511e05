// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "care/identity.hpp"

namespace care {

struct Digest256 {
  std::array<std::uint8_t, 32> bytes{};
  bool operator==(const Digest256&) const = default;
};

struct Tag256 {
  std::array<std::uint8_t, 32> bytes{};
  bool operator==(const Tag256&) const = default;
};

enum class KeyRole : std::uint8_t { Master, FrameSigning };

struct Key256 {
  std::array<std::uint8_t, 32> bytes{};
  KeyRole role = KeyRole::Master;
};

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
 public:
  Sha256() { reset(); }
  void reset();
  void update(std::span<const std::uint8_t> data);
  Digest256 finish();

 private:
  void process_block(const std::uint8_t* block);

  std::array<std::uint32_t, 8> state_{};
  std::array<std::uint8_t, 64> buffer_{};
  std::uint64_t total_len_ = 0;
  std::size_t buffer_len_ = 0;
};

/// One-shot SHA-256 digest. Empty input is allowed.
Digest256 sha256_digest(std::span<const std::uint8_t> data);

/// HMAC-SHA256 over `message` with the raw 32-byte key material.
Tag256 hmac_tag(const Key256& key, std::span<const std::uint8_t> message);

/// Derives the frame-signing key for one device:
/// HMAC-SHA256(master, purpose || canonical-identity). Deterministic.
Key256 derive_key(const Key256& master, const DeviceIdentity& identity,
                  std::string_view purpose);

/// Equal-length, equal-content comparison whose running time does not depend
/// on the position of the first mismatch.
bool constant_time_eq(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

}  // namespace care
