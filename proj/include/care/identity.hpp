// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace care {

/// Per-device provisioning record kept in secure storage and echoed in
/// image files.
struct DeviceIdentity {
  std::uint32_t vendor_id = 0;
  std::array<std::uint8_t, 16> uuid{};
  std::uint16_t board_version = 0;
  std::uint32_t firmware_revision = 0;

  bool operator==(const DeviceIdentity&) const = default;
};

inline constexpr std::size_t kIdentityEncodedSize = 26;

/// Canonical encoding used for key derivation and file headers:
/// vendor_id u32 LE | uuid 16 | board_version u16 LE | firmware_revision u32 LE.
std::array<std::uint8_t, kIdentityEncodedSize> encode_identity(const DeviceIdentity& id);

DeviceIdentity decode_identity(const std::uint8_t* data);

}  // namespace care
