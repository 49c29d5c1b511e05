// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/identity.hpp"

#include <algorithm>
#include <span>

#include "care/bytes.hpp"

namespace care {

std::array<std::uint8_t, kIdentityEncodedSize> encode_identity(const DeviceIdentity& id) {
  std::array<std::uint8_t, kIdentityEncodedSize> out{};
  std::span<std::uint8_t> s(out);
  put_u32(s, 0, id.vendor_id);
  std::copy(id.uuid.begin(), id.uuid.end(), out.begin() + 4);
  put_u16(s, 20, id.board_version);
  put_u32(s, 22, id.firmware_revision);
  return out;
}

DeviceIdentity decode_identity(const std::uint8_t* data) {
  std::span<const std::uint8_t> s(data, kIdentityEncodedSize);
  DeviceIdentity id;
  id.vendor_id = get_u32(s, 0);
  std::copy(data + 4, data + 20, id.uuid.begin());
  id.board_version = get_u16(s, 20);
  id.firmware_revision = get_u32(s, 22);
  return id;
}

}  // namespace care
