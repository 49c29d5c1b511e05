// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace care {

inline constexpr const char* kToolName = "care";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace care
