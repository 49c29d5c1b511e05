// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace care {

enum class ErrorCode {
  EmptyFirmware,
  BadMagic,
  UnsupportedVersion,
  BadLength,
  ReservedFieldSet,
  TruncatedFile,
  FrameCountMismatch,
  GapInFrames,
  TooManyRules,
  LockedRuleConflict,
  OutOfRange,
  AccessDenied,
  FrameNumberMismatch,
  MissingRecoveryData,
  AlreadyLocked,
  BadKeyLength,
  InvalidFrameCount,
  InvalidArgument,
  IoError,
  ParseError,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a stable error code plus a message that names the
/// offending field or path.
class CareError : public std::runtime_error {
 public:
  CareError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace care
