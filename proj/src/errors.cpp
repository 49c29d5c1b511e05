// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "care/errors.hpp"

namespace care {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyFirmware: return "EmptyFirmware";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::ReservedFieldSet: return "ReservedFieldSet";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::FrameCountMismatch: return "FrameCountMismatch";
    case ErrorCode::GapInFrames: return "GapInFrames";
    case ErrorCode::TooManyRules: return "TooManyRules";
    case ErrorCode::LockedRuleConflict: return "LockedRuleConflict";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AccessDenied: return "AccessDenied";
    case ErrorCode::FrameNumberMismatch: return "FrameNumberMismatch";
    case ErrorCode::MissingRecoveryData: return "MissingRecoveryData";
    case ErrorCode::AlreadyLocked: return "AlreadyLocked";
    case ErrorCode::BadKeyLength: return "BadKeyLength";
    case ErrorCode::InvalidFrameCount: return "InvalidFrameCount";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace care
