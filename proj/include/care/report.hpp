// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "care/attack.hpp"
#include "care/boot.hpp"
#include "care/recovery.hpp"
#include "care/timing.hpp"
#include "care/verify.hpp"

namespace care {

// Report serialization. Key order is fixed (ordered_json) and floats print
// via the shortest round-trip form, so identical runs produce byte-identical
// documents; the golden-file tests rely on that.
using Json = nlohmann::ordered_json;

Json chain_report_to_json(const ChainReport& report);
Json recovery_report_to_json(const RecoveryReport& report);
Json cost_report_to_json(const CostReport& report);
Json boot_report_to_json(const BootReport& report);
Json mutation_record_to_json(const MutationRecord& record);
Json attack_spec_to_json(const AttackSpec& attack);
AttackSpec attack_spec_from_json(const Json& value);

/// Provenance recorded alongside every command's payload: the inputs that
/// fed it and digests of the data files, enough to replay the run. Key
/// material never appears here, only the path it was read from.
struct ReportInputs {
  std::vector<std::pair<std::string, std::string>> paths;  // label -> path
  std::vector<std::pair<std::string, std::string>> digests;  // label -> hex
  std::optional<std::uint64_t> seed;
  std::optional<std::string> care_enabled;  // "on" / "off"
  std::optional<std::string> trigger;
  std::vector<std::uint32_t> corrupt_frames;
  std::vector<MutationRecord> attacks;
};

Json make_envelope(const std::string& command, const ReportInputs& inputs,
                   Json payload);

/// Renders with two-space indentation and a trailing newline.
std::string to_report_text(const Json& document);

}  // namespace care
