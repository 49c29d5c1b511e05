// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
//
// _care: thin pybind11 layer over the simulator core. Structured results
// cross the boundary as JSON text; the care_sim package parses them into
// dicts so the C++ report schema stays the single source of truth.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "care/attack.hpp"
#include "care/bytes.hpp"
#include "care/crypto.hpp"
#include "care/errors.hpp"
#include "care/frame.hpp"
#include "care/report.hpp"
#include "care/sim.hpp"
#include "care/timing.hpp"
#include "care/verify.hpp"
#include "care/version.hpp"

namespace py = pybind11;

namespace {

std::vector<std::uint8_t> to_bytes(const py::bytes& data) {
  std::string s = data;
  return {s.begin(), s.end()};
}

py::bytes from_bytes(std::span<const std::uint8_t> data) {
  return py::bytes(reinterpret_cast<const char*>(data.data()), data.size());
}

care::Key256 master_key_from(const py::bytes& data) {
  auto bytes = to_bytes(data);
  if (bytes.size() != 32)
    throw care::CareError(care::ErrorCode::BadKeyLength,
                          "master key must be 32 bytes, got " +
                              std::to_string(bytes.size()));
  care::Key256 key;
  std::copy(bytes.begin(), bytes.end(), key.bytes.begin());
  return key;
}

care::DeviceIdentity identity_from(std::uint32_t vendor_id, const py::bytes& uuid,
                                   std::uint16_t board_version,
                                   std::uint32_t firmware_revision) {
  auto uuid_bytes = to_bytes(uuid);
  care::DeviceIdentity identity;
  if (uuid_bytes.size() != identity.uuid.size())
    throw care::CareError(care::ErrorCode::InvalidArgument,
                          "uuid must be 16 bytes, got " +
                              std::to_string(uuid_bytes.size()));
  identity.vendor_id = vendor_id;
  std::copy(uuid_bytes.begin(), uuid_bytes.end(), identity.uuid.begin());
  identity.board_version = board_version;
  identity.firmware_revision = firmware_revision;
  return identity;
}

care::TimingParams params_from(const std::string& params_json) {
  return params_json.empty() ? care::TimingParams{}
                             : care::load_timing_params(params_json);
}

py::tuple build(const py::bytes& firmware, const py::bytes& master_key,
                std::uint32_t vendor_id, const py::bytes& uuid,
                std::uint16_t board_version, std::uint32_t firmware_revision) {
  auto fw = to_bytes(firmware);
  care::BuildResult result = care::build_image(
      fw, identity_from(vendor_id, uuid, board_version, firmware_revision),
      master_key_from(master_key));
  auto image = care::serialize_image(result.image);
  auto manifest = care::serialize_manifest(result.manifest);
  return py::make_tuple(from_bytes(image), from_bytes(manifest));
}

std::string verify(const py::bytes& image, const py::bytes& manifest,
                   const py::bytes& master_key) {
  auto image_bytes = to_bytes(image);
  care::GoldenManifest golden = care::parse_manifest(to_bytes(manifest));
  care::ImageHeaderInfo info = care::parse_image_header(image_bytes);
  care::Key256 frame_key = care::derive_key(master_key_from(master_key),
                                            info.identity, care::kFrameSigningPurpose);
  care::ChainReport chain =
      care::verify_image(image_bytes, golden, info.identity, frame_key);
  return care::to_report_text(care::chain_report_to_json(chain));
}

std::string simulate(const py::bytes& image, const py::bytes& manifest,
                     const py::bytes& master_key, const std::string& campaign_json,
                     const std::vector<std::uint32_t>& corrupt,
                     std::optional<std::uint64_t> seed, std::uint32_t n_attacks,
                     bool care_enabled, const std::string& trigger,
                     const std::string& params_json) {
  auto image_bytes = to_bytes(image);
  care::GoldenManifest golden = care::parse_manifest(to_bytes(manifest));

  care::SimulationOptions options;
  options.care_enabled = care_enabled;
  options.trigger = care::boot_trigger_from_name(trigger);
  options.timing_params = params_from(params_json);

  if (!campaign_json.empty()) {
    options.attacks = care::parse_campaign(campaign_json).attacks;
  } else if (!corrupt.empty()) {
    for (std::uint32_t frame : corrupt)
      options.attacks.push_back({care::BitFlip{frame, care::kHeaderSize, 0}});
  } else if (seed) {
    std::uint32_t frame_count = care::parse_image_header(image_bytes).frame_count;
    options.attacks = care::random_campaign(frame_count, *seed, n_attacks);
  }

  care::SimulationResult result =
      care::simulate_image(image_bytes, golden, master_key_from(master_key), options);

  care::Json doc;
  doc["mutations"] = care::Json::array();
  for (const care::MutationRecord& record : result.mutations)
    doc["mutations"].push_back(care::mutation_record_to_json(record));
  doc["report"] = care::boot_report_to_json(result.report);
  return care::to_report_text(doc);
}

std::string cost(std::uint32_t n_frames, bool care_enabled, std::uint32_t recovered,
                 const std::string& params_json) {
  care::CostReport report =
      care::estimate(n_frames, care_enabled, recovered, params_from(params_json));
  return care::to_report_text(care::cost_report_to_json(report));
}

std::string attack_gen(std::uint32_t frame_count, std::uint64_t seed,
                       std::uint32_t n_attacks) {
  return care::serialize_campaign(care::random_campaign(frame_count, seed, n_attacks),
                                  seed, frame_count);
}

std::string sha256_hex(const py::bytes& data) {
  auto bytes = to_bytes(data);
  return care::to_hex(care::sha256_digest(bytes).bytes);
}

std::string hmac_sha256_hex(const py::bytes& key, const py::bytes& message) {
  auto message_bytes = to_bytes(message);
  return care::to_hex(care::hmac_tag(master_key_from(key), message_bytes).bytes);
}

}  // namespace

PYBIND11_MODULE(_care, m) {
  m.doc() = "secure-boot frame image toolchain and device simulator";
  m.attr("__version__") = care::kToolVersion;

  py::register_exception<care::CareError>(m, "CareError", PyExc_ValueError);

  m.def("build", &build, py::arg("firmware"), py::arg("master_key"),
        py::arg("vendor_id") = 0, py::arg("uuid") = py::bytes(std::string(16, '\0')),
        py::arg("board_version") = 0, py::arg("firmware_revision") = 0,
        "Build a signed image; returns (image_bytes, manifest_bytes).");
  m.def("verify", &verify, py::arg("image"), py::arg("manifest"),
        py::arg("master_key"), "Chain-of-trust verification; returns JSON text.");
  m.def("simulate", &simulate, py::arg("image"), py::arg("manifest"),
        py::arg("master_key"), py::arg("campaign") = std::string(),
        py::arg("corrupt") = std::vector<std::uint32_t>{},
        py::arg("seed") = std::nullopt, py::arg("n_attacks") = 4,
        py::arg("care") = true, py::arg("trigger") = std::string("power_on"),
        py::arg("params") = std::string(),
        "Boot a provisioned device under attack; returns JSON text.");
  m.def("cost", &cost, py::arg("n_frames"), py::arg("care") = true,
        py::arg("recovered") = 0, py::arg("params") = std::string(),
        "Boot cost model; returns JSON text.");
  m.def("attack_gen", &attack_gen, py::arg("frame_count"), py::arg("seed"),
        py::arg("n_attacks") = 4, "Deterministic campaign; returns JSON text.");
  m.def("overhead_percent",
        [](std::uint32_t n_frames) { return care::overhead_percent(n_frames); },
        py::arg("n_frames"), "Boot-time overhead of the authentication unit.");
  m.def("sha256_hex", &sha256_hex, py::arg("data"));
  m.def("hmac_sha256_hex", &hmac_sha256_hex, py::arg("key"), py::arg("message"),
        "HMAC-SHA256 with a 32-byte key; returns lowercase hex.");
}
