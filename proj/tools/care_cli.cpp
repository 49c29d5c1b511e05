// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
//
// care: build signed frame images, verify them, and simulate boots under
// attack. Exit codes: 0 ok, 1 verification failure, 2 input error, 3 secure
// halt.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "care/attack.hpp"
#include "care/boot.hpp"
#include "care/bytes.hpp"
#include "care/device.hpp"
#include "care/errors.hpp"
#include "care/report.hpp"
#include "care/sim.hpp"
#include "care/timing.hpp"
#include "care/verify.hpp"
#include "care/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSecureHalt = 3;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw care::CareError(care::ErrorCode::IoError, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw care::CareError(care::ErrorCode::IoError, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out)
    throw care::CareError(care::ErrorCode::IoError, "short write to " + path);
}

void write_text(const std::string& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                             text.size()));
}

// Key material stays in files; only the path shows up in argv and reports.
care::Key256 read_master_key(const std::string& path) {
  auto bytes = read_file(path);
  if (bytes.size() != 32)
    throw care::CareError(care::ErrorCode::BadKeyLength,
                          path + " holds " + std::to_string(bytes.size()) +
                              " bytes, expected 32");
  care::Key256 key;
  std::copy(bytes.begin(), bytes.end(), key.bytes.begin());
  key.role = care::KeyRole::Master;
  return key;
}

std::string file_digest_hex(std::span<const std::uint8_t> bytes) {
  return care::to_hex(care::sha256_digest(bytes).bytes);
}

care::TimingParams load_params_file(const std::string& path) {
  auto bytes = read_file(path);
  return care::load_timing_params(std::string(bytes.begin(), bytes.end()));
}

struct BuildArgs {
  std::string firmware_path;
  std::string key_path;
  std::string out_path = "firmware.care";
  std::string manifest_path;
  std::uint32_t vendor_id = 0;
  std::string uuid_hex = "00000000000000000000000000000000";
  std::uint16_t board_version = 0;
  std::uint32_t firmware_revision = 0;
};

int cmd_build(const BuildArgs& args) {
  care::DeviceIdentity identity;
  identity.vendor_id = args.vendor_id;
  auto uuid = care::from_hex(args.uuid_hex);
  if (uuid.size() != identity.uuid.size())
    throw care::CareError(care::ErrorCode::ParseError,
                          "uuid must be 32 hex characters");
  std::copy(uuid.begin(), uuid.end(), identity.uuid.begin());
  identity.board_version = args.board_version;
  identity.firmware_revision = args.firmware_revision;

  auto firmware = read_file(args.firmware_path);
  care::Key256 master = read_master_key(args.key_path);

  care::BuildResult result = care::build_image(firmware, identity, master);
  std::string manifest_path = args.manifest_path.empty()
                                  ? args.out_path + "-manifest"
                                  : args.manifest_path;
  write_file(args.out_path, care::serialize_image(result.image));
  write_file(manifest_path, care::serialize_manifest(result.manifest));
  std::cout << "frames: " << result.image.frames.size() << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string image_path;
  std::string manifest_path;
  std::string key_path;
  std::string report_path;
};

int cmd_verify(const VerifyArgs& args) {
  auto image_bytes = read_file(args.image_path);
  auto manifest_bytes = read_file(args.manifest_path);
  care::Key256 master = read_master_key(args.key_path);

  // Hard parse errors are input errors (exit 2); only a well-formed image
  // that fails its checks is a verification failure (exit 1).
  care::GoldenManifest manifest = care::parse_manifest(manifest_bytes);
  care::ImageHeaderInfo info = care::parse_image_header(image_bytes);
  if (image_bytes.size() !=
      care::kImageHeaderSize + std::size_t(info.frame_count) * care::kFrameSize)
    throw care::CareError(care::ErrorCode::TruncatedFile,
                          args.image_path + " does not hold " +
                              std::to_string(info.frame_count) + " frames");

  care::Key256 frame_key =
      care::derive_key(master, info.identity, care::kFrameSigningPurpose);
  care::ChainReport chain =
      care::verify_image(image_bytes, manifest, info.identity, frame_key);

  care::ReportInputs inputs;
  inputs.paths = {{"image", args.image_path},
                  {"manifest", args.manifest_path},
                  {"key", args.key_path}};
  inputs.digests = {{"image", file_digest_hex(image_bytes)},
                    {"manifest", file_digest_hex(manifest_bytes)}};
  std::string text = care::to_report_text(
      care::make_envelope("verify", inputs, care::chain_report_to_json(chain)));
  std::cout << text;
  if (!args.report_path.empty()) write_text(args.report_path, text);
  return chain.all_verified() ? kExitOk : kExitVerifyFailed;
}

struct SimulateArgs {
  std::string image_path;
  std::string manifest_path;
  std::string key_path;
  std::string campaign_path;
  std::vector<std::uint32_t> corrupt_frames;
  std::optional<std::uint64_t> seed;
  std::uint32_t n_attacks = 4;
  std::string care_mode = "on";
  std::string trigger = "power_on";
  std::string params_path;
  std::string report_path;
};

int cmd_simulate(const SimulateArgs& args) {
  auto image_bytes = read_file(args.image_path);
  auto manifest_bytes = read_file(args.manifest_path);
  care::Key256 master = read_master_key(args.key_path);
  care::GoldenManifest manifest = care::parse_manifest(manifest_bytes);
  std::uint32_t frame_count = care::parse_image_header(image_bytes).frame_count;

  care::ReportInputs inputs;
  inputs.paths = {{"image", args.image_path},
                  {"manifest", args.manifest_path},
                  {"key", args.key_path}};
  inputs.digests = {{"image", file_digest_hex(image_bytes)},
                    {"manifest", file_digest_hex(manifest_bytes)}};
  inputs.care_enabled = args.care_mode;
  inputs.trigger = args.trigger;

  care::SimulationOptions options;
  options.care_enabled = args.care_mode == "on";
  options.trigger = care::boot_trigger_from_name(args.trigger);
  if (!args.params_path.empty()) {
    options.timing_params = load_params_file(args.params_path);
    inputs.paths.emplace_back("params", args.params_path);
  }

  if (!args.campaign_path.empty()) {
    auto campaign_bytes = read_file(args.campaign_path);
    care::CampaignFile campaign =
        care::parse_campaign(std::string(campaign_bytes.begin(), campaign_bytes.end()));
    if (campaign.frame_count != frame_count)
      throw care::CareError(care::ErrorCode::FrameCountMismatch,
                            "campaign was generated for " +
                                std::to_string(campaign.frame_count) + " frames");
    options.attacks = campaign.attacks;
    inputs.paths.emplace_back("campaign", args.campaign_path);
    inputs.digests.emplace_back("campaign", file_digest_hex(campaign_bytes));
    inputs.seed = campaign.seed;
  } else if (!args.corrupt_frames.empty()) {
    // One deterministic payload bit flip per named frame.
    for (std::uint32_t frame : args.corrupt_frames)
      options.attacks.push_back({care::BitFlip{frame, care::kHeaderSize, 0}});
    inputs.corrupt_frames = args.corrupt_frames;
  } else if (args.seed) {
    options.attacks = care::random_campaign(frame_count, *args.seed, args.n_attacks);
    inputs.seed = *args.seed;
  }

  care::SimulationResult result =
      care::simulate_image(image_bytes, manifest, master, options);
  inputs.attacks = result.mutations;

  std::string text = care::to_report_text(care::make_envelope(
      "simulate", inputs, care::boot_report_to_json(result.report)));
  std::cout << text;
  if (!args.report_path.empty()) write_text(args.report_path, text);
  return result.report.boot_ok ? kExitOk : kExitSecureHalt;
}

struct CostArgs {
  std::uint32_t frames = 0;
  std::string care_mode = "on";
  std::uint32_t recovered = 0;
  std::string params_path;
};

int cmd_cost(const CostArgs& args) {
  care::TimingParams params;
  care::ReportInputs inputs;
  if (!args.params_path.empty()) {
    params = load_params_file(args.params_path);
    inputs.paths = {{"params", args.params_path}};
  }
  inputs.care_enabled = args.care_mode;

  care::CostReport report =
      care::estimate(args.frames, args.care_mode == "on", args.recovered, params);
  std::cout << care::to_report_text(
      care::make_envelope("cost", inputs, care::cost_report_to_json(report)));
  return kExitOk;
}

struct AttackGenArgs {
  std::uint32_t frames = 0;
  std::uint64_t seed = 0;
  std::uint32_t n_attacks = 4;
  std::string out_path;
};

int cmd_attack_gen(const AttackGenArgs& args) {
  auto attacks = care::random_campaign(args.frames, args.seed, args.n_attacks);
  std::string text = care::serialize_campaign(attacks, args.seed, args.frames);
  if (args.out_path.empty())
    std::cout << text;
  else
    write_text(args.out_path, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame-based secure-boot image tool and device simulator"};
  app.set_version_flag("--version", care::kToolVersion);
  app.require_subcommand(1);

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "build a signed image and manifest");
  build->add_option("--firmware", build_args.firmware_path, "raw firmware binary")
      ->required();
  build->add_option("--key", build_args.key_path, "32-byte master key file")
      ->required();
  build->add_option("--out", build_args.out_path, "output image path");
  build->add_option("--manifest", build_args.manifest_path,
                    "output manifest path (default <out>-manifest)");
  build->add_option("--vendor-id", build_args.vendor_id, "identity: vendor id");
  build->add_option("--uuid", build_args.uuid_hex, "identity: 32 hex chars");
  build->add_option("--board-version", build_args.board_version,
                    "identity: board version");
  build->add_option("--firmware-revision", build_args.firmware_revision,
                    "identity: firmware revision");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "check an image against a manifest");
  verify->add_option("--image", verify_args.image_path, "image file")->required();
  verify->add_option("--manifest", verify_args.manifest_path, "manifest file")
      ->required();
  verify->add_option("--key", verify_args.key_path, "32-byte master key file")
      ->required();
  verify->add_option("--report", verify_args.report_path, "also write report here");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "boot a device under attack");
  simulate->add_option("--image", sim_args.image_path, "golden image file")
      ->required();
  simulate->add_option("--manifest", sim_args.manifest_path, "golden manifest file")
      ->required();
  simulate->add_option("--key", sim_args.key_path, "32-byte master key file")
      ->required();
  auto* campaign_opt =
      simulate->add_option("--campaign", sim_args.campaign_path, "attack campaign file");
  auto* corrupt_opt =
      simulate
          ->add_option("--corrupt", sim_args.corrupt_frames,
                       "frames to corrupt with a payload bit flip (comma separated)")
          ->delimiter(',');
  auto* seed_opt =
      simulate->add_option("--seed", sim_args.seed, "generate a random campaign");
  simulate->add_option("--attacks", sim_args.n_attacks,
                       "attacks in the generated campaign (with --seed)");
  campaign_opt->excludes(corrupt_opt)->excludes(seed_opt);
  corrupt_opt->excludes(seed_opt);
  simulate->add_option("--care", sim_args.care_mode, "authentication unit on|off")
      ->check(CLI::IsMember({"on", "off"}));
  simulate->add_option("--trigger", sim_args.trigger, "boot trigger")
      ->check(CLI::IsMember({"power_on", "hardware_reset", "gpio_pin7"}));
  simulate->add_option("--params", sim_args.params_path, "timing params file");
  simulate->add_option("--report", sim_args.report_path, "also write report here");

  CostArgs cost_args;
  CLI::App* cost = app.add_subcommand("cost", "boot cost model");
  cost->add_option("--frames", cost_args.frames, "frame count")->required();
  cost->add_option("--care", cost_args.care_mode, "authentication unit on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cost->add_option("--recovered", cost_args.recovered, "recovered frame count");
  cost->add_option("--params", cost_args.params_path, "timing params file");

  AttackGenArgs gen_args;
  CLI::App* gen = app.add_subcommand("attack-gen", "emit a campaign file from a seed");
  gen->add_option("--frames", gen_args.frames, "frame count")->required();
  gen->add_option("--seed", gen_args.seed, "campaign seed")->required();
  gen->add_option("--attacks", gen_args.n_attacks, "number of attacks");
  gen->add_option("--out", gen_args.out_path, "campaign path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (build->parsed()) return cmd_build(build_args);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (simulate->parsed()) return cmd_simulate(sim_args);
    if (cost->parsed()) return cmd_cost(cost_args);
    if (gen->parsed()) return cmd_attack_gen(gen_args);
  } catch (const care::CareError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
