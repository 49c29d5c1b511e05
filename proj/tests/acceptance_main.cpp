// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate. Each numbered criterion prints one [PASS]/[FAIL] line;
// the process exits nonzero if any fail. Criterion 1 drives the installed
// CLI binary (path baked in as CARE_CLI_PATH) so the numbers on the user's
// terminal are what gets checked, not a library shortcut.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "care/attack.hpp"
#include "care/boot.hpp"
#include "care/bytes.hpp"
#include "care/device.hpp"
#include "care/frame.hpp"
#include "care/recovery.hpp"
#include "care/rng.hpp"
#include "care/timing.hpp"
#include "care/verify.hpp"
#include "test_util.hpp"

using namespace care;
using nlohmann::ordered_json;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << number << ". " << name;
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string run_cli(const std::string& args, int& exit_code) {
  std::string command = std::string(CARE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return "";
  }
  std::string output;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    output.append(buffer, got);
  int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return output;
}

bool near(double value, double want, double tolerance) {
  return std::fabs(value - want) <= tolerance;
}

std::vector<std::uint8_t> flash_of(const Device& dev) {
  return {dev.flash_bytes().begin(), dev.flash_bytes().end()};
}

// ---- independent crypto oracle (OpenSSL) -----------------------------------

std::array<std::uint8_t, 32> oracle_sha256(std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

std::array<std::uint8_t, 32> oracle_hmac(std::span<const std::uint8_t> key,
                                         std::span<const std::uint8_t> data) {
  std::array<std::uint8_t, 32> out{};
  unsigned int len = 0;
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(),
       data.size(), out.data(), &len);
#pragma GCC diagnostic pop
  return out;
}

// ---- criteria ---------------------------------------------------------------

// Reference-platform cost numbers, straight from the CLI. The six-frame
// reference application decomposes as first frame + five rest frames, so the
// first-frame and rest-frame cycle rows fall out of the 1-frame and 6-frame
// runs; the 6-frame run carries total cycles, time, energy, and the delta.
void criterion_1() {
  Check check;

  auto fetch = [&](const std::string& args) -> ordered_json {
    int exit_code = 0;
    std::string out = run_cli(args, exit_code);
    check.expect(exit_code == 0, args + " exited " + std::to_string(exit_code));
    ordered_json doc = ordered_json::parse(out, nullptr, false);
    check.expect(!doc.is_discarded(), args + " printed unparsable output");
    if (doc.is_discarded()) return ordered_json::object();
    return doc.value("report", ordered_json::object());
  };

  ordered_json off1 = fetch("cost --frames 1 --care off");
  ordered_json on1 = fetch("cost --frames 1 --care on");
  ordered_json off6 = fetch("cost --frames 6 --care off");
  ordered_json on6 = fetch("cost --frames 6 --care on");
  if (!check.ok) {
    report(1, "reference cost table through the cost command", false, check.detail);
    return;
  }

  struct Row {
    const char* label;
    double got;
    double want;
    double tolerance;
  };
  const Row rows[] = {
      {"first-frame cycles without", off1.at("boot_cycles").get<double>(), 553611.0, 0.0},
      {"first-frame cycles with", on1.at("boot_cycles").get<double>(), 576083.0, 0.0},
      {"rest-frame cycles without",
       off6.at("boot_cycles").get<double>() - off1.at("boot_cycles").get<double>(),
       103330.0, 0.0},
      {"rest-frame cycles with",
       on6.at("boot_cycles").get<double>() - on1.at("boot_cycles").get<double>(),
       133790.0, 0.0},
      {"total cycles without", off6.at("total_cycles").get<double>(), 656941.0, 0.0},
      {"total cycles with", on6.at("total_cycles").get<double>(), 709873.0, 0.0},
      {"boot time without", off6.at("time_us").get<double>(), 6569.41, 0.01},
      {"boot time with", on6.at("time_us").get<double>(), 7098.73, 0.01},
      {"energy without", off6.at("energy").get<double>(), 2752.58, 0.01},
      {"energy with", on6.at("energy").get<double>(), 2974.36, 0.01},
      {"delta on the with side", on6.at("delta_vs_baseline_us").get<double>(),
       529.32, 0.01},
      {"delta on the without side", off6.at("delta_vs_baseline_us").get<double>(),
       529.32, 0.01},
  };
  for (const Row& row : rows) {
    check.expect(near(row.got, row.want, row.tolerance),
                 std::string(row.label) + " = " + std::to_string(row.got));
  }
  report(1, "reference cost table through the cost command", check.ok, check.detail);
}

void criterion_2() {
  Check check;
  double time_overhead = overhead_percent(6);
  check.expect(std::round(time_overhead * 100.0) / 100.0 == 8.06,
               "time overhead " + std::to_string(time_overhead));
  CostReport on = estimate(6, true, 0);
  CostReport off = estimate(6, false, 0);
  double energy_overhead = (on.energy - off.energy) / off.energy * 100.0;
  check.expect(std::round(energy_overhead * 100.0) / 100.0 == 8.06,
               "energy overhead " + std::to_string(energy_overhead));
  report(2, "six-frame overhead rounds to 8.06 percent in time and energy",
         check.ok, check.detail);
}

void criterion_3() {
  Check check;
  BuildResult built = testutil::build(5734);
  check.expect(built.image.frames.size() == 6,
               std::to_string(built.image.frames.size()) + " frames");
  for (const Frame& frame : built.image.frames) {
    check.expect(encode_frame(frame).size() == 1024, "frame encodes off-size");
    check.expect(frame.payload.size() == 968, "payload area off-size");
  }
  for (std::size_t i = 0; i + 1 < built.image.frames.size(); ++i)
    check.expect(built.image.frames[i].header.payload_len == 968,
                 "frame " + std::to_string(i) + " not full");
  check.expect(built.image.frames.back().header.payload_len == 894,
               "tail frame holds the wrong byte count");
  check.expect(serialize_image(built.image).size() == 64 + 6 * 1024,
               "image file size");
  report(3, "5734-byte firmware builds to six 1024-byte frames", check.ok,
         check.detail);
}

void criterion_4() {
  Check check;
  auto start = std::chrono::steady_clock::now();

  BuildResult built = testutil::build();
  auto golden = serialize_image(built.image);

  for (unsigned subset = 1; subset < 64 && check.ok; ++subset) {
    for (int klass = 0; klass < 3 && check.ok; ++klass) {
      Device dev = testutil::device_for(built);
      std::vector<std::uint32_t> frames;
      for (std::uint32_t f = 0; f < 6; ++f) {
        if (!(subset & (1u << f))) continue;
        frames.push_back(f);
        AttackSpec attack;
        switch (klass) {
          case 0:
            attack.variant = BitFlip{f, static_cast<std::uint32_t>(kHeaderSize + 13), 2};
            break;
          case 1: {
            PayloadReplace replace;
            replace.frame = f;
            replace.payload.fill(0x5A);
            attack.variant = replace;
            break;
          }
          default:
            attack.variant =
                HeaderTamper{f, HeaderField::Offset,
                             built.manifest.entries[f].offset + kFrameSize};
            break;
        }
        MutationRecord record = inject(dev, attack);
        check.expect(!record.blocked && record.changed(),
                     "attack failed to land pre-boot");
      }

      BootReport boot_report = boot(dev, BootTrigger::PowerOn, BootConfig{});
      std::string where = "subset " + std::to_string(subset) + " class " +
                          std::to_string(klass);
      check.expect(boot_report.boot_ok, where + " did not reach boot_ok");
      check.expect(boot_report.recovery.has_value() &&
                       boot_report.recovery->recovered_frames == frames,
                   where + " recovered the wrong frame set");
      check.expect(flash_of(dev) == golden, where + " left non-golden flash");
      check.expect(dev.locked(), where + " did not lock memory");
    }
  }

  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.expect(seconds < 60.0, "took " + std::to_string(seconds) + " s");
  report(4, "all 63 corruption subsets recover to golden flash across 3 attack classes",
         check.ok, check.detail);
}

void criterion_5() {
  Check check;
  auto start = std::chrono::steady_clock::now();

  BuildResult built = testutil::build();
  auto golden = serialize_image(built.image);
  std::set<std::size_t> variants_seen;
  int boots_ok = 0;

  for (std::uint64_t seed = 1; seed <= 1000 && check.ok; ++seed) {
    Device dev = testutil::device_for(built);
    for (const AttackSpec& attack : random_campaign(6, seed, 4)) {
      variants_seen.insert(attack.variant.index());
      MutationRecord record = inject(dev, attack);
      check.expect(!record.blocked, "pre-boot attack blocked unexpectedly");
    }

    BootReport boot_report = boot(dev, BootTrigger::PowerOn, BootConfig{});
    if (boot_report.boot_ok) {
      ++boots_ok;
      check.expect(flash_of(dev) == golden,
                   "seed " + std::to_string(seed) + " booted with non-golden flash");
      check.expect(dev.locked(), "seed " + std::to_string(seed) + " booted unlocked");

      // Locked device: a second wave must bounce off without moving a byte.
      Digest256 before = dev.flash_digest();
      for (const AttackSpec& attack : random_campaign(6, seed ^ 0x9E3779B97F4A7C15ULL, 3)) {
        MutationRecord record = inject(dev, attack);
        check.expect(record.blocked,
                     "seed " + std::to_string(seed) + " post-lock attack landed");
        check.expect(!record.changed(),
                     "seed " + std::to_string(seed) + " post-lock flash changed");
      }
      check.expect(dev.flash_digest() == before,
                   "seed " + std::to_string(seed) + " flash digest moved post-lock");
    }
  }

  check.expect(variants_seen.size() == 5, "campaigns never drew every attack variant");
  check.expect(boots_ok > 0, "no campaign ever recovered to boot_ok");

  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.expect(seconds < 300.0, "took " + std::to_string(seconds) + " s");
  report(5, "1000 seeded campaigns never boot non-golden flash; post-lock attacks are inert",
         check.ok, check.detail);
}

void criterion_6() {
  Check check;

  // One-shot SHA-256 standard vectors.
  struct ShaVector {
    std::vector<std::uint8_t> data;
    std::string hex;
  };
  std::vector<ShaVector> sha_vectors = {
      {{}, "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"},
      {{'a', 'b', 'c'},
       "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"},
  };
  {
    std::string two_block = "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq";
    sha_vectors.push_back({{two_block.begin(), two_block.end()},
                           "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1"});
    sha_vectors.push_back({std::vector<std::uint8_t>(1000000, 'a'),
                           "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0"});
  }
  for (std::size_t i = 0; i < sha_vectors.size(); ++i) {
    check.expect(to_hex(sha256_digest(sha_vectors[i].data).bytes) == sha_vectors[i].hex,
                 "sha256 standard vector " + std::to_string(i));
  }

  // Complete HMAC-SHA256 vector set (cases 1..7; case 5 truncated to 128 bits).
  struct HmacVector {
    std::vector<std::uint8_t> key;
    std::string data;
    std::string hex;
    std::size_t tag_bytes;
  };
  std::vector<HmacVector> hmac_vectors = {
      {std::vector<std::uint8_t>(20, 0x0b), "Hi There",
       "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7", 32},
      {{'J', 'e', 'f', 'e'}, "what do ya want for nothing?",
       "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843", 32},
      {std::vector<std::uint8_t>(20, 0xaa), std::string(50, char(0xdd)),
       "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe", 32},
      {from_hex("0102030405060708090a0b0c0d0e0f10111213141516171819"),
       std::string(50, char(0xcd)),
       "82558a389a443c0ea4cc819899f2083a85f0faa3e578f8077a2e3ff46729665b", 32},
      {std::vector<std::uint8_t>(20, 0x0c), "Test With Truncation",
       "a3b6167473100ee06e0c796c2955552b", 16},
      {std::vector<std::uint8_t>(131, 0xaa),
       "Test Using Larger Than Block-Size Key - Hash Key First",
       "60e431591ee0b67f0d8a26aacbf5b77f8e0bc6213728c5140546040f0ee37f54", 32},
      {std::vector<std::uint8_t>(131, 0xaa),
       "This is a test using a larger than block-size key and a larger than "
       "block-size data. The key needs to be hashed before being used by the "
       "HMAC algorithm.",
       "9b09ffa71b942fcb27635fbcd5b0e944bfdc63644f0713938a7f51535c3a35e2", 32},
  };
  for (std::size_t i = 0; i < hmac_vectors.size(); ++i) {
    const HmacVector& v = hmac_vectors[i];
    Key256 key{};
    key.role = KeyRole::FrameSigning;
    if (v.key.size() <= 32)
      std::memcpy(key.bytes.data(), v.key.data(), v.key.size());
    else
      key.bytes = sha256_digest(v.key).bytes;  // per-spec long-key reduction
    std::vector<std::uint8_t> data(v.data.begin(), v.data.end());
    Tag256 tag = hmac_tag(key, data);
    check.expect(to_hex(tag.bytes).substr(0, v.tag_bytes * 2) == v.hex,
                 "hmac standard vector " + std::to_string(i + 1));
    check.expect(tag.bytes == oracle_hmac(v.key, data),
                 "hmac oracle disagreement on vector " + std::to_string(i + 1));
  }

  // Randomized cross-check against the independent implementation.
  Xoshiro256StarStar rng(0xacce97'01);
  for (int round = 0; round < 500; ++round) {
    std::vector<std::uint8_t> data(rng.bounded(8192));
    rng.fill(data);
    check.expect(sha256_digest(data).bytes == oracle_sha256(data),
                 "sha256 oracle disagreement, round " + std::to_string(round));

    Key256 key{};
    rng.fill(key.bytes);
    check.expect(hmac_tag(key, data).bytes == oracle_hmac(key.bytes, data),
                 "hmac oracle disagreement, round " + std::to_string(round));
  }

  report(6, "sha-256 and hmac match the standard vectors and an independent oracle",
         check.ok, check.detail);
}

void criterion_7() {
  Check check;
  BuildResult built = testutil::build(3000);  // exactly four frames
  check.expect(built.image.frames.size() == 4, "fixture is not four frames");
  auto golden_bytes = serialize_image(built.image);
  Key256 key = testutil::frame_key();

  for (unsigned subset = 0; subset < 16 && check.ok; ++subset) {
    auto bytes = golden_bytes;
    for (std::size_t i = 0; i < 4; ++i)
      if (subset & (1u << i))
        bytes[kImageHeaderSize + i * kFrameSize + kHeaderSize + 3] ^= 0x10;

    ChainReport chain =
        verify_image(bytes, built.manifest, testutil::identity(), key);

    // Brute-force re-derivation: raw header fields, OpenSSL hashes, explicit
    // fold. No shared code with verify_image.
    std::vector<bool> oracle_chain{true};
    for (std::size_t i = 0; i < 4; ++i) {
      const std::uint8_t* slot = bytes.data() + 64 + i * 1024;
      auto digest = oracle_sha256(std::span(slot + 56, std::size_t(968)));
      bool integrity = digest == built.manifest.entries[i].golden_digest.bytes;
      std::uint8_t msg[42];
      std::memcpy(msg, digest.data(), 32);
      std::memcpy(msg + 32, slot + 4, 4);
      std::memcpy(msg + 36, slot + 8, 4);
      std::memcpy(msg + 40, slot + 12, 2);
      auto tag = oracle_hmac(key.bytes, msg);
      bool authentic = std::memcmp(tag.data(), slot + 24, 32) == 0;
      oracle_chain.push_back(oracle_chain.back() && integrity && authentic);
    }

    check.expect(chain.chain.size() == oracle_chain.size(),
                 "chain length mismatch, subset " + std::to_string(subset));
    for (std::size_t i = 0; i < oracle_chain.size() && check.ok; ++i)
      check.expect(chain.chain[i] == oracle_chain[i],
                   "link " + std::to_string(i) + " differs, subset " +
                       std::to_string(subset));
    check.expect(chain.all_verified() == (subset == 0),
                 "overall verdict wrong, subset " + std::to_string(subset));
  }
  report(7, "chain verdicts equal a brute-force oracle on all 16 subsets",
         check.ok, check.detail);
}

void criterion_8() {
  Check check;
  BuildResult built = testutil::build();
  for (std::uint32_t k = 1; k <= 6 && check.ok; ++k) {
    RomContents rom = testutil::rom_for(built);
    Device dev(rom, serialize_image(built.image));
    std::vector<std::uint32_t> frames;
    for (std::uint32_t f = 0; f < k; ++f) {
      testutil::corrupt_frame_payload(dev, f);
      frames.push_back(f);
    }
    RecoveryReport recovery = recover(dev, rom, frames, testutil::frame_key());
    check.expect(near(recovery.reflash_time_us, 334.475 * double(k), 1e-9),
                 "k=" + std::to_string(k) + " reflash " +
                     std::to_string(recovery.reflash_time_us));
    check.expect(recovery.post_recovery_chain.all_verified(),
                 "k=" + std::to_string(k) + " did not re-verify");

    CostReport cost = estimate(6, true, k);
    check.expect(near(cost.recovery_us, 334.475 * double(k), 1e-9),
                 "k=" + std::to_string(k) + " cost recovery_us");
  }
  report(8, "recovery costs 334.475 microseconds per reflashed frame", check.ok,
         check.detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  if (g_failures == 0) {
    std::cout << "acceptance: all criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criteria FAILED" << std::endl;
  return 1;
}
