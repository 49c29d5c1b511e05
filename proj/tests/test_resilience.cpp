// Copyright (c) 2026 The CARE Simulator Authors.
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <vector>

#include "care/errors.hpp"
#include "care/recovery.hpp"
#include "test_util.hpp"

using namespace care;

namespace {

std::vector<std::uint8_t> flash_of(const Device& dev) {
  return {dev.flash_bytes().begin(), dev.flash_bytes().end()};
}

}  // namespace

TEST_CASE("recovery restores corrupted frames byte-for-byte") {
  BuildResult built = testutil::build();
  auto golden = serialize_image(built.image);
  RomContents rom = testutil::rom_for(built);
  Device dev(rom, golden);

  testutil::corrupt_frame_payload(dev, 1);
  testutil::corrupt_frame_payload(dev, 3);
  REQUIRE(flash_of(dev) != golden);

  RecoveryReport report = recover(dev, rom, std::vector<std::uint32_t>{1, 3},
                                  testutil::frame_key());
  CHECK(flash_of(dev) == golden);
  CHECK(report.recovered_frames == std::vector<std::uint32_t>{1, 3});
  CHECK(report.bytes_reflashed == 2 * kPayloadSize);
  CHECK(report.reflash_time_us == doctest::Approx(668.95).epsilon(1e-12));
  CHECK(report.locked);
  CHECK(dev.locked());
  CHECK(report.post_recovery_chain.all_verified());
}

TEST_CASE("reflash time scales at 334.475 microseconds per frame") {
  for (std::uint32_t k = 1; k <= 6; ++k) {
    CAPTURE(k);
    BuildResult built = testutil::build();
    RomContents rom = testutil::rom_for(built);
    Device dev(rom, serialize_image(built.image));
    std::vector<std::uint32_t> frames;
    for (std::uint32_t f = 0; f < k; ++f) {
      testutil::corrupt_frame_payload(dev, f);
      frames.push_back(f);
    }
    RecoveryReport report = recover(dev, rom, frames, testutil::frame_key());
    CHECK(report.reflash_time_us == double(k) * 334.475);
    CHECK(report.bytes_reflashed == std::uint64_t(k) * kPayloadSize);
    CHECK(report.post_recovery_chain.all_verified());
  }
}

TEST_CASE("the failing-frame worklist is deduplicated and sorted") {
  BuildResult built = testutil::build();
  RomContents rom = testutil::rom_for(built);
  Device dev(rom, serialize_image(built.image));
  testutil::corrupt_frame_payload(dev, 1);
  testutil::corrupt_frame_payload(dev, 3);

  RecoveryReport report = recover(dev, rom, std::vector<std::uint32_t>{3, 1, 3, 1},
                                  testutil::frame_key());
  CHECK(report.recovered_frames == std::vector<std::uint32_t>{1, 3});
  CHECK(report.bytes_reflashed == 2 * kPayloadSize);
}

TEST_CASE("recovery with an empty worklist still locks memory") {
  BuildResult built = testutil::build();
  RomContents rom = testutil::rom_for(built);
  Device dev(rom, serialize_image(built.image));

  RecoveryReport report = recover(dev, rom, {}, testutil::frame_key());
  CHECK(report.recovered_frames.empty());
  CHECK(report.bytes_reflashed == 0);
  CHECK(report.reflash_time_us == 0.0);
  CHECK(dev.locked());
  CHECK(report.post_recovery_chain.all_verified());
}

TEST_CASE("a frame outside the manifest aborts before flash changes") {
  BuildResult built = testutil::build();
  RomContents rom = testutil::rom_for(built);
  Device dev(rom, serialize_image(built.image));
  testutil::corrupt_frame_payload(dev, 0);
  auto before = flash_of(dev);

  try {
    recover(dev, rom, std::vector<std::uint32_t>{0, 6}, testutil::frame_key());
    FAIL("expected throw");
  } catch (const CareError& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
  CHECK(flash_of(dev) == before);
  CHECK_FALSE(dev.locked());
}

TEST_CASE("missing golden data aborts with no partial repair") {
  BuildResult built = testutil::build();
  RomContents rom = testutil::rom_for(built);
  rom.recovery.present[3] = false;
  Device dev(rom, serialize_image(built.image));
  testutil::corrupt_frame_payload(dev, 1);
  testutil::corrupt_frame_payload(dev, 3);
  auto before = flash_of(dev);

  // Frame 1 has a golden copy but must not be touched either: the worklist
  // is validated as a whole before the first erase.
  try {
    recover(dev, rom, std::vector<std::uint32_t>{1, 3}, testutil::frame_key());
    FAIL("expected throw");
  } catch (const CareError& e) {
    CHECK(e.code() == ErrorCode::MissingRecoveryData);
  }
  CHECK(flash_of(dev) == before);
  CHECK_FALSE(dev.locked());
}

TEST_CASE("recovery refuses to run twice in one boot") {
  BuildResult built = testutil::build();
  RomContents rom = testutil::rom_for(built);
  Device dev(rom, serialize_image(built.image));
  recover(dev, rom, {}, testutil::frame_key());

  try {
    recover(dev, rom, std::vector<std::uint32_t>{0}, testutil::frame_key());
    FAIL("expected throw");
  } catch (const CareError& e) {
    CHECK(e.code() == ErrorCode::AlreadyLocked);
  }
}

TEST_CASE("recovery regenerates tags, not just payloads") {
  BuildResult built = testutil::build();
  auto golden = serialize_image(built.image);
  RomContents rom = testutil::rom_for(built);
  Device dev(rom, golden);

  // Wreck both the payload and the stored tag of frame 2.
  std::uint64_t slot = kFlashBase + kImageHeaderSize + 2 * kFrameSize;
  dev.write(AccessSource::SecureBoot, slot + 24,
            std::vector<std::uint8_t>(32, 0xEE));
  testutil::corrupt_frame_payload(dev, 2);

  recover(dev, rom, std::vector<std::uint32_t>{2}, testutil::frame_key());
  // The rebuilt frame is byte-identical: same payload, same derived tag.
  CHECK(flash_of(dev) == golden);
}

TEST_CASE("flash is write-protected for other sources after recovery") {
  BuildResult built = testutil::build();
  RomContents rom = testutil::rom_for(built);
  Device dev(rom, serialize_image(built.image));
  testutil::corrupt_frame_payload(dev, 4);
  recover(dev, rom, std::vector<std::uint32_t>{4}, testutil::frame_key());

  CHECK_THROWS_AS(dev.write(AccessSource::UntrustedCode, kFlashBase + 70,
                            std::vector<std::uint8_t>{1}),
                  CareError);
  CHECK_THROWS_AS(dev.erase_flash(AccessSource::Dma, kFlashBase + kImageHeaderSize,
                                  kFrameSize),
                  CareError);
}
