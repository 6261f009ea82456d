#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "qpc/statevector.hpp"

namespace qpc::io {

// StateFrame wire layout, all integers little-endian:
//   0  4  magic "QPC1"
//   4  1  version (1)
//   5  1  n
//   6  2  flags
//   8  .. 2^n x (re, im) IEEE-754 binary64, index order x = 0 .. N-1
inline constexpr std::array<std::uint8_t, 4> kFrameMagic{'Q', 'P', 'C', '1'};
inline constexpr std::uint8_t kFrameVersion = 1;
inline constexpr std::size_t kFrameHeaderSize = 8;

enum FrameFlags : std::uint16_t {
  kFlagCiphertext = 1u << 0,
  kFlagBasisState = 1u << 1,
};

struct StateFrame {
  std::uint16_t flags = 0;
  StateVector state{1};
};

std::size_t frame_size(unsigned qubits);

std::vector<std::uint8_t> encode_frame(const StateFrame& frame);

// Throws FormatError on bad magic/version/length, non-finite payload or a
// norm further than 1e-9 from 1.
StateFrame decode_frame(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
// Throws std::system_error when the file cannot be written.
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace qpc::io
