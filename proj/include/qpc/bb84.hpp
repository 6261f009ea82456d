#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qpc {

inline constexpr std::size_t kMinBb84Length = 64;
inline constexpr double kQberAbortThreshold = 0.11;
inline constexpr double kDefaultQberSampleFraction = 0.2;

enum class Basis : std::uint8_t { rectilinear = 0, diagonal = 1 };

// One noiseless prepare-and-measure run. Bits and bases are stored one per
// byte (0 or 1); basis 0 is rectilinear, 1 is diagonal.
struct Bb84Session {
  std::uint64_t seed = 0;
  std::size_t length = 0;
  bool eve_present = false;
  double qber_sample_fraction = kDefaultQberSampleFraction;

  std::vector<std::uint8_t> alice_bits;
  std::vector<std::uint8_t> alice_bases;
  std::vector<std::uint8_t> bob_bases;
  std::vector<std::uint8_t> bob_bits;

  // Transmission slots where the two bases agree, ascending.
  std::vector<std::size_t> sifted_positions;
  // Transmission slots disclosed for error estimation, ascending.
  std::vector<std::size_t> sample_positions;
  std::size_t sample_errors = 0;
  double qber = 0.0;

  // Sifted bits that survive the disclosure, in slot order.
  std::vector<std::uint8_t> sifted_key;      // Alice's copy
  std::vector<std::uint8_t> bob_sifted_key;  // Bob's copy

  double sift_fraction() const {
    return length == 0 ? 0.0 : static_cast<double>(sifted_positions.size()) / static_cast<double>(length);
  }
};

// Deterministic in (length, eve, seed, sample_fraction). The generator is
// std::mt19937_64 seeded with `seed`. With `eve`, an intercept-resend
// adversary measures each qubit in a random basis and forwards the outcome.
Bb84Session run_bb84(std::size_t length, bool eve, std::uint64_t seed,
                     double sample_fraction = kDefaultQberSampleFraction);

struct ExtractedKey {
  std::uint64_t key = 0;
  std::vector<std::uint8_t> remaining;
};

enum class Party { alice, bob };

// Packs the first n retained sifted bits into k (bit i of k is stream bit i).
// Throws QkdAbortError when qber >= kQberAbortThreshold and ParameterError
// when fewer than n bits remain.
ExtractedKey extract_key(const Bb84Session& session, unsigned qubits, Party party = Party::alice);

// Line-oriented `name=value` dump; bit arrays are written as 0/1 strings.
std::string format_session(const Bb84Session& session);

}  // namespace qpc
