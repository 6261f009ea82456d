#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpc/phase_mask.hpp"
#include "qpc/statevector.hpp"

namespace qpc {

// A decode is accepted only if one basis state carries at least this much
// probability.
inline constexpr double kDecodeThreshold = 1.0 - 1e-6;

// Classical n-bit message, 0 <= value < 2^n.
class Message {
 public:
  Message(unsigned qubits, std::uint64_t value);

  unsigned qubits() const noexcept { return qubits_; }
  std::uint64_t value() const noexcept { return value_; }

  bool operator==(const Message&) const = default;

 private:
  unsigned qubits_;
  std::uint64_t value_;
};

// Shared secret (k, r, d) plus the inverted set it induces. The set holds
// exactly N/2 indices arranged as alternating blocks of d states starting at
// k: invert d, skip d, ... wrapping mod N.
class KeySchedule {
 public:
  unsigned qubits() const noexcept { return qubits_; }
  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t block_count() const noexcept { return blocks_; }
  std::uint64_t block_length() const noexcept { return block_length_; }
  const PhaseMask& mask() const noexcept { return mask_; }

  bool operator==(const KeySchedule&) const = default;

 private:
  friend KeySchedule derive_schedule(unsigned, std::uint64_t, std::optional<std::uint64_t>);
  KeySchedule(unsigned qubits, std::uint64_t key, std::uint64_t blocks, PhaseMask mask);

  unsigned qubits_;
  std::uint64_t key_;
  std::uint64_t blocks_;
  std::uint64_t block_length_;
  PhaseMask mask_;
};

// Block count r derived from the key alone: r = 2^(1 + popcount(k) mod (n-2)).
// Requires n >= 4.
std::uint64_t derived_block_count(unsigned qubits, std::uint64_t key);

// Every r with r even, r | N, r < N/2.
std::vector<std::uint64_t> admissible_block_counts(unsigned qubits);

// Builds the schedule for key k. Without a hint r comes from
// derived_block_count; a hint must be even, divide N and be below N/2.
KeySchedule derive_schedule(unsigned qubits, std::uint64_t key,
                            std::optional<std::uint64_t> block_count_hint = std::nullopt);

// x is inverted iff floor(((x - k) mod N) / d) is even. N/d must be even.
PhaseMask block_mask(unsigned qubits, std::uint64_t key, std::uint64_t block_length);

// I - 2|k><k|
StateVector& key_phase_inversion(StateVector& state, const KeySchedule& schedule);
StateVector& key_phase_inversion(StateVector& state, std::uint64_t key);

// Flips every index of schedule.mask(); equal to the product of the
// singleton inversions over the mask.
StateVector& multi_phase_inversion(StateVector& state, const KeySchedule& schedule);
StateVector& multi_phase_inversion(StateVector& state, const PhaseMask& mask);

struct CipherText {
  StateVector state;

  unsigned qubits() const noexcept { return state.qubits(); }
};

// multi_phase_inversion(key_phase_inversion(H|m>))
CipherText encrypt(const Message& message, const KeySchedule& schedule);

// Decoder stages without the final measurement: H(Lambda_k(Upsilon(c))).
StateVector decode_state(const CipherText& ciphertext, const KeySchedule& schedule);

// Throws IntegrityError when the decoded state is not a basis vector
// (largest probability below kDecodeThreshold).
Message decrypt(const CipherText& ciphertext, const KeySchedule& schedule);

struct AuthResult {
  bool accepted = false;
  std::string reason;

  explicit operator bool() const noexcept { return accepted; }
};

// Accepts iff the ciphertext decrypts cleanly to `identity`.
AuthResult authenticate(const Message& identity, const CipherText& received,
                        const KeySchedule& schedule);

struct RekeyResult {
  CipherText ciphertext;
  KeySchedule successor;
};

// Sender side: encrypt the new key under the current schedule and derive the
// successor schedule from it.
RekeyResult rekey(const Message& new_key, const KeySchedule& schedule);

// Receiver side: decrypt the transported key and derive the same successor.
KeySchedule accept_rekey(const CipherText& ciphertext, const KeySchedule& schedule);

}  // namespace qpc
