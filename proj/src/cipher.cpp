#include "qpc/cipher.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <string>

#include "qpc/errors.hpp"

namespace qpc {
namespace {

std::uint64_t dimension_of(unsigned qubits) { return std::uint64_t{1} << qubits; }

void check_block_count(unsigned qubits, std::uint64_t blocks) {
  const std::uint64_t n = dimension_of(qubits);
  if (blocks < 2 || blocks % 2 != 0 || n % blocks != 0 || blocks >= n / 2) {
    throw ParameterError("block count r=" + std::to_string(blocks) +
                         " must be even, divide N=" + std::to_string(n) + " and be below N/2");
  }
}

void check_same_dimension(unsigned a, unsigned b) {
  if (a != b) {
    throw ParameterError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b) +
                         " qubits");
  }
}

}  // namespace

Message::Message(unsigned qubits, std::uint64_t value) : qubits_(qubits), value_(value) {
  check_qubits(qubits);
  if (value >= dimension_of(qubits)) {
    throw ParameterError("message " + std::to_string(value) + " does not fit in " +
                         std::to_string(qubits) + " bits");
  }
}

KeySchedule::KeySchedule(unsigned qubits, std::uint64_t key, std::uint64_t blocks, PhaseMask mask)
    : qubits_(qubits),
      key_(key),
      blocks_(blocks),
      block_length_(dimension_of(qubits) / blocks),
      mask_(std::move(mask)) {}

std::uint64_t derived_block_count(unsigned qubits, std::uint64_t key) {
  if (qubits < 4) {
    throw ParameterError("cannot derive a block count below 4 qubits without an explicit r");
  }
  const unsigned s = 1 + static_cast<unsigned>(std::popcount(key)) % (qubits - 2);
  return std::uint64_t{1} << s;
}

std::vector<std::uint64_t> admissible_block_counts(unsigned qubits) {
  check_qubits(qubits);
  std::vector<std::uint64_t> out;
  // r | 2^n means r is a power of two.
  for (std::uint64_t r = 2; r < dimension_of(qubits) / 2; r *= 2) out.push_back(r);
  return out;
}

KeySchedule derive_schedule(unsigned qubits, std::uint64_t key,
                            std::optional<std::uint64_t> block_count_hint) {
  check_qubits(qubits);
  if (key >= dimension_of(qubits)) {
    throw ParameterError("key " + std::to_string(key) + " out of range for " +
                         std::to_string(qubits) + " qubits");
  }
  const std::uint64_t blocks =
      block_count_hint ? *block_count_hint : derived_block_count(qubits, key);
  check_block_count(qubits, blocks);
  return KeySchedule(qubits, key, blocks, block_mask(qubits, key, dimension_of(qubits) / blocks));
}

PhaseMask block_mask(unsigned qubits, std::uint64_t key, std::uint64_t block_length) {
  check_qubits(qubits);
  const std::uint64_t n = dimension_of(qubits);
  if (key >= n) throw ParameterError("key out of range");
  if (block_length == 0 || n % block_length != 0 || (n / block_length) % 2 != 0) {
    throw ParameterError("block length d=" + std::to_string(block_length) +
                         " must divide N=" + std::to_string(n) + " into an even number of blocks");
  }
  PhaseMask mask(qubits);
  const std::uint64_t blocks = n / block_length;
  for (std::uint64_t b = 0; b < blocks; b += 2) {
    const std::uint64_t start = key + b * block_length;
    for (std::uint64_t i = 0; i < block_length; ++i) mask.insert((start + i) & (n - 1));
  }
  return mask;
}

StateVector& key_phase_inversion(StateVector& state, const KeySchedule& schedule) {
  check_same_dimension(state.qubits(), schedule.qubits());
  return key_phase_inversion(state, schedule.key());
}

StateVector& key_phase_inversion(StateVector& state, std::uint64_t key) {
  if (key >= state.dimension()) throw ParameterError("key out of range");
  state[key] = -state[key];
  return state;
}

StateVector& multi_phase_inversion(StateVector& state, const KeySchedule& schedule) {
  check_same_dimension(state.qubits(), schedule.qubits());
  return phase_flip(state, schedule.mask());
}

StateVector& multi_phase_inversion(StateVector& state, const PhaseMask& mask) {
  return phase_flip(state, mask);
}

CipherText encrypt(const Message& message, const KeySchedule& schedule) {
  check_same_dimension(message.qubits(), schedule.qubits());
  StateVector state = basis_state(message.qubits(), message.value());
  walsh_hadamard(state);
  key_phase_inversion(state, schedule);
  multi_phase_inversion(state, schedule);
  return CipherText{std::move(state)};
}

StateVector decode_state(const CipherText& ciphertext, const KeySchedule& schedule) {
  check_same_dimension(ciphertext.qubits(), schedule.qubits());
  StateVector state = ciphertext.state;
  multi_phase_inversion(state, schedule);
  key_phase_inversion(state, schedule);
  walsh_hadamard(state);
  return state;
}

Message decrypt(const CipherText& ciphertext, const KeySchedule& schedule) {
  const StateVector decoded = decode_state(ciphertext, schedule);
  std::vector<double> probs = probabilities(decoded);
  // Measurement statistics are those of the normalised state.
  double total = 0.0;
  for (double p : probs) total += p;
  if (!(total > 0.0)) throw IntegrityError("decoded state has zero norm", std::move(probs), 0.0);
  for (double& p : probs) p /= total;
  const auto best = std::max_element(probs.begin(), probs.end());
  const double p = *best;
  if (!(p >= kDecodeThreshold)) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "decoded state is not a basis vector (max probability %.9f at index %zu)", p,
                  static_cast<std::size_t>(best - probs.begin()));
    throw IntegrityError(buf, std::move(probs), p);
  }
  return Message(decoded.qubits(), static_cast<std::uint64_t>(best - probs.begin()));
}

AuthResult authenticate(const Message& identity, const CipherText& received,
                        const KeySchedule& schedule) {
  if (identity.qubits() != received.qubits() || identity.qubits() != schedule.qubits()) {
    return {false, "dimension mismatch"};
  }
  try {
    const Message decoded = decrypt(received, schedule);
    if (decoded != identity) {
      return {false, "decoded identity " + std::to_string(decoded.value()) + " != expected " +
                         std::to_string(identity.value())};
    }
    return {true, "ok"};
  } catch (const IntegrityError& e) {
    return {false, e.what()};
  }
}

RekeyResult rekey(const Message& new_key, const KeySchedule& schedule) {
  CipherText c = encrypt(new_key, schedule);
  return {std::move(c), derive_schedule(new_key.qubits(), new_key.value())};
}

KeySchedule accept_rekey(const CipherText& ciphertext, const KeySchedule& schedule) {
  const Message new_key = decrypt(ciphertext, schedule);
  return derive_schedule(new_key.qubits(), new_key.value());
}

}  // namespace qpc
