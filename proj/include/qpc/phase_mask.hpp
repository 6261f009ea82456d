#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qpc {

// Set of basis indices whose amplitude sign is flipped by a diagonal +-1
// unitary. Stored as a bitset of length 2^n (bit x % 64 of word x / 64).
class PhaseMask {
 public:
  explicit PhaseMask(unsigned qubits);

  static PhaseMask singleton(unsigned qubits, std::uint64_t index);
  static PhaseMask from_indices(unsigned qubits, std::span<const std::uint64_t> indices);

  unsigned qubits() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << qubits_; }

  void insert(std::uint64_t index);
  bool contains(std::uint64_t index) const;
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }

  // Members in increasing index order.
  std::vector<std::uint64_t> members() const;
  PhaseMask complement() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool operator==(const PhaseMask&) const = default;

 private:
  unsigned qubits_;
  std::vector<std::uint64_t> words_;
};

}  // namespace qpc
