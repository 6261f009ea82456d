#include "qpc/phase_mask.hpp"

#include <bit>
#include <string>

#include "qpc/errors.hpp"
#include "qpc/statevector.hpp"

namespace qpc {

PhaseMask::PhaseMask(unsigned qubits) : qubits_(qubits) {
  check_qubits(qubits);
  words_.assign((dimension() + 63) / 64, 0);
}

PhaseMask PhaseMask::singleton(unsigned qubits, std::uint64_t index) {
  PhaseMask mask(qubits);
  mask.insert(index);
  return mask;
}

PhaseMask PhaseMask::from_indices(unsigned qubits, std::span<const std::uint64_t> indices) {
  PhaseMask mask(qubits);
  for (std::uint64_t x : indices) mask.insert(x);
  return mask;
}

void PhaseMask::insert(std::uint64_t index) {
  if (index >= dimension()) {
    throw ParameterError("mask index " + std::to_string(index) + " out of range for " +
                         std::to_string(qubits_) + " qubits");
  }
  words_[index / 64] |= std::uint64_t{1} << (index % 64);
}

bool PhaseMask::contains(std::uint64_t index) const {
  if (index >= dimension()) return false;
  return (words_[index / 64] >> (index % 64)) & 1u;
}

std::size_t PhaseMask::count() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::uint64_t> PhaseMask::members() const {
  std::vector<std::uint64_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      out.push_back(w * 64 + static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

PhaseMask PhaseMask::complement() const {
  PhaseMask out(qubits_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  if (dimension() < 64) out.words_[0] &= (std::uint64_t{1} << dimension()) - 1;
  return out;
}

}  // namespace qpc
