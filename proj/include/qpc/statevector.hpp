#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qpc/phase_mask.hpp"

namespace qpc {

using Amplitude = std::complex<double>;

// 2^26 amplitudes of 16 bytes each is 1 GiB.
inline constexpr unsigned kMaxQubits = 26;

// Norm checks scale with sqrt(N); single amplitudes are compared absolutely.
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kAmplitudeTolerance = 1e-9;

// Throws ParameterError unless 1 <= qubits <= kMaxQubits.
void check_qubits(unsigned qubits);

// Dense pure state over n qubits. Basis index bit i is qubit i, so qubit 0 is
// the least significant bit.
class StateVector {
 public:
  // |0...0>
  explicit StateVector(unsigned qubits);
  // Takes ownership of the amplitudes; their count must be exactly 2^qubits.
  StateVector(unsigned qubits, std::vector<Amplitude> amplitudes);

  unsigned qubits() const noexcept { return qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }

  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  std::span<Amplitude> amplitudes() noexcept { return amplitudes_; }

  const Amplitude& operator[](std::size_t index) const { return amplitudes_[index]; }
  Amplitude& operator[](std::size_t index) { return amplitudes_[index]; }

  double norm() const;

  bool operator==(const StateVector&) const = default;

 private:
  unsigned qubits_;
  std::vector<Amplitude> amplitudes_;
};

StateVector basis_state(unsigned qubits, std::uint64_t index);

// H^n |0>, every amplitude 1/sqrt(N).
StateVector uniform_state(unsigned qubits);

// In-place H^n. On |m> produces amplitude (-1)^popcount(m & x) / sqrt(N) at x.
StateVector& walsh_hadamard(StateVector& state);

// Negates every amplitude whose index is in the mask.
StateVector& phase_flip(StateVector& state, const PhaseMask& mask);

// Reflection about `reference`: state <- 2 <reference|state> reference - state.
// The reference must be unit norm.
StateVector& mean_inversion(StateVector& state, const StateVector& reference);

// |amplitude[x]|^2 for every x.
std::vector<double> probabilities(const StateVector& state);

// Largest |a[x] - b[x]|; throws ParameterError on dimension mismatch.
double max_deviation(const StateVector& a, const StateVector& b);

// Half the L1 distance to the uniform distribution over probs.size() outcomes.
double tv_distance_from_uniform(std::span<const double> probs);

}  // namespace qpc
