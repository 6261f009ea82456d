#include "qpc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qpc/errors.hpp"
#include "qpc/kernels.hpp"

namespace qpc {

void check_qubits(unsigned qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw ParameterError("qubit count " + std::to_string(qubits) + " outside [1, " +
                         std::to_string(kMaxQubits) + "]");
  }
}

StateVector::StateVector(unsigned qubits) : qubits_(qubits) {
  check_qubits(qubits);
  amplitudes_.assign(std::size_t{1} << qubits, Amplitude{});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(unsigned qubits, std::vector<Amplitude> amplitudes)
    : qubits_(qubits), amplitudes_(std::move(amplitudes)) {
  check_qubits(qubits);
  if (amplitudes_.size() != (std::size_t{1} << qubits)) {
    throw ParameterError("expected " + std::to_string(std::size_t{1} << qubits) +
                         " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const Amplitude& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector basis_state(unsigned qubits, std::uint64_t index) {
  check_qubits(qubits);
  if (index >= (std::uint64_t{1} << qubits)) {
    throw ParameterError("basis index " + std::to_string(index) + " out of range for " +
                         std::to_string(qubits) + " qubits");
  }
  StateVector state(qubits);
  state[0] = 0.0;
  state[index] = 1.0;
  return state;
}

StateVector uniform_state(unsigned qubits) {
  check_qubits(qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << qubits));
  return StateVector(qubits, std::vector<Amplitude>(std::size_t{1} << qubits, Amplitude{a, 0.0}));
}

StateVector& walsh_hadamard(StateVector& state) {
  kernels::active_kernels().walsh_hadamard(state.amplitudes());
  return state;
}

StateVector& phase_flip(StateVector& state, const PhaseMask& mask) {
  if (mask.qubits() != state.qubits()) {
    throw ParameterError("mask is over " + std::to_string(mask.qubits()) + " qubits, state over " +
                         std::to_string(state.qubits()));
  }
  kernels::active_kernels().flip_signs(state.amplitudes(), mask.words());
  return state;
}

StateVector& mean_inversion(StateVector& state, const StateVector& reference) {
  if (reference.qubits() != state.qubits()) {
    throw ParameterError("reference is over " + std::to_string(reference.qubits()) +
                         " qubits, state over " + std::to_string(state.qubits()));
  }
  const double tol = kNormTolerance * std::sqrt(static_cast<double>(reference.dimension()));
  if (std::abs(reference.norm() - 1.0) > tol) {
    throw ParameterError("reflection reference is not a unit vector");
  }
  const auto& k = kernels::active_kernels();
  const Amplitude overlap = k.inner_product(reference.amplitudes(), state.amplitudes());
  k.reflect(state.amplitudes(), reference.amplitudes(), 2.0 * overlap);
  return state;
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> out(state.dimension());
  kernels::active_kernels().abs_squared(state.amplitudes(), out);
  return out;
}

double max_deviation(const StateVector& a, const StateVector& b) {
  if (a.qubits() != b.qubits()) throw ParameterError("dimension mismatch");
  double worst = 0.0;
  for (std::size_t x = 0; x < a.dimension(); ++x) worst = std::max(worst, std::abs(a[x] - b[x]));
  return worst;
}

double tv_distance_from_uniform(std::span<const double> probs) {
  if (probs.empty()) return 0.0;
  const double u = 1.0 / static_cast<double>(probs.size());
  double sum = 0.0;
  for (double p : probs) sum += std::abs(p - u);
  return 0.5 * sum;
}

}  // namespace qpc
