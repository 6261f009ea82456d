#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qpc/cipher.hpp"
#include "qpc/phase_mask.hpp"

namespace qpc::attack {

enum class Scenario { single_key_cpa, multi_key_cpa, grover, reuse_sweep, passive };

std::string_view scenario_name(Scenario s);

// One row of an attack trace. `success` is scenario specific: probability
// mass the adversary would observe on the marked set (CPA), on the target key
// (Grover) or on the true key in the aggregated probe (reuse sweep).
struct RoundRecord {
  std::size_t round = 0;
  double ratio = 0.0;
  double tv = 0.0;
  double success = 0.0;
};

struct AttackReport {
  unsigned qubits = 0;
  Scenario scenario = Scenario::passive;

  // Headline numbers. For CPA runs these come from the round whose ratio is
  // furthest from 1 (the adversary's best round).
  double ratio_pk_px = 1.0;
  double tv_distance = 0.0;
  std::size_t iterations = 0;
  double success_probability = 0.0;
  std::optional<std::vector<double>> per_state_probs;

  std::vector<RoundRecord> rounds;

  // CPA: largest elementwise deviation between any even-round state and the
  // round-0 state.
  double even_round_deviation = 0.0;
  // Grover: largest |simulated - sin^2((2t+1) theta)| over all t.
  double closed_form_error = 0.0;
  // Reuse sweep: TV distance of the aggregated mean-inversion probe from
  // uniform.
  double advantage = 0.0;
};

// Mean probability over the mask divided by mean probability over its
// complement. Throws ParameterError for an empty or full mask.
double masked_ratio(std::span<const double> probs, const PhaseMask& mask);

// Passive observer: per-state probabilities of the ciphertext against a mask.
AttackReport passive_ratio(const CipherText& ciphertext, const PhaseMask& mask);

// Chosen plaintext H|m>, flip `mask`, then reflect about H|m> `rounds` times.
// Round 0 is the flipped state before any reflection.
AttackReport cpa_phase_mask(const PhaseMask& mask, std::size_t rounds,
                            std::uint64_t plaintext = 0);

// Single key inversion Lambda_k. Odd rounds show ((3N-4)/(N-4))^2, even
// rounds return to the round-0 state.
AttackReport cpa_single_key(unsigned qubits, std::uint64_t key, std::size_t rounds,
                            std::uint64_t plaintext = 0);

// M = N/2 inversion from the schedule mask; flat after every round.
AttackReport cpa_multi_key(const KeySchedule& schedule, std::size_t rounds,
                           std::uint64_t plaintext = 0);
// Same, for an arbitrary mask; throws ParameterError unless |mask| = N/2.
AttackReport cpa_multi_key(const PhaseMask& mask, std::size_t rounds, std::uint64_t plaintext = 0);

inline constexpr unsigned kMaxGroverQubits = 16;

// floor(pi/4 * sqrt(N))
std::size_t grover_iterations(unsigned qubits);

// sin^2((2t+1) asin(1/sqrt(N)))
double grover_success_closed_form(unsigned qubits, std::size_t iterations);

// Amplitude amplification with Lambda_key as oracle and reflection about the
// uniform state as diffuser. Rows cover t = 0 .. grover_iterations(n).
AttackReport grover_key_search(unsigned qubits, std::uint64_t oracle_key);

// Encrypts `uses` random messages under one schedule and aggregates what an
// adversary sees, both raw and after one mean-inversion probe per ciphertext.
// Measurement only; no bound is asserted.
AttackReport reuse_sweep(const KeySchedule& schedule, std::size_t uses, std::uint64_t seed);

}  // namespace qpc::attack
