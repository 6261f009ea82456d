#include "qpc/attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "qpc/errors.hpp"

namespace qpc::attack {
namespace {

double mass(std::span<const double> probs, const PhaseMask& mask) {
  double total = 0.0;
  for (std::uint64_t x : mask.members()) total += probs[x];
  return total;
}

// Fills the headline fields from the round whose ratio deviates most from 1.
void summarize_peak(AttackReport& report, std::size_t peak,
                    std::vector<double> peak_probs) {
  const RoundRecord& r = report.rounds[peak];
  report.ratio_pk_px = r.ratio;
  report.tv_distance = r.tv;
  report.success_probability = r.success;
  report.per_state_probs = std::move(peak_probs);
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::single_key_cpa:
      return "single_key_cpa";
    case Scenario::multi_key_cpa:
      return "multi_key_cpa";
    case Scenario::grover:
      return "grover";
    case Scenario::reuse_sweep:
      return "reuse_sweep";
    case Scenario::passive:
      return "passive";
  }
  return "unknown";
}

double masked_ratio(std::span<const double> probs, const PhaseMask& mask) {
  if (probs.size() != mask.dimension()) throw ParameterError("mask/probability size mismatch");
  const std::size_t inside = mask.count();
  if (inside == 0 || inside == probs.size()) {
    throw ParameterError("ratio undefined for an empty or full mask");
  }
  double total = 0.0;
  for (double p : probs) total += p;
  const double in_mass = mass(probs, mask);
  const double mean_in = in_mass / static_cast<double>(inside);
  const double mean_out = (total - in_mass) / static_cast<double>(probs.size() - inside);
  if (mean_out == 0.0) return mean_in == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                             : std::numeric_limits<double>::infinity();
  return mean_in / mean_out;
}

AttackReport passive_ratio(const CipherText& ciphertext, const PhaseMask& mask) {
  if (mask.qubits() != ciphertext.qubits()) throw ParameterError("dimension mismatch");
  std::vector<double> probs = probabilities(ciphertext.state);
  AttackReport report;
  report.qubits = ciphertext.qubits();
  report.scenario = Scenario::passive;
  report.ratio_pk_px = masked_ratio(probs, mask);
  report.tv_distance = tv_distance_from_uniform(probs);
  report.success_probability = mass(probs, mask);
  report.rounds.push_back({0, report.ratio_pk_px, report.tv_distance, report.success_probability});
  report.per_state_probs = std::move(probs);
  return report;
}

AttackReport cpa_phase_mask(const PhaseMask& mask, std::size_t rounds, std::uint64_t plaintext) {
  if (rounds < 2) throw ParameterError("a chosen-plaintext run needs at least 2 rounds");
  const unsigned n = mask.qubits();

  StateVector reference = basis_state(n, plaintext);
  walsh_hadamard(reference);
  StateVector state = reference;
  phase_flip(state, mask);
  const StateVector round0 = state;

  AttackReport report;
  report.qubits = n;
  report.scenario = Scenario::multi_key_cpa;
  report.iterations = rounds;

  std::size_t peak = 0;
  double peak_dev = -1.0;
  std::vector<double> peak_probs;
  for (std::size_t round = 0; round <= rounds; ++round) {
    if (round > 0) mean_inversion(state, reference);
    std::vector<double> probs = probabilities(state);
    const RoundRecord rec{round, masked_ratio(probs, mask), tv_distance_from_uniform(probs),
                          mass(probs, mask)};
    report.rounds.push_back(rec);
    if (round % 2 == 0) {
      report.even_round_deviation = std::max(report.even_round_deviation, max_deviation(state, round0));
    }
    const double dev = std::isfinite(rec.ratio) ? std::abs(rec.ratio - 1.0)
                                                : std::numeric_limits<double>::infinity();
    if (dev > peak_dev) {
      peak_dev = dev;
      peak = round;
      peak_probs = std::move(probs);
    }
  }
  summarize_peak(report, peak, std::move(peak_probs));
  return report;
}

AttackReport cpa_single_key(unsigned qubits, std::uint64_t key, std::size_t rounds,
                            std::uint64_t plaintext) {
  AttackReport report = cpa_phase_mask(PhaseMask::singleton(qubits, key), rounds, plaintext);
  report.scenario = Scenario::single_key_cpa;
  return report;
}

AttackReport cpa_multi_key(const KeySchedule& schedule, std::size_t rounds,
                           std::uint64_t plaintext) {
  return cpa_multi_key(schedule.mask(), rounds, plaintext);
}

AttackReport cpa_multi_key(const PhaseMask& mask, std::size_t rounds, std::uint64_t plaintext) {
  if (mask.count() != mask.dimension() / 2) {
    throw ParameterError("multi-key attack needs a mask of exactly N/2 states, got " +
                         std::to_string(mask.count()));
  }
  AttackReport report = cpa_phase_mask(mask, rounds, plaintext);
  report.scenario = Scenario::multi_key_cpa;
  return report;
}

std::size_t grover_iterations(unsigned qubits) {
  const double n = static_cast<double>(std::uint64_t{1} << qubits);
  return static_cast<std::size_t>(std::floor(std::numbers::pi / 4.0 * std::sqrt(n)));
}

double grover_success_closed_form(unsigned qubits, std::size_t iterations) {
  const double n = static_cast<double>(std::uint64_t{1} << qubits);
  const double theta = std::asin(1.0 / std::sqrt(n));
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

AttackReport grover_key_search(unsigned qubits, std::uint64_t oracle_key) {
  if (qubits < 1 || qubits > kMaxGroverQubits) {
    throw ParameterError("Grover search supports 1 to " + std::to_string(kMaxGroverQubits) +
                         " qubits");
  }
  const PhaseMask oracle = PhaseMask::singleton(qubits, oracle_key);
  const StateVector diffuser_ref = uniform_state(qubits);
  StateVector state = diffuser_ref;

  AttackReport report;
  report.qubits = qubits;
  report.scenario = Scenario::grover;
  report.iterations = grover_iterations(qubits);

  std::vector<double> probs;
  for (std::size_t t = 0; t <= report.iterations; ++t) {
    if (t > 0) {
      phase_flip(state, oracle);
      mean_inversion(state, diffuser_ref);
    }
    probs = probabilities(state);
    const double success = probs[oracle_key];
    report.rounds.push_back(
        {t, masked_ratio(probs, oracle), tv_distance_from_uniform(probs), success});
    report.closed_form_error =
        std::max(report.closed_form_error, std::abs(success - grover_success_closed_form(qubits, t)));
  }
  const RoundRecord& last = report.rounds.back();
  report.ratio_pk_px = last.ratio;
  report.tv_distance = last.tv;
  report.success_probability = last.success;
  report.per_state_probs = std::move(probs);
  return report;
}

AttackReport reuse_sweep(const KeySchedule& schedule, std::size_t uses, std::uint64_t seed) {
  if (uses < 1) throw ParameterError("reuse sweep needs at least one use");
  const unsigned n = schedule.qubits();
  const std::size_t dim = std::size_t{1} << n;
  const StateVector probe_ref = uniform_state(n);

  std::mt19937_64 engine(seed);
  std::vector<double> raw_sum(dim, 0.0), probe_sum(dim, 0.0);
  std::vector<double> raw_mean(dim), probe_mean(dim);

  AttackReport report;
  report.qubits = n;
  report.scenario = Scenario::reuse_sweep;
  report.iterations = uses;

  for (std::size_t use = 1; use <= uses; ++use) {
    const Message m(n, engine() & (dim - 1));
    const CipherText c = encrypt(m, schedule);
    const std::vector<double> raw = probabilities(c.state);
    StateVector probed = c.state;
    mean_inversion(probed, probe_ref);
    const std::vector<double> probe = probabilities(probed);
    const double inv = 1.0 / static_cast<double>(use);
    for (std::size_t x = 0; x < dim; ++x) {
      raw_sum[x] += raw[x];
      probe_sum[x] += probe[x];
      raw_mean[x] = raw_sum[x] * inv;
      probe_mean[x] = probe_sum[x] * inv;
    }
    report.rounds.push_back({use, masked_ratio(probe_mean, schedule.mask()),
                             tv_distance_from_uniform(raw_mean), probe_mean[schedule.key()]});
  }
  const RoundRecord& last = report.rounds.back();
  report.ratio_pk_px = last.ratio;
  report.tv_distance = last.tv;
  report.success_probability = last.success;
  report.advantage = tv_distance_from_uniform(probe_mean);
  report.per_state_probs = std::move(probe_mean);
  return report;
}

}  // namespace qpc::attack
