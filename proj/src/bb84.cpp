#include "qpc/bb84.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "qpc/errors.hpp"

namespace qpc {
namespace {

// Hands out single bits from 64-bit engine draws, LSB first.
class BitSource {
 public:
  explicit BitSource(std::mt19937_64& engine) : engine_(engine) {}

  std::uint8_t next() {
    if (left_ == 0) {
      word_ = engine_();
      left_ = 64;
    }
    const auto bit = static_cast<std::uint8_t>(word_ & 1u);
    word_ >>= 1;
    --left_;
    return bit;
  }

 private:
  std::mt19937_64& engine_;
  std::uint64_t word_ = 0;
  unsigned left_ = 0;
};

// Measuring a qubit prepared as (bit, prep) in basis `meas`.
std::uint8_t measure(std::uint8_t bit, std::uint8_t prep, std::uint8_t meas, BitSource& coin) {
  return prep == meas ? bit : coin.next();
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
  return s;
}

}  // namespace

Bb84Session run_bb84(std::size_t length, bool eve, std::uint64_t seed, double sample_fraction) {
  if (length < kMinBb84Length) {
    throw ParameterError("BB84 length " + std::to_string(length) + " below minimum " +
                         std::to_string(kMinBb84Length));
  }
  if (!(sample_fraction > 0.0 && sample_fraction < 1.0)) {
    throw ParameterError("QBER sample fraction must lie in (0, 1)");
  }

  std::mt19937_64 engine(seed);
  BitSource coin(engine);

  Bb84Session s;
  s.seed = seed;
  s.length = length;
  s.eve_present = eve;
  s.qber_sample_fraction = sample_fraction;
  s.alice_bits.resize(length);
  s.alice_bases.resize(length);
  s.bob_bases.resize(length);
  s.bob_bits.resize(length);

  for (std::size_t i = 0; i < length; ++i) {
    s.alice_bits[i] = coin.next();
    s.alice_bases[i] = coin.next();
    std::uint8_t bit = s.alice_bits[i];
    std::uint8_t basis = s.alice_bases[i];
    if (eve) {
      const std::uint8_t eve_basis = coin.next();
      bit = measure(bit, basis, eve_basis, coin);
      basis = eve_basis;
    }
    s.bob_bases[i] = coin.next();
    s.bob_bits[i] = measure(bit, basis, s.bob_bases[i], coin);
  }

  for (std::size_t i = 0; i < length; ++i) {
    if (s.alice_bases[i] == s.bob_bases[i]) s.sifted_positions.push_back(i);
  }

  const std::size_t sifted = s.sifted_positions.size();
  const auto sample_size =
      static_cast<std::size_t>(std::ceil(sample_fraction * static_cast<double>(sifted)));
  if (sample_size == 0 || sample_size >= sifted) {
    throw ParameterError("sifted key of " + std::to_string(sifted) +
                         " bits is too short for the requested QBER sample");
  }

  // Partial Fisher-Yates over the sifted slots picks the disclosed sample.
  std::vector<std::size_t> order = s.sifted_positions;
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(engine() % (sifted - i));
    std::swap(order[i], order[j]);
  }
  s.sample_positions.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(sample_size));
  std::sort(s.sample_positions.begin(), s.sample_positions.end());

  for (std::size_t pos : s.sample_positions) {
    if (s.alice_bits[pos] != s.bob_bits[pos]) ++s.sample_errors;
  }
  s.qber = static_cast<double>(s.sample_errors) / static_cast<double>(sample_size);

  std::size_t next_sample = 0;
  for (std::size_t pos : s.sifted_positions) {
    if (next_sample < s.sample_positions.size() && s.sample_positions[next_sample] == pos) {
      ++next_sample;
      continue;
    }
    s.sifted_key.push_back(s.alice_bits[pos]);
    s.bob_sifted_key.push_back(s.bob_bits[pos]);
  }
  return s;
}

ExtractedKey extract_key(const Bb84Session& session, unsigned qubits, Party party) {
  if (session.qber >= kQberAbortThreshold) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "QKD abort: QBER %.4f >= threshold %.2f", session.qber,
                  kQberAbortThreshold);
    throw QkdAbortError(buf, session.qber);
  }
  if (qubits < 1 || qubits > 63) throw ParameterError("key width must be in [1, 63] bits");
  const auto& bits = party == Party::alice ? session.sifted_key : session.bob_sifted_key;
  if (bits.size() < qubits) {
    throw ParameterError("only " + std::to_string(bits.size()) + " sifted bits for a " +
                         std::to_string(qubits) + "-bit key");
  }
  ExtractedKey out;
  for (unsigned i = 0; i < qubits; ++i) {
    out.key |= static_cast<std::uint64_t>(bits[i] & 1u) << i;
  }
  out.remaining.assign(bits.begin() + qubits, bits.end());
  return out;
}

std::string format_session(const Bb84Session& s) {
  std::ostringstream os;
  os << "seed=" << s.seed << '\n'
     << "length=" << s.length << '\n'
     << "eve=" << (s.eve_present ? 1 : 0) << '\n'
     << "sifted=" << s.sifted_positions.size() << '\n'
     << "sample=" << s.sample_positions.size() << '\n'
     << "sample_errors=" << s.sample_errors << '\n';
  char q[32];
  std::snprintf(q, sizeof q, "%.6f", s.qber);
  os << "qber=" << q << '\n'
     << "alice_bits=" << bits_to_string(s.alice_bits) << '\n'
     << "alice_bases=" << bits_to_string(s.alice_bases) << '\n'
     << "bob_bases=" << bits_to_string(s.bob_bases) << '\n'
     << "bob_bits=" << bits_to_string(s.bob_bits) << '\n'
     << "sifted_key=" << bits_to_string(s.sifted_key) << '\n';
  return os.str();
}

}  // namespace qpc
