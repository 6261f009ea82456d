#include "qpc/frame.hpp"

#include <algorithm>
#include <bit>
#include <cerrno>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

#include "qpc/errors.hpp"

namespace qpc::io {
namespace {

void put_u64(std::uint8_t* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::size_t frame_size(unsigned qubits) {
  return kFrameHeaderSize + 16 * (std::size_t{1} << qubits);
}

std::vector<std::uint8_t> encode_frame(const StateFrame& frame) {
  const unsigned n = frame.state.qubits();
  std::vector<std::uint8_t> out(frame_size(n));
  std::copy(kFrameMagic.begin(), kFrameMagic.end(), out.begin());
  out[4] = kFrameVersion;
  out[5] = static_cast<std::uint8_t>(n);
  out[6] = static_cast<std::uint8_t>(frame.flags & 0xff);
  out[7] = static_cast<std::uint8_t>(frame.flags >> 8);
  std::uint8_t* p = out.data() + kFrameHeaderSize;
  for (const Amplitude& a : frame.state.amplitudes()) {
    put_u64(p, std::bit_cast<std::uint64_t>(a.real()));
    put_u64(p + 8, std::bit_cast<std::uint64_t>(a.imag()));
    p += 16;
  }
  return out;
}

StateFrame decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFrameHeaderSize) {
    throw FormatError("frame truncated: " + std::to_string(bytes.size()) + " bytes");
  }
  if (!std::equal(kFrameMagic.begin(), kFrameMagic.end(), bytes.begin())) {
    throw FormatError("bad frame magic");
  }
  if (bytes[4] != kFrameVersion) {
    throw FormatError("unsupported frame version " + std::to_string(bytes[4]));
  }
  const unsigned n = bytes[5];
  if (n < 1 || n > kMaxQubits) throw FormatError("frame qubit count " + std::to_string(n) + " out of range");
  const auto flags = static_cast<std::uint16_t>(bytes[6] | (bytes[7] << 8));
  if (bytes.size() != frame_size(n)) {
    throw FormatError("frame length " + std::to_string(bytes.size()) + " != expected " +
                      std::to_string(frame_size(n)));
  }

  std::vector<Amplitude> amps(std::size_t{1} << n);
  const std::uint8_t* p = bytes.data() + kFrameHeaderSize;
  for (std::size_t x = 0; x < amps.size(); ++x, p += 16) {
    const double re = std::bit_cast<double>(get_u64(p));
    const double im = std::bit_cast<double>(get_u64(p + 8));
    if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("non-finite amplitude in frame");
    amps[x] = {re, im};
  }
  StateFrame frame{flags, StateVector(n, std::move(amps))};
  if (std::abs(frame.state.norm() - 1.0) > 1e-9) throw FormatError("frame state is not unit norm");
  return frame;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw std::system_error(errno ? errno : EIO, std::generic_category(),
                            "cannot write " + path.string());
  }
}

}  // namespace qpc::io
