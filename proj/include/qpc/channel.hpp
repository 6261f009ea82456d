#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpc::io {

// The simulated quantum channel: a reliable ordered TCP byte stream. Each
// message is a 32-bit little-endian byte count followed by one StateFrame.
// The receiver answers every frame with a one-byte status (an exit code:
// 0 accepted, 4 format error, 5 integrity error).

struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
};

// "host:port" or ":port"; throws ParameterError.
Endpoint parse_endpoint(std::string_view text);

// Frames larger than this are rejected before allocation.
inline constexpr std::uint32_t kMaxFrameBytes = 8 + 16u * (1u << 26);

class Connection {
 public:
  explicit Connection(int fd) noexcept : fd_(fd) {}
  Connection(Connection&& other) noexcept;
  Connection& operator=(Connection&& other) noexcept;
  Connection(const Connection&) = delete;
  Connection& operator=(const Connection&) = delete;
  ~Connection();

  // Throws TransportError when the peer cannot be reached.
  static Connection connect(const Endpoint& endpoint);

  void send_frame(std::span<const std::uint8_t> frame);
  // nullopt on orderly shutdown before a length prefix. Throws
  // TransportError on a short read and FormatError on an oversized prefix.
  std::optional<std::vector<std::uint8_t>> recv_frame();

  void send_status(std::uint8_t code);
  std::uint8_t recv_status();

 private:
  void write_all(const std::uint8_t* data, std::size_t len);
  // false only if EOF occurs before the first byte.
  bool read_all(std::uint8_t* data, std::size_t len);

  int fd_ = -1;
};

class Listener {
 public:
  // Binds and listens; port 0 picks an ephemeral port. Throws TransportError.
  explicit Listener(const Endpoint& endpoint);
  Listener(Listener&& other) noexcept;
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;
  Listener& operator=(Listener&&) = delete;
  ~Listener();

  std::uint16_t port() const noexcept { return port_; }
  Connection accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace qpc::io
