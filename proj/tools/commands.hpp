#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qpc::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitQkdAbort = 3,
  kExitFormat = 4,
  kExitIntegrity = 5,
  kExitTransport = 6,
};

struct KeygenOptions {
  unsigned qubits = 0;
  std::uint64_t seed = 0;
  bool eve = false;
  std::size_t length = 10000;
  std::optional<std::uint64_t> block_count;
  std::optional<std::filesystem::path> out;          // stdout when absent
  std::optional<std::filesystem::path> session_out;  // BB84 session dump
};

struct EncryptOptions {
  std::filesystem::path keyfile;
  std::uint64_t message = 0;
  std::filesystem::path out;
};

struct DecryptOptions {
  std::filesystem::path keyfile;
  std::filesystem::path in;
};

struct AttackOptions {
  std::string scenario;  // single | multi | grover | reuse
  unsigned qubits = 0;
  std::optional<std::uint64_t> key;          // default: drawn from seed
  std::optional<std::uint64_t> block_count;  // default: derived from key
  std::size_t rounds = 6;
  std::uint64_t seed = 0;
  std::optional<std::size_t> uses;  // reuse only; default floor(sqrt(N))
  std::uint64_t plaintext = 0;
  std::optional<std::filesystem::path> out_csv;  // stdout when absent
  std::optional<std::filesystem::path> jsonl;    // append one JSON line
};

struct SendOptions {
  std::filesystem::path keyfile;
  std::string endpoint;
  std::vector<std::uint64_t> messages;
  bool tamper = false;
};

struct RecvOptions {
  std::filesystem::path keyfile;
  std::string listen = "127.0.0.1:0";
  std::optional<std::size_t> count;                    // until EOF when absent
  std::optional<std::filesystem::path> port_file;      // bound port written here
};

struct BenchOptions {
  unsigned min_qubits = 10;
  unsigned max_qubits = 20;
  std::size_t repeats = 3;
  std::string kernel = "auto";  // auto | scalar | avx2
  std::optional<std::filesystem::path> out;
};

int cmd_keygen(const KeygenOptions& opts, std::ostream& out, std::ostream& err);
int cmd_encrypt(const EncryptOptions& opts, std::ostream& out, std::ostream& err);
int cmd_decrypt(const DecryptOptions& opts, std::ostream& out, std::ostream& err);
int cmd_attack(const AttackOptions& opts, std::ostream& out, std::ostream& err);
int cmd_send(const SendOptions& opts, std::ostream& out, std::ostream& err);
int cmd_recv(const RecvOptions& opts, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace qpc::cli
