// qpc: quantum phase cipher laboratory.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

// QPC_SEED, when set, takes precedence over --seed.
void apply_seed_override(std::uint64_t& seed) {
  if (const char* env = std::getenv("QPC_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed QPC_SEED='" << env << "'\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qpc::cli;

  CLI::App app{"Quantum phase cipher laboratory: encode, transmit, decode and attack"};
  app.require_subcommand(1);

  KeygenOptions keygen;
  std::string keygen_out, keygen_session;
  auto* kg = app.add_subcommand("keygen", "Run BB84 and write a key file");
  kg->add_option("--n", keygen.qubits, "Qubit count (>= 4)")->required();
  kg->add_option("--seed", keygen.seed, "BB84 RNG seed");
  kg->add_flag("--eve", keygen.eve, "Insert an intercept-resend eavesdropper");
  kg->add_option("--length", keygen.length, "Transmitted qubits")->capture_default_str();
  kg->add_option("--r", keygen.block_count, "Explicit block count r");
  kg->add_option("--out", keygen_out, "Key file path (default stdout)");
  kg->add_option("--session-out", keygen_session, "Write the BB84 session dump here");

  EncryptOptions enc;
  auto* en = app.add_subcommand("encrypt", "Encrypt a message into a StateFrame file");
  en->add_option("--key", enc.keyfile, "Key file")->required();
  en->add_option("--m", enc.message, "Message value")->required();
  en->add_option("--out", enc.out, "Output frame")->required();

  DecryptOptions dec;
  auto* de = app.add_subcommand("decrypt", "Decrypt a StateFrame file");
  de->add_option("--key", dec.keyfile, "Key file")->required();
  de->add_option("--in", dec.in, "Input frame")->required();

  AttackOptions atk;
  std::string atk_out, atk_jsonl;
  auto* at = app.add_subcommand("attack", "Run an adversary scenario and write CSV");
  at->add_option("--scenario", atk.scenario, "single | multi | grover | reuse")->required();
  at->add_option("--n", atk.qubits, "Qubit count")->required();
  at->add_option("--k", atk.key, "Key index (default drawn from seed)");
  at->add_option("--r", atk.block_count, "Block count (default derived from key)");
  at->add_option("--rounds", atk.rounds, "Mean-inversion rounds")->capture_default_str();
  at->add_option("--seed", atk.seed, "RNG seed");
  at->add_option("--uses", atk.uses, "Ciphertexts per key for the reuse sweep");
  at->add_option("--m", atk.plaintext, "Chosen plaintext")->capture_default_str();
  at->add_option("--out", atk_out, "CSV path (default stdout)");
  at->add_option("--jsonl", atk_jsonl, "Append a JSON-lines summary here");

  SendOptions snd;
  auto* sd = app.add_subcommand("send", "Encrypt and send messages over the channel");
  sd->add_option("--key", snd.keyfile, "Key file")->required();
  sd->add_option("--to", snd.endpoint, "Receiver host:port")->required();
  sd->add_option("--m", snd.messages, "Message values, in order")->required();
  sd->add_flag("--tamper", snd.tamper, "Flip one payload sign in transit");

  RecvOptions rcv;
  std::string rcv_port_file;
  std::size_t rcv_count = 0;
  auto* rv = app.add_subcommand("recv", "Receive, decrypt and print messages");
  rv->add_option("--key", rcv.keyfile, "Key file")->required();
  rv->add_option("--listen", rcv.listen, "Bind address host:port")->capture_default_str();
  rv->add_option("--count", rcv_count, "Stop after this many messages");
  rv->add_option("--port-file", rcv_port_file, "Write the bound port here");

  BenchOptions bench;
  std::string bench_out;
  auto* bn = app.add_subcommand("bench", "Time walsh_hadamard across n, CSV n,millis");
  bn->add_option("--min-n", bench.min_qubits)->capture_default_str();
  bn->add_option("--max-n", bench.max_qubits)->capture_default_str();
  bn->add_option("--repeats", bench.repeats)->capture_default_str();
  bn->add_option("--kernel", bench.kernel, "auto | scalar | avx2")->capture_default_str();
  bn->add_option("--out", bench_out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*kg) {
    apply_seed_override(keygen.seed);
    if (!keygen_out.empty()) keygen.out = keygen_out;
    if (!keygen_session.empty()) keygen.session_out = keygen_session;
    return cmd_keygen(keygen, out, err);
  }
  if (*en) return cmd_encrypt(enc, out, err);
  if (*de) return cmd_decrypt(dec, out, err);
  if (*at) {
    apply_seed_override(atk.seed);
    if (!atk_out.empty()) atk.out_csv = atk_out;
    if (!atk_jsonl.empty()) atk.jsonl = atk_jsonl;
    return cmd_attack(atk, out, err);
  }
  if (*sd) return cmd_send(snd, out, err);
  if (*rv) {
    if (rv->count("--count") > 0) rcv.count = rcv_count;
    if (!rcv_port_file.empty()) rcv.port_file = rcv_port_file;
    return cmd_recv(rcv, out, err);
  }
  if (*bn) {
    if (!bench_out.empty()) bench.out = bench_out;
    return cmd_bench(bench, out, err);
  }
  return kExitUsage;
}
