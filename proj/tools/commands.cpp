#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include "qpc/attack.hpp"
#include "qpc/bb84.hpp"
#include "qpc/channel.hpp"
#include "qpc/cipher.hpp"
#include "qpc/errors.hpp"
#include "qpc/frame.hpp"
#include "qpc/kernels.hpp"
#include "qpc/keyfile.hpp"
#include "qpc/report_io.hpp"

namespace qpc::cli {
namespace {

// Writes text to `path`, or to `fallback` when no path is given.
bool emit(const std::optional<std::filesystem::path>& path, const std::string& text,
          std::ostream& fallback, std::ostream& err) {
  if (!path) {
    fallback << text;
    return true;
  }
  std::ofstream f(*path, std::ios::trunc);
  if (f) f << text;
  if (!f) {
    err << "error: cannot write " << path->string() << '\n';
    return false;
  }
  return true;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

int cmd_keygen(const KeygenOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.qubits < 4 || opts.qubits > kMaxQubits) {
    err << "error: --n must be in [4, " << kMaxQubits << "]\n";
    return kExitUsage;
  }
  try {
    const Bb84Session session = run_bb84(opts.length, opts.eve, opts.seed);
    err << "bb84 seed=" << session.seed << " length=" << session.length
        << " eve=" << (session.eve_present ? 1 : 0) << " sifted=" << session.sifted_positions.size()
        << " sample=" << session.sample_positions.size() << " qber=" << fmt("%.4f", session.qber)
        << '\n';
    if (opts.session_out && !emit(opts.session_out, format_session(session), out, err)) {
      return kExitFormat;
    }
    const ExtractedKey extracted = extract_key(session, opts.qubits);
    const KeySchedule schedule = derive_schedule(opts.qubits, extracted.key, opts.block_count);
    const io::KeyFile kf{opts.qubits, schedule.key(), schedule.block_count(), opts.seed};
    if (!emit(opts.out, io::format_keyfile(kf), out, err)) return kExitFormat;
    return kExitOk;
  } catch (const QkdAbortError& e) {
    err << e.what() << '\n';
    return kExitQkdAbort;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_encrypt(const EncryptOptions& opts, std::ostream& out, std::ostream& err) {
  io::KeyFile kf;
  try {
    kf = io::load_keyfile(opts.keyfile);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  if (opts.message >= (std::uint64_t{1} << kf.qubits)) {
    err << "error: message " << opts.message << " does not fit in " << kf.qubits << " bits\n";
    return kExitUsage;
  }
  const KeySchedule schedule = kf.schedule();
  const CipherText c = encrypt(Message(kf.qubits, opts.message), schedule);
  const auto bytes = io::encode_frame({io::kFlagCiphertext, c.state});
  try {
    io::write_file(opts.out, bytes);
  } catch (const std::system_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  out << "wrote " << bytes.size() << " bytes to " << opts.out.string() << '\n';
  return kExitOk;
}

int cmd_decrypt(const DecryptOptions& opts, std::ostream& out, std::ostream& err) {
  io::KeyFile kf;
  io::StateFrame frame;
  try {
    kf = io::load_keyfile(opts.keyfile);
    frame = io::decode_frame(io::read_file(opts.in));
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  if (frame.state.qubits() != kf.qubits) {
    err << "error: frame carries " << frame.state.qubits() << " qubits, key is for " << kf.qubits
        << '\n';
    return kExitFormat;
  }
  try {
    const Message m = decrypt(CipherText{std::move(frame.state)}, kf.schedule());
    out << m.value() << '\n';
    return kExitOk;
  } catch (const IntegrityError& e) {
    err << "integrity failure: " << e.what() << '\n';
    return kExitIntegrity;
  }
}

int cmd_attack(const AttackOptions& opts, std::ostream& out, std::ostream& err) {
  using namespace qpc::attack;
  const bool known = opts.scenario == "single" || opts.scenario == "multi" ||
                     opts.scenario == "grover" || opts.scenario == "reuse";
  if (!known) {
    err << "error: unknown scenario '" << opts.scenario << "' (single|multi|grover|reuse)\n";
    return kExitUsage;
  }
  try {
    check_qubits(opts.qubits);
    const std::uint64_t dim = std::uint64_t{1} << opts.qubits;
    std::mt19937_64 engine(opts.seed);
    const std::uint64_t key = opts.key ? *opts.key : (engine() & (dim - 1));
    if (key >= dim) throw ParameterError("key out of range");

    AttackReport report;
    if (opts.scenario == "single") {
      report = cpa_single_key(opts.qubits, key, opts.rounds, opts.plaintext);
    } else if (opts.scenario == "grover") {
      report = grover_key_search(opts.qubits, key);
    } else {
      const KeySchedule schedule = derive_schedule(opts.qubits, key, opts.block_count);
      if (opts.scenario == "multi") {
        report = cpa_multi_key(schedule, opts.rounds, opts.plaintext);
      } else {
        const std::size_t uses =
            opts.uses ? *opts.uses : static_cast<std::size_t>(std::floor(std::sqrt(double(dim))));
        report = reuse_sweep(schedule, uses, opts.seed);
      }
    }

    std::ostringstream csv;
    io::write_attack_csv(csv, report);
    if (!emit(opts.out_csv, csv.str(), out, err)) return kExitFormat;
    (opts.out_csv ? out : err) << io::format_summary(report) << '\n';
    if (opts.jsonl) {
      std::ofstream j(*opts.jsonl, std::ios::app);
      if (j) j << io::format_json_line(report) << '\n';
      if (!j) {
        err << "error: cannot write " << opts.jsonl->string() << '\n';
        return kExitFormat;
      }
    }
    return kExitOk;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_send(const SendOptions& opts, std::ostream& out, std::ostream& err) {
  io::KeyFile kf;
  try {
    kf = io::load_keyfile(opts.keyfile);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  io::Endpoint ep;
  try {
    ep = io::parse_endpoint(opts.endpoint);
    for (std::uint64_t m : opts.messages) (void)Message(kf.qubits, m);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const KeySchedule schedule = kf.schedule();
  try {
    io::Connection conn = io::Connection::connect(ep);
    for (std::uint64_t m : opts.messages) {
      const CipherText c = encrypt(Message(kf.qubits, m), schedule);
      auto bytes = io::encode_frame({io::kFlagCiphertext, c.state});
      if (opts.tamper) {
        // Sign bit of Re(amplitude[0]): one extra phase flip in transit.
        bytes[io::kFrameHeaderSize + 7] ^= 0x80;
      }
      conn.send_frame(bytes);
      const std::uint8_t status = conn.recv_status();
      out << "sent m=" << m << " status=" << static_cast<int>(status) << '\n';
      if (status != 0) {
        err << "receiver rejected message " << m << " with status " << static_cast<int>(status)
            << '\n';
        return status;
      }
    }
    return kExitOk;
  } catch (const TransportError& e) {
    err << "transport error: " << e.what() << '\n';
    return kExitTransport;
  }
}

int cmd_recv(const RecvOptions& opts, std::ostream& out, std::ostream& err) {
  io::KeyFile kf;
  try {
    kf = io::load_keyfile(opts.keyfile);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  io::Endpoint ep;
  try {
    ep = io::parse_endpoint(opts.listen);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const KeySchedule schedule = kf.schedule();
  try {
    io::Listener listener(ep);
    err << "listening on " << ep.host << ':' << listener.port() << '\n';
    if (opts.port_file && !emit(opts.port_file, std::to_string(listener.port()) + "\n", out, err)) {
      return kExitFormat;
    }
    io::Connection conn = listener.accept();
    std::size_t received = 0;
    while (!opts.count || received < *opts.count) {
      std::optional<std::vector<std::uint8_t>> bytes;
      io::StateFrame frame;
      try {
        bytes = conn.recv_frame();
        if (!bytes) break;
        frame = io::decode_frame(*bytes);
        if (frame.state.qubits() != kf.qubits) throw FormatError("frame dimension does not match key");
      } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        conn.send_status(kExitFormat);
        return kExitFormat;
      }
      try {
        const Message m = decrypt(CipherText{std::move(frame.state)}, schedule);
        out << m.value() << std::endl;
        conn.send_status(kExitOk);
      } catch (const IntegrityError& e) {
        err << "integrity failure: " << e.what() << '\n';
        conn.send_status(kExitIntegrity);
        return kExitIntegrity;
      }
      ++received;
    }
    return kExitOk;
  } catch (const TransportError& e) {
    err << "transport error: " << e.what() << '\n';
    return kExitTransport;
  }
}

int cmd_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.min_qubits < 1 || opts.max_qubits > kMaxQubits || opts.min_qubits > opts.max_qubits ||
      opts.repeats == 0) {
    err << "error: need 1 <= min-n <= max-n <= " << kMaxQubits << " and repeats >= 1\n";
    return kExitUsage;
  }
  if (opts.kernel != "auto") {
    const auto isa = kernels::parse_isa(opts.kernel);
    if (!isa || !kernels::isa_available(*isa)) {
      err << "error: kernel '" << opts.kernel << "' unavailable\n";
      return kExitUsage;
    }
    kernels::select_isa(*isa);
  }
  err << "kernel=" << kernels::isa_name(kernels::active_isa()) << '\n';
  std::ostringstream csv;
  csv << "n,millis\n";
  for (unsigned n = opts.min_qubits; n <= opts.max_qubits; ++n) {
    StateVector state = basis_state(n, 0);
    double best = 1e300;
    for (std::size_t rep = 0; rep < opts.repeats; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      walsh_hadamard(state);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    csv << n << ',' << fmt("%.4f", best) << '\n';
  }
  return emit(opts.out, csv.str(), out, err) ? kExitOk : kExitFormat;
}

}  // namespace qpc::cli
