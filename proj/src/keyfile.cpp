#include "qpc/keyfile.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "qpc/errors.hpp"

namespace qpc::io {
namespace {

std::uint64_t parse_uint(std::string_view field, std::string_view text, int base) {
  if (base == 16 && (text.starts_with("0x") || text.starts_with("0X"))) text.remove_prefix(2);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw FormatError("key file: bad value for '" + std::string(field) + "': '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string format_keyfile(const KeyFile& keyfile) {
  std::ostringstream os;
  os << "n=" << keyfile.qubits << '\n'
     << "k=" << std::hex << keyfile.key << std::dec << '\n'
     << "r=" << keyfile.block_count << '\n';
  if (keyfile.bb84_seed) os << "origin=bb84:" << *keyfile.bb84_seed << '\n';
  return os.str();
}

KeyFile parse_keyfile(std::string_view text) {
  KeyFile kf;
  bool have_n = false, have_k = false, have_r = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw FormatError("key file: expected name=value, got '" + std::string(line) + "'");
    const std::string_view name = line.substr(0, eq);
    const std::string_view value = line.substr(eq + 1);
    if (name == "n") {
      const std::uint64_t n = parse_uint(name, value, 10);
      if (n > 64) throw FormatError("key file: n out of range");
      kf.qubits = static_cast<unsigned>(n);
      have_n = true;
    } else if (name == "k") {
      kf.key = parse_uint(name, value, 16);
      have_k = true;
    } else if (name == "r") {
      kf.block_count = parse_uint(name, value, 10);
      have_r = true;
    } else if (name == "origin") {
      if (!value.starts_with("bb84:")) throw FormatError("key file: unknown origin '" + std::string(value) + "'");
      kf.bb84_seed = parse_uint(name, value.substr(5), 10);
    } else {
      throw FormatError("key file: unknown field '" + std::string(name) + "'");
    }
  }
  if (!have_n || !have_k || !have_r) throw FormatError("key file: n, k and r are all required");
  try {
    (void)kf.schedule();
  } catch (const ParameterError& e) {
    throw FormatError(std::string("key file: ") + e.what());
  }
  return kf;
}

KeyFile load_keyfile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open key file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_keyfile(ss.str());
}

}  // namespace qpc::io
