#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "qpc/cipher.hpp"

namespace qpc::io {

// Shared key material exchanged out of band:
//   n=<int>
//   k=<hex>
//   r=<int>
//   origin=bb84:<seed>     (optional)
// d is never stored; both peers recompute it from (n, k, r).
struct KeyFile {
  unsigned qubits = 0;
  std::uint64_t key = 0;
  std::uint64_t block_count = 0;
  std::optional<std::uint64_t> bb84_seed;

  KeySchedule schedule() const { return derive_schedule(qubits, key, block_count); }

  bool operator==(const KeyFile&) const = default;
};

std::string format_keyfile(const KeyFile& keyfile);

// Throws FormatError on syntax errors, missing fields or values that do not
// form a valid schedule.
KeyFile parse_keyfile(std::string_view text);

KeyFile load_keyfile(const std::filesystem::path& path);

}  // namespace qpc::io
