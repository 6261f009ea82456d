#include <atomic>
#include <cstdlib>
#include <string>

#include "qpc/errors.hpp"
#include "qpc/kernels.hpp"

namespace qpc::kernels {

namespace detail {

#if !QPC_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if QPC_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

}  // namespace detail

namespace {

const KernelTable* initial_table() {
  if (const char* forced = std::getenv("QPC_KERNEL")) {
    if (auto isa = parse_isa(forced); isa && isa_available(*isa)) return kernels_for(*isa);
  }
  if (const KernelTable* t = kernels_for(Isa::avx2)) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable* kernels_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &scalar_kernels();
    case Isa::avx2:
      return detail::cpu_has_avx2() ? detail::avx2_table() : nullptr;
  }
  return nullptr;
}

bool isa_available(Isa isa) { return kernels_for(isa) != nullptr; }

void select_isa(Isa isa) {
  const KernelTable* t = kernels_for(isa);
  if (t == nullptr) {
    throw ParameterError("kernel variant '" + std::string(isa_name(isa)) + "' is not available");
  }
  active_slot().store(t, std::memory_order_release);
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

Isa active_isa() { return active_kernels().isa; }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  return std::nullopt;
}

}  // namespace qpc::kernels
