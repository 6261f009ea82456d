#pragma once

// Data-parallel inner loops behind the statevector operations.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is chosen once at startup from CPUID and can be
// forced with QPC_KERNEL=scalar|avx2 or select_isa(). Butterflies, sign flips,
// reflections and squared moduli round identically in both variants; only the
// inner product reduction order differs.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace qpc::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // In-place unnormalised Walsh-Hadamard butterflies over all log2(len)
  // passes, followed by a single multiply by 1/sqrt(len). len is a power of 2.
  void (*walsh_hadamard)(std::span<cplx> data);

  // Negates data[x] for every x whose bit is set in mask_words
  // (bit x % 64 of word x / 64).
  void (*flip_signs)(std::span<cplx> data, std::span<const std::uint64_t> mask_words);

  // sum_x conj(a[x]) * b[x]
  cplx (*inner_product)(std::span<const cplx> a, std::span<const cplx> b);

  // state[x] <- coeff * ref[x] - state[x]
  void (*reflect)(std::span<cplx> state, std::span<const cplx> ref, cplx coeff);

  // out[x] <- |data[x]|^2
  void (*abs_squared)(std::span<const cplx> data, std::span<double> out);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* kernels_for(Isa isa);

bool isa_available(Isa isa);

// Throws ParameterError when the requested variant is unavailable.
void select_isa(Isa isa);

const KernelTable& active_kernels();
Isa active_isa();

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

namespace detail {
const KernelTable* avx2_table();
bool cpu_has_avx2();
}  // namespace detail

}  // namespace qpc::kernels
