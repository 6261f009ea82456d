#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstring>
#include <random>

#include "oracles.hpp"
#include "qpc/errors.hpp"
#include "qpc/kernels.hpp"

using qpc::kernels::cplx;
using qpc::kernels::Isa;
using qpc::kernels::KernelTable;

namespace {

bool bitwise_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

std::vector<std::uint64_t> random_mask_words(std::size_t dim, std::mt19937_64& rng) {
  std::vector<std::uint64_t> words((dim + 63) / 64);
  for (auto& w : words) w = rng();
  // Occasionally exercise the all-zero and all-one fast paths.
  if (words.size() > 1) {
    words[0] = 0;
    words[1] = ~std::uint64_t{0};
  }
  if (dim < 64) words[0] &= (std::uint64_t{1} << dim) - 1;
  return words;
}

const KernelTable* simd_table() { return qpc::kernels::kernels_for(Isa::avx2); }

}  // namespace

TEST_CASE("isa names round-trip") {
  CHECK(qpc::kernels::parse_isa("scalar") == Isa::scalar);
  CHECK(qpc::kernels::parse_isa("avx2") == Isa::avx2);
  CHECK_FALSE(qpc::kernels::parse_isa("neon").has_value());
  CHECK(qpc::kernels::isa_name(Isa::avx2) == "avx2");
}

TEST_CASE("scalar kernels are always available and selectable") {
  const Isa before = qpc::kernels::active_isa();
  qpc::kernels::select_isa(Isa::scalar);
  CHECK(qpc::kernels::active_isa() == Isa::scalar);
  if (qpc::kernels::isa_available(before)) qpc::kernels::select_isa(before);
  if (!qpc::kernels::isa_available(Isa::avx2)) {
    CHECK_THROWS_AS(qpc::kernels::select_isa(Isa::avx2), qpc::ParameterError);
  }
}

TEST_CASE("scalar walsh_hadamard matches dense matrix") {
  const auto& k = qpc::kernels::scalar_kernels();
  std::mt19937_64 rng(7);
  for (unsigned n = 1; n <= 6; ++n) {
    const auto h = oracle::dense_hadamard(n);
    auto v = oracle::random_unit_vector(std::size_t{1} << n, rng);
    const auto expected = oracle::apply(h, v);
    k.walsh_hadamard(v);
    for (std::size_t x = 0; x < v.size(); ++x) CHECK(std::abs(v[x] - expected[x]) < 1e-12);
  }
}

TEST_CASE("simd kernels are bitwise identical to scalar where rounding allows") {
  const KernelTable* simd = simd_table();
  if (simd == nullptr) {
    MESSAGE("AVX2 unavailable on this host; equivalence skipped");
    return;
  }
  const auto& ref = qpc::kernels::scalar_kernels();
  std::mt19937_64 rng(2024);

  for (unsigned n = 1; n <= 14; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    CAPTURE(n);
    for (int trial = 0; trial < 4; ++trial) {
      const auto v = oracle::random_unit_vector(dim, rng);
      const auto r = oracle::random_unit_vector(dim, rng);

      auto a = v, b = v;
      ref.walsh_hadamard(a);
      simd->walsh_hadamard(b);
      CHECK(bitwise_equal(a, b));

      const auto words = random_mask_words(dim, rng);
      a = v;
      b = v;
      ref.flip_signs(a, words);
      simd->flip_signs(b, words);
      CHECK(bitwise_equal(a, b));

      const cplx coeff{0.3 * (trial + 1), -0.7};
      a = v;
      b = v;
      ref.reflect(a, r, coeff);
      simd->reflect(b, r, coeff);
      CHECK(bitwise_equal(a, b));

      std::vector<double> pa(dim), pb(dim);
      ref.abs_squared(v, pa);
      simd->abs_squared(v, pb);
      CHECK(std::memcmp(pa.data(), pb.data(), dim * sizeof(double)) == 0);

      // Reduction order differs; agreement to rounding only.
      const cplx ia = ref.inner_product(v, r);
      const cplx ib = simd->inner_product(v, r);
      CHECK(std::abs(ia - ib) < 1e-13);
    }
  }
}

TEST_CASE("flip_signs touches only masked entries") {
  for (const Isa isa : {Isa::scalar, Isa::avx2}) {
    const KernelTable* k = qpc::kernels::kernels_for(isa);
    if (k == nullptr) continue;
    std::vector<cplx> v(128);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = {double(x) + 1.0, -double(x)};
    std::vector<std::uint64_t> words{0b1011, std::uint64_t{1} << 63};
    auto w = v;
    k->flip_signs(w, words);
    for (std::size_t x = 0; x < v.size(); ++x) {
      const bool flipped = x == 0 || x == 1 || x == 3 || x == 127;
      CHECK(w[x] == (flipped ? -v[x] : v[x]));
    }
  }
}

TEST_CASE("inner_product conjugates its first argument") {
  for (const Isa isa : {Isa::scalar, Isa::avx2}) {
    const KernelTable* k = qpc::kernels::kernels_for(isa);
    if (k == nullptr) continue;
    const std::vector<cplx> a{{0.0, 1.0}, {0.0, 0.0}};
    const std::vector<cplx> b{{1.0, 0.0}, {0.0, 0.0}};
    const cplx got = k->inner_product(a, b);
    CHECK(got.real() == 0.0);
    CHECK(got.imag() == -1.0);
  }
}
