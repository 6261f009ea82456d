#include "qpc/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace qpc::kernels {
namespace {

// One __m256d holds two complex amplitudes: [re0, im0, re1, im1].

void wht_avx2(std::span<cplx> data) {
  const std::size_t len = data.size();
  double* v = reinterpret_cast<double*>(data.data());

  // half = 1: partners share a register.
  for (std::size_t j = 0; j < len; j += 2) {
    const __m256d a = _mm256_loadu_pd(v + 2 * j);
    const __m256d swapped = _mm256_permute2f128_pd(a, a, 0x01);
    const __m256d sum = _mm256_add_pd(a, swapped);
    const __m256d diff = _mm256_sub_pd(swapped, a);
    _mm256_storeu_pd(v + 2 * j, _mm256_blend_pd(sum, diff, 0b1100));
  }

  for (std::size_t half = 2; half < len; half *= 2) {
    for (std::size_t base = 0; base < len; base += 2 * half) {
      for (std::size_t j = base; j < base + half; j += 2) {
        const __m256d a = _mm256_loadu_pd(v + 2 * j);
        const __m256d b = _mm256_loadu_pd(v + 2 * (j + half));
        _mm256_storeu_pd(v + 2 * j, _mm256_add_pd(a, b));
        _mm256_storeu_pd(v + 2 * (j + half), _mm256_sub_pd(a, b));
      }
    }
  }

  const __m256d scale = _mm256_set1_pd(1.0 / std::sqrt(static_cast<double>(len)));
  for (std::size_t i = 0; i < 2 * len; i += 4) {
    _mm256_storeu_pd(v + i, _mm256_mul_pd(_mm256_loadu_pd(v + i), scale));
  }
}

void flip_avx2(std::span<cplx> data, std::span<const std::uint64_t> mask_words) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  // Sign patterns for two adjacent amplitudes indexed by their two mask bits.
  const __m256d patterns[4] = {
      _mm256_setzero_pd(),
      _mm256_set_pd(0.0, 0.0, -0.0, -0.0),
      _mm256_set_pd(-0.0, -0.0, 0.0, 0.0),
      sign,
  };
  const std::size_t len = data.size();
  double* v = reinterpret_cast<double*>(data.data());
  for (std::size_t w = 0; w < mask_words.size(); ++w) {
    const std::uint64_t word = mask_words[w];
    if (word == 0) continue;
    const std::size_t begin = w * 64;
    const std::size_t end = begin + 64 < len ? begin + 64 : len;
    if (word == ~std::uint64_t{0}) {
      for (std::size_t x = begin; x < end; x += 2) {
        _mm256_storeu_pd(v + 2 * x, _mm256_xor_pd(_mm256_loadu_pd(v + 2 * x), sign));
      }
      continue;
    }
    for (std::size_t x = begin; x < end; x += 2) {
      const unsigned bits = static_cast<unsigned>(word >> (x - begin)) & 3u;
      if (bits == 0) continue;
      _mm256_storeu_pd(v + 2 * x, _mm256_xor_pd(_mm256_loadu_pd(v + 2 * x), patterns[bits]));
    }
  }
}

cplx inner_avx2(std::span<const cplx> a, std::span<const cplx> b) {
  const double* pa = reinterpret_cast<const double*>(a.data());
  const double* pb = reinterpret_cast<const double*>(b.data());
  __m256d re_acc = _mm256_setzero_pd();  // [ar*br, ai*bi, ...]
  __m256d im_acc = _mm256_setzero_pd();  // [ar*bi, ai*br, ...]
  for (std::size_t x = 0; x < a.size(); x += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * x);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * x);
    re_acc = _mm256_add_pd(re_acc, _mm256_mul_pd(va, vb));
    im_acc = _mm256_add_pd(im_acc, _mm256_mul_pd(va, _mm256_permute_pd(vb, 0b0101)));
  }
  alignas(32) double re[4], im[4];
  _mm256_store_pd(re, re_acc);
  _mm256_store_pd(im, im_acc);
  return {(re[0] + re[1]) + (re[2] + re[3]), (im[0] - im[1]) + (im[2] - im[3])};
}

void reflect_avx2(std::span<cplx> state, std::span<const cplx> ref, cplx coeff) {
  const __m256d cr = _mm256_set1_pd(coeff.real());
  const __m256d ci = _mm256_set1_pd(coeff.imag());
  double* s = reinterpret_cast<double*>(state.data());
  const double* r = reinterpret_cast<const double*>(ref.data());
  for (std::size_t x = 0; x < state.size(); x += 2) {
    const __m256d vr = _mm256_loadu_pd(r + 2 * x);
    const __m256d t = _mm256_mul_pd(cr, vr);
    const __m256d u = _mm256_mul_pd(ci, _mm256_permute_pd(vr, 0b0101));
    const __m256d prod = _mm256_addsub_pd(t, u);
    _mm256_storeu_pd(s + 2 * x, _mm256_sub_pd(prod, _mm256_loadu_pd(s + 2 * x)));
  }
}

void abs_squared_avx2(std::span<const cplx> data, std::span<double> out) {
  const double* v = reinterpret_cast<const double*>(data.data());
  const std::size_t len = data.size();
  std::size_t x = 0;
  for (; x + 4 <= len; x += 4) {
    const __m256d a = _mm256_loadu_pd(v + 2 * x);
    const __m256d b = _mm256_loadu_pd(v + 2 * x + 4);
    // hadd gives [|c0|^2, |c2|^2, |c1|^2, |c3|^2]
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    _mm256_storeu_pd(out.data() + x, _mm256_permute4x64_pd(h, 0b11011000));
  }
  for (; x < len; ++x) {
    const double re = v[2 * x], im = v[2 * x + 1];
    out[x] = re * re + im * im;
  }
}

constexpr KernelTable kAvx2{
    Isa::avx2, "avx2", wht_avx2, flip_avx2, inner_avx2, reflect_avx2, abs_squared_avx2,
};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace qpc::kernels
