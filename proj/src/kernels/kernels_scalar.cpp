#include "qpc/kernels.hpp"

#include <cmath>

namespace qpc::kernels {
namespace {

void wht_scalar(std::span<cplx> data) {
  const std::size_t len = data.size();
  double* v = reinterpret_cast<double*>(data.data());
  for (std::size_t half = 1; half < len; half *= 2) {
    for (std::size_t base = 0; base < len; base += 2 * half) {
      for (std::size_t j = base; j < base + half; ++j) {
        const double ar = v[2 * j], ai = v[2 * j + 1];
        const double br = v[2 * (j + half)], bi = v[2 * (j + half) + 1];
        v[2 * j] = ar + br;
        v[2 * j + 1] = ai + bi;
        v[2 * (j + half)] = ar - br;
        v[2 * (j + half) + 1] = ai - bi;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(len));
  for (std::size_t i = 0; i < 2 * len; ++i) v[i] *= scale;
}

void flip_scalar(std::span<cplx> data, std::span<const std::uint64_t> mask_words) {
  for (std::size_t w = 0; w < mask_words.size(); ++w) {
    std::uint64_t word = mask_words[w];
    while (word != 0) {
      const int bit = __builtin_ctzll(word);
      const std::size_t x = w * 64 + static_cast<std::size_t>(bit);
      data[x] = -data[x];
      word &= word - 1;
    }
  }
}

cplx inner_scalar(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    re += a[x].real() * b[x].real() + a[x].imag() * b[x].imag();
    im += a[x].real() * b[x].imag() - a[x].imag() * b[x].real();
  }
  return {re, im};
}

void reflect_scalar(std::span<cplx> state, std::span<const cplx> ref, cplx coeff) {
  const double cr = coeff.real(), ci = coeff.imag();
  for (std::size_t x = 0; x < state.size(); ++x) {
    const double rr = ref[x].real(), ri = ref[x].imag();
    const double re = cr * rr - ci * ri;
    const double im = cr * ri + ci * rr;
    state[x] = {re - state[x].real(), im - state[x].imag()};
  }
}

void abs_squared_scalar(std::span<const cplx> data, std::span<double> out) {
  for (std::size_t x = 0; x < data.size(); ++x) {
    const double re = data[x].real(), im = data[x].imag();
    out[x] = re * re + im * im;
  }
}

constexpr KernelTable kScalar{
    Isa::scalar, "scalar", wht_scalar, flip_scalar, inner_scalar, reflect_scalar, abs_squared_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace qpc::kernels
