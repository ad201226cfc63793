// Copyright 2026 Revex Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef REVEX_FFT_HPP_
#define REVEX_FFT_HPP_

#include <unsupported/Eigen/FFT>

#include <complex>
#include <vector>

#include "revex/common.hpp"

namespace revex {

// One FFT object per thread and scalar type; Eigen::FFT caches plans by size.
template <typename T>
Eigen::FFT<T>& tls_fft() {
  thread_local Eigen::FFT<T> fft;
  return fft;
}

template <typename T>
using CVec = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, 1>;

template <typename T>
CVec<T> fft_forward(const CVec<T>& x) {
  CVec<T> y(x.size());
  tls_fft<T>().fwd(y.data(), x.data(), x.size());
  return y;
}

template <typename T>
CVec<T> fft_inverse(const CVec<T>& x) {
  CVec<T> y(x.size());
  tls_fft<T>().inv(y.data(), x.data(), x.size());
  return y;
}

// Real-input DFT; returns the nonredundant half spectrum of nfft/2+1 bins.
template <typename T>
CVec<T> rfft(const ArrX<T>& frame) {
  const Index n = frame.size();
  CVec<T> in(n);
  for (Index i = 0; i < n; ++i) in[i] = std::complex<T>(frame[i], T(0));
  CVec<T> full = fft_forward<T>(in);
  return full.head(n / 2 + 1);
}

// Inverse of rfft. Accepts arbitrary complex bins: the spectrum is extended
// Hermitian-symmetrically from bins 1..K-2, so imaginary parts at DC and
// Nyquist have no effect on the (real) output.
template <typename T>
ArrX<T> irfft(const CVec<T>& half, Index nfft) {
  const Index k = half.size();
  if (k != nfft / 2 + 1) throw InvalidInputError("irfft: bin count does not match nfft");
  CVec<T> full(nfft);
  full.head(k) = half;
  for (Index i = 1; i < k - 1; ++i) full[nfft - i] = std::conj(half[i]);
  CVec<T> time = fft_inverse<T>(full);
  ArrX<T> out(nfft);
  for (Index i = 0; i < nfft; ++i) out[i] = time[i].real();
  return out;
}

inline Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Full linear convolution, length a+b-1, via FFT.
template <typename T>
ArrX<T> fft_convolve(const ArrX<T>& a, const ArrX<T>& b) {
  if (a.size() == 0 || b.size() == 0) throw InvalidInputError("fft_convolve: empty input");
  const Index out_len = a.size() + b.size() - 1;
  const Index nfft = next_pow2(out_len);
  CVec<T> fa = CVec<T>::Zero(nfft), fb = CVec<T>::Zero(nfft);
  for (Index i = 0; i < a.size(); ++i) fa[i] = std::complex<T>(a[i], T(0));
  for (Index i = 0; i < b.size(); ++i) fb[i] = std::complex<T>(b[i], T(0));
  fa = fft_forward<T>(fa);
  fb = fft_forward<T>(fb);
  for (Index i = 0; i < nfft; ++i) fa[i] *= fb[i];
  CVec<T> prod = fft_inverse<T>(fa);
  ArrX<T> out(out_len);
  for (Index i = 0; i < out_len; ++i) out[i] = prod[i].real();
  return out;
}

}  // namespace revex

#endif  // REVEX_FFT_HPP_
