// Copyright 2026 Revex Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef REVEX_WAVEFORM_HPP_
#define REVEX_WAVEFORM_HPP_

#include <cmath>

#include "revex/common.hpp"
#include "revex/fft.hpp"

namespace revex {

inline constexpr double kCanonicalRate = 8000.0;

// Mono time-domain signal, nominal amplitude range [-1, 1].
template <typename T>
struct Waveform {
  ArrX<T> samples;
  double sample_rate = kCanonicalRate;

  Waveform() = default;
  Waveform(ArrX<T> s, double rate) : samples(std::move(s)), sample_rate(rate) {}

  Index size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

template <typename T>
void validate(const Waveform<T>& w) {
  if (w.sample_rate <= 0) throw InvalidInputError("waveform: sample_rate must be > 0");
  if (!all_finite(w.samples)) throw InvalidInputError("waveform: non-finite samples");
}

template <typename T>
T energy(const Waveform<T>& w) {
  return w.samples.square().sum();
}

template <typename T>
T power(const Waveform<T>& w) {
  return w.size() > 0 ? energy(w) / static_cast<T>(w.size()) : T(0);
}

template <typename T>
T rms(const Waveform<T>& w) {
  return std::sqrt(power(w));
}

template <typename T>
Waveform<T> segment(const Waveform<T>& w, Index start, Index len) {
  if (start < 0 || len < 0 || start + len > w.size())
    throw InvalidInputError("segment: range out of bounds");
  return Waveform<T>(w.samples.segment(start, len), w.sample_rate);
}

// Full linear convolution (e.g. dry source with an RIR).
template <typename T>
Waveform<T> convolve(const Waveform<T>& x, const ArrX<T>& taps) {
  return Waveform<T>(fft_convolve<T>(x.samples, taps), x.sample_rate);
}

namespace detail {

// Hann-windowed sinc interpolation filter for a polyphase resampler.
template <typename T>
ArrX<T> sinc_kernel(double cutoff, int half_len, int phase_count) {
  const int n = 2 * half_len * phase_count + 1;
  ArrX<T> h(n);
  for (int i = 0; i < n; ++i) {
    const double t = (i - half_len * phase_count) / static_cast<double>(phase_count);
    const double window = 0.5 * (1.0 + std::cos(M_PI * (i - half_len * phase_count) /
                                                 static_cast<double>(half_len * phase_count)));
    const double x = M_PI * cutoff * t;
    const double s = (std::abs(x) < 1e-12) ? 1.0 : std::sin(x) / x;
    h[i] = static_cast<T>(cutoff * s * window);
  }
  return h;
}

inline long long gcd_ll(long long a, long long b) { return b == 0 ? a : gcd_ll(b, a % b); }

}  // namespace detail

// Rational-ratio resampler (windowed-sinc). Rates must be integral.
template <typename T>
Waveform<T> resample(const Waveform<T>& w, double target_rate) {
  if (target_rate <= 0) throw InvalidInputError("resample: target rate must be > 0");
  if (w.sample_rate == target_rate) return w;
  const long long src = static_cast<long long>(std::llround(w.sample_rate));
  const long long dst = static_cast<long long>(std::llround(target_rate));
  if (src <= 0 || dst <= 0 || std::abs(w.sample_rate - src) > 1e-9 ||
      std::abs(target_rate - dst) > 1e-9)
    throw InvalidInputError("resample: rates must be integral");
  const long long g = detail::gcd_ll(src, dst);
  const long long up = dst / g, down = src / g;

  const int half_len = 24;  // zero crossings per side at the lower rate
  // Anti-alias cutoff at the narrower of the two Nyquist bands, expressed
  // relative to the upsampled grid.
  const double fc = static_cast<double>(up) / static_cast<double>(std::max(up, down));
  ArrX<T> h = detail::sinc_kernel<T>(fc, half_len, static_cast<int>(up));
  // h is a prototype at the upsampled rate; convolving the zero-stuffed input
  // with it and decimating by `down` implements the polyphase structure.
  const Index in_len = w.size();
  const Index out_len = (in_len * up + down - 1) / down;
  ArrX<T> out = ArrX<T>::Zero(out_len);
  const int hl = half_len * static_cast<int>(up);
  for (Index m = 0; m < out_len; ++m) {
    const long long center = m * down;  // position in upsampled grid
    // contributions from input samples n where n*up is within the kernel span
    long long n_lo = (center - hl + up - 1) / up;
    long long n_hi = (center + hl) / up;
    if (n_lo < 0) n_lo = 0;
    if (n_hi >= in_len) n_hi = in_len - 1;
    T acc = T(0);
    for (long long n = n_lo; n <= n_hi; ++n) {
      const long long tap = center - n * up + hl;
      acc += w.samples[n] * h[tap];
    }
    out[m] = acc;
  }
  return Waveform<T>(std::move(out), target_rate);
}

}  // namespace revex

#endif  // REVEX_WAVEFORM_HPP_
