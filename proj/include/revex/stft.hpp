// Copyright 2026 Revex Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef REVEX_STFT_HPP_
#define REVEX_STFT_HPP_

#include <complex>

#include "revex/common.hpp"
#include "revex/fft.hpp"
#include "revex/waveform.hpp"

namespace revex {

enum class WindowKind { SqrtHann };

struct StftConfig {
  int frame_size = 256;
  int hop = 128;
  WindowKind window = WindowKind::SqrtHann;

  bool operator==(const StftConfig& o) const {
    return frame_size == o.frame_size && hop == o.hop && window == o.window;
  }
};

inline void validate(const StftConfig& c) {
  if (c.frame_size < 4 || c.frame_size % 2 != 0)
    throw InvalidInputError("stft: frame_size must be even and >= 4");
  if (c.hop <= 0 || c.hop > c.frame_size / 2 || c.frame_size % c.hop != 0)
    throw InvalidInputError("stft: hop must divide frame_size and satisfy hop <= frame_size/2");
}

inline int num_bins(const StftConfig& c) { return c.frame_size / 2 + 1; }

// Square-root periodic Hann; analysis == synthesis, COLA at hop <= frame/2.
template <typename T>
ArrX<T> make_window(const StftConfig& c) {
  ArrX<T> w(c.frame_size);
  for (int i = 0; i < c.frame_size; ++i)
    w[i] = static_cast<T>(std::sqrt(0.5 * (1.0 - std::cos(2.0 * M_PI * i / c.frame_size))));
  return w;
}

// Complex time-frequency array. bins is K x N (one column per frame) with
// K = frame_size/2 + 1 nonredundant bins including DC and Nyquist.
template <typename T>
struct Spectrogram {
  CMatX<T> bins;
  StftConfig config;
  Index source_len = 0;
  double sample_rate = kCanonicalRate;

  Index frames() const { return bins.cols(); }
  Index bin_count() const { return bins.rows(); }
};

// Real/imaginary planes of a spectrogram, each K x N.
template <typename T>
struct RiFeature {
  MatX<T> re;
  MatX<T> im;
  StftConfig config;
  Index source_len = 0;
  double sample_rate = kCanonicalRate;

  Index frames() const { return re.cols(); }
  Index bin_count() const { return re.rows(); }
};

inline Index stft_frame_count(Index len, const StftConfig& c) {
  return len / c.hop + 1;  // frames over the reflect-padded signal
}

namespace detail {

inline Index reflect_index(Index i, Index n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * n - 2 - i;
  }
  return i;
}

}  // namespace detail

template <typename T>
Spectrogram<T> stft(const Waveform<T>& w, const StftConfig& c) {
  validate(c);
  validate(w);
  const Index len = w.size();
  if (len < c.frame_size) throw InvalidInputError("stft: signal shorter than one frame");

  const Index pad = c.frame_size / 2;
  const Index n_frames = stft_frame_count(len, c);
  const Index padded_len = (n_frames - 1) * c.hop + c.frame_size;
  ArrX<T> padded(padded_len);
  for (Index i = 0; i < padded_len; ++i)
    padded[i] = w.samples[detail::reflect_index(i - pad, len)];

  const ArrX<T> win = make_window<T>(c);
  Spectrogram<T> out;
  out.config = c;
  out.source_len = len;
  out.sample_rate = w.sample_rate;
  out.bins.resize(num_bins(c), n_frames);
  ArrX<T> frame(c.frame_size);
  for (Index m = 0; m < n_frames; ++m) {
    frame = padded.segment(m * c.hop, c.frame_size) * win;
    out.bins.col(m) = rfft<T>(frame);
  }
  return out;
}

// Weighted overlap-add synthesis; exact inverse of stft up to rounding.
template <typename T>
Waveform<T> istft(const Spectrogram<T>& s) {
  validate(s.config);
  const StftConfig& c = s.config;
  if (s.bin_count() != num_bins(c)) throw InvalidInputError("istft: bin count does not match config");
  if (s.source_len <= 0) throw InvalidInputError("istft: missing source length");
  if (stft_frame_count(s.source_len, c) != s.frames())
    throw InvalidInputError("istft: frame count inconsistent with source length");

  const Index n_frames = s.frames();
  const Index padded_len = (n_frames - 1) * c.hop + c.frame_size;
  const ArrX<T> win = make_window<T>(c);
  ArrX<T> acc = ArrX<T>::Zero(padded_len);
  ArrX<T> den = ArrX<T>::Zero(padded_len);
  for (Index m = 0; m < n_frames; ++m) {
    ArrX<T> frame = irfft<T>(s.bins.col(m), c.frame_size);
    acc.segment(m * c.hop, c.frame_size) += frame * win;
    den.segment(m * c.hop, c.frame_size) += win.square();
  }
  const T tiny = static_cast<T>(1e-12);
  for (Index i = 0; i < padded_len; ++i) acc[i] /= std::max(den[i], tiny);

  const Index pad = c.frame_size / 2;
  return Waveform<T>(acc.segment(pad, s.source_len), s.sample_rate);
}

template <typename T>
RiFeature<T> to_ri(const Spectrogram<T>& s) {
  RiFeature<T> f;
  f.re = s.bins.real();
  f.im = s.bins.imag();
  f.config = s.config;
  f.source_len = s.source_len;
  f.sample_rate = s.sample_rate;
  return f;
}

template <typename T>
Spectrogram<T> from_ri(const RiFeature<T>& f) {
  if (f.re.rows() != f.im.rows() || f.re.cols() != f.im.cols())
    throw InvalidInputError("from_ri: Re/Im plane shapes differ");
  Spectrogram<T> s;
  s.bins.resize(f.re.rows(), f.re.cols());
  s.bins.real() = f.re;
  s.bins.imag() = f.im;
  s.config = f.config;
  s.source_len = f.source_len;
  s.sample_rate = f.sample_rate;
  return s;
}

}  // namespace revex

#endif  // REVEX_STFT_HPP_
