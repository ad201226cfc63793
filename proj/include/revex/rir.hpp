// Copyright 2026 Revex Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef REVEX_RIR_HPP_
#define REVEX_RIR_HPP_

#include <algorithm>
#include <cmath>

#include "revex/common.hpp"
#include "revex/waveform.hpp"

namespace revex {

// One room draw: geometry, reverberation time, microphone and the placement
// of a single source relative to the microphone (azimuth + distance).
struct RoomSpec {
  double hx = 0, hy = 0, hz = 0;  // room dimensions [m]
  double t60 = 0;                 // requested reverberation time [s]
  Eigen::Vector3d mic = Eigen::Vector3d::Zero();
  double source_angle_deg = 0;
  double source_distance = 0;
};

inline Eigen::Vector3d source_position(const RoomSpec& r) {
  const double th = r.source_angle_deg * M_PI / 180.0;
  return {r.mic.x() + r.source_distance * std::cos(th),
          r.mic.y() + r.source_distance * std::sin(th),
          1.5};
}

namespace detail {

inline bool inside_room(const Eigen::Vector3d& p, const RoomSpec& r, double margin) {
  return p.x() >= margin && p.x() <= r.hx - margin && p.y() >= margin && p.y() <= r.hy - margin &&
         p.z() >= margin && p.z() <= r.hz - margin;
}

}  // namespace detail

inline void validate(const RoomSpec& r) {
  if (r.hx < 4 || r.hx > 8 || r.hy < 4 || r.hy > 8 || r.hz < 2.5 || r.hz > 3)
    throw InvalidInputError("room: dimensions outside sampling ranges");
  if (r.t60 < 0.2 || r.t60 > 0.6) throw InvalidInputError("room: t60 outside [0.2, 0.6]");
  if (r.source_angle_deg < 0 || r.source_angle_deg > 180)
    throw InvalidInputError("room: source angle outside [0, 180]");
  if (r.source_distance < 0.5 || r.source_distance > 1.5)
    throw InvalidInputError("room: source distance outside [0.5, 1.5]");
  if (!detail::inside_room(r.mic, r, 0.0)) throw InvalidInputError("room: mic outside room");
  if (!detail::inside_room(source_position(r), r, 0.0))
    throw InvalidInputError("room: source outside room");
}

// Draws source azimuth/distance for an existing room, resampling until the
// source lands inside the walls with a safety margin.
inline void sample_source_placement(RoomSpec& r, std::mt19937_64& rng) {
  constexpr double kMargin = 0.1;
  for (int tries = 0; tries < 1000; ++tries) {
    r.source_angle_deg = uniform(rng, 0.0, 180.0);
    r.source_distance = 1.0 + uniform(rng, -0.5, 0.5);
    if (detail::inside_room(source_position(r), r, kMargin)) return;
  }
  throw NumericalError("sample_source_placement: no valid placement found");
}

inline RoomSpec sample_room(std::mt19937_64& rng) {
  RoomSpec r;
  r.hx = uniform(rng, 4.0, 8.0);
  r.hy = uniform(rng, 4.0, 8.0);
  r.hz = uniform(rng, 2.5, 3.0);
  r.t60 = uniform(rng, 0.2, 0.6);
  r.mic = {r.hx / 2 + uniform(rng, -0.5, 0.5), r.hy / 2 + uniform(rng, -0.5, 0.5), 1.5};
  sample_source_placement(r, rng);
  return r;
}

inline RoomSpec sample_room(std::uint64_t seed) {
  auto rng = make_rng(seed);
  return sample_room(rng);
}

// Room impulse response with a known first-arrival index.
template <typename T>
struct Rir {
  ArrX<T> taps;
  double sample_rate = kCanonicalRate;
  Index direct_path_index = 0;
};

// Uniform surface absorption for the requested T60. Eyring's inversion is
// used instead of Sabine's: the image-source decay rate follows Eyring, and
// Sabine's formula misses the requested T60 by >20% at the short end of the
// sampled range.
inline double wall_absorption(const RoomSpec& r) {
  const double volume = r.hx * r.hy * r.hz;
  const double surface = 2.0 * (r.hx * r.hy + r.hx * r.hz + r.hy * r.hz);
  const double x = 0.161 * volume / (surface * std::max(r.t60, 1e-6));
  return 1.0 - std::exp(-x);
}

// Image-source room impulse response (Allen & Berkley construction) with an
// odd-length windowed-sinc fractional-delay kernel per image.
template <typename T = double>
Rir<T> generate_rir(const RoomSpec& room, const Eigen::Vector3d& src,
                    double fs = kCanonicalRate) {
  if (!detail::inside_room(src, room, 0.0)) throw InvalidInputError("generate_rir: source outside room");
  if ((src - room.mic).norm() < 1e-6) throw InvalidInputError("generate_rir: source coincides with mic");

  const double c = kSpeedOfSound;
  const double alpha = wall_absorption(room);
  const double beta = std::sqrt(std::max(0.0, 1.0 - alpha));
  const double horizon_s = std::max(1.2 * room.t60, 0.05);
  const Index n_taps = static_cast<Index>(std::ceil(horizon_s * fs)) + 1;

  constexpr int kSincTaps = 81;  // odd, centered
  constexpr int kHalf = kSincTaps / 2;

  // Image counts per axis so images reach the response horizon; hard cap
  // keeps worst-case runtime bounded.
  const double reach = horizon_s * c;
  const auto order_for = [&](double dim) {
    return std::min<Index>(60, static_cast<Index>(std::ceil(reach / (2.0 * dim))) + 1);
  };
  const Index nx = order_for(room.hx), ny = order_for(room.hy), nz = order_for(room.hz);

  ArrX<T> h = ArrX<T>::Zero(n_taps + kSincTaps);

  const double L[3] = {room.hx, room.hy, room.hz};
  const double s[3] = {src.x(), src.y(), src.z()};
  const double r[3] = {room.mic.x(), room.mic.y(), room.mic.z()};

  for (Index mx = -nx; mx <= nx; ++mx) {
    for (Index my = -ny; my <= ny; ++my) {
      for (Index mz = -nz; mz <= nz; ++mz) {
        for (int qx = 0; qx <= 1; ++qx) {
          const double px = (1 - 2 * qx) * s[0] - r[0] + 2 * mx * L[0];
          const double rx = std::pow(beta, std::abs(static_cast<double>(mx - qx)) +
                                               std::abs(static_cast<double>(mx)));
          for (int qy = 0; qy <= 1; ++qy) {
            const double py = (1 - 2 * qy) * s[1] - r[1] + 2 * my * L[1];
            const double ry = std::pow(beta, std::abs(static_cast<double>(my - qy)) +
                                                 std::abs(static_cast<double>(my)));
            for (int qz = 0; qz <= 1; ++qz) {
              const double pz = (1 - 2 * qz) * s[2] - r[2] + 2 * mz * L[2];
              const double rz = std::pow(beta, std::abs(static_cast<double>(mz - qz)) +
                                                   std::abs(static_cast<double>(mz)));
              const double dist = std::sqrt(px * px + py * py + pz * pz);
              const double delay = dist / c * fs;
              const Index center = static_cast<Index>(std::llround(delay));
              if (center >= n_taps) continue;
              const double gain = rx * ry * rz / (4.0 * M_PI * std::max(dist, 1e-3));
              const double frac = delay - static_cast<double>(center);
              // Hann-windowed sinc centered at the fractional arrival time.
              for (int i = -kHalf; i <= kHalf; ++i) {
                const double t = static_cast<double>(i) - frac;
                const double win = 0.5 * (1.0 + std::cos(M_PI * (t) / (kHalf + 1)));
                const double x = M_PI * t;
                const double sinc = std::abs(x) < 1e-12 ? 1.0 : std::sin(x) / x;
                h[center + i + kHalf] += static_cast<T>(gain * win * sinc);
              }
            }
          }
        }
      }
    }
  }

  Rir<T> out;
  out.sample_rate = fs;
  out.taps = h.segment(kHalf, n_taps);
  const double direct = (src - room.mic).norm() / c * fs;
  out.direct_path_index = static_cast<Index>(std::llround(direct));
  return out;
}

template <typename T = double>
Rir<T> generate_rir(const RoomSpec& room, double fs = kCanonicalRate) {
  return generate_rir<T>(room, source_position(room), fs);
}

// T60 from backward-integrated energy decay, fitted on the -5..-25 dB slope.
template <typename T>
double measure_t60(const Rir<T>& rir) {
  const Index n = rir.taps.size();
  if (n < 8) throw MeasurementError("measure_t60: response too short");
  ArrX<double> edc(n);
  double acc = 0;
  for (Index i = n - 1; i >= 0; --i) {
    acc += static_cast<double>(rir.taps[i]) * static_cast<double>(rir.taps[i]);
    edc[i] = acc;
  }
  const double total = edc[0];
  if (total <= 0) throw MeasurementError("measure_t60: zero-energy response");

  std::vector<double> ts, dbs;
  for (Index i = 0; i < n; ++i) {
    if (edc[i] <= 0) break;
    const double db = 10.0 * std::log10(edc[i] / total);
    if (db <= -5.0 && db >= -25.0) {
      ts.push_back(static_cast<double>(i) / rir.sample_rate);
      dbs.push_back(db);
    }
  }
  if (ts.size() < 8) throw MeasurementError("measure_t60: insufficient decay range (need 20 dB)");

  // Least-squares line db = a + b * t; T60 extrapolates the fitted slope.
  const double m = static_cast<double>(ts.size());
  double st = 0, sd = 0, std_ = 0, stt = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sd += dbs[i];
    std_ += ts[i] * dbs[i];
    stt += ts[i] * ts[i];
  }
  const double denom = m * stt - st * st;
  if (std::abs(denom) < 1e-18) throw MeasurementError("measure_t60: degenerate decay curve");
  const double slope = (m * std_ - st * sd) / denom;
  if (slope >= -1e-9) throw MeasurementError("measure_t60: non-decaying response");
  return -60.0 / slope;
}

}  // namespace revex

#endif  // REVEX_RIR_HPP_
