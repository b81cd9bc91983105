#pragma once

#include <complex>
#include <vector>

#include "reeb/linalg.hpp"

namespace reeb {

/// Truncated Fourier representation of a zero-mean loop derivative
///   gammadot(t) = sum_{0 < |k| <= N} exp(2 pi k t J) v_k,   v_k in R^{2n}.
/// In block i this is the complex series sum_k c_{k,i} e^{2 pi i k t} with
/// c_{k,i} = v_k[2i] + i v_k[2i+1]. The k = 0 mode does not exist.
class LoopCoefficients {
 public:
  LoopCoefficients(int n, int cutoff);

  int dim() const { return n_; }
  int cutoff() const { return cutoff_; }
  int real_size() const { return static_cast<int>(data_.size()); }

  Vec mode(int k) const;
  void set_mode(int k, const Vec& v);
  std::complex<double> coefficient(int k, int block) const;

  /// Flat real storage: mode index (k = 1..N, then k = -1..-N) times 2n coordinates.
  const Vec& flat() const { return data_; }
  Vec& flat() { return data_; }
  int offset(int k) const;

  /// gammadot at t_m = m/M, m = 0..M-1. Requires M >= 2N + 1.
  std::vector<Vec> samples(int m) const;
  /// Zero-mean primitive gamma at the same nodes.
  std::vector<Vec> primitive_samples(int m) const;
  /// Inverse of `samples`: projects M samples onto the modes 0 < |k| <= N.
  static LoopCoefficients from_samples(const std::vector<Vec>& values, int cutoff);

  LoopCoefficients scaled(double factor) const;
  /// t -> gammadot(m t); lives on modes m k, so the cutoff becomes m N.
  LoopCoefficients iterate(int m) const;
  /// t -> gammadot(t + s).
  LoopCoefficients time_shifted(double s) const;
  /// Same loop on a larger or smaller cutoff (dropping modes above the new one).
  LoopCoefficients with_cutoff(int cutoff) const;

 private:
  int n_;
  int cutoff_;
  Vec data_;
};

/// Forward and inverse length-M DFTs applied blockwise to complex-paired
/// samples: coefficients c_k (k mod M) <-> values sum_k c_k e^{2 pi i k m / M}.
std::vector<std::vector<std::complex<double>>> blockwise_forward_dft(const std::vector<Vec>& values);
std::vector<Vec> blockwise_inverse_dft(const std::vector<std::vector<std::complex<double>>>& spectra, int n);

}  // namespace reeb
