#include "reeb/loop.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "reeb/errors.hpp"

namespace reeb {
namespace {

int wrap(int k, int m) { return ((k % m) + m) % m; }

void require_grid(int m, int cutoff) {
  if (m < 2 * cutoff + 1) {
    throw Error(ErrorKind::InvalidBody, "sample grid of size " + std::to_string(m) +
                                            " cannot resolve cutoff " + std::to_string(cutoff));
  }
}

}  // namespace

LoopCoefficients::LoopCoefficients(int n, int cutoff)
    : n_(n), cutoff_(cutoff), data_(Vec::Zero(2 * cutoff * 2 * n)) {
  if (n < 1 || cutoff < 1) throw Error(ErrorKind::InvalidBody, "loop needs n >= 1 and cutoff >= 1");
}

int LoopCoefficients::offset(int k) const {
  if (k == 0 || k > cutoff_ || k < -cutoff_) {
    throw Error(ErrorKind::InvalidBody, "mode " + std::to_string(k) + " outside 0 < |k| <= " +
                                            std::to_string(cutoff_));
  }
  const int slot = k > 0 ? k - 1 : cutoff_ - k - 1;
  return slot * 2 * n_;
}

Vec LoopCoefficients::mode(int k) const { return data_.segment(offset(k), 2 * n_); }

void LoopCoefficients::set_mode(int k, const Vec& v) {
  if (v.size() != 2 * n_) throw Error(ErrorKind::InvalidBody, "mode vector has wrong dimension");
  data_.segment(offset(k), 2 * n_) = v;
}

std::complex<double> LoopCoefficients::coefficient(int k, int block) const {
  const int o = offset(k) + 2 * block;
  return {data_(o), data_(o + 1)};
}

std::vector<std::vector<std::complex<double>>> blockwise_forward_dft(const std::vector<Vec>& values) {
  const int m = static_cast<int>(values.size());
  const int n = static_cast<int>(values.front().size() / 2);
  Eigen::FFT<double> fft;
  std::vector<std::vector<std::complex<double>>> spectra(n);
  std::vector<std::complex<double>> time(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) time[j] = {values[j](2 * i), values[j](2 * i + 1)};
    fft.fwd(spectra[i], time);
  }
  return spectra;
}

std::vector<Vec> blockwise_inverse_dft(const std::vector<std::vector<std::complex<double>>>& spectra, int n) {
  const int m = static_cast<int>(spectra.front().size());
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<Vec> values(m, Vec::Zero(2 * n));
  std::vector<std::complex<double>> time;
  for (int i = 0; i < n; ++i) {
    fft.inv(time, spectra[i]);
    for (int j = 0; j < m; ++j) {
      values[j](2 * i) = time[j].real();
      values[j](2 * i + 1) = time[j].imag();
    }
  }
  return values;
}

std::vector<Vec> LoopCoefficients::samples(int m) const {
  require_grid(m, cutoff_);
  std::vector<std::vector<std::complex<double>>> spectra(n_, std::vector<std::complex<double>>(m));
  for (int k = -cutoff_; k <= cutoff_; ++k) {
    if (k == 0) continue;
    for (int i = 0; i < n_; ++i) spectra[i][wrap(k, m)] = coefficient(k, i);
  }
  return blockwise_inverse_dft(spectra, n_);
}

std::vector<Vec> LoopCoefficients::primitive_samples(int m) const {
  require_grid(m, cutoff_);
  // d/dt [c e^{2 pi i k t} / (2 pi i k)] = c e^{2 pi i k t}
  std::vector<std::vector<std::complex<double>>> spectra(n_, std::vector<std::complex<double>>(m));
  const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
  for (int k = -cutoff_; k <= cutoff_; ++k) {
    if (k == 0) continue;
    for (int i = 0; i < n_; ++i) spectra[i][wrap(k, m)] = coefficient(k, i) / (two_pi_i * static_cast<double>(k));
  }
  return blockwise_inverse_dft(spectra, n_);
}

LoopCoefficients LoopCoefficients::from_samples(const std::vector<Vec>& values, int cutoff) {
  const int m = static_cast<int>(values.size());
  require_grid(m, cutoff);
  const int n = static_cast<int>(values.front().size() / 2);
  const auto spectra = blockwise_forward_dft(values);
  LoopCoefficients loop(n, cutoff);
  for (int k = -cutoff; k <= cutoff; ++k) {
    if (k == 0) continue;
    Vec v(2 * n);
    for (int i = 0; i < n; ++i) {
      const std::complex<double> c = spectra[i][wrap(k, m)] / static_cast<double>(m);
      v(2 * i) = c.real();
      v(2 * i + 1) = c.imag();
    }
    loop.set_mode(k, v);
  }
  return loop;
}

LoopCoefficients LoopCoefficients::scaled(double factor) const {
  LoopCoefficients out = *this;
  out.data_ *= factor;
  return out;
}

LoopCoefficients LoopCoefficients::iterate(int m) const {
  if (m < 1) throw Error(ErrorKind::InvalidBody, "iterate order must be positive");
  LoopCoefficients out(n_, cutoff_ * m);
  for (int k = -cutoff_; k <= cutoff_; ++k) {
    if (k != 0) out.set_mode(m * k, mode(k));
  }
  return out;
}

LoopCoefficients LoopCoefficients::time_shifted(double s) const {
  LoopCoefficients out = *this;
  for (int k = -cutoff_; k <= cutoff_; ++k) {
    if (k == 0) continue;
    const std::complex<double> phase = std::polar(1.0, 2.0 * std::numbers::pi * k * s);
    Vec v(2 * n_);
    for (int i = 0; i < n_; ++i) {
      const std::complex<double> c = coefficient(k, i) * phase;
      v(2 * i) = c.real();
      v(2 * i + 1) = c.imag();
    }
    out.set_mode(k, v);
  }
  return out;
}

LoopCoefficients LoopCoefficients::with_cutoff(int cutoff) const {
  LoopCoefficients out(n_, cutoff);
  const int shared = std::min(cutoff, cutoff_);
  for (int k = -shared; k <= shared; ++k) {
    if (k != 0) out.set_mode(k, mode(k));
  }
  return out;
}

}  // namespace reeb
