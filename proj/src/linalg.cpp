#include "reeb/linalg.hpp"

#include <cmath>

#include "reeb/errors.hpp"

namespace reeb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidBody: return "InvalidBody";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::EnergyDrift: return "EnergyDrift";
    case ErrorKind::OffHypersurface: return "OffHypersurface";
    case ErrorKind::SymplecticityLoss: return "SymplecticityLoss";
    case ErrorKind::ShootingDivergence: return "ShootingDivergence";
    case ErrorKind::NonPositiveDefinite: return "NonPositiveDefinite";
    case ErrorKind::UnresolvedCrossing: return "UnresolvedCrossing";
    case ErrorKind::NotClosedOrbit: return "NotClosedOrbit";
    case ErrorKind::NoPositiveActionStart: return "NoPositiveActionStart";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::LadderViolation: return "LadderViolation";
    case ErrorKind::UnsupportedBody: return "UnsupportedBody";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Mat complex_structure(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    j(2 * i, 2 * i + 1) = -1.0;
    j(2 * i + 1, 2 * i) = 1.0;
  }
  return j;
}

Vec apply_j(const Vec& v) {
  Vec out(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    out(i) = -v(i + 1);
    out(i + 1) = v(i);
  }
  return out;
}

Mat block_rotation(int n, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat r = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    r(2 * i, 2 * i) = c;
    r(2 * i, 2 * i + 1) = -s;
    r(2 * i + 1, 2 * i) = s;
    r(2 * i + 1, 2 * i + 1) = c;
  }
  return r;
}

double symplectic_defect(const Mat& g) {
  const Mat j = complex_structure(static_cast<int>(g.rows() / 2));
  return (g.transpose() * j * g - j).norm();
}

}  // namespace reeb
