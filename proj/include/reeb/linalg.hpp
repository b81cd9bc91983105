#pragma once

#include <Eigen/Dense>

namespace reeb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A point of R^{2n}, stored as (x_1, y_1, ..., x_n, y_n) so that block i is
// the complex coordinate z_i = x_i + i y_i.
using PointR2n = Vec;

/// Standard complex structure on R^{2n}: multiplication by i in every block.
Mat complex_structure(int n);

/// Applies J to v without forming the matrix.
Vec apply_j(const Vec& v);

/// exp(theta * J): simultaneous rotation of every complex block by theta.
Mat block_rotation(int n, double theta);

/// ||G^T J G - J||_F.
double symplectic_defect(const Mat& g);

}  // namespace reeb
