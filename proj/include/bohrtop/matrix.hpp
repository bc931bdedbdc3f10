// Copyright 2026 The Bohrtop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOHRTOP_MATRIX_HPP
#define BOHRTOP_MATRIX_HPP

#include <complex>
#include <vector>

#include "bohrtop/common.hpp"

namespace bohrtop {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Desk-scale dimensions only.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  static CMat identity(int n) {
    CMat m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int n() const { return n_; }
  cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  CMat adjoint() const;
  double frobenius() const;
  cplx trace() const;

  friend CMat operator+(const CMat& a, const CMat& b);
  friend CMat operator-(const CMat& a, const CMat& b);
  friend CMat operator*(const CMat& a, const CMat& b);
  friend CMat operator*(cplx s, const CMat& a);
  friend CMat operator*(double s, const CMat& a);

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

bool approx_equal(const CMat& a, const CMat& b, double tol);
bool is_hermitian(const CMat& a, double tol = Tol::herm);
bool is_projection_matrix(const CMat& a, double tol = Tol::proj);

// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Converges when the off-diagonal Frobenius norm drops below
// Tol::jacobi_off; at most Tol::jacobi_sweeps sweeps. Eigenvalues ascending,
// vectors[k] is the k-th orthonormal eigenvector (as column data).
struct EigenSystem {
  std::vector<double> values;
  std::vector<std::vector<cplx>> vectors;
};
EigenSystem jacobi_hermitian(const CMat& a);

// Eigenvalue/spectral-projection pairs, eigenvalues ascending; eigenvalues
// within tol_cluster of each other share one projection.
struct SpectralPair {
  double value;
  CMat projection;
};
std::vector<SpectralPair> spectral_decomposition(const CMat& a,
                                                 double tol_cluster = Tol::cluster);

// Extremal eigenvalues of the compression p a p restricted to range(p).
struct CompressionRange {
  double min;
  double max;
  int rank;
};
CompressionRange compression_spectrum(const CMat& a, const CMat& p);

// min eigenvalue of a Hermitian matrix (0x0 treated as +inf guard by caller)
double min_eigenvalue(const CMat& a);

}  // namespace bohrtop

#endif
