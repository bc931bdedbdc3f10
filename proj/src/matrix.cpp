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

#include "bohrtop/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bohrtop {

CMat CMat::adjoint() const {
  CMat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

double CMat::frobenius() const {
  double s = 0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

cplx CMat::trace() const {
  cplx t = 0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

CMat operator+(const CMat& a, const CMat& b) {
  CMat r(a.n_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
  return r;
}

CMat operator-(const CMat& a, const CMat& b) {
  CMat r(a.n_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
  return r;
}

CMat operator*(const CMat& a, const CMat& b) {
  const int n = a.n_;
  CMat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMat operator*(cplx s, const CMat& a) {
  CMat r(a.n_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = s * a.a_[k];
  return r;
}

CMat operator*(double s, const CMat& a) { return cplx(s, 0) * a; }

bool approx_equal(const CMat& a, const CMat& b, double tol) {
  return a.n() == b.n() && (a - b).frobenius() <= tol;
}

bool is_hermitian(const CMat& a, double tol) {
  return (a - a.adjoint()).frobenius() <= tol * std::max(1.0, a.frobenius());
}

bool is_projection_matrix(const CMat& a, double tol) {
  return is_hermitian(a, tol) && (a * a - a).frobenius() <= tol * std::max(1.0, a.frobenius());
}

namespace {

double offdiag_frobenius(const CMat& a) {
  double s = 0;
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenSystem jacobi_hermitian(const CMat& input) {
  const int n = input.n();
  CMat a = input;
  CMat v = CMat::identity(n);

  for (int sweep = 0; sweep < Tol::jacobi_sweeps; ++sweep) {
    if (offdiag_frobenius(a) < Tol::jacobi_off) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const cplx phase = apq / mag;  // apq = |apq| * phase
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        // smaller root of t^2 + 2*tau*t - 1 = 0
        double t;
        if (std::abs(tau) > 1e150) {
          t = 1.0 / (2.0 * tau);
        } else {
          t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // columns: col_p <- c*col_p - conj(s*phase)... apply G with
        // G(p,p)=c, G(p,q)=s*phase, G(q,p)=-s*conj(phase), G(q,q)=c
        // and A <- G^H A G, V <- V G.
        const cplx gpq = s * phase;
        const cplx gqp = -s * std::conj(phase);
        for (int k = 0; k < n; ++k) {  // A <- A G (columns p,q)
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + gqp * akq;
          a(k, q) = gpq * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {  // A <- G^H A (rows p,q)
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {  // V <- V G
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + gqp * vkq;
          v(k, q) = gpq * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.values.resize(n);
  es.vectors.assign(n, std::vector<cplx>(n));
  for (int k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) es.vectors[k][i] = v(i, order[k]);
  }
  return es;
}

std::vector<SpectralPair> spectral_decomposition(const CMat& a, double tol_cluster) {
  if (!is_hermitian(a)) throw NotHermitian("spectral decomposition of a non-Hermitian matrix");
  const int n = a.n();
  EigenSystem es = jacobi_hermitian(a);
  std::vector<SpectralPair> out;
  int k = 0;
  while (k < n) {
    int k2 = k;
    double sum = 0;
    while (k2 < n && es.values[k2] - es.values[k] <= tol_cluster) sum += es.values[k2++];
    SpectralPair sp;
    sp.value = sum / (k2 - k);
    sp.projection = CMat(n);
    for (int m = k; m < k2; ++m)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          sp.projection(i, j) += es.vectors[m][i] * std::conj(es.vectors[m][j]);
    out.push_back(std::move(sp));
    k = k2;
  }
  return out;
}

CompressionRange compression_spectrum(const CMat& a, const CMat& p) {
  const int n = a.n();
  // orthonormal basis of range(p): eigenvectors with eigenvalue near 1
  EigenSystem es = jacobi_hermitian(p);
  std::vector<const std::vector<cplx>*> basis;
  for (int k = 0; k < n; ++k)
    if (es.values[k] > 0.5) basis.push_back(&es.vectors[k]);
  const int r = static_cast<int>(basis.size());
  if (r == 0) throw Error("compression onto the zero projection");
  CMat compressed(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      cplx s = 0;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          s += std::conj((*basis[i])[x]) * a(x, y) * (*basis[j])[y];
      compressed(i, j) = s;
    }
  EigenSystem ces = jacobi_hermitian(compressed);
  return CompressionRange{ces.values.front(), ces.values.back(), r};
}

double min_eigenvalue(const CMat& a) { return jacobi_hermitian(a).values.front(); }

}  // namespace bohrtop
