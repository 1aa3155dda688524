// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "fermient/errors.hpp"

namespace fermient {

CMatrix gram_serial(const CMatrix& g) {
  const std::size_t n = g.rows(), m = g.cols();
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < m; ++k) s += g(i, k) * std::conj(g(j, k));
      out(i, j) = s;
    }
  return out;
}

CMatrix gram(const CMatrix& g, int threads) {
  const std::size_t n = g.rows(), m = g.cols();
  // split storage so the inner products vectorize
  std::vector<double> re(n * m), im(n * m);
  for (std::size_t k = 0; k < n * m; ++k) {
    re[k] = g.data()[k].real();
    im[k] = g.data()[k].imag();
  }
  CMatrix out(n, n);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  const long long rows = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt) if (nt > 1)
  for (long long ii = 0; ii < rows; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    const double* ri = re.data() + i * m;
    const double* ii_ = im.data() + i * m;
    for (std::size_t j = 0; j <= i; ++j) {
      const double* rj = re.data() + j * m;
      const double* ij = im.data() + j * m;
      double sr = 0.0, si = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        sr += ri[k] * rj[k] + ii_[k] * ij[k];
        si += ii_[k] * rj[k] - ri[k] * ij[k];
      }
      out(i, j) = Complex(sr, si);
      out(j, i) = Complex(sr, -si);
    }
    out(i, i) = Complex(out(i, i).real(), 0.0);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& input,
                                          const JacobiOptions& opt) {
  const std::size_t n = input.rows();
  if (input.cols() != n)
    throw std::invalid_argument("eigenvalues: matrix is not square");
  double scale = 0.0;
  for (const auto& z : input.data()) scale = std::max(scale, std::abs(z));
  if (input.hermitian_defect() > opt.hermitian_tol * std::max(1.0, scale))
    throw std::invalid_argument("eigenvalues: matrix is not Hermitian");
  if (n == 0) return {};

  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = input(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };
  const double target =
      opt.tolerance * std::max(1.0, std::sqrt(input.frobenius_squared()));

  int sweep = 0;
  for (; sweep < opt.max_sweeps; ++sweep) {
    if (off_norm() < target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        // rotate column q by the conjugate phase so that a(p,q) becomes real
        const Complex phc = std::conj(apq / r);
        const double theta = (aqq - app) / (2.0 * r);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == p || j == q) continue;
          const Complex x = a(j, p);
          const Complex y = a(j, q) * phc;
          const Complex np = c * x - s * y;
          const Complex nq = s * x + c * y;
          a(j, p) = np;
          a(p, j) = std::conj(np);
          a(j, q) = nq;
          a(q, j) = std::conj(nq);
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (sweep == opt.max_sweeps && off_norm() >= target)
    throw NumericalFailure("Jacobi eigensolver did not converge after " +
                           std::to_string(opt.max_sweeps) + " sweeps");

  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace fermient
