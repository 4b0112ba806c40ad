// Reference computations for the tests. Nothing here calls into the
// library's numerical paths: matrices are written out entry by entry,
// exponentials use Eigen's Pade approximant, and nested pulse sequences are
// built by direct recursion over closed-form times.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat sy() {
  Mat m(2, 2);
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}
inline Mat sz() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
inline Mat id(Eigen::Index n) { return Mat::Identity(n, n); }

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Computational two-qubit kets, spin up = index 0.
inline Vec ket(int up_down_bits) {
  Vec v = Vec::Zero(4);
  v(up_down_bits) = 1.0;
  return v;
}
inline Vec uu() { return ket(0); }
inline Vec ud() { return ket(1); }
inline Vec du() { return ket(2); }
inline Vec dd() { return ket(3); }

inline Mat partial_trace(const Mat& rho, Eigen::Index ds, Eigen::Index db) {
  Mat out = Mat::Zero(ds, ds);
  for (Eigen::Index i = 0; i < ds; ++i)
    for (Eigen::Index j = 0; j < ds; ++j)
      for (Eigen::Index e = 0; e < db; ++e) out(i, j) += rho(i * db + e, j * db + e);
  return out;
}

/// Half the sum of singular values.
inline double trace_distance(const Mat& a, const Mat& b) {
  Eigen::JacobiSVD<Mat> svd(a - b);
  return 0.5 * svd.singularValues().sum();
}

inline Mat expm_h(const Mat& h, double t) { return (C(0, -t) * h).exp(); }

/// sin^2(j pi / (2n + 2)) in long double.
inline double udd_fraction(int j, int n) {
  const long double s = std::sin(static_cast<long double>(j) * std::numbers::pi_v<long double> /
                                 (2.0L * n + 2.0L));
  return static_cast<double>(s * s);
}

/// Joint propagator of a nested sequence. layers[0] is outermost; pulses
/// are full-space unitaries; every layer has n pulses and adds a terminal
/// pulse when n is odd.
struct Nest {
  const Mat* h = nullptr;
  std::vector<Mat> pulses;
  int n = 1;
  bool periodic = false;

  Mat interval(size_t layer, double a, double b) const {
    if (layer == pulses.size()) return expm_h(*h, b - a);
    std::vector<double> t{a};
    for (int j = 1; j <= n; ++j) {
      const double f = periodic ? static_cast<double>(j) / (n + 1) : udd_fraction(j, n);
      t.push_back(a + (b - a) * f);
    }
    t.push_back(b);
    Mat u = id(h->rows());
    for (int j = 0; j <= n; ++j) {
      u = interval(layer + 1, t[j], t[j + 1]) * u;
      if (j < n) u = pulses[layer] * u;
    }
    if (n % 2 == 1) u = pulses[layer] * u;
    return u;
  }
  Mat propagator(double total) const { return interval(0, 0.0, total); }
};

/// sigma_axis on `site` of an n-spin register; axis 0 = x, 1 = y, 2 = z.
inline Mat pauli_site(int axis, int site, int n) {
  const Mat s = axis == 0 ? sx() : axis == 1 ? sy() : sz();
  Mat out = Mat::Ones(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, k == site ? s : id(2));
  return out;
}

/// Deterministic pseudo-random complex matrix, independent of the library
/// generator (64-bit LCG).
inline Mat lcg_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::uint64_t s = seed * 2862933555777941757ULL + 3037000493ULL;
  auto next = [&s] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
  };
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = next();
      const double im = next();
      m(i, j) = C(re, im);
    }
  return m;
}

inline Mat lcg_hermitian(Eigen::Index dim, std::uint64_t seed) {
  const Mat a = lcg_matrix(dim, dim, seed);
  return 0.5 * (a + a.adjoint());
}

inline Vec lcg_state(Eigen::Index dim, std::uint64_t seed) {
  Vec v = lcg_matrix(dim, 1, seed).col(0);
  return v / v.norm();
}

inline Mat lcg_density(Eigen::Index dim, std::uint64_t seed) {
  const Mat a = lcg_matrix(dim, dim, seed);
  Mat r = a * a.adjoint();
  return r / r.trace();
}

}  // namespace oracle
