#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nudd/linalg.hpp"
#include "nudd/operators.hpp"

namespace nudd {

inline constexpr int kSystemSpins = 2;

/// Single-spin fields b[m][axis] and pair couplings c(m, n, axis_m, axis_n)
/// for m < n; axes 0 = x, 1 = y, 2 = z. Spins 0 and 1 are the system.
struct Coefficients {
  int n_spins = 0;
  std::vector<std::array<double, 3>> b;
  std::vector<double> c;  // n_spins * n_spins * 9, entries with m >= n unused (zero)

  static Coefficients zeros(int n_spins);

  double& pair(int m, int n, int gm, int gn) { return c[index(m, n, gm, gn)]; }
  double pair(int m, int n, int gm, int gn) const { return c[index(m, n, gm, gn)]; }

 private:
  size_t index(int m, int n, int gm, int gn) const {
    return static_cast<size_t>(((m * n_spins + n) * 3 + gm) * 3 + gn);
  }
};

/// Random all-to-all spin Hamiltonian with its eigendecomposition.
struct SpinBathModel {
  std::uint64_t seed = 0;
  Coefficients coeffs;
  CMat h_full;
  HermEig eig;

  int n_spins() const { return coeffs.n_spins; }
  int n_bath_spins() const { return coeffs.n_spins - kSystemSpins; }
  Eigen::Index dim() const { return h_full.rows(); }
  Eigen::Index bath_dim() const { return Eigen::Index{1} << n_bath_spins(); }
};

/// Every coefficient i.i.d. uniform on [-0.5, 0.5) from SplitMix64(seed),
/// drawn in the order b[0][x..z], ..., b[n-1][x..z], then c for m < n in
/// lexicographic (m, n, axis_m, axis_n) order. Requires n_spins >= 3.
SpinBathModel build_model(int n_spins, std::uint64_t seed);

/// Assembles H = sum b sigma + sum c sigma sigma and diagonalises it.
SpinBathModel model_from_coefficients(Coefficients coeffs, std::uint64_t seed = 0);

/// {"n_spins", "seed", "b": [[..3]..], "c": [[[[..3]..3]..n]..n]}.
std::string model_to_json(const SpinBathModel& model);
/// Inverse of model_to_json; the Hamiltonian is rebuilt from the coefficients.
SpinBathModel model_from_json(const std::string& text);

struct JointState {
  CVec amplitudes;
};

/// Haar-random pure state of `dim` amplitudes.
CVec haar_state(Eigen::Index dim, std::uint64_t seed);

/// sys (x) Haar-random bath state.
JointState initial_joint_state(const SystemState& sys, int n_bath_spins, std::uint64_t bath_seed);
/// sys (x) bath for a given normalised bath state.
JointState initial_joint_state(const SystemState& sys, const CVec& bath);

/// alpha|0> + beta|1> with (alpha, beta) Haar-random on the unit sphere of C^2.
SystemState random_protected_state(std::uint64_t seed, const BasisConvention& basis);
/// Haar-random over the whole two-qubit space.
SystemState random_system_state(std::uint64_t seed);

}  // namespace nudd
