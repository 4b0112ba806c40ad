#include "nudd/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace nudd {

namespace {

constexpr double kNormTol = 1e-12;

CMat make_pauli(int axis) {
  CMat m = CMat::Zero(2, 2);
  const Complex i{0.0, 1.0};
  switch (axis) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -i; m(1, 0) = i; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw std::invalid_argument("pauli: axis must be 0..3");
  }
  return m;
}

BasisConvention from_indices(std::string name, std::array<int, 4> comp_index) {
  BasisConvention b{std::move(name), CMat::Zero(kSysDim, kSysDim)};
  for (int label = 0; label < 4; ++label) b.states(comp_index[label], label) = 1.0;
  return b;
}

}  // namespace

const CMat& pauli(int axis) {
  static const std::array<CMat, 4> mats = {make_pauli(0), make_pauli(1), make_pauli(2),
                                           make_pauli(3)};
  if (axis < 0 || axis > 3) throw std::invalid_argument("pauli: axis must be 0..3");
  return mats[static_cast<size_t>(axis)];
}

CMat pauli_on(int axis, int site, int n_spins) {
  if (n_spins < 1 || site < 0 || site >= n_spins) {
    throw std::invalid_argument("pauli_on: site out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_spins;
  const Eigen::Index stride = Eigen::Index{1} << (n_spins - 1 - site);
  const CMat& p = pauli(axis);
  CMat out = CMat::Zero(dim, dim);
  // Pauli matrices have one nonzero per row, so this is a permutation with phases.
  for (Eigen::Index r = 0; r < dim; ++r) {
    const int bit = static_cast<int>((r / stride) % 2);
    for (int c_bit = 0; c_bit < 2; ++c_bit) {
      const Complex v = p(bit, c_bit);
      if (v == Complex{}) continue;
      out(r, r + (c_bit - bit) * stride) = v;
    }
  }
  return out;
}

BasisConvention default_basis() { return from_indices("default", {0, 3, 1, 2}); }

BasisConvention default_basis_swapped() { return from_indices("default-swapped", {0, 3, 2, 1}); }

BasisConvention local_basis() { return from_indices("local", {0, 1, 2, 3}); }

BasisConvention basis_from_pair(const CVec& zero, const CVec& one) {
  if (zero.size() != kSysDim || one.size() != kSysDim) {
    throw std::invalid_argument("basis_from_pair: states must have four amplitudes");
  }
  if (std::abs(zero.norm() - 1.0) > kNormTol || std::abs(one.norm() - 1.0) > kNormTol ||
      std::abs(zero.dot(one)) > kNormTol) {
    throw std::invalid_argument("basis_from_pair: states must be orthonormal");
  }
  BasisConvention b{"pair", CMat::Zero(kSysDim, kSysDim)};
  b.states.col(0) = zero;
  b.states.col(1) = one;
  for (int k = 2; k < 4; ++k) {
    const auto filled = b.states.leftCols(k);
    CVec best;
    double best_norm = -1.0;
    for (Eigen::Index e = 0; e < kSysDim; ++e) {
      CVec v = CVec::Unit(kSysDim, e);
      v -= filled * (filled.adjoint() * v);
      v -= filled * (filled.adjoint() * v);
      if (v.norm() > best_norm) {
        best_norm = v.norm();
        best = v;
      }
    }
    b.states.col(k) = best / best_norm;
  }
  return b;
}

BasisConvention basis_by_name(std::string_view name) {
  if (name == "default") return default_basis();
  if (name == "local") return local_basis();
  if (name == "default-swapped") return default_basis_swapped();
  throw std::invalid_argument("unknown basis convention '" + std::string(name) + "'");
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Y: return "Y";
    case Family::YTilde: return "Yt";
    case Family::R: return "R";
  }
  return "?";
}

OperatorBasis build_basis(Family family, const BasisConvention& basis) {
  OperatorBasis out{family, {}};
  if (family == Family::R) {
    for (int k = 0; k < 4; ++k) {
      for (int l = 0; l < 4; ++l) out.elements[static_cast<size_t>(4 * k + l)] = kron(pauli(k), pauli(l));
    }
    return out;
  }
  const auto P = [&](int a, int b) { return basis.outer(a, b); };
  const Complex i{0.0, 1.0};
  auto& e = out.elements;
  e[0] = CMat::Identity(kSysDim, kSysDim);
  e[1] = P(0, 0) + P(1, 1);
  e[2] = P(2, 2) - P(3, 3);
  e[3] = P(2, 3);
  e[4] = P(3, 2);
  e[5] = P(0, 0) - P(1, 1);
  if (family == Family::Y) {
    e[6] = P(1, 2);
    e[7] = P(2, 1);
    e[8] = P(1, 3);
    e[9] = P(3, 1);
    e[10] = P(0, 2);
    e[11] = P(2, 0);
    e[12] = P(0, 3);
    e[13] = P(3, 0);
  } else {
    e[6] = P(0, 2) - P(1, 2);
    e[7] = P(2, 0) - P(2, 1);
    e[8] = P(0, 3) - P(1, 3);
    e[9] = P(3, 0) - P(3, 1);
    e[10] = P(0, 2) + P(1, 2);
    e[11] = P(2, 0) + P(2, 1);
    e[12] = P(0, 3) + P(1, 3);
    e[13] = P(3, 0) + P(3, 1);
  }
  e[14] = P(0, 1) + P(1, 0);
  e[15] = -i * (P(1, 0) - P(0, 1));
  return out;
}

std::string_view control_name(Control c) {
  switch (c) {
    case Control::X0: return "X0";
    case Control::X1: return "X1";
    case Control::Xphi: return "Xphi";
    case Control::X01: return "X01";
    case Control::Z1: return "Z1";
    case Control::Z2: return "Z2";
    case Control::Z3: return "Z3";
    case Control::Z4: return "Z4";
  }
  return "?";
}

Control parse_control(std::string_view name) {
  for (Control c : kAllControls) {
    if (control_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown control operator '" + std::string(name) + "'");
}

CMat ControlOperator::lift(int n_bath_spins) const { return lift_to_full(sys, n_bath_spins); }

ControlOperator build_control(Control c, const BasisConvention& basis) {
  const auto P = [&](int a, int b) { return basis.outer(a, b); };
  const CMat I = CMat::Identity(kSysDim, kSysDim);
  CMat m;
  switch (c) {
    case Control::X0: m = 2.0 * P(0, 0) - I; break;
    case Control::X1: m = 2.0 * P(1, 1) - I; break;
    case Control::Xphi: {
      const CVec v = basis.ket(0) + basis.ket(1);
      m = v * v.adjoint() - I;
      break;
    }
    case Control::X01:
    case Control::Z1: m = 2.0 * (P(0, 0) + P(1, 1)) - I; break;
    case Control::Z2: m = P(0, 0) - P(1, 1) + P(2, 2) - P(3, 3); break;
    case Control::Z3: m = P(0, 1) + P(1, 0) + P(2, 3) + P(3, 2); break;
    case Control::Z4: m = P(0, 2) + P(2, 0) + P(1, 3) + P(3, 1); break;
  }
  return ControlOperator{c, std::move(m)};
}

ControlOperator build_control(std::string_view name, const BasisConvention& basis) {
  return build_control(parse_control(name), basis);
}

CMat lift_to_full(const CMat& op, int n_bath_spins) {
  if (n_bath_spins < 0) throw std::invalid_argument("lift_to_full: negative bath size");
  const Eigen::Index bath_dim = Eigen::Index{1} << n_bath_spins;
  return kron(op, CMat::Identity(bath_dim, bath_dim));
}

SystemState SystemState::pair(Complex alpha, Complex beta, const BasisConvention& basis) {
  if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kNormTol) {
    throw std::invalid_argument("SystemState::pair: |alpha|^2 + |beta|^2 must be 1");
  }
  return SystemState{alpha * basis.ket(0) + beta * basis.ket(1)};
}

SystemState SystemState::from_amplitudes(const CVec& amps) {
  if (amps.size() != kSysDim || std::abs(amps.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("SystemState: need four amplitudes with unit norm");
  }
  return SystemState{amps};
}

}  // namespace nudd
