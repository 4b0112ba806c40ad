#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "nudd/linalg.hpp"

namespace nudd {

inline constexpr Eigen::Index kSysDim = 4;

/// Single-spin Pauli matrices; index 0 = I, 1 = x, 2 = y, 3 = z.
/// Spin up is computational index 0, so sigma_z |up> = +|up>.
const CMat& pauli(int axis);

/// sigma_axis acting on `site` (0-based, site 0 = slowest index) of an
/// n-spin register.
CMat pauli_on(int axis, int site, int n_spins);

/// Maps the four abstract labels |0>,|1>,|2>,|3> onto two-qubit kets.
/// Column k of `states` is |k> expressed in the computational basis
/// (|up up>, |up down>, |down up>, |down down>).
struct BasisConvention {
  std::string name;
  CMat states;

  CVec ket(int label) const { return states.col(label); }
  /// |a><b| in computational coordinates.
  CMat outer(int a, int b) const { return states.col(a) * states.col(b).adjoint(); }
};

/// |0>=|uu>, |1>=|dd>, |2>=|ud>, |3>=|du>.
BasisConvention default_basis();
/// Default with |2> and |3> exchanged.
BasisConvention default_basis_swapped();
/// |0>=|uu>, |1>=|ud>, |2>=|du>, |3>=|dd>; makes Z1..Z4 single-qubit operators.
BasisConvention local_basis();
/// Any orthonormal pair for |0>,|1>; |2>,|3> are completed by Gram-Schmidt
/// over the computational states, taking the largest residual first.
BasisConvention basis_from_pair(const CVec& zero, const CVec& one);
/// "default" | "local" | "default-swapped".
BasisConvention basis_by_name(std::string_view name);

enum class Family { Y, YTilde, R };

std::string_view family_name(Family f);

/// Sixteen 4x4 basis operators. Indexing is 1-based to match the usual
/// Y1..Y16 labels.
struct OperatorBasis {
  Family family;
  std::array<CMat, 16> elements;

  const CMat& operator[](int label) const { return elements.at(static_cast<size_t>(label - 1)); }
};

/// R family: sigma_k (x) sigma_l with label 4k + l + 1.
OperatorBasis build_basis(Family family, const BasisConvention& basis);

enum class Control { X0, X1, Xphi, X01, Z1, Z2, Z3, Z4 };

inline constexpr std::array<Control, 8> kAllControls = {
    Control::X0, Control::X1, Control::Xphi, Control::X01,
    Control::Z1, Control::Z2, Control::Z3, Control::Z4};

std::string_view control_name(Control c);
/// Throws std::invalid_argument for unknown names.
Control parse_control(std::string_view name);

/// Hermitian involution on the two-qubit system.
struct ControlOperator {
  Control id;
  CMat sys;

  std::string_view name() const { return control_name(id); }
  CMat lift(int n_bath_spins) const;
};

ControlOperator build_control(Control c, const BasisConvention& basis);
ControlOperator build_control(std::string_view name, const BasisConvention& basis);

/// op (x) I_{2^n_bath_spins}.
CMat lift_to_full(const CMat& op, int n_bath_spins);

/// Normalised two-qubit state in computational coordinates.
struct SystemState {
  CVec amplitudes;

  /// alpha|0> + beta|1> under `basis`; throws unless |alpha|^2+|beta|^2 = 1
  /// within 1e-12.
  static SystemState pair(Complex alpha, Complex beta, const BasisConvention& basis);
  /// Throws unless `amps` has four entries and unit norm within 1e-12.
  static SystemState from_amplitudes(const CVec& amps);

  CMat projector() const { return amplitudes * amplitudes.adjoint(); }
};

}  // namespace nudd
