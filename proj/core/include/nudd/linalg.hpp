#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nudd {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

/// Raised when a computation loses the accuracy its callers rely on
/// (eigensolver failure, norm drift). The CLI maps it to exit code 1.
class NumericalFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigendecomposition of a Hermitian matrix: H = V diag(values) V^dagger,
/// eigenvalues ascending.
struct HermEig {
  RVec values;
  CMat vectors;

  Eigen::Index dim() const { return values.size(); }
};

/// Kronecker product; `a` carries the slow (outer) index.
CMat kron(const CMat& a, const CMat& b);

/// Max-abs entry.
double max_abs(const CMat& m);

/// Max-abs entry of m - m^dagger.
double hermiticity_error(const CMat& m);

/// Throws std::invalid_argument if any entry is not finite or m is not square.
void check_square_finite(const CMat& m, const char* what);

/// Hermitian eigensolver. Inputs must be Hermitian within 1e-10 (relative to
/// max(1, |h|_max)); the symmetrised part (h + h^dagger)/2 is diagonalised.
HermEig herm_eig(const CMat& h);

/// V diag(exp(-i lambda tau)) V^dagger.
CMat propagator(const HermEig& e, double tau);

/// In-place psi <- V diag(exp(-i lambda tau)) V^dagger psi. `scratch` must
/// have the state dimension; it avoids a heap allocation per call.
void apply_propagator(const HermEig& e, double tau, CVec& psi, CVec& scratch);

/// Traces out the fast (bath) index of a (sys_dim*bath_dim)-square matrix.
CMat partial_trace_bath(const CMat& rho_full, Eigen::Index sys_dim, Eigen::Index bath_dim);

/// Reduced system density matrix of a pure joint state, without forming
/// the full density matrix.
CMat reduced_density(const CVec& psi, Eigen::Index sys_dim, Eigen::Index bath_dim);

/// (1/2) sum |eig(rho - sigma)|.
double trace_distance(const CMat& rho, const CMat& sigma);

/// Human-readable matrix dump used in fault messages.
std::string dump(const CMat& m);

}  // namespace nudd
