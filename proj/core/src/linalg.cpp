#include "nudd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace nudd {

namespace {

constexpr double kHermitianInputTol = 1e-10;
constexpr double kTraceDistanceHermTol = 1e-8;

}  // namespace

CMat kron(const CMat& a, const CMat& b) {
  check_square_finite(a, "kron lhs");
  check_square_finite(b, "kron rhs");
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  CMat out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const CMat& m) { return max_abs(m - m.adjoint()); }

void check_square_finite(const CMat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
  }
}

HermEig herm_eig(const CMat& h) {
  check_square_finite(h, "herm_eig");
  const double scale = std::max(1.0, max_abs(h));
  if (hermiticity_error(h) > kHermitianInputTol * scale) {
    throw std::invalid_argument("herm_eig: input is not Hermitian within tolerance");
  }
  const CMat sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalFault("herm_eig: eigensolver did not converge for\n" + dump(h));
  }
  return HermEig{solver.eigenvalues(), solver.eigenvectors()};
}

CMat propagator(const HermEig& e, double tau) {
  if (!std::isfinite(tau) || tau < 0.0) {
    throw std::invalid_argument("propagator: tau must be finite and non-negative");
  }
  CVec phases(e.dim());
  for (Eigen::Index k = 0; k < e.dim(); ++k) {
    phases(k) = std::polar(1.0, -e.values(k) * tau);
  }
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

void apply_propagator(const HermEig& e, double tau, CVec& psi, CVec& scratch) {
  if (!std::isfinite(tau) || tau < 0.0) {
    throw std::invalid_argument("apply_propagator: tau must be finite and non-negative");
  }
  if (tau == 0.0) return;
  scratch.noalias() = e.vectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < e.dim(); ++k) {
    scratch(k) *= std::polar(1.0, -e.values(k) * tau);
  }
  psi.noalias() = e.vectors * scratch;
}

CMat partial_trace_bath(const CMat& rho_full, Eigen::Index sys_dim, Eigen::Index bath_dim) {
  if (sys_dim <= 0 || bath_dim <= 0 || rho_full.rows() != sys_dim * bath_dim ||
      rho_full.cols() != rho_full.rows()) {
    throw std::invalid_argument("partial_trace_bath: dimension mismatch");
  }
  CMat out = CMat::Zero(sys_dim, sys_dim);
  for (Eigen::Index i = 0; i < sys_dim; ++i) {
    for (Eigen::Index j = 0; j < sys_dim; ++j) {
      out(i, j) = rho_full.block(i * bath_dim, j * bath_dim, bath_dim, bath_dim).trace();
    }
  }
  return out;
}

CMat reduced_density(const CVec& psi, Eigen::Index sys_dim, Eigen::Index bath_dim) {
  if (sys_dim <= 0 || bath_dim <= 0 || psi.size() != sys_dim * bath_dim) {
    throw std::invalid_argument("reduced_density: dimension mismatch");
  }
  // Rows of `amps` are system indices, columns bath indices.
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      amps(psi.data(), sys_dim, bath_dim);
  return amps * amps.adjoint();
}

double trace_distance(const CMat& rho, const CMat& sigma) {
  check_square_finite(rho, "trace_distance rho");
  check_square_finite(sigma, "trace_distance sigma");
  if (rho.rows() != sigma.rows()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  if (hermiticity_error(rho) > kTraceDistanceHermTol ||
      hermiticity_error(sigma) > kTraceDistanceHermTol) {
    throw std::invalid_argument("trace_distance: inputs must be Hermitian");
  }
  const CMat diff = rho - sigma;
  Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (diff + diff.adjoint()),
                                             Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalFault("trace_distance: eigensolver did not converge for\n" + dump(diff));
  }
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

std::string dump(const CMat& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j ? " " : "") << m(i, j);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace nudd
