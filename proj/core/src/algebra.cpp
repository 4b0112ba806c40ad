#include "nudd/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nudd {

namespace {

constexpr double kZeroTol = 1e-9;
constexpr double kExchangeTol = 1e-12;

const OperatorBasis& r_basis() {
  static const OperatorBasis r = build_basis(Family::R, default_basis());
  return r;
}

Eigen::Matrix<Complex, 16, Eigen::Dynamic> orthonormal_columns(
    const Eigen::Matrix<Complex, 16, Eigen::Dynamic>& cols) {
  if (cols.cols() == 0) return Eigen::Matrix<Complex, 16, Eigen::Dynamic>(16, 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(cols), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > kZeroTol) ++rank;
  return svd.matrixU().leftCols(rank);
}

std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

PauliCoords pauli_coords(const CMat& op) {
  if (op.rows() != kSysDim || op.cols() != kSysDim) {
    throw std::invalid_argument("pauli_coords: expected a 4x4 operator");
  }
  PauliCoords c;
  const auto& r = r_basis();
  for (int j = 0; j < 16; ++j) c(j) = (r.elements[static_cast<size_t>(j)] * op).trace() / 4.0;
  return c;
}

CMat from_pauli_coords(const PauliCoords& c) {
  CMat op = CMat::Zero(kSysDim, kSysDim);
  const auto& r = r_basis();
  for (int j = 0; j < 16; ++j) op += c(j) * r.elements[static_cast<size_t>(j)];
  return op;
}

AlgebraSpan AlgebraSpan::from_operators(std::vector<CMat> ops) {
  AlgebraSpan s;
  Eigen::Matrix<Complex, 16, Eigen::Dynamic> cols(16, 0);
  for (auto& op : ops) {
    const PauliCoords c = pauli_coords(op);
    if (c.norm() <= kZeroTol) continue;
    cols.conservativeResize(Eigen::NoChange, cols.cols() + 1);
    cols.col(cols.cols() - 1) = c;
    s.generators_.push_back(std::move(op));
  }
  s.basis_ = orthonormal_columns(cols);
  return s;
}

AlgebraSpan AlgebraSpan::from_labels(const OperatorBasis& basis, const std::vector<int>& labels) {
  std::vector<CMat> ops;
  ops.reserve(labels.size());
  for (int l : labels) ops.push_back(basis[l]);
  return from_operators(std::move(ops));
}

AlgebraSpan AlgebraSpan::full(const OperatorBasis& basis) {
  return from_operators({basis.elements.begin(), basis.elements.end()});
}

std::vector<CMat> AlgebraSpan::basis_operators() const {
  std::vector<CMat> ops;
  for (Eigen::Index k = 0; k < basis_.cols(); ++k) ops.push_back(from_pauli_coords(basis_.col(k)));
  return ops;
}

double AlgebraSpan::residual(const CMat& op) const {
  const PauliCoords c = pauli_coords(op);
  if (basis_.cols() == 0) return c.norm();
  const PauliCoords r = c - basis_ * (basis_.adjoint() * c);
  return r.norm();
}

bool AlgebraSpan::contains(const CMat& op) const {
  return residual(op) <= kZeroTol * std::max(1.0, pauli_coords(op).norm());
}

bool AlgebraSpan::contains(const AlgebraSpan& other) const {
  for (const auto& op : other.basis_operators()) {
    if (!contains(op)) return false;
  }
  return true;
}

bool AlgebraSpan::same_as(const AlgebraSpan& other) const {
  return dim() == other.dim() && contains(other);
}

LabelReporter::LabelReporter(OperatorBasis basis) : basis_(std::move(basis)) {
  Eigen::Matrix<Complex, 16, 16> cols;
  for (int k = 0; k < 16; ++k) cols.col(k) = pauli_coords(basis_.elements[static_cast<size_t>(k)]);
  Eigen::FullPivLU<Eigen::Matrix<Complex, 16, 16>> lu(cols);
  if (!lu.isInvertible()) throw std::logic_error("LabelReporter: basis is not linearly independent");
  to_labels_ = lu.inverse();
}

Eigen::Matrix<Complex, 16, 1> LabelReporter::expand(const CMat& op) const {
  return to_labels_ * pauli_coords(op);
}

std::vector<int> LabelReporter::labels(const CMat& op) const {
  std::vector<int> out;
  const auto coeffs = expand(op);
  for (int k = 0; k < 16; ++k) {
    if (std::abs(coeffs(k)) > kZeroTol) out.push_back(k + 1);
  }
  return out;
}

std::vector<int> LabelReporter::labels(const AlgebraSpan& span) const {
  std::array<bool, 16> seen{};
  const auto& b = span.basis();
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const Eigen::Matrix<Complex, 16, 1> coeffs = to_labels_ * b.col(j);
    for (int k = 0; k < 16; ++k) seen[static_cast<size_t>(k)] |= std::abs(coeffs(k)) > kZeroTol;
  }
  std::vector<int> out;
  for (int k = 0; k < 16; ++k) {
    if (seen[static_cast<size_t>(k)]) out.push_back(k + 1);
  }
  return out;
}

AlgebraSpan LabelReporter::label_span(const AlgebraSpan& span) const {
  return AlgebraSpan::from_labels(basis_, labels(span));
}

ConjugationSplit conjugation_split(const AlgebraSpan& span, const CMat& x) {
  ConjugationSplit out;
  std::vector<CMat> plus;
  std::vector<CMat> minus;
  out.invariant = true;
  for (const auto& a : span.generators()) {
    const CMat conj = x * a * x;
    CMat p = 0.5 * (a + conj);
    CMat m = 0.5 * (a - conj);
    if (!span.contains(p) || !span.contains(m)) {
      out.invariant = false;
      out.witnesses.push_back(a);
    }
    plus.push_back(std::move(p));
    minus.push_back(std::move(m));
  }
  out.commutant = AlgebraSpan::from_operators(std::move(plus));
  out.anticommutant = AlgebraSpan::from_operators(std::move(minus));
  return out;
}

ClosureResult multiplicative_closure(const AlgebraSpan& span) {
  ClosureResult out;
  std::vector<CMat> gens = span.generators();
  AlgebraSpan current = span;
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t n = gens.size();
    for (size_t i = 0; i < n && !grew; ++i) {
      for (size_t j = 0; j < n; ++j) {
        CMat prod = gens[i] * gens[j];
        if (current.contains(prod)) continue;
        out.new_elements.push_back(prod);
        gens.push_back(std::move(prod));
        current = AlgebraSpan::from_operators(gens);
        grew = true;
        break;
      }
    }
  }
  out.closed = out.new_elements.empty();
  out.closure = std::move(current);
  return out;
}

std::string_view outcome_name(StepOutcome o) {
  switch (o) {
    case StepOutcome::Reduced: return "reduced";
    case StepOutcome::BreakdownNonInvariant: return "breakdown_non_invariant";
    case StepOutcome::BreakdownClosure: return "breakdown_closure";
  }
  return "?";
}

StepOutcome ReductionChain::outcome() const {
  StepOutcome worst = StepOutcome::Reduced;
  for (const auto& s : steps) {
    if (s.outcome == StepOutcome::BreakdownNonInvariant) return s.outcome;
    if (s.outcome == StepOutcome::BreakdownClosure) worst = s.outcome;
  }
  return worst;
}

const AlgebraSpan& ReductionChain::final_span() const {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->outcome != StepOutcome::BreakdownNonInvariant) return it->output;
  }
  return start;
}

AlgebraAnalyzer::AlgebraAnalyzer(BasisConvention convention)
    : convention_(std::move(convention)),
      y_(build_basis(Family::Y, convention_)),
      y_tilde_(build_basis(Family::YTilde, convention_)) {}

std::vector<int> AlgebraAnalyzer::labels(const AlgebraSpan& span, Family family) const {
  switch (family) {
    case Family::Y: return y_.labels(span);
    case Family::YTilde: return y_tilde_.labels(span);
    case Family::R: {
      std::vector<int> out;
      std::array<bool, 16> seen{};
      for (Eigen::Index j = 0; j < span.basis().cols(); ++j) {
        for (int k = 0; k < 16; ++k) seen[static_cast<size_t>(k)] |= std::abs(span.basis()(k, j)) > kZeroTol;
      }
      for (int k = 0; k < 16; ++k) {
        if (seen[static_cast<size_t>(k)]) out.push_back(k + 1);
      }
      return out;
    }
  }
  return {};
}

ReductionChain AlgebraAnalyzer::predict_chain(const std::vector<Control>& outer_to_inner,
                                              const AlgebraSpan& start) const {
  ReductionChain chain{outer_to_inner, start, {}};
  AlgebraSpan span = start;
  for (auto it = outer_to_inner.rbegin(); it != outer_to_inner.rend(); ++it) {
    const CMat x = build_control(*it, convention_).sys;
    ChainStep step{*it, span, false, StepOutcome::Reduced, {}, {}, {}};

    ConjugationSplit split = conjugation_split(span, x);
    if (!split.invariant) {
      AlgebraSpan relabelled = y_.label_span(span);
      if (!relabelled.same_as(span)) {
        ConjugationSplit retry = conjugation_split(relabelled, x);
        if (retry.invariant) {
          step.input = std::move(relabelled);
          step.relabelled = true;
          split = std::move(retry);
        }
      }
    }
    if (!split.invariant) {
      step.outcome = StepOutcome::BreakdownNonInvariant;
      step.diagnostics = std::move(split.witnesses);
      chain.steps.push_back(std::move(step));
      break;
    }

    step.commutant = split.commutant;
    ClosureResult closure = multiplicative_closure(split.commutant);
    if (closure.closed) {
      step.output = std::move(split.commutant);
    } else {
      step.outcome = StepOutcome::BreakdownClosure;
      step.output = std::move(closure.closure);
      step.diagnostics = std::move(closure.new_elements);
    }
    span = step.output;
    chain.steps.push_back(std::move(step));
  }
  return chain;
}

std::string AlgebraAnalyzer::format_labels(const std::vector<int>& labels, Family family) const {
  const std::string prefix(family_name(family));
  std::ostringstream os;
  os << '{';
  size_t i = 0;
  bool first = true;
  while (i < labels.size()) {
    size_t j = i;
    while (j + 1 < labels.size() && labels[j + 1] == labels[j] + 1) ++j;
    auto emit = [&](int l) {
      os << (first ? "" : ", ") << prefix << l;
      first = false;
    };
    if (j - i >= 2) {
      os << (first ? "" : ", ") << prefix << labels[i] << ".." << prefix << labels[j];
      first = false;
    } else {
      for (size_t k = i; k <= j; ++k) emit(labels[k]);
    }
    i = j + 1;
  }
  os << '}';
  return os.str();
}

std::string AlgebraAnalyzer::render(const ReductionChain& chain, Family family) const {
  std::ostringstream os;
  auto box = [&](const AlgebraSpan& s) {
    os << format_labels(labels(s, family), family) << "  dim " << s.dim() << '\n';
  };
  box(chain.start);
  for (const auto& step : chain.steps) {
    os << "⇓ " << control_name(step.control);
    if (step.relabelled) {
      os << "  (split in Y labels, dim " << step.input.dim() << ")";
    }
    std::vector<int> diag;
    for (const auto& op : step.diagnostics) {
      const auto l = labels(AlgebraSpan::from_operators({op}), family);
      diag.insert(diag.end(), l.begin(), l.end());
    }
    std::sort(diag.begin(), diag.end());
    diag.erase(std::unique(diag.begin(), diag.end()), diag.end());
    switch (step.outcome) {
      case StepOutcome::Reduced:
        os << '\n';
        box(step.output);
        break;
      case StepOutcome::BreakdownNonInvariant:
        os << "  BREAKDOWN non-invariant, witnesses " << format_labels(diag, family) << '\n';
        break;
      case StepOutcome::BreakdownClosure: {
        const auto regenerated =
            set_difference(labels(step.output, family), labels(step.commutant, family));
        os << "  BREAKDOWN closure, regenerates " << format_labels(regenerated, family) << '\n';
        box(step.output);
        break;
      }
    }
  }
  os << "outcome: " << outcome_name(chain.outcome()) << '\n';
  return os.str();
}

bool ordering_exchangeable(const CMat& a, const CMat& b, const AlgebraSpan& subspace) {
  const auto ops = subspace.basis_operators();
  if (ops.empty()) return true;
  CMat cols(kSysDim, static_cast<Eigen::Index>(2 * kSysDim * ops.size()));
  Eigen::Index c = 0;
  for (const auto& op : ops) {
    cols.middleCols(c, kSysDim) = op;
    cols.middleCols(c + kSysDim, kSysDim) = op.adjoint();
    c += 2 * kSysDim;
  }
  Eigen::JacobiSVD<CMat> svd(cols, Eigen::ComputeThinU);
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > kZeroTol) ++rank;
  const CMat q = svd.matrixU().leftCols(rank);
  const CMat p = q * q.adjoint();
  const CMat ab = a * b;
  const CMat ba = b * a;
  return max_abs(p * (ab - ba) * p) <= kExchangeTol || max_abs(p * (ab + ba) * p) <= kExchangeTol;
}

}  // namespace nudd
