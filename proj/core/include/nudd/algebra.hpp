#pragma once

#include <string>
#include <vector>

#include "nudd/linalg.hpp"
#include "nudd/operators.hpp"

namespace nudd {

/// Coordinates in the orthogonal Pauli (R) basis: c_j = Tr(R_j A) / 4.
using PauliCoords = Eigen::Matrix<Complex, 16, 1>;

PauliCoords pauli_coords(const CMat& op);
CMat from_pauli_coords(const PauliCoords& c);

/// Linear subspace of two-qubit operators.
///
/// `basis` holds orthonormal Pauli-coordinate columns. `generators` are the
/// operators the span was built from; conjugation splitting walks these so
/// that breakdown witnesses stay recognisable (e.g. a lone Y7).
class AlgebraSpan {
 public:
  AlgebraSpan() = default;

  /// Zero-norm inputs are dropped; rank is decided at 1e-9.
  static AlgebraSpan from_operators(std::vector<CMat> ops);
  /// span{ basis[l] : l in labels }.
  static AlgebraSpan from_labels(const OperatorBasis& basis, const std::vector<int>& labels);
  /// All 16 operators, generated by the elements of `basis`.
  static AlgebraSpan full(const OperatorBasis& basis);

  int dim() const { return static_cast<int>(basis_.cols()); }
  bool empty() const { return dim() == 0; }
  const Eigen::Matrix<Complex, 16, Eigen::Dynamic>& basis() const { return basis_; }
  const std::vector<CMat>& generators() const { return generators_; }

  /// Orthonormal basis elements as operators.
  std::vector<CMat> basis_operators() const;

  /// Norm of the component of `op` outside the span, in Pauli coordinates.
  double residual(const CMat& op) const;
  bool contains(const CMat& op) const;
  bool contains(const AlgebraSpan& other) const;
  bool same_as(const AlgebraSpan& other) const;

 private:
  Eigen::Matrix<Complex, 16, Eigen::Dynamic> basis_;
  std::vector<CMat> generators_;
};

/// Expansion of operators in a (non-orthogonal) labelled basis such as Y.
class LabelReporter {
 public:
  explicit LabelReporter(OperatorBasis basis);

  const OperatorBasis& basis() const { return basis_; }
  /// Coefficients of `op` in the labelled basis (entry k is label k+1).
  Eigen::Matrix<Complex, 16, 1> expand(const CMat& op) const;
  /// Labels that carry a nonzero coefficient (> 1e-9) in some span element.
  std::vector<int> labels(const AlgebraSpan& span) const;
  std::vector<int> labels(const CMat& op) const;
  /// span{ basis[l] : l in labels(span) }; contains `span`.
  AlgebraSpan label_span(const AlgebraSpan& span) const;

 private:
  OperatorBasis basis_;
  Eigen::Matrix<Complex, 16, 16> to_labels_;
};

struct ConjugationSplit {
  bool invariant = false;
  AlgebraSpan commutant;
  AlgebraSpan anticommutant;
  std::vector<CMat> witnesses;
};

/// Splits every generator A into (A +- XAX)/2. The span is invariant when
/// both parts of every generator stay in it (residual <= 1e-9).
ConjugationSplit conjugation_split(const AlgebraSpan& span, const CMat& x);

struct ClosureResult {
  bool closed = false;
  AlgebraSpan closure;
  /// Products that fell outside the span as it grew.
  std::vector<CMat> new_elements;
};

/// Extends the span by pairwise generator products until it is closed
/// under multiplication.
ClosureResult multiplicative_closure(const AlgebraSpan& span);

enum class StepOutcome { Reduced, BreakdownNonInvariant, BreakdownClosure };

std::string_view outcome_name(StepOutcome o);

struct ChainStep {
  Control control;
  /// Span the layer acted on. Differs from the previous output when the
  /// exact span had to be rewritten in Y labels (`relabelled`).
  AlgebraSpan input;
  bool relabelled = false;
  StepOutcome outcome = StepOutcome::Reduced;
  /// Commuting part of `input`; empty after a non-invariant breakdown.
  AlgebraSpan commutant;
  /// Next effective span; empty after a non-invariant breakdown.
  AlgebraSpan output;
  /// Non-invariant generators or regenerated operators, depending on outcome.
  std::vector<CMat> diagnostics;
};

struct ReductionChain {
  std::vector<Control> layers;  // outer to inner
  AlgebraSpan start;
  std::vector<ChainStep> steps;  // innermost first

  /// Worst outcome over the steps.
  StepOutcome outcome() const;
  /// Last effective span reached.
  const AlgebraSpan& final_span() const;
};

/// Operator-algebra analysis under one basis convention.
class AlgebraAnalyzer {
 public:
  explicit AlgebraAnalyzer(BasisConvention convention);

  const BasisConvention& convention() const { return convention_; }
  const LabelReporter& y() const { return y_; }
  const LabelReporter& y_tilde() const { return y_tilde_; }
  AlgebraSpan full() const { return AlgebraSpan::full(y_.basis()); }

  /// Walks the layers innermost first. Each layer splits the current span;
  /// if the exact span is not invariant under the control, it is rewritten
  /// as the span of its Y labels and split again. A second failure ends the
  /// chain. A commutant that is not closed is replaced by its closure.
  ReductionChain predict_chain(const std::vector<Control>& outer_to_inner,
                               const AlgebraSpan& start) const;
  ReductionChain predict_chain(const std::vector<Control>& outer_to_inner) const {
    return predict_chain(outer_to_inner, full());
  }

  /// Text chart: one box per line, "⇓ <name>" between boxes.
  std::string render(const ReductionChain& chain, Family family = Family::Y) const;
  /// "{Y1..Y5, Y7..Y15}".
  std::string format_labels(const std::vector<int>& labels, Family family) const;

  std::vector<int> labels(const AlgebraSpan& span, Family family = Family::Y) const;

 private:
  BasisConvention convention_;
  LabelReporter y_;
  LabelReporter y_tilde_;
};

/// True when AB = BA or AB = -BA on the state subspace supporting `subspace`
/// (the joint range of its operators and their adjoints), within 1e-12.
bool ordering_exchangeable(const CMat& a, const CMat& b, const AlgebraSpan& subspace);

}  // namespace nudd
