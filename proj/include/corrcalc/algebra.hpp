#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "corrcalc/error.hpp"

namespace corrcalc {

using Complex = std::complex<double>;

struct LabelData
{
  int n = 1;
  int m = 1;
  std::string source;
  std::string target;
  std::string transpose; // empty when unknown
  bool unit = false;
  std::vector<std::string> parts; // connected components of a multi-connected label
};

class TruncationEscape : public Error
{
public:
  explicit TruncationEscape(const std::string &label)
    : Error("TruncationEscape", "composition leaves the truncated table at '" + label + "'"), label_(label)
  {}
  const std::string &label() const { return label_; }

private:
  std::string label_;
};

/// Finite truncation of the semigroupoid of correspondences. Units compose
/// implicitly; every other composable pair must carry an explicit entry when
/// it is used.
class CompositionTable
{
public:
  using Entries = std::map<std::pair<std::string, std::string>, std::vector<std::string>>;

  CompositionTable() = default;
  /// Validates composability, the degree product rule, associativity and
  /// transposition compatibility wherever the needed entries exist.
  CompositionTable(std::map<std::string, LabelData> labels, Entries entries);

  bool contains(const std::string &label) const { return labels_.count(label) > 0; }
  const LabelData &data(const std::string &label) const;
  const std::map<std::string, LabelData> &labels() const { return labels_; }
  const Entries &entries() const { return entries_; }

  bool composable(const std::string &a, const std::string &b) const;
  /// Components of a∘b, or nullopt when the graphs do not match. Throws
  /// TruncationEscape for a composable pair missing from the table.
  std::optional<std::vector<std::string>> product(const std::string &a, const std::string &b) const;

  /// Pairs (M, M') for which two different right factors give M'.
  std::vector<std::pair<std::string, std::string>> division_violations() const;

  /// Entries with a component whose degrees are not (n·ñ, m·m̃). Evolutions
  /// are multiplicative only on products that avoid these.
  std::vector<std::pair<std::string, std::string>> split_entries() const;

private:
  std::map<std::string, LabelData> labels_;
  Entries entries_;
};

struct AlgebraElement
{
  std::map<std::string, Complex> coefficients;

  static AlgebraElement delta(const std::string &label, Complex c = 1.0);
  Complex operator()(const std::string &label) const;
  void add(const std::string &label, Complex c);
  void prune(double eps = 0.0);
};

double max_difference(const AlgebraElement &a, const AlgebraElement &b);

/// δ_α of a multi-connected α replaced by the sum of its components.
AlgebraElement expand(const AlgebraElement &f, const CompositionTable &table);

AlgebraElement convolve(const AlgebraElement &f1, const AlgebraElement &f2, const CompositionTable &table);
AlgebraElement involve(const AlgebraElement &f, const CompositionTable &table);

enum class Evolution
{
  Left,
  Right,
  Ratio
};

AlgebraElement evolve(const AlgebraElement &f, double t, Evolution mode, const CompositionTable &table);

struct OperatorMatrix
{
  std::vector<std::string> basis;
  Eigen::MatrixXcd matrix;

  int index_of(const std::string &label) const;
};

OperatorMatrix represent(const AlgebraElement &f, const std::vector<std::string> &basis,
                         const CompositionTable &table);
OperatorMatrix annihilator(const std::string &label, const std::vector<std::string> &basis,
                           const CompositionTable &table);
OperatorMatrix creator(const std::string &label, const std::vector<std::string> &basis,
                       const CompositionTable &table);
OperatorMatrix hamiltonian(const std::vector<std::string> &basis, Evolution mode, const CompositionTable &table);
OperatorMatrix dirac_generator(const std::vector<std::string> &basis, const CompositionTable &table);

/// exp(i t H) for a diagonal H.
Eigen::MatrixXcd diagonal_exponential(const Eigen::MatrixXcd &h, double t);

struct ConjugationResidual
{
  /// ‖ρ(σ_t f) − e^{itH} ρ(f) e^{−itH}‖_max
  double residual = 0;
  /// ‖ρ(σ_t f) − e^{−itH} ρ(f) e^{itH}‖_max, the opposite sign convention
  double opposite_convention = 0;
  /// ‖ρ(σ_{−t} f) − e^{−itH} ρ(f) e^{itH}‖_max
  double opposite_convention_reversed = 0;
};

/// H is H^L, H^R, or the log(n/m) generator for the ratio evolution.
ConjugationResidual conjugation_check(const AlgebraElement &f, double t, const std::vector<std::string> &basis,
                                      const CompositionTable &table, Evolution mode);

/// Largest Euclidean column norm of [D, X].
double commutator_norm(const OperatorMatrix &d, const OperatorMatrix &x);

double max_norm(const Eigen::MatrixXcd &m);

} // namespace corrcalc
