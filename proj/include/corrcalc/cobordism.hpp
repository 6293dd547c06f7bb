#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "corrcalc/algebra.hpp"

namespace corrcalc {

/// Declared cobordism (or b-homotopy) classes. Members of a class always
/// share both covering degrees and both endpoint graphs.
class EquivalenceDeclaration
{
public:
  const std::string &representative(const std::string &label) const;
  /// representative -> members, both sorted
  std::map<std::string, std::vector<std::string>> classes() const;

private:
  friend EquivalenceDeclaration declare_equivalence(const std::vector<std::pair<std::string, std::string>> &,
                                                    const CompositionTable &);
  std::map<std::string, std::string> representative_;
};

EquivalenceDeclaration declare_equivalence(const std::vector<std::pair<std::string, std::string>> &pairs,
                                           const CompositionTable &table);

struct QuotientTable
{
  CompositionTable table;                     // over class labels "[rep]"
  std::map<std::string, std::string> class_of; // original label -> class label
};

QuotientTable validate_quotient(const EquivalenceDeclaration &decl, const CompositionTable &table);

/// Pushes a function on correspondences down to classes by summing members.
AlgebraElement quotient_map(const AlgebraElement &f, const QuotientTable &q);

struct TwoCell
{
  std::string label;
  std::string source; // boundary correspondence M1
  std::string target; // boundary correspondence M2
  int degree = 1;
  std::map<std::string, double> invariants; // additive invariants such as "chi", "delta"
  std::string dagger;                       // label of the reversed, transposed cell
};

/// invariant name -> correspondence label -> value
struct BoundaryInvariantTable
{
  std::map<std::string, std::map<std::string, double>> values;

  double value(const std::string &invariant, const std::string &label) const;
};

TwoCell identity_cell(const std::string &correspondence, int degree, const BoundaryInvariantTable &boundary);

/// Gluing along w1.target = w2.source; invariants combine by inclusion-exclusion
/// over the shared boundary.
TwoCell vertical_compose(const TwoCell &w1, const TwoCell &w2, const BoundaryInvariantTable &boundary);

/// Fibered product of cells; endpoints are composed in `table`, degrees multiply.
TwoCell horizontal_compose(const TwoCell &w1, const TwoCell &w2, const CompositionTable &table);

/// Reverses orientation and transposes both endpoints.
TwoCell dagger(const TwoCell &w, const CompositionTable &table);

enum class CellProduct
{
  Vertical,
  Horizontal
};

/// Finite table of cells with their declared vertical and horizontal products.
class CellTable
{
public:
  using Products = std::map<std::pair<std::string, std::string>, std::string>;

  CellTable() = default;
  CellTable(std::map<std::string, TwoCell> cells, Products vertical, Products horizontal,
            BoundaryInvariantTable boundary = {}, std::optional<CompositionTable> correspondences = std::nullopt);

  const TwoCell &cell(const std::string &label) const;
  const std::map<std::string, TwoCell> &cells() const { return cells_; }
  const Products &products(CellProduct mode) const { return mode == CellProduct::Vertical ? vertical_ : horizontal_; }
  const BoundaryInvariantTable &boundary() const { return boundary_; }

  /// Declared product, nullopt when the pair cannot be composed; throws
  /// TruncationEscape for a composable pair that was not declared.
  std::optional<std::string> product(const std::string &a, const std::string &b, CellProduct mode) const;

private:
  bool composable(const TwoCell &a, const TwoCell &b, CellProduct mode) const;

  std::map<std::string, TwoCell> cells_;
  Products vertical_, horizontal_;
  BoundaryInvariantTable boundary_;
  std::optional<CompositionTable> correspondences_;
};

/// Functions on cells reuse the sparse coefficient map of AlgebraElement.
AlgebraElement two_cell_convolve(const AlgebraElement &f1, const AlgebraElement &f2, CellProduct mode,
                                 const CellTable &cells);

/// f†(W) = conj f(W†)
AlgebraElement two_cell_dagger(const AlgebraElement &f, const CellTable &cells);

/// Phase exp(i t (I(W) - I(M2))) for the additive invariant I.
AlgebraElement vertical_evolution(const AlgebraElement &f, double t, const std::string &invariant,
                                  const CellTable &cells);

/// Phase degree(W)^{it}.
AlgebraElement horizontal_order_evolution(const AlgebraElement &f, double t, const CellTable &cells);

} // namespace corrcalc
