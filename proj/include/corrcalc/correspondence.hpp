#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corrcalc/covering.hpp"

namespace corrcalc {

/// One step π_left ∘ π_right^-1 (toward_left) or π_right ∘ π_left^-1 through
/// the named correspondence.
struct Transfer
{
  std::string correspondence;
  bool toward_left = true;

  auto operator<=>(const Transfer &) const = default;
};

using TransferPath = std::vector<Transfer>;

/// A branch locus known only symbolically: a union of base loci pushed
/// through chains of covering maps.
class FormalLocus
{
public:
  struct Term
  {
    TransferPath path; // applied right to left, written left to right
    std::string base;

    auto operator<=>(const Term &) const = default;
  };

  FormalLocus() = default;
  static FormalLocus base(std::string label);

  FormalLocus pushed(const TransferPath &prefix) const;
  FormalLocus united(const FormalLocus &other) const;

  bool empty() const { return terms_.empty(); }
  const std::set<Term> &terms() const { return terms_; }
  std::string to_string() const;

  bool operator==(const FormalLocus &) const = default;

private:
  std::set<Term> terms_;
};

struct CoveringSide
{
  std::optional<PermRep> rep; // absent when only the shadow model is known
  int degree = 0;
  std::string locus;                   // label of the branch-locus diagram E
  std::string graph;                   // label of the marked subgraph G ⊆ E
  std::vector<std::string> marked;     // component labels forming G
  FormalLocus formal;

  static CoveringSide from_rep(PermRep rep, std::string locus, std::string graph,
                               std::vector<std::string> marked = {});
};

struct Correspondence
{
  std::string label;
  CoveringSide left;  // degree n
  CoveringSide right; // degree m
  std::string source_graph;
  std::string target_graph;
  bool diagonal = false; // both covering maps are the same map
  bool unit = false;
  TransferPath left_path;  // pushes loci from the right sphere to the left one
  TransferPath right_path; // and back

  int n() const { return left.degree; }
  int m() const { return right.degree; }
};

Correspondence make_correspondence(CoveringSide left, CoveringSide right, std::string label,
                                   bool diagonal = false);

/// Both covering maps equal to the covering given by `rep`.
Correspondence make_diagonal(PermRep rep, std::string locus, std::string graph, std::string label);

/// The n-fold cyclic cover of the sphere branched along the unknot "O".
Correspondence cyclic_cover(int n, std::string label = {});

Correspondence unit(const std::string &graph);

Correspondence transpose(const Correspondence &c);

/// Splits a diagonal correspondence into its connected components.
std::vector<Correspondence> decompose(const Correspondence &c);

/// The presentation shared by both middle branch loci, with the arcs coming
/// from each side. An arc may belong to both sides.
struct MiddleDiagram
{
  std::shared_ptr<const Presentation> presentation;
  std::string label;
  std::vector<int> side1_arcs; // 0-based generator indices
  std::vector<int> side2_arcs;
};

struct CompositionMaps
{
  std::vector<Perm> left_extension;  // c1's right monodromy over the middle diagram
  std::vector<Perm> right_extension; // c2's left monodromy over the middle diagram
};

struct CompositeComponent
{
  Correspondence correspondence;
  PermRep middle; // product action restricted to this orbit, sheets relabeled 0..s-1
  std::vector<std::pair<int, int>> sheets; // (sheet of c1, sheet of c2) in relabeled order
};

struct CompositeCorrespondence
{
  std::string left_label, right_label;
  std::vector<CompositeComponent> components;
  int outer_left_degree = 0;
  int outer_right_degree = 0;
  FormalLocus formal_branch_left;
  FormalLocus formal_branch_right;
  std::vector<std::string> flags;
};

CompositeCorrespondence compose(const Correspondence &c1, const Correspondence &c2, const MiddleDiagram &mid,
                                const CompositionMaps &maps);

/// Composes without an explicit middle diagram: a unit on either side, or two
/// correspondences whose shared middle locus carries both representations.
CompositeCorrespondence compose(const Correspondence &c1, const Correspondence &c2);

std::pair<int, int> outer_multiplicities(const CompositeCorrespondence &cc);

/// Bookkeeping transpose of a composite: sides and formal loci exchanged.
CompositeCorrespondence transpose(const CompositeCorrespondence &cc);

struct AssociativityReport
{
  bool degrees_agree = false;
  bool loci_agree = false;
  bool components_agree = false;
  std::pair<int, int> left_bracketing_degrees, right_bracketing_degrees;
  std::string left_bracketing_locus_left, right_bracketing_locus_left;
  std::string left_bracketing_locus_right, right_bracketing_locus_right;
  std::vector<int> left_bracketing_sizes, right_bracketing_sizes, sheet_set_sizes;
  std::vector<std::string> mismatches;

  bool passed() const { return degrees_agree && loci_agree && components_agree; }
};

/// Compares (c1∘c2)∘c3 with c1∘(c2∘c3). Components are checked against the
/// orbit sizes of the triple product action on the three sheet sets.
AssociativityReport associativity_check(const Correspondence &c1, const Correspondence &c2,
                                        const Correspondence &c3);

/// Append-only label registry.
class CorrespondenceStore
{
public:
  void add(Correspondence c);
  const Correspondence &get(const std::string &label) const;
  bool contains(const std::string &label) const { return items_.count(label) > 0; }
  const std::map<std::string, Correspondence> &items() const { return items_; }

private:
  std::map<std::string, Correspondence> items_;
};

} // namespace corrcalc
