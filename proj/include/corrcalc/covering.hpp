#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "corrcalc/error.hpp"
#include "corrcalc/perm.hpp"
#include "corrcalc/presentation.hpp"

namespace corrcalc {

/// A homomorphism from the presented group to S_n, i.e. the monodromy of an
/// n-fold branched covering of the sphere.
struct PermRep
{
  int degree = 0;
  std::vector<Perm> images; // one per generator, same order as the presentation
  std::shared_ptr<const Presentation> presentation;

  const Perm &image(std::string_view generator) const;
};

struct OrbitDecomposition
{
  std::vector<std::vector<int>> blocks; // 1-based points

  bool connected() const { return blocks.size() == 1; }
};

class RelatorViolation : public Error
{
public:
  RelatorViolation(int relator, Perm result);

  int relator_index() const { return relator_; } // 0-based
  const Perm &result() const { return result_; }

private:
  int relator_;
  Perm result_;
};

/// Evaluates a word left to right (path order).
Perm evaluate_word(const Word &w, const std::vector<Perm> &images, int degree);

PermRep check_coloring(std::shared_ptr<const Presentation> p, std::vector<Perm> images, int n);
PermRep check_coloring(std::shared_ptr<const Presentation> p, const std::map<std::string, Perm> &images,
                       int n);

OrbitDecomposition orbits(const PermRep &r);
std::vector<int> branching_indices(const PermRep &r, std::string_view generator);

/// Whether some relabeling of sheets carries one representation to the other.
bool conjugate(const PermRep &a, const PermRep &b);

struct SearchFilter
{
  bool transitive = false;
  bool nontrivial = false;
  bool noncyclic = false;
};

struct FoundColoring
{
  PermRep rep;
  int orbit_count = 0;
};

struct SearchResult
{
  std::vector<FoundColoring> colorings; // one per conjugacy class, sorted
  bool truncated = false;
};

/// Backtracking enumeration of all representations into S_n, reported modulo
/// simultaneous conjugation. Relators with a single unknown occurring once are
/// solved directly instead of enumerated.
SearchResult search_colorings(std::shared_ptr<const Presentation> p, int n, SearchFilter filter,
                              std::size_t cap);

} // namespace corrcalc
