#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corrcalc {

/// Signed 1-based generator indices: +i is g_i, -i is g_i^-1.
using Word = std::vector<int>;

/// Planar-diagram code of a link. Each crossing lists four edge labels,
/// incoming under-strand first, then counterclockwise.
struct Diagram
{
  std::vector<std::array<int, 4>> crossings;
  int arc_count = 0;
  std::vector<std::string> component_of_arc; // index = label - 1
  /// +1 when the over-strand runs from position 3 to position 1, -1 otherwise.
  std::vector<int> over_direction;
};

struct Presentation
{
  std::vector<std::string> generator_names;
  std::vector<Word> relators;
  std::vector<std::string> component_of_generator;

  int generator_count() const { return static_cast<int>(generator_names.size()); }
  std::optional<int> generator_index(std::string_view name) const;
  std::vector<std::string> components() const; // distinct, in first-seen order
};

/// Parses whitespace-separated `X(a,b,c,d)` tokens (square brackets accepted).
/// An empty code needs `unknot_components` > 0 to describe a crossingless link.
Diagram parse_pd(std::string_view text, int unknot_components = 0);

Presentation wirtinger(const Diagram &d);

Presentation explicit_presentation(int generators, std::vector<Word> relators,
                                   std::vector<std::string> components = {});

Word free_reduce(const Word &w);
Word invert(const Word &w);

} // namespace corrcalc
