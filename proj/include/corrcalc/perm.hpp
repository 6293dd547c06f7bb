#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corrcalc {

/// Permutation of {1..n}. Stored 0-based internally; all text forms are
/// 1-indexed cycle notation with fixed points omitted.
///
/// Products follow path order: `a.then(b)` applies `a` first, then `b`.
class Perm
{
public:
  Perm() = default;
  explicit Perm(std::size_t degree);

  /// `images[i]` is the 0-based image of point i. Throws if not a bijection.
  static Perm from_images(std::vector<int> images);

  /// Parses e.g. "(1 2)(3 4 5)". Cycles may be separated by whitespace;
  /// commas inside a cycle are accepted as separators too.
  static Perm parse_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  int operator[](std::size_t point) const { return images_[point]; }
  std::span<const int> images() const noexcept { return images_; }

  Perm then(const Perm &next) const;
  Perm inverse() const;
  Perm conjugated_by(const Perm &g) const; // g^-1 * this * g in path order

  bool is_identity() const noexcept;
  std::size_t order() const;

  /// Cycle lengths, sorted descending, fixed points included.
  std::vector<int> cycle_type() const;
  std::vector<std::vector<int>> cycles() const; // 0-based, fixed points omitted

  std::string to_cycle_string() const;

  auto operator<=>(const Perm &) const = default;
  bool operator==(const Perm &) const = default;

private:
  std::vector<int> images_;
};

/// Orbits of the group generated by `gens` acting on {0..degree-1}.
/// Each orbit sorted ascending, orbits ordered by their least point.
std::vector<std::vector<int>> orbits_of(std::span<const Perm> gens, std::size_t degree);

/// Full closure of the generated subgroup. Throws once `limit` elements are
/// exceeded.
std::vector<Perm> generated_group(std::span<const Perm> gens, std::size_t degree,
                                  std::size_t limit = 1000000);

bool generates_cyclic_group(std::span<const Perm> gens, std::size_t degree);

/// All permutations of {0..n-1} in lexicographic order.
std::vector<Perm> all_permutations(std::size_t n);

} // namespace corrcalc
