#include "doctest.h"

#include <random>
#include <set>

#include "corrcalc/covering.hpp"
#include "corrcalc/json_io.hpp"
#include "support.hpp"

using namespace corrcalc;
using support::error_code;

namespace {

std::shared_ptr<const Presentation> trefoil()
{
  static auto p = std::make_shared<const Presentation>(wirtinger(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")));
  return p;
}

std::shared_ptr<const Presentation> trefoil_2gen()
{
  static auto p = std::make_shared<const Presentation>(explicit_presentation(2, {{1, 2, 1, -2, -1, -2}}));
  return p;
}

std::shared_ptr<const Presentation> unknot()
{
  static auto p = std::make_shared<const Presentation>(wirtinger(parse_pd("", 1)));
  return p;
}

// Word evaluation written out point by point, independent of Perm::then.
bool relators_hold(const Presentation &p, const std::vector<std::vector<int>> &images)
{
  const int n = images.empty() ? 0 : static_cast<int>(images[0].size());
  for (const auto &w : p.relators)
    for (int start = 0; start < n; ++start) {
      int x = start;
      for (int letter : w) {
        const auto &g = images[std::abs(letter) - 1];
        if (letter > 0) {
          x = g[x];
        } else {
          int y = 0;
          while (g[y] != x)
            ++y;
          x = y;
        }
      }
      if (x != start)
        return false;
    }
  return true;
}

std::vector<std::vector<int>> raw(const std::vector<Perm> &images)
{
  std::vector<std::vector<int>> out;
  for (const auto &g : images)
    out.emplace_back(g.images().begin(), g.images().end());
  return out;
}

// Number of conjugacy classes of 2-generator colorings, by exhaustive search.
int brute_force_classes(const Presentation &p, int n, bool transitive)
{
  auto all = all_permutations(n);
  std::set<std::vector<Perm>> canonical;
  for (const auto &a : all)
    for (const auto &b : all) {
      std::vector<Perm> imgs{a, b};
      if (!relators_hold(p, raw(imgs)))
        continue;
      if (transitive && orbits_of(imgs, n).size() != 1)
        continue;
      std::vector<Perm> best;
      for (const auto &s : all) {
        std::vector<Perm> c{a.conjugated_by(s), b.conjugated_by(s)};
        if (best.empty() || c < best)
          best = c;
      }
      canonical.insert(best);
    }
  return static_cast<int>(canonical.size());
}

PermRep tricoloring()
{
  return coloring_from_json(read_json_file(support::data_path("tricolor.json")), trefoil());
}

} // namespace

TEST_CASE("trefoil tricoloring")
{
  auto r = tricoloring();
  CHECK(r.degree == 3);
  auto orb = orbits(r);
  CHECK(orb.connected());
  CHECK(orb.blocks.front() == std::vector<int>{1, 2, 3});
  for (const auto &name : r.presentation->generator_names)
    CHECK(branching_indices(r, name) == std::vector<int>{2, 1});
}

TEST_CASE("two-fold cover of the trefoil")
{
  std::vector<Perm> images(6, Perm::parse_cycles("(1 2)", 2));
  auto r = check_coloring(trefoil(), images, 2);
  CHECK(orbits(r).connected());
}

TEST_CASE("relator violations carry the relator and its value")
{
  std::vector<Perm> images(6, Perm::parse_cycles("(1 2)", 4));
  images[1] = Perm::parse_cycles("(3 4)", 4);
  try {
    check_coloring(trefoil(), images, 4);
    FAIL("expected a relator violation");
  } catch (const RelatorViolation &e) {
    CHECK(e.code() == "RelatorViolation");
    CHECK(!e.result().is_identity());
    CHECK(evaluate_word(trefoil()->relators[e.relator_index()], images, 4) == e.result());
  }
}

TEST_CASE("check_coloring agrees with independent word evaluation")
{
  std::mt19937 rng(7);
  auto all = all_permutations(3);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  // conjugated valid colorings, half of them with one image replaced
  auto valid = search_colorings(trefoil(), 3, {}, 1000).colorings;
  std::uniform_int_distribution<std::size_t> pick_valid(0, valid.size() - 1);
  std::uniform_int_distribution<int> pick_gen(0, 5);
  int accepted = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    auto g = all[pick(rng)];
    std::vector<Perm> images;
    for (const auto &p : valid[pick_valid(rng)].rep.images)
      images.push_back(p.conjugated_by(g));
    if (trial % 2)
      images[pick_gen(rng)] = all[pick(rng)];
    bool expected = relators_hold(*trefoil(), raw(images));
    bool got = error_code([&] { check_coloring(trefoil(), images, 3); }).empty();
    CHECK(got == expected);
    accepted += got;
  }
  CHECK(accepted > 1500);
  CHECK(accepted < 3000);
}

TEST_CASE("orbits and branching indices")
{
  auto five = check_coloring(unknot(), {Perm::parse_cycles("(1 2 3 4 5)", 5)}, 5);
  CHECK(orbits(five).blocks.size() == 1);
  CHECK(branching_indices(five, "arc1") == std::vector<int>{5});

  std::vector<Perm> trivial(6, Perm(3));
  auto t = check_coloring(trefoil(), trivial, 3);
  CHECK(orbits(t).blocks.size() == 3);

  auto one = check_coloring(unknot(), {Perm(1)}, 1);
  CHECK(branching_indices(one, "arc1") == std::vector<int>{1});
  CHECK(error_code([&] { branching_indices(one, "nope"); }) == "UnknownGenerator");
}

TEST_CASE("coloring input errors")
{
  CHECK(error_code([] { check_coloring(unknot(), {Perm(0)}, 0); }) == "DegreeZero");
  CHECK(error_code([] { check_coloring(unknot(), std::vector<Perm>{}, 2); }) == "MissingImage");
  CHECK(error_code([] { check_coloring(unknot(), {Perm(3)}, 2); }) == "DegreeMismatch");
  std::map<std::string, Perm> named{{"arc1", Perm(2)}, {"arc9", Perm(2)}};
  CHECK(error_code([&] { check_coloring(unknot(), named, 2); }) == "UnknownGenerator");
  CHECK(error_code([] { coloring_from_json(Json::parse(R"({"degree": 2, "images": {}})"), unknot()); }) ==
        "MissingImage");
}

TEST_CASE("conjugacy predicate")
{
  auto r = tricoloring();
  auto s = Perm::parse_cycles("(1 3 2)", 3);
  std::vector<Perm> moved;
  for (const auto &g : r.images)
    moved.push_back(g.conjugated_by(s));
  CHECK(conjugate(r, check_coloring(trefoil(), moved, 3)));

  std::vector<Perm> cyclic(6, Perm::parse_cycles("(1 2 3)", 3));
  CHECK_FALSE(conjugate(r, check_coloring(trefoil(), cyclic, 3)));
}

TEST_CASE("search: small cases")
{
  auto u = search_colorings(unknot(), 3, {true, false, false}, 100);
  CHECK(u.colorings.size() == 1);

  auto two = search_colorings(trefoil(), 2, {false, true, false}, 100);
  REQUIRE(two.colorings.size() == 1);
  for (const auto &g : two.colorings.front().rep.images)
    CHECK(g == Perm::parse_cycles("(1 2)", 2));

  auto capped = search_colorings(trefoil(), 3, {}, 1);
  CHECK(capped.truncated);
  CHECK(capped.colorings.size() == 1);

  CHECK(error_code([] { search_colorings(unknot(), 9, {}, 1); }) == "SearchTooLarge");
}

TEST_CASE("search agrees with exhaustive enumeration")
{
  for (int n = 1; n <= 4; ++n)
    for (bool transitive : {false, true}) {
      auto found = search_colorings(trefoil_2gen(), n, {transitive, false, false}, 100000);
      CHECK(static_cast<int>(found.colorings.size()) == brute_force_classes(*trefoil_2gen(), n, transitive));
    }
}

TEST_CASE("Wirtinger and two-generator trefoil presentations have the same colorings")
{
  for (int n = 1; n <= 5; ++n) {
    auto a = search_colorings(trefoil(), n, {}, 100000);
    auto b = search_colorings(trefoil_2gen(), n, {}, 100000);
    CHECK(a.colorings.size() == b.colorings.size());
    for (const auto &c : a.colorings)
      CHECK_NOTHROW(check_coloring(trefoil(), c.rep.images, n));
  }
}

TEST_CASE("trefoil has a transitive non-cyclic five-fold cover")
{
  auto found = search_colorings(trefoil(), 5, {true, false, true}, 100);
  REQUIRE_FALSE(found.colorings.empty());
  for (const auto &c : found.colorings) {
    CHECK(c.orbit_count == 1);
    CHECK_FALSE(generates_cyclic_group(c.rep.images, 5));
  }
}
