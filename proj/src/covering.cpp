#include "corrcalc/covering.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace corrcalc {

const Perm &PermRep::image(std::string_view generator) const
{
  auto idx = presentation->generator_index(generator);
  if (!idx)
    throw Error("UnknownGenerator", "unknown generator '" + std::string(generator) + "'");
  return images[*idx];
}

RelatorViolation::RelatorViolation(int relator, Perm result)
  : Error("RelatorViolation", "relator " + std::to_string(relator + 1) + " evaluates to " +
                                  result.to_cycle_string() + ", not the identity"),
    relator_(relator), result_(std::move(result))
{}

Perm evaluate_word(const Word &w, const std::vector<Perm> &images, int degree)
{
  Perm acc(degree);
  for (int x : w) {
    const Perm &g = images.at(std::abs(x) - 1);
    acc = acc.then(x > 0 ? g : g.inverse());
  }
  return acc;
}

PermRep check_coloring(std::shared_ptr<const Presentation> p, std::vector<Perm> images, int n)
{
  if (n <= 0)
    throw Error("DegreeZero", "covering degree must be positive");
  if (static_cast<int>(images.size()) != p->generator_count())
    throw Error("MissingImage", "coloring must assign every generator");
  for (const auto &g : images)
    if (static_cast<int>(g.degree()) != n)
      throw Error("DegreeMismatch", "image degree differs from declared degree " + std::to_string(n));

  for (std::size_t r = 0; r < p->relators.size(); ++r) {
    Perm value = evaluate_word(p->relators[r], images, n);
    if (!value.is_identity())
      throw RelatorViolation(static_cast<int>(r), value);
  }
  return PermRep{n, std::move(images), std::move(p)};
}

PermRep check_coloring(std::shared_ptr<const Presentation> p, const std::map<std::string, Perm> &images,
                       int n)
{
  std::vector<Perm> ordered;
  for (const auto &name : p->generator_names) {
    auto it = images.find(name);
    if (it == images.end())
      throw Error("MissingImage", "no image for generator '" + name + "'");
    ordered.push_back(it->second);
  }
  for (const auto &[name, perm] : images)
    if (!p->generator_index(name))
      throw Error("UnknownGenerator", "coloring names unknown generator '" + name + "'");
  return check_coloring(std::move(p), std::move(ordered), n);
}

OrbitDecomposition orbits(const PermRep &r)
{
  OrbitDecomposition out;
  for (auto block : orbits_of(r.images, r.degree)) {
    for (int &x : block)
      ++x;
    out.blocks.push_back(std::move(block));
  }
  return out;
}

std::vector<int> branching_indices(const PermRep &r, std::string_view generator)
{
  return r.image(generator).cycle_type();
}

namespace {

bool extend_conjugator(const std::vector<Perm> &a, const std::vector<Perm> &b,
                       const std::vector<std::vector<int>> &orbits_a, std::size_t k, std::vector<int> &phi,
                       std::vector<bool> &used)
{
  if (k == orbits_a.size())
    return true;
  const int n = static_cast<int>(phi.size());
  const int start = orbits_a[k].front();

  for (int t = 0; t < n; ++t) {
    if (used[t])
      continue;
    std::vector<int> assigned{start};
    phi[start] = t;
    used[t] = true;
    bool ok = true;
    for (std::size_t q = 0; q < assigned.size() && ok; ++q) {
      int x = assigned[q];
      for (std::size_t i = 0; i < a.size(); ++i) {
        int y = a[i][x], target = b[i][phi[x]];
        if (phi[y] < 0) {
          if (used[target]) {
            ok = false;
            break;
          }
          phi[y] = target;
          used[target] = true;
          assigned.push_back(y);
        } else if (phi[y] != target) {
          ok = false;
          break;
        }
      }
    }
    if (ok && extend_conjugator(a, b, orbits_a, k + 1, phi, used))
      return true;
    for (int x : assigned) {
      used[phi[x]] = false;
      phi[x] = -1;
    }
  }
  return false;
}

bool conjugate_images(const std::vector<Perm> &a, const std::vector<Perm> &b, int n)
{
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].cycle_type() != b[i].cycle_type())
      return false;
  std::vector<int> phi(n, -1);
  std::vector<bool> used(n, false);
  return extend_conjugator(a, b, orbits_of(a, n), 0, phi, used);
}

// One representative per cycle type: consecutive runs 1..k1, k1+1..k1+k2, ...
std::vector<Perm> class_representatives(int n)
{
  std::vector<Perm> reps;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      std::vector<int> images(n);
      int base = 0;
      for (int len : parts) {
        for (int j = 0; j < len; ++j)
          images[base + j] = base + (j + 1) % len;
        base += len;
      }
      reps.push_back(Perm::from_images(images));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      parts.push_back(part);
      rec(remaining - part, part);
      parts.pop_back();
    }
  };
  rec(n, n);
  return reps;
}

class ColoringSearch
{
public:
  ColoringSearch(const Presentation &p, int n, SearchFilter filter, std::size_t cap,
                 std::shared_ptr<const Presentation> owner)
    : p_(p), n_(n), filter_(filter), cap_(cap), owner_(std::move(owner)), all_(all_permutations(n))
  {
    occurrences_.resize(p_.generator_count());
    for (std::size_t r = 0; r < p_.relators.size(); ++r)
      for (int x : p_.relators[r]) {
        auto &list = occurrences_[std::abs(x) - 1];
        if (list.empty() || list.back() != static_cast<int>(r))
          list.push_back(static_cast<int>(r));
      }
  }

  SearchResult run()
  {
    std::vector<std::optional<Perm>> assignment(p_.generator_count());
    if (p_.generator_count() == 0) {
      consider(assignment);
      return finish();
    }
    // Every class has a member whose first image is a cycle-type representative.
    for (const auto &rep : class_representatives(n_)) {
      auto trial = assignment;
      trial[0] = rep;
      if (propagate(trial))
        branch(trial);
      if (result_.truncated)
        break;
    }
    return finish();
  }

private:
  SearchResult finish()
  {
    std::sort(result_.colorings.begin(), result_.colorings.end(), [](const auto &x, const auto &y) {
      if (x.orbit_count != y.orbit_count)
        return x.orbit_count < y.orbit_count;
      return x.rep.images < y.rep.images;
    });
    return std::move(result_);
  }

  bool propagate(std::vector<std::optional<Perm>> &assignment) const
  {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t r = 0; r < p_.relators.size(); ++r) {
        const Word &w = p_.relators[r];
        int unknown = -1, unknown_uses = 0;
        bool several = false;
        for (int x : w) {
          int g = std::abs(x) - 1;
          if (assignment[g])
            continue;
          if (unknown < 0)
            unknown = g;
          if (g == unknown)
            ++unknown_uses;
          else
            several = true;
        }
        const int unknown_count = unknown < 0 ? 0 : (several ? 2 : 1);
        if (unknown < 0) {
          Perm acc(n_);
          for (int x : w)
            acc = acc.then(x > 0 ? *assignment[x - 1] : assignment[-x - 1]->inverse());
          if (!acc.is_identity())
            return false;
        } else if (unknown_count == 1 && unknown_uses == 1) {
          Perm before(n_), after(n_);
          int sign = 0;
          for (int x : w) {
            int g = std::abs(x) - 1;
            if (g == unknown) {
              sign = x > 0 ? 1 : -1;
              continue;
            }
            const Perm step = x > 0 ? *assignment[g] : assignment[g]->inverse();
            if (sign == 0)
              before = before.then(step);
            else
              after = after.then(step);
          }
          Perm solved = before.inverse().then(after.inverse());
          assignment[unknown] = sign > 0 ? solved : solved.inverse();
          changed = true;
        }
      }
    }
    return true;
  }

  int choose_generator(const std::vector<std::optional<Perm>> &assignment) const
  {
    int best = -1, best_score = -1;
    for (int g = 0; g < p_.generator_count(); ++g) {
      if (assignment[g])
        continue;
      int score = 0;
      for (int r : occurrences_[g]) {
        std::vector<int> unknowns;
        for (int x : p_.relators[r]) {
          int h = std::abs(x) - 1;
          if (!assignment[h] && std::find(unknowns.begin(), unknowns.end(), h) == unknowns.end())
            unknowns.push_back(h);
        }
        if (unknowns.size() == 2)
          ++score;
      }
      if (score > best_score) {
        best = g;
        best_score = score;
      }
    }
    return best;
  }

  void branch(const std::vector<std::optional<Perm>> &assignment)
  {
    if (result_.truncated)
      return;
    int g = choose_generator(assignment);
    if (g < 0) {
      consider(assignment);
      return;
    }
    for (const auto &candidate : all_) {
      auto trial = assignment;
      trial[g] = candidate;
      if (propagate(trial))
        branch(trial);
      if (result_.truncated)
        return;
    }
  }

  void consider(const std::vector<std::optional<Perm>> &assignment)
  {
    std::vector<Perm> images;
    for (const auto &x : assignment)
      images.push_back(*x);

    auto blocks = orbits_of(images, n_);
    if (filter_.transitive && blocks.size() != 1)
      return;
    if (filter_.nontrivial && std::all_of(images.begin(), images.end(), [](const Perm &x) { return x.is_identity(); }))
      return;
    if (filter_.noncyclic && generates_cyclic_group(images, n_))
      return;

    for (const auto &found : result_.colorings)
      if (conjugate_images(found.rep.images, images, n_))
        return;

    if (result_.colorings.size() >= cap_) {
      result_.truncated = true;
      return;
    }
    result_.colorings.push_back({PermRep{n_, std::move(images), owner_}, static_cast<int>(blocks.size())});
  }

  const Presentation &p_;
  int n_;
  SearchFilter filter_;
  std::size_t cap_;
  std::shared_ptr<const Presentation> owner_;
  std::vector<Perm> all_;
  std::vector<std::vector<int>> occurrences_;
  SearchResult result_;
};

} // namespace

bool conjugate(const PermRep &a, const PermRep &b)
{
  return a.degree == b.degree && conjugate_images(a.images, b.images, a.degree);
}

SearchResult search_colorings(std::shared_ptr<const Presentation> p, int n, SearchFilter filter,
                              std::size_t cap)
{
  if (n <= 0)
    throw Error("DegreeZero", "covering degree must be positive");
  if (n > 8)
    throw Error("SearchTooLarge", "coloring search is limited to degree 8");
  ColoringSearch search(*p, n, filter, cap, p);
  return search.run();
}

} // namespace corrcalc
