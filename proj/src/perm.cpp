#include "corrcalc/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "corrcalc/error.hpp"

namespace corrcalc {

Perm::Perm(std::size_t degree) : images_(degree)
{
  std::iota(images_.begin(), images_.end(), 0);
}

Perm Perm::from_images(std::vector<int> images)
{
  std::vector<bool> seen(images.size(), false);
  for (int x : images) {
    if (x < 0 || static_cast<std::size_t>(x) >= images.size() || seen[x])
      throw Error("InvalidPermutation", "image list is not a bijection");
    seen[x] = true;
  }
  Perm p;
  p.images_ = std::move(images);
  return p;
}

Perm Perm::parse_cycles(std::string_view text, std::size_t degree)
{
  Perm p(degree);
  std::vector<bool> used(degree, false);
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };

  skip_space();
  if (text.substr(i) == "()" || text.substr(i) == "id" || i == text.size())
    return p;

  while (true) {
    skip_space();
    if (i == text.size())
      break;
    if (text[i] != '(')
      throw Error("ParseError", "expected '(' in cycle notation: " + std::string(text));
    ++i;

    std::vector<int> cycle;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
        ++i;
      if (i == text.size())
        throw Error("ParseError", "unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error("ParseError", "unexpected character in cycle notation: " + std::string(text));
      long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > 1000000)
          throw Error("ParseError", "point out of range");
        ++i;
      }
      if (value < 1 || static_cast<std::size_t>(value) > degree)
        throw Error("ParseError", "point " + std::to_string(value) + " outside 1.." + std::to_string(degree));
      if (used[value - 1])
        throw Error("ParseError", "point " + std::to_string(value) + " repeated in cycle notation");
      used[value - 1] = true;
      cycle.push_back(static_cast<int>(value - 1));
    }

    for (std::size_t k = 0; k < cycle.size(); ++k)
      p.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return p;
}

Perm Perm::then(const Perm &next) const
{
  if (next.degree() != degree())
    throw Error("DegreeMismatch", "composing permutations of different degree");
  Perm r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[i] = next.images_[images_[i]];
  return r;
}

Perm Perm::inverse() const
{
  Perm r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    r.images_[images_[i]] = static_cast<int>(i);
  return r;
}

Perm Perm::conjugated_by(const Perm &g) const
{
  return g.inverse().then(*this).then(g);
}

bool Perm::is_identity() const noexcept
{
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i))
      return false;
  return true;
}

std::size_t Perm::order() const
{
  std::size_t result = 1;
  for (int len : cycle_type())
    result = std::lcm(result, static_cast<std::size_t>(len));
  return result;
}

std::vector<int> Perm::cycle_type() const
{
  std::vector<int> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i])
      continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.rbegin(), lengths.rend());
  return lengths;
}

std::vector<std::vector<int>> Perm::cycles() const
{
  std::vector<std::vector<int>> result;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == static_cast<int>(i))
      continue;
    std::vector<int> cycle;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      cycle.push_back(static_cast<int>(j));
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

std::string Perm::to_cycle_string() const
{
  auto cs = cycles();
  if (cs.empty())
    return "()";
  std::string out;
  for (const auto &cycle : cs) {
    out += '(';
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      if (k)
        out += ' ';
      out += std::to_string(cycle[k] + 1);
    }
    out += ')';
  }
  return out;
}

std::vector<std::vector<int>> orbits_of(std::span<const Perm> gens, std::size_t degree)
{
  // union-find over generator edges
  std::vector<int> parent(degree);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto &g : gens) {
    if (g.degree() != degree)
      throw Error("DegreeMismatch", "generator degree differs from action degree");
    for (std::size_t i = 0; i < degree; ++i) {
      int a = find(static_cast<int>(i)), b = find(g[i]);
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  }

  std::vector<std::vector<int>> result;
  std::vector<int> slot(degree, -1);
  for (std::size_t i = 0; i < degree; ++i) {
    int root = find(static_cast<int>(i));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(result.size());
      result.emplace_back();
    }
    result[slot[root]].push_back(static_cast<int>(i));
  }
  return result;
}

std::vector<Perm> generated_group(std::span<const Perm> gens, std::size_t degree, std::size_t limit)
{
  std::set<Perm> seen{Perm(degree)};
  std::vector<Perm> frontier{Perm(degree)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto &x : frontier) {
      for (const auto &g : gens) {
        Perm y = x.then(g);
        if (seen.insert(y).second) {
          if (seen.size() > limit)
            throw Error("GroupTooLarge", "generated group exceeds enumeration limit");
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

bool generates_cyclic_group(std::span<const Perm> gens, std::size_t degree)
{
  auto group = generated_group(gens, degree);
  for (const auto &g : group)
    if (g.order() == group.size())
      return true;
  return false;
}

std::vector<Perm> all_permutations(std::size_t n)
{
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Perm> result;
  do {
    result.push_back(Perm::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return result;
}

} // namespace corrcalc
