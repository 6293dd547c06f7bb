#pragma once

// Builders shared by the unit tests and the acceptance suite.

#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "corrcalc/algebra.hpp"
#include "corrcalc/cobordism.hpp"
#include "corrcalc/json_io.hpp"

#ifndef CORRCALC_TEST_DATA
#define CORRCALC_TEST_DATA "tests/data"
#endif

namespace support {

using namespace corrcalc;

inline std::string data_path(const std::string &name)
{
  return std::string(CORRCALC_TEST_DATA) + "/" + name;
}

/// Code of the corrcalc::Error thrown by f, or "" when nothing is thrown.
template <class F>
std::string error_code(F &&f)
{
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  return "";
}

inline std::string cyclic_label(int n, const std::string &suffix = "")
{
  return "M(" + std::to_string(n) + ")" + suffix;
}

/// Cyclic covers M(d) for the divisors d of N, written by hand from the rule
/// M(a)∘M(b) = gcd(a,b) copies of M(lcm(a,b)). Closed under composition.
inline CompositionTable cyclic_divisor_table(int N)
{
  std::map<std::string, LabelData> labels;
  std::vector<int> divisors;
  for (int d = 1; d <= N; ++d)
    if (N % d == 0)
      divisors.push_back(d);
  for (int d : divisors) {
    LabelData x{d, d, "O", "O", cyclic_label(d), d == 1, {}};
    labels[cyclic_label(d)] = x;
  }
  CompositionTable::Entries entries;
  for (int a : divisors)
    for (int b : divisors) {
      if (a == 1 || b == 1)
        continue;
      int g = std::gcd(a, b);
      entries[{cyclic_label(a), cyclic_label(b)}] = std::vector<std::string>(g, cyclic_label(a / g * b));
    }
  return CompositionTable(labels, entries);
}

/// M(d) for d ≤ N with the connected rule M(a)∘M(b) = M(ab) whenever ab ≤ N.
/// Not closed: products leaving the range escape the truncation.
inline CompositionTable product_cyclic_table(int N)
{
  std::map<std::string, LabelData> labels;
  for (int d = 1; d <= N; ++d)
    labels[cyclic_label(d)] = LabelData{d, d, "O", "O", cyclic_label(d), d == 1, {}};
  CompositionTable::Entries entries;
  for (int a = 2; a <= N; ++a)
    for (int b = 2; a * b <= N; ++b)
      entries[{cyclic_label(a), cyclic_label(b)}] = {cyclic_label(a * b)};
  return CompositionTable(labels, entries);
}

inline std::vector<std::string> cyclic_labels_upto(int k)
{
  std::vector<std::string> out;
  for (int d = 1; d <= k; ++d)
    out.push_back(cyclic_label(d));
  return out;
}

/// Free category on the graphs G0 → G1 → G2 → G3 with two parallel
/// generating correspondences per step. Labels record the path, so division
/// is unique and every composite stays in the table. Degrees multiply along
/// the path.
struct PathTable
{
  CompositionTable table;
  std::vector<std::string> basis; // labels with target G3
};

inline PathTable path_table()
{
  // (n, m) of the choices 'a' and 'b' at each step
  const std::pair<int, int> degrees[3][2] = {{{2, 1}, {1, 3}}, {{3, 2}, {2, 2}}, {{1, 2}, {5, 3}}};
  auto graph = [](int i) { return "G" + std::to_string(i); };

  std::map<std::string, LabelData> labels;
  std::map<std::string, std::tuple<int, std::string>> path_of; // label -> (start, choices)
  auto name = [&](int start, const std::string &choices) {
    return choices.empty() ? "U(" + graph(start) + ")" : "P" + std::to_string(start) + ":" + choices;
  };
  for (int i = 0; i <= 3; ++i)
    for (int j = i; j <= 3; ++j) {
      const int len = j - i;
      for (int mask = 0; mask < (1 << len); ++mask) {
        std::string choices;
        int n = 1, m = 1;
        for (int s = 0; s < len; ++s) {
          int c = (mask >> s) & 1;
          choices += c ? 'b' : 'a';
          n *= degrees[i + s][c].first;
          m *= degrees[i + s][c].second;
        }
        const std::string label = name(i, choices);
        labels[label] = LabelData{n, m, graph(i), graph(j), "", len == 0, {}};
        path_of[label] = {i, choices};
      }
    }
  CompositionTable::Entries entries;
  for (const auto &[a, pa] : path_of)
    for (const auto &[b, pb] : path_of) {
      const auto &[ia, ca] = pa;
      const auto &[ib, cb] = pb;
      if (ca.empty() || cb.empty() || ia + static_cast<int>(ca.size()) != ib)
        continue;
      entries[{a, b}] = {name(ia, ca + cb)};
    }
  PathTable out{CompositionTable(labels, entries), {}};
  for (const auto &[label, d] : out.table.labels())
    if (d.target == "G3")
      out.basis.push_back(label);
  return out;
}

/// Two labels per degree n ≤ N ("M(n)" and "M(n)'"), one unit, and entries
/// M(a)∘M(b) = gcd copies of M(lcm) whenever lcm ≤ N (primed or not).
inline CompositionTable doubled_cyclic_table(int N)
{
  std::map<std::string, LabelData> labels;
  labels[cyclic_label(1)] = LabelData{1, 1, "O", "O", cyclic_label(1), true, {}};
  for (int n = 2; n <= N; ++n)
    for (const std::string suffix : {"", "'"})
      labels[cyclic_label(n, suffix)] = LabelData{n, n, "O", "O", cyclic_label(n, suffix), false, {}};
  CompositionTable::Entries entries;
  for (const auto &[a, da] : labels)
    for (const auto &[b, db] : labels) {
      if (da.unit || db.unit)
        continue;
      int g = std::gcd(da.n, db.n), l = da.n / g * db.n;
      if (l <= N)
        entries[{a, b}] = std::vector<std::string>(g, cyclic_label(l));
    }
  return CompositionTable(labels, entries);
}

inline std::vector<std::pair<std::string, std::string>> doubled_declaration(int N)
{
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int n = 2; n <= N; ++n)
    pairs.emplace_back(cyclic_label(n), cyclic_label(n, "'"));
  return pairs;
}

inline AlgebraElement random_element(const std::vector<std::string> &labels, std::mt19937 &rng,
                                     std::size_t support = 4)
{
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  AlgebraElement f;
  for (std::size_t k = 0; k < support; ++k)
    f.add(labels[pick(rng)], Complex(coef(rng), coef(rng)));
  return f;
}

// Triple sum Σ f1(a) f2(b) f3(c) over all label triples, composing through
// the raw entries with the unit law written out by hand.
inline AlgebraElement triple_sum(const AlgebraElement &f1, const AlgebraElement &f2, const AlgebraElement &f3,
                          const CompositionTable &t)
{
  auto compose_raw = [&](const std::string &a, const std::string &b) -> std::vector<std::string> {
    const auto &da = t.labels().at(a);
    const auto &db = t.labels().at(b);
    if (da.target != db.source)
      return {};
    if (da.unit)
      return {b};
    if (db.unit)
      return {a};
    return t.entries().at({a, b});
  };
  AlgebraElement out;
  for (const auto &[a, x] : f1.coefficients)
    for (const auto &[b, y] : f2.coefficients)
      for (const auto &[c, z] : f3.coefficients)
        for (const auto &ab : compose_raw(a, b))
          for (const auto &abc : compose_raw(ab, c))
            out.add(abc, x * y * z);
  return out;
}

inline std::vector<std::string> labels_of(const CompositionTable &t)
{
  std::vector<std::string> out;
  for (const auto &[label, d] : t.labels())
    out.push_back(label);
  return out;
}

/// Cells W(i,j,x) between boundary correspondences B0..B{k-1}, x ∈ Z_r,
/// glued vertically by W(i,j,x)•W(j,l,y) = W(i,l,x+y). χ(W(i,j,x)) =
/// h_j − h_i + χ(B_j) is additive under inclusion-exclusion. With
/// `with_horizontal`, a second family V of order degree² receives the
/// horizontal products W(i,j,x)∘W(k,l,y) = V(i,l,x+y).
struct ChainCells
{
  CellTable cells;
  std::vector<std::string> labels;
};

inline ChainCells chain_cells(int k, int r, int degree, std::mt19937 &rng, bool with_horizontal = false)
{
  std::uniform_real_distribution<double> real(-3.0, 3.0);
  std::vector<double> h(k), chi_b(k);
  BoundaryInvariantTable boundary;
  for (int i = 0; i < k; ++i) {
    h[i] = real(rng);
    chi_b[i] = real(rng);
    boundary.values["chi"]["B" + std::to_string(i)] = chi_b[i];
  }
  auto label = [](const std::string &family, int i, int j, int x) {
    return family + "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(x) + ")";
  };

  std::map<std::string, TwoCell> cells;
  CellTable::Products vertical, horizontal;
  std::vector<std::string> families{"W"};
  if (with_horizontal)
    families.push_back("V");
  for (const auto &fam : families) {
    const int deg = fam == "W" ? degree : degree * degree;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int x = 0; x < r; ++x) {
          TwoCell w;
          w.label = label(fam, i, j, x);
          w.source = "B" + std::to_string(i);
          w.target = "B" + std::to_string(j);
          w.degree = deg;
          w.invariants["chi"] = h[j] - h[i] + chi_b[j];
          w.dagger = label(fam, j, i, (r - x) % r);
          cells[w.label] = w;
        }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l)
          for (int x = 0; x < r; ++x)
            for (int y = 0; y < r; ++y)
              vertical[{label(fam, i, j, x), label(fam, j, l, y)}] = label(fam, i, l, (x + y) % r);
  }
  if (with_horizontal)
    for (const auto &[a, wa] : cells)
      for (const auto &[b, wb] : cells) {
        if (a[0] != 'W' || b[0] != 'W')
          continue;
        int i = wa.source.back() - '0', l = wb.target.back() - '0';
        int x = a[a.size() - 2] - '0', y = b[b.size() - 2] - '0';
        horizontal[{a, b}] = label("V", i, l, (x + y) % r);
      }

  ChainCells out{CellTable(cells, vertical, horizontal, boundary), {}};
  for (const auto &[l, w] : out.cells.cells())
    out.labels.push_back(l);
  return out;
}

} // namespace support
