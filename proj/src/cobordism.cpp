#include "corrcalc/cobordism.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace corrcalc {

const std::string &EquivalenceDeclaration::representative(const std::string &label) const
{
  auto it = representative_.find(label);
  if (it == representative_.end())
    throw Error("UnknownLabel", "label '" + label + "' is not covered by the declaration");
  return it->second;
}

std::map<std::string, std::vector<std::string>> EquivalenceDeclaration::classes() const
{
  std::map<std::string, std::vector<std::string>> out;
  for (const auto &[label, rep] : representative_)
    out[rep].push_back(label);
  return out;
}

EquivalenceDeclaration declare_equivalence(const std::vector<std::pair<std::string, std::string>> &pairs,
                                           const CompositionTable &table)
{
  std::map<std::string, std::string> parent;
  for (const auto &[label, d] : table.labels())
    parent[label] = label;

  auto find = [&](std::string x) {
    while (parent.at(x) != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  for (const auto &[a, b] : pairs) {
    const auto &da = table.data(a);
    const auto &db = table.data(b);
    if (da.n != db.n || da.m != db.m)
      throw Error("DegreeMismatch", "'" + a + "' and '" + b + "' have different covering degrees");
    if (da.source != db.source || da.target != db.target)
      throw Error("EndpointMismatch", "'" + a + "' and '" + b + "' have different endpoint graphs");
    auto ra = find(a), rb = find(b);
    if (ra != rb)
      parent[std::max(ra, rb)] = std::min(ra, rb); // least label represents its class
  }

  EquivalenceDeclaration decl;
  for (const auto &[label, p] : parent)
    decl.representative_[label] = find(label);
  return decl;
}

QuotientTable validate_quotient(const EquivalenceDeclaration &decl, const CompositionTable &table)
{
  QuotientTable q;
  auto name = [](const std::string &rep) { return "[" + rep + "]"; };
  for (const auto &[label, d] : table.labels())
    q.class_of[label] = name(decl.representative(label));

  const auto classes = decl.classes();
  std::map<std::string, LabelData> labels;
  for (const auto &[rep, members] : classes) {
    LabelData d = table.data(rep);
    d.unit = false;
    for (const auto &m : members)
      d.unit = d.unit || table.data(m).unit;

    std::set<std::string> transposes;
    for (const auto &m : members)
      if (!table.data(m).transpose.empty())
        transposes.insert(q.class_of.at(table.data(m).transpose));
    if (transposes.size() > 1)
      throw Error("IllDefinedTranspose", "members of " + name(rep) + " transpose into different classes");
    d.transpose = transposes.empty() ? "" : *transposes.begin();

    std::vector<std::string> parts;
    for (const auto &p : d.parts)
      parts.push_back(q.class_of.at(p));
    d.parts = parts;
    labels[name(rep)] = d;
  }

  auto class_multiset = [&](const std::vector<std::string> &comps) {
    std::vector<std::string> out;
    for (const auto &c : comps)
      out.push_back(q.class_of.at(c));
    std::sort(out.begin(), out.end());
    return out;
  };

  CompositionTable::Entries entries;
  for (const auto &[ra, ma] : classes) {
    for (const auto &[rb, mb] : classes) {
      if (table.data(ra).target != table.data(rb).source)
        continue;
      std::optional<std::vector<std::string>> agreed;
      std::pair<std::string, std::string> witness;
      if (labels.at(name(ra)).unit)
        agreed = std::vector<std::string>{name(rb)};
      else if (labels.at(name(rb)).unit)
        agreed = std::vector<std::string>{name(ra)};

      for (const auto &a : ma)
        for (const auto &b : mb) {
          std::optional<std::vector<std::string>> comps;
          try {
            comps = table.product(a, b);
          } catch (const TruncationEscape &) {
            continue;
          }
          auto classes_ab = class_multiset(*comps);
          if (!agreed) {
            agreed = classes_ab;
            witness = {a, b};
          } else if (*agreed != classes_ab) {
            throw Error("IllDefinedComposition", "composition is not well defined on classes: " + a + "∘" + b +
                                                     (witness.first.empty() ? std::string(" contradicts the unit law")
                                                                            : " disagrees with " + witness.first +
                                                                                  "∘" + witness.second));
          }
        }
      if (agreed && !labels.at(name(ra)).unit && !labels.at(name(rb)).unit)
        entries[{name(ra), name(rb)}] = *agreed;
    }
  }

  q.table = CompositionTable(std::move(labels), std::move(entries));
  return q;
}

AlgebraElement quotient_map(const AlgebraElement &f, const QuotientTable &q)
{
  AlgebraElement out;
  for (const auto &[label, c] : f.coefficients) {
    auto it = q.class_of.find(label);
    if (it == q.class_of.end())
      throw Error("UnknownLabel", "label '" + label + "' is not in the quotient");
    out.add(it->second, c);
  }
  return out;
}

double BoundaryInvariantTable::value(const std::string &invariant, const std::string &label) const
{
  auto it = values.find(invariant);
  if (it != values.end()) {
    auto jt = it->second.find(label);
    if (jt != it->second.end())
      return jt->second;
  }
  throw Error("MissingInvariant", "no boundary value of '" + invariant + "' for '" + label + "'");
}

TwoCell identity_cell(const std::string &correspondence, int degree, const BoundaryInvariantTable &boundary)
{
  TwoCell w;
  w.label = "id(" + correspondence + ")";
  w.source = correspondence;
  w.target = correspondence;
  w.degree = degree;
  for (const auto &[name, values] : boundary.values)
    if (values.count(correspondence))
      w.invariants[name] = values.at(correspondence);
  w.dagger = w.label;
  return w;
}

TwoCell vertical_compose(const TwoCell &w1, const TwoCell &w2, const BoundaryInvariantTable &boundary)
{
  if (w1.target != w2.source)
    throw Error("BoundaryMismatch", "cannot glue " + w1.label + " to " + w2.label + ": boundaries differ");
  if (w1.degree != w2.degree)
    throw Error("DegreeMismatch", "vertical gluing needs equal covering orders");
  TwoCell w;
  w.label = w1.label + "•" + w2.label;
  w.source = w1.source;
  w.target = w2.target;
  w.degree = w1.degree;
  for (const auto &[name, v1] : w1.invariants) {
    auto it = w2.invariants.find(name);
    if (it == w2.invariants.end())
      continue;
    w.invariants[name] = v1 + it->second - boundary.value(name, w1.target);
  }
  return w;
}

TwoCell horizontal_compose(const TwoCell &w1, const TwoCell &w2, const CompositionTable &table)
{
  auto single = [&](const std::string &a, const std::string &b) {
    auto comps = table.product(a, b);
    if (!comps)
      throw Error("CompositionMismatch", "endpoints " + a + " and " + b + " are not composable");
    if (comps->size() != 1)
      throw Error("MissingComposition", "endpoint composite " + a + "∘" + b + " is not connected");
    return comps->front();
  };
  TwoCell w;
  w.label = w1.label + "∘" + w2.label;
  try {
    w.source = single(w1.source, w2.source);
    w.target = single(w1.target, w2.target);
  } catch (const TruncationEscape &e) {
    throw Error("MissingComposition", e.what());
  }
  w.degree = w1.degree * w2.degree;
  return w;
}

TwoCell dagger(const TwoCell &w, const CompositionTable &table)
{
  auto transpose_of = [&](const std::string &label) {
    const auto &t = table.data(label).transpose;
    if (t.empty())
      throw Error("MissingTranspose", "no transpose recorded for '" + label + "'");
    return t;
  };
  const std::string mark = "†";
  TwoCell d = w;
  if (w.label.size() >= mark.size() && w.label.compare(w.label.size() - mark.size(), mark.size(), mark) == 0)
    d.label = w.label.substr(0, w.label.size() - mark.size());
  else
    d.label = w.label + mark;
  d.source = transpose_of(w.target);
  d.target = transpose_of(w.source);
  d.dagger = w.label;
  return d;
}

CellTable::CellTable(std::map<std::string, TwoCell> cells, Products vertical, Products horizontal,
                     BoundaryInvariantTable boundary, std::optional<CompositionTable> correspondences)
  : cells_(std::move(cells)), vertical_(std::move(vertical)), horizontal_(std::move(horizontal)),
    boundary_(std::move(boundary)), correspondences_(std::move(correspondences))
{
  for (const auto &[label, w] : cells_) {
    if (w.label != label)
      throw Error("InvalidCell", "cell key '" + label + "' differs from its label");
    if (w.degree <= 0)
      throw Error("DegreeZero", "cell '" + label + "' has non-positive degree");
    if (!w.dagger.empty() && cell(w.dagger).dagger != label)
      throw Error("InvalidDagger", "dagger of '" + label + "' is not involutive");
    if (correspondences_) {
      const auto &ds = correspondences_->data(w.source);
      const auto &dt = correspondences_->data(w.target);
      if (ds.source != dt.source || ds.target != dt.target)
        throw Error("EndpointMismatch", "cell '" + label + "' joins correspondences with different endpoint graphs");
    }
  }
  for (const auto &[key, result] : vertical_) {
    const auto &a = cell(key.first);
    const auto &b = cell(key.second);
    const auto &w = cell(result);
    if (a.target != b.source)
      throw Error("BoundaryMismatch", "vertical product " + a.label + "•" + b.label + " does not share a boundary");
    if (a.degree != b.degree || w.degree != a.degree)
      throw Error("DegreeMismatch", "vertical product " + a.label + "•" + b.label + " changes the covering order");
    if (w.source != a.source || w.target != b.target)
      throw Error("BoundaryMismatch", "vertical product " + result + " has the wrong boundary");
    for (const auto &[name, value] : w.invariants) {
      auto shared = boundary_.values.find(name);
      if (!a.invariants.count(name) || !b.invariants.count(name) || shared == boundary_.values.end() ||
          !shared->second.count(a.target))
        continue;
      double expected = a.invariants.at(name) + b.invariants.at(name) - shared->second.at(a.target);
      if (std::abs(value - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
        throw Error("InvariantMismatch", "'" + name + "' of " + result + " violates inclusion-exclusion");
    }
  }
  for (const auto &[key, result] : horizontal_) {
    const auto &a = cell(key.first);
    const auto &b = cell(key.second);
    if (cell(result).degree != a.degree * b.degree)
      throw Error("DegreeMismatch", "horizontal product " + result + " is not of order " +
                                        std::to_string(a.degree) + "·" + std::to_string(b.degree));
  }
}

const TwoCell &CellTable::cell(const std::string &label) const
{
  auto it = cells_.find(label);
  if (it == cells_.end())
    throw Error("UnknownLabel", "no cell labeled '" + label + "'");
  return it->second;
}

bool CellTable::composable(const TwoCell &a, const TwoCell &b, CellProduct mode) const
{
  if (mode == CellProduct::Vertical)
    return a.target == b.source;
  if (correspondences_)
    return correspondences_->data(a.source).target == correspondences_->data(b.source).source;
  return horizontal_.count({a.label, b.label}) > 0;
}

std::optional<std::string> CellTable::product(const std::string &a, const std::string &b, CellProduct mode) const
{
  const auto &products = mode == CellProduct::Vertical ? vertical_ : horizontal_;
  auto it = products.find({a, b});
  if (it != products.end())
    return it->second;
  if (composable(cell(a), cell(b), mode))
    throw TruncationEscape(a + (mode == CellProduct::Vertical ? "•" : "∘") + b);
  return std::nullopt;
}

AlgebraElement two_cell_convolve(const AlgebraElement &f1, const AlgebraElement &f2, CellProduct mode,
                                 const CellTable &cells)
{
  AlgebraElement out;
  for (const auto &[a, x] : f1.coefficients)
    for (const auto &[b, y] : f2.coefficients)
      if (auto w = cells.product(a, b, mode))
        out.add(*w, x * y);
  return out;
}

AlgebraElement two_cell_dagger(const AlgebraElement &f, const CellTable &cells)
{
  AlgebraElement out;
  for (const auto &[label, c] : f.coefficients) {
    const auto &d = cells.cell(label).dagger;
    if (d.empty())
      throw Error("MissingTranspose", "cell '" + label + "' has no dagger");
    out.add(d, std::conj(c));
  }
  return out;
}

AlgebraElement vertical_evolution(const AlgebraElement &f, double t, const std::string &invariant,
                                  const CellTable &cells)
{
  AlgebraElement out;
  for (const auto &[label, c] : f.coefficients) {
    const auto &w = cells.cell(label);
    auto it = w.invariants.find(invariant);
    if (it == w.invariants.end())
      throw Error("MissingInvariant", "cell '" + label + "' carries no '" + invariant + "'");
    double exponent = it->second - cells.boundary().value(invariant, w.target);
    out.coefficients[label] = std::polar(1.0, t * exponent) * c;
  }
  return out;
}

AlgebraElement horizontal_order_evolution(const AlgebraElement &f, double t, const CellTable &cells)
{
  AlgebraElement out;
  for (const auto &[label, c] : f.coefficients)
    out.coefficients[label] = std::polar(1.0, t * std::log(static_cast<double>(cells.cell(label).degree))) * c;
  return out;
}

} // namespace corrcalc
