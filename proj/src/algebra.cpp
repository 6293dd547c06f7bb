#include "corrcalc/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace corrcalc {

namespace {

std::vector<std::string> sorted(std::vector<std::string> v)
{
  std::sort(v.begin(), v.end());
  return v;
}

} // namespace

CompositionTable::CompositionTable(std::map<std::string, LabelData> labels, Entries entries)
  : labels_(std::move(labels)), entries_(std::move(entries))
{
  std::map<std::string, std::string> unit_of;
  for (const auto &[label, d] : labels_) {
    if (d.unit && !unit_of.emplace(d.source, label).second)
      throw Error("DuplicateUnit", "graph '" + d.source + "' has units '" + unit_of[d.source] + "' and '" + label + "'");
    if (d.n <= 0 || d.m <= 0)
      throw Error("DegreeZero", "label '" + label + "' has a non-positive degree");
    if (d.unit && (d.n != 1 || d.m != 1 || d.source != d.target))
      throw Error("InvalidUnit", "unit '" + label + "' must have degrees (1,1) and equal endpoints");
    if (!d.transpose.empty()) {
      auto it = labels_.find(d.transpose);
      if (it == labels_.end())
        throw Error("MissingTranspose", "transpose '" + d.transpose + "' of '" + label + "' is not in the table");
      const auto &t = it->second;
      if (t.transpose != label || t.n != d.m || t.m != d.n || t.source != d.target || t.target != d.source)
        throw Error("TransposeIncompatible", "'" + label + "' and '" + d.transpose + "' are not mutual transposes");
    }
    if (!d.parts.empty()) {
      int sn = 0, sm = 0;
      for (const auto &p : d.parts) {
        const auto &pd = data(p);
        if (pd.source != d.source || pd.target != d.target)
          throw Error("InvalidParts", "component '" + p + "' of '" + label + "' has different endpoints");
        sn += pd.n;
        sm += pd.m;
      }
      if (sn != d.n || sm != d.m)
        throw Error("InvalidParts", "components of '" + label + "' do not add up to its degrees");
    }
  }

  for (const auto &[key, comps] : entries_) {
    const auto &[a, b] = key;
    const auto &da = data(a);
    const auto &db = data(b);
    if (da.target != db.source)
      throw Error("CompositionMismatch", "entry " + a + "|" + b + " is not composable");
    if (comps.empty())
      throw Error("EmptyEntry", "entry " + a + "|" + b + " has no components");
    int sn = 0, sm = 0;
    for (const auto &c : comps) {
      const auto &dc = data(c);
      if (dc.source != da.source || dc.target != db.target)
        throw Error("CompositionMismatch", "component '" + c + "' of " + a + "|" + b + " has wrong endpoints");
      sn += dc.n;
      sm += dc.m;
    }
    if (sn != da.n * db.n || sm != da.m * db.m)
      throw Error("ProductRuleViolation", "entry " + a + "|" + b + " violates degree multiplicativity");
    if ((da.unit && sorted(comps) != std::vector<std::string>{b}) ||
        (db.unit && sorted(comps) != std::vector<std::string>{a}))
      throw Error("InvalidUnit", "entry " + a + "|" + b + " contradicts the unit law");
  }

  auto try_product = [&](const std::string &x, const std::string &y) -> std::optional<std::vector<std::string>> {
    try {
      return product(x, y);
    } catch (const TruncationEscape &) {
      return std::nullopt;
    }
  };

  // associativity wherever both bracketings are available
  for (const auto &[a, da] : labels_) {
    for (const auto &[b, db] : labels_) {
      if (da.target != db.source)
        continue;
      auto ab = try_product(a, b);
      if (!ab)
        continue;
      for (const auto &[c, dc] : labels_) {
        if (db.target != dc.source)
          continue;
        auto bc = try_product(b, c);
        if (!bc)
          continue;
        std::vector<std::string> lhs, rhs;
        bool complete = true;
        for (const auto &x : *ab) {
          auto xc = try_product(x, c);
          if (!xc) {
            complete = false;
            break;
          }
          lhs.insert(lhs.end(), xc->begin(), xc->end());
        }
        for (const auto &y : *bc) {
          if (!complete)
            break;
          auto ay = try_product(a, y);
          if (!ay) {
            complete = false;
            break;
          }
          rhs.insert(rhs.end(), ay->begin(), ay->end());
        }
        if (complete && sorted(lhs) != sorted(rhs))
          throw Error("NonAssociative", "(" + a + "∘" + b + ")∘" + c + " differs from " + a + "∘(" + b + "∘" + c + ")");
      }
    }
  }

  // (a∘b)∨ = b∨∘a∨ wherever both entries exist
  for (const auto &[key, comps] : entries_) {
    const auto &da = data(key.first);
    const auto &db = data(key.second);
    if (da.transpose.empty() || db.transpose.empty())
      continue;
    auto swapped = try_product(db.transpose, da.transpose);
    if (!swapped)
      continue;
    std::vector<std::string> transposed;
    for (const auto &c : comps) {
      const auto &dc = data(c);
      if (dc.transpose.empty()) {
        transposed.clear();
        break;
      }
      transposed.push_back(dc.transpose);
    }
    if (!transposed.empty() && sorted(transposed) != sorted(*swapped))
      throw Error("TransposeIncompatible", "transpose of " + key.first + "∘" + key.second +
                                               " differs from the reversed product of transposes");
  }
}

const LabelData &CompositionTable::data(const std::string &label) const
{
  auto it = labels_.find(label);
  if (it == labels_.end())
    throw Error("UnknownLabel", "label '" + label + "' is not in the table");
  return it->second;
}

bool CompositionTable::composable(const std::string &a, const std::string &b) const
{
  return data(a).target == data(b).source;
}

std::optional<std::vector<std::string>> CompositionTable::product(const std::string &a, const std::string &b) const
{
  const auto &da = data(a);
  const auto &db = data(b);
  if (da.target != db.source)
    return std::nullopt;
  if (da.unit)
    return std::vector<std::string>{b};
  if (db.unit)
    return std::vector<std::string>{a};
  auto it = entries_.find({a, b});
  if (it == entries_.end())
    throw TruncationEscape(a + "∘" + b);
  return it->second;
}

std::vector<std::pair<std::string, std::string>> CompositionTable::division_violations() const
{
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &[a, da] : labels_) {
    std::map<std::string, std::set<std::string>> factors;
    for (const auto &[b, db] : labels_) {
      if (da.target != db.source)
        continue;
      std::optional<std::vector<std::string>> comps;
      try {
        comps = product(a, b);
      } catch (const TruncationEscape &) {
        continue;
      }
      for (const auto &c : *comps)
        factors[c].insert(b);
    }
    for (const auto &[c, bs] : factors)
      if (bs.size() > 1)
        out.emplace_back(a, c);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> CompositionTable::split_entries() const
{
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &[key, comps] : entries_) {
    const auto &da = data(key.first);
    const auto &db = data(key.second);
    for (const auto &c : comps) {
      const auto &dc = data(c);
      if (dc.n != da.n * db.n || dc.m != da.m * db.m) {
        out.push_back(key);
        break;
      }
    }
  }
  return out;
}

AlgebraElement AlgebraElement::delta(const std::string &label, Complex c)
{
  AlgebraElement f;
  f.coefficients[label] = c;
  return f;
}

Complex AlgebraElement::operator()(const std::string &label) const
{
  auto it = coefficients.find(label);
  return it == coefficients.end() ? Complex{} : it->second;
}

void AlgebraElement::add(const std::string &label, Complex c)
{
  coefficients[label] += c;
}

void AlgebraElement::prune(double eps)
{
  std::erase_if(coefficients, [eps](const auto &kv) { return std::abs(kv.second) <= eps; });
}

double max_difference(const AlgebraElement &a, const AlgebraElement &b)
{
  double worst = 0;
  for (const auto &[label, c] : a.coefficients)
    worst = std::max(worst, std::abs(c - b(label)));
  for (const auto &[label, c] : b.coefficients)
    worst = std::max(worst, std::abs(c - a(label)));
  return worst;
}

AlgebraElement expand(const AlgebraElement &f, const CompositionTable &table)
{
  AlgebraElement out;
  for (const auto &[label, c] : f.coefficients) {
    const auto &d = table.data(label);
    if (d.parts.empty())
      out.add(label, c);
    else
      for (const auto &p : d.parts)
        out.add(p, c);
  }
  return out;
}

AlgebraElement convolve(const AlgebraElement &f1, const AlgebraElement &f2, const CompositionTable &table)
{
  const auto a = expand(f1, table);
  const auto b = expand(f2, table);
  AlgebraElement out;
  for (const auto &[l1, c1] : a.coefficients)
    for (const auto &[l2, c2] : b.coefficients) {
      auto comps = table.product(l1, l2);
      if (!comps)
        continue;
      for (const auto &c : *comps)
        out.add(c, c1 * c2);
    }
  return out;
}

AlgebraElement involve(const AlgebraElement &f, const CompositionTable &table)
{
  AlgebraElement out;
  for (const auto &[label, c] : expand(f, table).coefficients) {
    const auto &d = table.data(label);
    if (d.transpose.empty())
      throw Error("MissingTranspose", "no transpose recorded for '" + label + "'");
    out.add(d.transpose, std::conj(c));
  }
  return out;
}

namespace {

double generator_value(const LabelData &d, Evolution mode)
{
  switch (mode) {
  case Evolution::Left:
    return std::log(static_cast<double>(d.n));
  case Evolution::Right:
    return std::log(static_cast<double>(d.m));
  case Evolution::Ratio:
    return std::log(static_cast<double>(d.n) / static_cast<double>(d.m));
  }
  return 0;
}

Complex phase(double log_value, double t)
{
  return std::polar(1.0, t * log_value);
}

} // namespace

AlgebraElement evolve(const AlgebraElement &f, double t, Evolution mode, const CompositionTable &table)
{
  AlgebraElement out;
  for (const auto &[label, c] : f.coefficients)
    out.coefficients[label] = phase(generator_value(table.data(label), mode), t) * c;
  return out;
}

int OperatorMatrix::index_of(const std::string &label) const
{
  auto it = std::find(basis.begin(), basis.end(), label);
  return it == basis.end() ? -1 : static_cast<int>(it - basis.begin());
}

namespace {

OperatorMatrix empty_operator(const std::vector<std::string> &basis, const CompositionTable &table)
{
  std::set<std::string> seen;
  for (const auto &b : basis) {
    if (!seen.insert(b).second)
      throw Error("BasisMismatch", "basis label '" + b + "' repeated");
    if (table.data(b).target != table.data(basis.front()).target)
      throw Error("BasisMismatch", "basis labels must share one target graph");
  }
  OperatorMatrix op;
  op.basis = basis;
  op.matrix = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  return op;
}

} // namespace

OperatorMatrix represent(const AlgebraElement &f, const std::vector<std::string> &basis, const CompositionTable &table)
{
  auto op = empty_operator(basis, table);
  for (const auto &[label, c] : expand(f, table).coefficients) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto comps = table.product(label, basis[j]);
      if (!comps)
        continue;
      for (const auto &comp : *comps) {
        int row = op.index_of(comp);
        if (row < 0)
          throw TruncationEscape(comp);
        op.matrix(row, j) += c;
      }
    }
  }
  return op;
}

OperatorMatrix annihilator(const std::string &label, const std::vector<std::string> &basis,
                           const CompositionTable &table)
{
  auto op = represent(AlgebraElement::delta(label), basis, table);
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    int nonzero = 0;
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c)
      if (op.matrix(r, c) != Complex{})
        ++nonzero;
    if (nonzero > 1)
      throw Error("DivisionViolation", "'" + op.basis[r] + "' = " + label + "∘M'' has several solutions M''");
  }
  return op;
}

OperatorMatrix creator(const std::string &label, const std::vector<std::string> &basis, const CompositionTable &table)
{
  auto op = annihilator(label, basis, table);
  op.matrix = op.matrix.adjoint().eval();
  return op;
}

OperatorMatrix hamiltonian(const std::vector<std::string> &basis, Evolution mode, const CompositionTable &table)
{
  if (mode == Evolution::Ratio)
    return dirac_generator(basis, table);
  auto op = empty_operator(basis, table);
  for (std::size_t i = 0; i < basis.size(); ++i)
    op.matrix(i, i) = generator_value(table.data(basis[i]), mode);
  return op;
}

OperatorMatrix dirac_generator(const std::vector<std::string> &basis, const CompositionTable &table)
{
  auto op = empty_operator(basis, table);
  for (std::size_t i = 0; i < basis.size(); ++i)
    op.matrix(i, i) = generator_value(table.data(basis[i]), Evolution::Ratio);
  return op;
}

Eigen::MatrixXcd diagonal_exponential(const Eigen::MatrixXcd &h, double t)
{
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    out(i, i) = std::exp(Complex(0, t) * h(i, i));
  return out;
}

double max_norm(const Eigen::MatrixXcd &m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ConjugationResidual conjugation_check(const AlgebraElement &f, double t, const std::vector<std::string> &basis,
                                      const CompositionTable &table, Evolution mode)
{
  const auto h = hamiltonian(basis, mode, table).matrix;
  const auto rho = represent(f, basis, table).matrix;
  const auto forward = represent(evolve(f, t, mode, table), basis, table).matrix;
  const auto backward = represent(evolve(f, -t, mode, table), basis, table).matrix;
  const Eigen::MatrixXcd plus = diagonal_exponential(h, t), minus = diagonal_exponential(h, -t);

  ConjugationResidual r;
  r.residual = max_norm(forward - plus * rho * minus);
  const Eigen::MatrixXcd opposite = minus * rho * plus;
  r.opposite_convention = max_norm(forward - opposite);
  r.opposite_convention_reversed = max_norm(backward - opposite);
  return r;
}

double commutator_norm(const OperatorMatrix &d, const OperatorMatrix &x)
{
  if (d.basis != x.basis)
    throw Error("BasisMismatch", "operators act on different bases");
  const Eigen::MatrixXcd c = d.matrix * x.matrix - x.matrix * d.matrix;
  return c.size() == 0 ? 0.0 : c.colwise().norm().maxCoeff();
}

} // namespace corrcalc
