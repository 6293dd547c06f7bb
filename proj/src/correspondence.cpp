#include "corrcalc/correspondence.hpp"

#include <algorithm>
#include <numeric>

namespace corrcalc {

namespace {

PermRep restrict_to(const std::shared_ptr<const Presentation> &p, const std::vector<Perm> &images,
                    const std::vector<int> &orbit)
{
  std::vector<int> position(orbit.empty() ? 0 : *std::max_element(orbit.begin(), orbit.end()) + 1, -1);
  for (std::size_t k = 0; k < orbit.size(); ++k)
    position[orbit[k]] = static_cast<int>(k);

  std::vector<Perm> restricted;
  for (const auto &g : images) {
    std::vector<int> img(orbit.size());
    for (std::size_t k = 0; k < orbit.size(); ++k)
      img[k] = position[g[orbit[k]]];
    restricted.push_back(Perm::from_images(std::move(img)));
  }
  return PermRep{static_cast<int>(orbit.size()), std::move(restricted), p};
}

bool same_presentation(const Presentation &a, const Presentation &b)
{
  return a.generator_count() == b.generator_count() && a.relators == b.relators; // names are only labels
}

bool cyclic_image(const std::vector<Perm> &images, int degree)
{
  try {
    return generates_cyclic_group(images, degree);
  } catch (const Error &) {
    return false; // far larger than any cyclic subgroup of S_degree
  }
}

std::shared_ptr<const Presentation> empty_presentation()
{
  static const auto p = std::make_shared<const Presentation>();
  return p;
}

TransferPath concat(TransferPath a, const TransferPath &b)
{
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

} // namespace

FormalLocus FormalLocus::base(std::string label)
{
  FormalLocus f;
  f.terms_.insert(Term{{}, std::move(label)});
  return f;
}

FormalLocus FormalLocus::pushed(const TransferPath &prefix) const
{
  FormalLocus f;
  for (const auto &t : terms_)
    f.terms_.insert(Term{concat(prefix, t.path), t.base});
  return f;
}

FormalLocus FormalLocus::united(const FormalLocus &other) const
{
  FormalLocus f = *this;
  f.terms_.insert(other.terms_.begin(), other.terms_.end());
  return f;
}

std::string FormalLocus::to_string() const
{
  if (terms_.empty())
    return "∅";
  std::string out;
  for (const auto &t : terms_) {
    if (!out.empty())
      out += " ∪ ";
    for (const auto &step : t.path)
      out += (step.toward_left ? "L[" : "R[") + step.correspondence + "]";
    out += t.path.empty() ? t.base : "(" + t.base + ")";
  }
  return out;
}

CoveringSide CoveringSide::from_rep(PermRep rep, std::string locus, std::string graph,
                                    std::vector<std::string> marked)
{
  CoveringSide side;
  side.degree = rep.degree;
  side.formal = FormalLocus::base(locus);
  side.locus = std::move(locus);
  side.graph = std::move(graph);
  side.marked = std::move(marked);
  side.rep = std::move(rep);
  return side;
}

Correspondence make_correspondence(CoveringSide left, CoveringSide right, std::string label, bool diagonal)
{
  for (const CoveringSide *side : {&left, &right}) {
    if (side->degree <= 0)
      throw Error("DegreeZero", "correspondence '" + label + "' has a side of degree 0");
    if (side->rep) {
      if (side->rep->degree != side->degree)
        throw Error("DegreeMismatch", "side degree differs from its representation");
      auto comps = side->rep->presentation->components();
      for (const auto &c : side->marked)
        if (std::find(comps.begin(), comps.end(), c) == comps.end())
          throw Error("InconsistentMarking",
                      "marked component '" + c + "' is not a component of locus '" + side->locus + "'");
    }
  }

  Correspondence c;
  c.label = std::move(label);
  c.source_graph = left.graph;
  c.target_graph = right.graph;
  c.left = std::move(left);
  c.right = std::move(right);
  c.diagonal = diagonal;
  if (!diagonal) {
    c.left_path = {Transfer{c.label, true}};
    c.right_path = {Transfer{c.label, false}};
  }
  return c;
}

Correspondence make_diagonal(PermRep rep, std::string locus, std::string graph, std::string label)
{
  auto comps = rep.presentation->components();
  auto side = CoveringSide::from_rep(std::move(rep), std::move(locus), std::move(graph), comps);
  return make_correspondence(side, side, std::move(label), true);
}

Correspondence cyclic_cover(int n, std::string label)
{
  if (n <= 0)
    throw Error("DegreeZero", "cyclic cover degree must be positive");
  static const auto unknot = std::make_shared<const Presentation>(wirtinger(parse_pd("", 1)));
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i)
    images[i] = (i + 1) % n;
  auto rep = check_coloring(unknot, std::vector<Perm>{Perm::from_images(images)}, n);
  if (label.empty())
    label = "M(" + std::to_string(n) + ")";
  return make_diagonal(std::move(rep), "O", "O", std::move(label));
}

Correspondence unit(const std::string &graph)
{
  CoveringSide side;
  side.rep = PermRep{1, {}, empty_presentation()};
  side.degree = 1;
  side.locus = "∅";
  side.graph = graph;

  Correspondence c;
  c.label = "U(" + graph + ")";
  c.left = side;
  c.right = side;
  c.source_graph = graph;
  c.target_graph = graph;
  c.diagonal = true;
  c.unit = true;
  return c;
}

Correspondence transpose(const Correspondence &c)
{
  if (c.diagonal)
    return c; // the two maps coincide, so exchanging them changes nothing
  Correspondence t = c;
  const std::string marker = "∨";
  if (c.label.size() >= marker.size() && c.label.compare(c.label.size() - marker.size(), marker.size(), marker) == 0)
    t.label = c.label.substr(0, c.label.size() - marker.size());
  else
    t.label = c.label + marker;
  std::swap(t.left, t.right);
  std::swap(t.source_graph, t.target_graph);
  std::swap(t.left_path, t.right_path);
  return t;
}

std::vector<Correspondence> decompose(const Correspondence &c)
{
  if (!c.diagonal || !c.left.rep)
    throw Error("NotDiagonal", "only diagonal correspondences with known monodromy can be decomposed");
  const auto &rep = *c.left.rep;
  auto blocks = orbits_of(rep.images, rep.degree);
  if (blocks.size() == 1)
    return {c};
  std::vector<Correspondence> parts;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    auto part = restrict_to(rep.presentation, rep.images, blocks[k]);
    parts.push_back(make_diagonal(std::move(part), c.left.locus, c.left.graph, c.label + "#" + std::to_string(k + 1)));
  }
  return parts;
}

CompositeCorrespondence compose(const Correspondence &c1, const Correspondence &c2, const MiddleDiagram &mid,
                                const CompositionMaps &maps)
{
  if (c1.target_graph != c2.source_graph)
    throw Error("CompositionMismatch", "target graph '" + c1.target_graph + "' of " + c1.label +
                                           " differs from source graph '" + c2.source_graph + "' of " + c2.label);
  const auto &P = mid.presentation;
  const int k = P->generator_count();

  std::vector<bool> on1(k, false), on2(k, false);
  for (int g : mid.side1_arcs) {
    if (g < 0 || g >= k)
      throw Error("SidePartition", "side-1 arc index out of range");
    on1[g] = true;
  }
  for (int g : mid.side2_arcs) {
    if (g < 0 || g >= k)
      throw Error("SidePartition", "side-2 arc index out of range");
    on2[g] = true;
  }
  for (int g = 0; g < k; ++g)
    if (!on1[g] && !on2[g])
      throw Error("SidePartition", "middle arc " + P->generator_names[g] + " belongs to neither side");

  const int m = c1.m(), nt = c2.n();
  if (static_cast<int>(maps.left_extension.size()) != k || static_cast<int>(maps.right_extension.size()) != k)
    throw Error("ExtensionInvalid", "extensions must assign every middle arc");
  for (int g = 0; g < k; ++g) {
    if (!on1[g] && !maps.left_extension[g].is_identity())
      throw Error("ExtensionInvalid", "left extension must be trivial on side-2 arc " + P->generator_names[g]);
    if (!on2[g] && !maps.right_extension[g].is_identity())
      throw Error("ExtensionInvalid", "right extension must be trivial on side-1 arc " + P->generator_names[g]);
  }

  PermRep ext1, ext2;
  try {
    ext1 = check_coloring(P, maps.left_extension, m);
    ext2 = check_coloring(P, maps.right_extension, nt);
  } catch (const RelatorViolation &e) {
    throw Error("ExtensionInvalid", std::string("extension fails relator check: ") + e.what());
  } catch (const Error &e) {
    throw Error("ExtensionInvalid", e.what());
  }

  auto match_side = [&](const CoveringSide &side, const PermRep &ext, const std::vector<int> &arcs) {
    if (!side.rep || side.locus != mid.label)
      return;
    const auto &own = *side.rep;
    for (int g : arcs) {
      auto idx = own.presentation->generator_index(P->generator_names[g]);
      if (idx && own.images[*idx] != ext.images[g])
        throw Error("ExtensionInvalid", "extension disagrees with the stored monodromy on " + P->generator_names[g]);
    }
  };
  match_side(c1.right, ext1, mid.side1_arcs);
  match_side(c2.left, ext2, mid.side2_arcs);

  if (orbits_of(ext1.images, m).size() != 1 || orbits_of(ext2.images, nt).size() != 1)
    throw Error("MultiConnected", "factors must be connected; decompose multi-connected correspondences first");

  std::vector<Perm> product;
  for (int g = 0; g < k; ++g) {
    std::vector<int> img(m * nt);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < nt; ++j)
        img[i * nt + j] = ext1.images[g][i] * nt + ext2.images[g][j];
    product.push_back(Perm::from_images(std::move(img)));
  }
  auto blocks = orbits_of(product, m * nt);

  CompositeCorrespondence cc;
  cc.left_label = c1.label;
  cc.right_label = c2.label;
  cc.outer_left_degree = c1.n() * c2.n();
  cc.outer_right_degree = c1.m() * c2.m();
  cc.formal_branch_left = c1.left.formal.united(c2.left.formal.pushed(c1.left_path));
  cc.formal_branch_right = c2.right.formal.united(c1.right.formal.pushed(c2.right_path));

  const bool single = blocks.size() == 1;
  // Both factors are single coverings over exactly this middle diagram, so
  // each component is again one covering of it.
  const bool shared_diagonal = c1.diagonal && c2.diagonal && !c1.unit && !c2.unit && c1.right.locus == mid.label &&
                               c2.left.locus == mid.label && c1.right.rep && c2.left.rep &&
                               same_presentation(*P, *c1.right.rep->presentation) &&
                               same_presentation(*P, *c2.left.rep->presentation);

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto &orbit = blocks[b];
    const int s = static_cast<int>(orbit.size());

    CompositeComponent comp;
    comp.middle = restrict_to(P, product, orbit);
    for (int x : orbit)
      comp.sheets.emplace_back(x / nt, x % nt);

    Correspondence &corr = comp.correspondence;
    corr.label = c1.label + "∘" + c2.label + "#" + std::to_string(b + 1);
    corr.source_graph = c1.source_graph;
    corr.target_graph = c2.target_graph;
    corr.left_path = concat(c1.left_path, c2.left_path);
    corr.right_path = concat(c2.right_path, c1.right_path);

    corr.left.degree = c1.n() * s / m;
    corr.left.graph = c1.left.graph;
    corr.left.marked = c1.left.marked;
    corr.left.formal = cc.formal_branch_left;
    corr.left.locus = cc.formal_branch_left.to_string();
    corr.right.degree = c2.m() * s / nt;
    corr.right.graph = c2.right.graph;
    corr.right.marked = c2.right.marked;
    corr.right.formal = cc.formal_branch_right;
    corr.right.locus = cc.formal_branch_right.to_string();

    if (c2.unit && single) {
      // P1 is the identity, so the left covering is c1's; the right one is
      // read through the sheet bijection (i, 1) -> i.
      corr.left = c1.left;
      corr.right.rep = comp.middle;
      corr.right.locus = c1.right.locus;
      corr.right.graph = c1.right.graph;
      corr.right.marked = c1.right.marked;
      corr.diagonal = c1.diagonal;
      corr.unit = c1.unit;
      if (c1.diagonal)
        corr.left.rep = comp.middle;
    } else if (c1.unit && single) {
      corr.right = c2.right;
      corr.left.rep = comp.middle;
      corr.left.locus = c2.left.locus;
      corr.left.graph = c2.left.graph;
      corr.left.marked = c2.left.marked;
      corr.diagonal = c2.diagonal;
      corr.unit = c2.unit;
      if (c2.diagonal)
        corr.right.rep = comp.middle;
    } else if (shared_diagonal) {
      corr.diagonal = true;
      corr.left.rep = comp.middle;
      corr.right.rep = comp.middle;
      corr.left.locus = mid.label;
      corr.right.locus = mid.label;
    }
    cc.components.push_back(std::move(comp));
  }

  if (!single && cyclic_image(ext1.images, m) && cyclic_image(ext2.images, nt)) {
    const int g = std::gcd(m, nt);
    cc.flags.push_back("CyclicCompositionDivergence: composite of cyclic monodromies splits into " +
                       std::to_string(blocks.size()) + " components of middle degree " +
                       std::to_string(blocks.front().size()) + " (gcd " + std::to_string(g) +
                       "), not a single cyclic cover of degree " + std::to_string(m * nt));
  }
  return cc;
}

CompositeCorrespondence compose(const Correspondence &c1, const Correspondence &c2)
{
  auto identity_images = [](int count) { return std::vector<Perm>(count, Perm(1)); };
  auto all_arcs = [](int count) {
    std::vector<int> arcs(count);
    std::iota(arcs.begin(), arcs.end(), 0);
    return arcs;
  };

  if (c1.target_graph != c2.source_graph)
    throw Error("CompositionMismatch", "target graph '" + c1.target_graph + "' of " + c1.label +
                                           " differs from source graph '" + c2.source_graph + "' of " + c2.label);
  if (c2.unit) {
    if (!c1.right.rep)
      throw Error("MiddleRequired", c1.label + " has no stored right monodromy");
    const auto &rep = *c1.right.rep;
    const int k = rep.presentation->generator_count();
    MiddleDiagram mid{rep.presentation, c1.right.locus, all_arcs(k), {}};
    return compose(c1, c2, mid, {rep.images, identity_images(k)});
  }
  if (c1.unit) {
    if (!c2.left.rep)
      throw Error("MiddleRequired", c2.label + " has no stored left monodromy");
    const auto &rep = *c2.left.rep;
    const int k = rep.presentation->generator_count();
    MiddleDiagram mid{rep.presentation, c2.left.locus, {}, all_arcs(k)};
    return compose(c1, c2, mid, {identity_images(k), rep.images});
  }
  if (c1.right.rep && c2.left.rep && c1.right.locus == c2.left.locus &&
      same_presentation(*c1.right.rep->presentation, *c2.left.rep->presentation)) {
    const auto &p = c1.right.rep->presentation;
    const int k = p->generator_count();
    MiddleDiagram mid{p, c1.right.locus, all_arcs(k), all_arcs(k)};
    return compose(c1, c2, mid, {c1.right.rep->images, c2.left.rep->images});
  }
  throw Error("MiddleRequired", "composing " + c1.label + " with " + c2.label + " needs an explicit middle diagram");
}

std::pair<int, int> outer_multiplicities(const CompositeCorrespondence &cc)
{
  return {cc.outer_left_degree, cc.outer_right_degree};
}

CompositeCorrespondence transpose(const CompositeCorrespondence &cc)
{
  CompositeCorrespondence t = cc;
  t.left_label = cc.right_label;
  t.right_label = cc.left_label;
  std::swap(t.outer_left_degree, t.outer_right_degree);
  std::swap(t.formal_branch_left, t.formal_branch_right);
  for (auto &comp : t.components)
    comp.correspondence = transpose(comp.correspondence);
  return t;
}

AssociativityReport associativity_check(const Correspondence &c1, const Correspondence &c2,
                                        const Correspondence &c3)
{
  AssociativityReport report;

  struct Tally
  {
    int left = 0, right = 0;
    FormalLocus locus_left, locus_right;
    std::vector<int> sizes;
  };
  auto absorb = [](Tally &tally, const CompositeCorrespondence &cc) {
    for (const auto &comp : cc.components) {
      tally.left += comp.correspondence.n();
      tally.right += comp.correspondence.m();
      tally.sizes.push_back(comp.middle.degree);
    }
    tally.locus_left = tally.locus_left.united(cc.formal_branch_left);
    tally.locus_right = tally.locus_right.united(cc.formal_branch_right);
  };

  Tally a, b;
  for (const auto &k : compose(c1, c2).components)
    absorb(a, compose(k.correspondence, c3));
  for (const auto &k : compose(c2, c3).components)
    absorb(b, compose(c1, k.correspondence));

  // sheet-set oracle: orbits of the joint action on triples of sheets
  std::shared_ptr<const Presentation> shared;
  for (const auto *c : {&c1, &c2, &c3}) {
    if (c->unit)
      continue;
    if (!c->diagonal || !c->left.rep)
      throw Error("NotDiagonal", "associativity oracle needs diagonal correspondences over one locus");
    if (!shared)
      shared = c->left.rep->presentation;
    else if (!same_presentation(*shared, *c->left.rep->presentation))
      throw Error("NotDiagonal", "associativity oracle needs diagonal correspondences over one locus");
  }
  const int k = shared ? shared->generator_count() : 0;
  auto images_of = [&](const Correspondence &c, int g) { return c.unit ? Perm(1) : c.left.rep->images[g]; };
  const int d1 = c1.left.degree, d2 = c2.left.degree, d3 = c3.left.degree;
  std::vector<Perm> triple;
  for (int g = 0; g < k; ++g) {
    Perm p1 = images_of(c1, g), p2 = images_of(c2, g), p3 = images_of(c3, g);
    std::vector<int> img(d1 * d2 * d3);
    for (int x = 0; x < d1; ++x)
      for (int y = 0; y < d2; ++y)
        for (int z = 0; z < d3; ++z)
          img[(x * d2 + y) * d3 + z] = (p1[x] * d2 + p2[y]) * d3 + p3[z];
    triple.push_back(Perm::from_images(std::move(img)));
  }
  for (const auto &orbit : orbits_of(triple, d1 * d2 * d3))
    report.sheet_set_sizes.push_back(static_cast<int>(orbit.size()));

  std::sort(a.sizes.begin(), a.sizes.end());
  std::sort(b.sizes.begin(), b.sizes.end());
  std::sort(report.sheet_set_sizes.begin(), report.sheet_set_sizes.end());

  report.left_bracketing_degrees = {a.left, a.right};
  report.right_bracketing_degrees = {b.left, b.right};
  report.left_bracketing_sizes = a.sizes;
  report.right_bracketing_sizes = b.sizes;
  report.left_bracketing_locus_left = a.locus_left.to_string();
  report.right_bracketing_locus_left = b.locus_left.to_string();
  report.left_bracketing_locus_right = a.locus_right.to_string();
  report.right_bracketing_locus_right = b.locus_right.to_string();

  const std::pair<int, int> expected{c1.n() * c2.n() * c3.n(), c1.m() * c2.m() * c3.m()};
  report.degrees_agree = report.left_bracketing_degrees == report.right_bracketing_degrees &&
                         report.left_bracketing_degrees == expected;
  report.loci_agree = a.locus_left == b.locus_left && a.locus_right == b.locus_right;
  report.components_agree = a.sizes == b.sizes && a.sizes == report.sheet_set_sizes;

  if (!report.degrees_agree)
    report.mismatches.push_back("outer degrees differ between bracketings");
  if (!report.loci_agree)
    report.mismatches.push_back("formal branch loci differ: " + report.left_bracketing_locus_left + " vs " +
                                report.right_bracketing_locus_left);
  if (!report.components_agree)
    report.mismatches.push_back("component sizes differ from the sheet-set oracle");
  return report;
}

void CorrespondenceStore::add(Correspondence c)
{
  if (items_.count(c.label))
    throw Error("DuplicateLabel", "label '" + c.label + "' already registered");
  std::string label = c.label;
  items_.emplace(std::move(label), std::move(c));
}

const Correspondence &CorrespondenceStore::get(const std::string &label) const
{
  auto it = items_.find(label);
  if (it == items_.end())
    throw Error("UnknownLabel", "no correspondence labeled '" + label + "'");
  return it->second;
}

} // namespace corrcalc
