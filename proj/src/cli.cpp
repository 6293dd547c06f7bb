#include "corrcalc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <regex>

#include "CLI11.hpp"

#include "corrcalc/json_io.hpp"

namespace corrcalc {

double residual_tolerance()
{
  if (const char *env = std::getenv("CORRCALC_PRECISION")) {
    char *end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0)
      return v;
  }
  return 1e-9;
}

namespace {

struct UsageError : Error
{
  explicit UsageError(const std::string &message) : Error("UsageError", message) {}
};

// A report that is emitted as-is but exits with status 1.
struct ValidationFailure
{
  Json report;
};

Json rounded(const Json &j)
{
  if (j.is_number_float())
    return round12(j.get<double>());
  if (j.is_array() || j.is_object()) {
    Json copy = j;
    for (auto &v : copy)
      v = rounded(v);
    return copy;
  }
  return j;
}

void emit(std::ostream &out, const Json &j)
{
  out << rounded(j).dump(2) << '\n';
}

Json error_object(const std::string &code, const std::string &message)
{
  return Json{{"error", {{"code", code}, {"message", message}}}};
}

std::vector<std::string> split(const std::string &s, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty())
        out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty())
    out.push_back(cur);
  return out;
}

bool looks_like_json(const std::string &text)
{
  auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

/// A presentation file may be JSON or raw PD text.
std::shared_ptr<const Presentation> load_locus(const std::string &path, int unknot_components)
{
  std::string text = read_text_file(path);
  if (looks_like_json(text))
    return locus_from_json(Json::parse(text));
  return std::make_shared<const Presentation>(wirtinger(parse_pd(text, unknot_components)));
}

std::shared_ptr<const Presentation> load_presentation(const std::string &pd, const std::string &presentation,
                                                      int unknot)
{
  if (!pd.empty() == !presentation.empty())
    throw UsageError("give exactly one of --pd and --presentation");
  if (!pd.empty())
    return std::make_shared<const Presentation>(wirtinger(parse_pd(read_text_file(pd), unknot)));
  return locus_from_json(read_json_file(presentation));
}

Evolution parse_mode(const std::string &mode)
{
  if (mode == "left" || mode == "L")
    return Evolution::Left;
  if (mode == "right" || mode == "R")
    return Evolution::Right;
  if (mode == "ratio")
    return Evolution::Ratio;
  throw UsageError("unknown evolution mode '" + mode + "'");
}

Json spectrum_json(const OperatorMatrix &h)
{
  std::map<double, int> mult;
  for (Eigen::Index i = 0; i < h.matrix.rows(); ++i)
    ++mult[round12(h.matrix(i, i).real())];
  Json out = Json::array();
  for (const auto &[value, count] : mult)
    out.push_back(Json{{"eigenvalue", value}, {"multiplicity", count}});
  return out;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions
{
  std::string pd, presentation, coloring;
  int unknot = 0;
};

Json cmd_verify(const VerifyOptions &o)
{
  auto p = load_presentation(o.pd, o.presentation, o.unknot);
  PermRep rep;
  try {
    rep = coloring_from_json(read_json_file(o.coloring), p);
  } catch (const RelatorViolation &e) {
    Json err = error_object(e.code(), e.what());
    err["error"]["relator"] = e.relator_index() + 1;
    err["error"]["result"] = e.result().to_cycle_string();
    err["valid"] = false;
    throw ValidationFailure{err};
  }
  Json indices = Json::object();
  for (const auto &name : p->generator_names)
    indices[name] = branching_indices(rep, name);
  auto orb = orbits(rep);
  return Json{{"valid", true},
              {"degree", rep.degree},
              {"orbits", orb.blocks.size()},
              {"blocks", orb.blocks},
              {"indices", indices}};
}

// ----------------------------------------------------------------- cover

struct CoverOptions
{
  std::string pd, presentation;
  int unknot = 0;
  int degree = 0;
  bool transitive = false, nontrivial = false, noncyclic = false;
  std::size_t cap = 10000;
};

Json cmd_cover(const CoverOptions &o)
{
  auto p = load_presentation(o.pd, o.presentation, o.unknot);
  auto result = search_colorings(p, o.degree, SearchFilter{o.transitive, o.nontrivial, o.noncyclic}, o.cap);
  Json list = Json::array();
  for (const auto &c : result.colorings) {
    Json j = coloring_to_json(c.rep);
    j["orbits"] = c.orbit_count;
    list.push_back(j);
  }
  return Json{{"degree", o.degree}, {"classes", result.colorings.size()}, {"truncated", result.truncated},
              {"colorings", list}};
}

// --------------------------------------------------------------- compose

struct ComposeOptions
{
  std::string session, left, right, middle, request, left_ext, right_ext, pairs;
  std::vector<int> side1, side2;
  std::vector<std::string> associativity;
  bool emit_table = false;
};

class Resolver
{
public:
  explicit Resolver(std::optional<Session> s) : session_(std::move(s)) {}

  /// Session labels first; otherwise "M<n>"/"M(n)" is the cyclic cover and
  /// "U"/"U(G)" a unit.
  Correspondence get(const std::string &label) const
  {
    if (session_ && session_->store.contains(label))
      return session_->store.get(label);
    static const std::regex cyclic(R"(M\(?([0-9]+)\)?)"), unit_re(R"(U(?:\((.+)\))?)");
    std::smatch m;
    if (std::regex_match(label, m, cyclic))
      return cyclic_cover(std::stoi(m[1].str()));
    if (std::regex_match(label, m, unit_re))
      return unit(m[1].matched ? m[1].str() : "O");
    throw Error("UnknownLabel", "unknown correspondence '" + label + "'");
  }

  const std::optional<Session> &session() const { return session_; }

private:
  std::optional<Session> session_;
};

Json locus_json(const FormalLocus &f)
{
  return f.to_string();
}

Json composite_json(const CompositeCorrespondence &cc)
{
  Json comps = Json::array();
  for (const auto &c : cc.components) {
    const auto &corr = c.correspondence;
    Json j{{"label", corr.label},
           {"n", corr.n()},
           {"m", corr.m()},
           {"middle_degree", c.middle.degree},
           {"cyclic", generates_cyclic_group(c.middle.images, c.middle.degree)},
           {"diagonal", corr.diagonal}};
    if (corr.left.rep)
      j["left_coloring"] = coloring_to_json(*corr.left.rep);
    comps.push_back(j);
  }
  auto [n, m] = outer_multiplicities(cc);
  return Json{{"left", cc.left_label},
              {"right", cc.right_label},
              {"components", comps},
              {"component_count", cc.components.size()},
              {"degrees", {n, m}},
              {"formal_branch_left", locus_json(cc.formal_branch_left)},
              {"formal_branch_right", locus_json(cc.formal_branch_right)},
              {"flags", cc.flags}};
}

std::vector<int> all_arcs(const Presentation &p)
{
  std::vector<int> v(p.generator_count());
  for (int i = 0; i < p.generator_count(); ++i)
    v[i] = i;
  return v;
}

std::vector<Perm> extension(const std::string &path, const Json *inline_json,
                            const std::shared_ptr<const Presentation> &mid, const std::optional<PermRep> &fallback,
                            const char *which)
{
  if (inline_json)
    return coloring_from_json(*inline_json, mid).images;
  if (!path.empty())
    return coloring_from_json(read_json_file(path), mid).images;
  if (fallback && static_cast<int>(fallback->images.size()) == mid->generator_count())
    return fallback->images;
  throw UsageError(std::string("the middle diagram needs an explicit ") + which);
}

Json cmd_compose(ComposeOptions o)
{
  std::optional<Session> session;
  if (!o.session.empty())
    session = session_from_json(read_json_file(o.session));
  Resolver resolve(session);

  if (o.emit_table) {
    if (!session)
      throw UsageError("--emit-table needs --session");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto &p : split(o.pairs, ',')) {
      auto bar = p.find('|');
      if (bar == std::string::npos)
        throw UsageError("pairs are written A|B");
      pairs.emplace_back(p.substr(0, bar), p.substr(bar + 1));
    }
    auto emitted = emit_table(*session, pairs);
    auto keys = [](const auto &list) {
      Json out = Json::array();
      for (const auto &[a, b] : list)
        out.push_back(a + "|" + b);
      return out;
    };
    Json j{{"table", table_to_json(emitted.table)},
           {"registered", emitted.registered},
           {"open_pairs", keys(emitted.missing)},
           {"failed", keys(emitted.failed)},
           {"closed", emitted.failed.empty()},
           {"flags", emitted.flags}};
    if (!emitted.failed.empty())
      throw ValidationFailure{j};
    return j;
  }

  if (!o.associativity.empty()) {
    if (o.associativity.size() != 3)
      throw UsageError("--associativity takes three labels");
    auto r = associativity_check(resolve.get(o.associativity[0]), resolve.get(o.associativity[1]),
                                 resolve.get(o.associativity[2]));
    Json j{{"passed", r.passed()},
           {"degrees_agree", r.degrees_agree},
           {"loci_agree", r.loci_agree},
           {"components_agree", r.components_agree},
           {"left_bracketing", {{"degrees", {r.left_bracketing_degrees.first, r.left_bracketing_degrees.second}},
                                {"sizes", r.left_bracketing_sizes},
                                {"locus_left", r.left_bracketing_locus_left},
                                {"locus_right", r.left_bracketing_locus_right}}},
           {"right_bracketing", {{"degrees", {r.right_bracketing_degrees.first, r.right_bracketing_degrees.second}},
                                 {"sizes", r.right_bracketing_sizes},
                                 {"locus_left", r.right_bracketing_locus_left},
                                 {"locus_right", r.right_bracketing_locus_right}}},
           {"sheet_set_sizes", r.sheet_set_sizes},
           {"mismatches", r.mismatches}};
    if (!r.passed())
      throw ValidationFailure{j};
    return j;
  }

  Json request;
  if (!o.request.empty()) {
    request = read_json_file(o.request);
    if (o.left.empty())
      o.left = request.value("left", std::string{});
    if (o.right.empty())
      o.right = request.value("right", std::string{});
  }
  if (o.left.empty() || o.right.empty())
    throw UsageError("compose needs --left and --right");
  auto c1 = resolve.get(o.left);
  auto c2 = resolve.get(o.right);

  std::shared_ptr<const Presentation> mid;
  if (request.contains("middle")) {
    const auto &m = request.at("middle");
    if (m.is_string()) {
      if (!session || !session->loci.count(m.get<std::string>()))
        throw Error("UnknownLabel", "unknown middle locus '" + m.get<std::string>() + "'");
      mid = session->loci.at(m.get<std::string>());
    } else {
      mid = locus_from_json(m);
    }
  } else if (!o.middle.empty()) {
    mid = load_locus(o.middle, 1);
  }

  if (!mid)
    return composite_json(compose(c1, c2));

  MiddleDiagram md;
  md.presentation = mid;
  md.label = c1.target_graph;
  md.side1_arcs = request.contains("side1_arcs") ? request.at("side1_arcs").get<std::vector<int>>() : o.side1;
  md.side2_arcs = request.contains("side2_arcs") ? request.at("side2_arcs").get<std::vector<int>>() : o.side2;
  // files list arcs 1-based
  for (auto *arcs : {&md.side1_arcs, &md.side2_arcs}) {
    if (arcs->empty())
      *arcs = all_arcs(*mid);
    else
      for (auto &a : *arcs)
        --a;
  }
  CompositionMaps maps;
  maps.left_extension = extension(o.left_ext, request.contains("left_extension") ? &request["left_extension"] : nullptr,
                                  mid, c1.right.rep, "left extension");
  maps.right_extension = extension(o.right_ext,
                                   request.contains("right_extension") ? &request["right_extension"] : nullptr, mid,
                                   c2.left.rep, "right extension");
  return composite_json(compose(c1, c2, md, maps));
}

// --------------------------------------------------------------- algebra

struct AlgebraOptions
{
  std::string table, f, g, op, mode = "ratio", label, basis;
  double t = 1.0;
};

std::vector<std::string> basis_of(const std::string &spec, const CompositionTable &table)
{
  if (!spec.empty())
    return split(spec, ',');
  std::vector<std::string> b;
  for (const auto &[label, d] : table.labels())
    b.push_back(label);
  return b;
}

AlgebraElement load_element(const std::string &path, const char *flag)
{
  if (path.empty())
    throw UsageError(std::string("this operation needs ") + flag);
  return element_from_json(read_json_file(path));
}

Json cmd_algebra(const AlgebraOptions &o)
{
  auto table = table_from_json(read_json_file(o.table));
  auto basis = basis_of(o.basis, table);
  const double tol = residual_tolerance();
  const Evolution mode = parse_mode(o.mode);

  if (o.op == "validate") {
    Json viol = Json::array();
    for (const auto &[a, b] : table.division_violations())
      viol.push_back({a, b});
    Json split = Json::array();
    for (const auto &[a, b] : table.split_entries())
      split.push_back(a + "|" + b);
    return Json{{"valid", true},
                {"labels", table.labels().size()},
                {"division_violations", viol},
                {"split_entries", split}};
  }
  if (o.op == "convolve")
    return Json{{"result", element_to_json(convolve(load_element(o.f, "--f"), load_element(o.g, "--g"), table))}};
  if (o.op == "involve")
    return Json{{"result", element_to_json(involve(load_element(o.f, "--f"), table))}};
  if (o.op == "expand")
    return Json{{"result", element_to_json(expand(load_element(o.f, "--f"), table))}};
  if (o.op == "evolve")
    return Json{{"result", element_to_json(evolve(load_element(o.f, "--f"), o.t, mode, table))}, {"t", o.t}};
  if (o.op == "represent")
    return operator_to_json(represent(load_element(o.f, "--f"), basis, table));
  if (o.op == "annihilator" || o.op == "creator") {
    if (o.label.empty())
      throw UsageError("--label is required");
    auto a = annihilator(o.label, basis, table);
    auto c = creator(o.label, basis, table);
    Json j = operator_to_json(o.op == "annihilator" ? a : c);
    j["projection_star_a"] = operator_to_json(OperatorMatrix{basis, c.matrix * a.matrix})["matrix"];
    j["projection_a_star"] = operator_to_json(OperatorMatrix{basis, a.matrix * c.matrix})["matrix"];
    return j;
  }
  if (o.op == "hamiltonian") {
    auto h = hamiltonian(basis, mode, table);
    Json j = operator_to_json(h);
    j["spectrum"] = spectrum_json(h);
    return j;
  }
  if (o.op == "dirac")
    return operator_to_json(dirac_generator(basis, table));
  if (o.op == "commutator") {
    if (o.label.empty())
      throw UsageError("--label is required");
    double norm = commutator_norm(dirac_generator(basis, table), annihilator(o.label, basis, table));
    const auto &d = table.data(o.label);
    double expected = std::abs(std::log(static_cast<double>(d.n) / d.m));
    Json j{{"label", o.label}, {"norm", norm}, {"expected", expected}};
    if (std::abs(norm - expected) > 1e-12)
      throw ValidationFailure{j};
    return j;
  }
  if (o.op == "check") {
    auto f = load_element(o.f, "--f");
    auto r = conjugation_check(f, o.t, basis, table, mode);
    Json j{{"conjugation_residual", r.residual},
           {"opposite_convention", r.opposite_convention},
           {"opposite_convention_reversed", r.opposite_convention_reversed},
           {"tolerance", tol}};
    bool ok = r.residual < tol && r.opposite_convention_reversed < tol;
    if (!o.g.empty()) {
      auto g = load_element(o.g, "--g");
      double aut = max_difference(evolve(convolve(f, g, table), o.t, mode, table),
                                  convolve(evolve(f, o.t, mode, table), evolve(g, o.t, mode, table), table));
      j["automorphism_residual"] = aut;
      ok = ok && aut < tol;
      bool transposed = true;
      for (const auto *x : {&f, &g})
        for (const auto &[label, c] : expand(*x, table).coefficients)
          transposed = transposed && !table.data(label).transpose.empty();
      if (transposed) {
        double inv = max_difference(involve(convolve(f, g, table), table),
                                    convolve(involve(g, table), involve(f, table), table));
        j["involution_residual"] = inv;
        ok = ok && inv < tol;
      } else {
        j["involution_residual"] = nullptr; // no transposes recorded
      }
    }
    j["passed"] = ok;
    if (!ok)
      throw ValidationFailure{j};
    return j;
  }
  throw UsageError("unknown algebra operation '" + o.op + "'");
}

// -------------------------------------------------------------- quotient

struct QuotientOptions
{
  std::string table, declare, f, mode = "right";
};

Json cmd_quotient(const QuotientOptions &o)
{
  auto table = table_from_json(read_json_file(o.table));
  auto decl = declare_equivalence(declaration_from_json(read_json_file(o.declare)), table);
  auto q = validate_quotient(decl, table);
  auto h = hamiltonian(basis_of("", q.table), parse_mode(o.mode), q.table);
  Json j{{"valid", true},
         {"classes", decl.classes()},
         {"class_of", q.class_of},
         {"table", table_to_json(q.table)},
         {"spectrum", spectrum_json(h)}};
  if (!o.f.empty())
    j["image"] = element_to_json(quotient_map(element_from_json(read_json_file(o.f)), q));
  return j;
}

// ----------------------------------------------------------------- cells

struct CellsOptions
{
  std::string cells, table, op, f, g, a, b, invariant = "chi", product = "vertical";
  double t = 1.0;
};

CellProduct parse_product(const std::string &s)
{
  if (s == "vertical")
    return CellProduct::Vertical;
  if (s == "horizontal")
    return CellProduct::Horizontal;
  throw UsageError("unknown product '" + s + "'");
}

Json cmd_cells(const CellsOptions &o)
{
  std::optional<CompositionTable> table;
  if (!o.table.empty())
    table = table_from_json(read_json_file(o.table));
  auto cells = cells_from_json(read_json_file(o.cells), table);
  const double tol = residual_tolerance();

  if (o.op == "validate")
    return Json{{"valid", true}, {"cells", cells.cells().size()}};
  if (o.op == "vertical") {
    auto w = vertical_compose(cells.cell(o.a), cells.cell(o.b), cells.boundary());
    auto declared = cells.product(o.a, o.b, CellProduct::Vertical);
    Json j{{"glued", cell_to_json(w)}};
    if (declared)
      j["declared"] = *declared;
    return j;
  }
  if (o.op == "horizontal") {
    if (!table)
      throw UsageError("horizontal gluing needs --table");
    auto w = horizontal_compose(cells.cell(o.a), cells.cell(o.b), *table);
    auto declared = cells.product(o.a, o.b, CellProduct::Horizontal);
    Json j{{"glued", cell_to_json(w)}};
    if (declared)
      j["declared"] = *declared;
    return j;
  }
  if (o.op == "dagger") {
    if (!table)
      throw UsageError("dagger needs --table");
    return cell_to_json(dagger(cells.cell(o.a), *table));
  }
  if (o.op == "convolve")
    return Json{{"result", element_to_json(two_cell_convolve(load_element(o.f, "--f"), load_element(o.g, "--g"),
                                                             parse_product(o.product), cells))}};
  if (o.op == "evolve-vertical")
    return Json{{"result", element_to_json(vertical_evolution(load_element(o.f, "--f"), o.t, o.invariant, cells))}};
  if (o.op == "evolve-horizontal")
    return Json{{"result", element_to_json(horizontal_order_evolution(load_element(o.f, "--f"), o.t, cells))}};
  if (o.op == "check") {
    auto f = load_element(o.f, "--f");
    auto g = load_element(o.g, "--g");
    auto sv = [&](const AlgebraElement &x) { return vertical_evolution(x, o.t, o.invariant, cells); };
    auto sh = [&](const AlgebraElement &x) { return horizontal_order_evolution(x, o.t, cells); };
    auto conv = [&](const AlgebraElement &x, const AlgebraElement &y, CellProduct p) {
      return two_cell_convolve(x, y, p, cells);
    };
    double vertical = max_difference(sv(conv(f, g, CellProduct::Vertical)),
                                     conv(sv(f), sv(g), CellProduct::Vertical));
    double horizontal = max_difference(sh(conv(f, g, CellProduct::Horizontal)),
                                       conv(sh(f), sh(g), CellProduct::Horizontal));
    double order_on_vertical = max_difference(sh(conv(f, g, CellProduct::Vertical)),
                                              conv(sh(f), sh(g), CellProduct::Vertical));
    Json j{{"vertical_evolution_residual", vertical},
           {"horizontal_order_residual", horizontal},
           {"order_evolution_on_vertical_residual", order_on_vertical},
           {"tolerance", tol}};
    bool ok = vertical < tol && horizontal < tol;
    j["passed"] = ok;
    if (!ok)
      throw ValidationFailure{j};
    return j;
  }
  throw UsageError("unknown cells operation '" + o.op + "'");
}

// ---------------------------------------------------------------- bounds

struct BoundsOptions
{
  std::vector<int> pn, moebius;
  std::vector<long long> q;
  std::vector<int> dim;
  std::vector<double> zeta, localized;
  double gibbs = std::nan("");
  std::string oracle, values;
};

Json cmd_bounds(const BoundsOptions &o)
{
  Json j = Json::object();
  MultiplicityOracle oracle;
  if (!o.oracle.empty())
    oracle = oracle_from_json(read_json_file(o.oracle));

  if (!o.pn.empty())
    j["p"] = big_to_json(partitions(o.pn[0]));
  if (!o.moebius.empty())
    j["mu"] = moebius(o.moebius[0]);
  if (!o.q.empty())
    j["Q"] = big_to_json(necklace_Q(static_cast<int>(o.q[0]), o.q[1]));
  if (!o.dim.empty())
    j["D"] = big_to_json(rational_homotopy_dim(o.dim[0], o.dim[1]));
  if (!o.zeta.empty()) {
    if (o.oracle.empty())
      throw UsageError("--zeta needs --oracle");
    auto s = partition_function(o.zeta[0], oracle, static_cast<int>(o.zeta[1]));
    j["Z"] = s.value;
    j["zeta_lower"] = s.zeta_lower;
    j["bound_holds"] = s.zeta_lower <= s.value;
  }
  if (!o.localized.empty()) {
    if (o.oracle.empty())
      throw UsageError("--localized needs --oracle");
    j["Z_p"] = localized_zeta(o.localized[0], static_cast<int>(o.localized[1]), oracle,
                              static_cast<int>(o.localized[2]));
  }
  if (!std::isnan(o.gibbs)) {
    if (o.values.empty())
      throw UsageError("--gibbs needs --values");
    Json v = read_json_file(o.values);
    std::map<std::string, double> values;
    std::vector<GibbsBasisEntry> basis;
    for (const auto &e : v.at("basis")) {
      auto label = e.at("label").get<std::string>();
      values[label] = e.at("value").get<double>();
      basis.push_back({label, e.at("n").get<int>()});
    }
    j["gibbs"] = gibbs_functional(values, o.gibbs, basis, oracle);
  }
  if (j.empty())
    throw UsageError("bounds needs at least one of --pn --moebius --Q --dim --zeta --localized --gibbs");
  return j;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Branched-cover correspondences: coverings, composition, algebra and bounds", "corrcalc"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto *verify = app.add_subcommand("verify", "Check a coloring against a presentation");
  verify->add_option("--pd", vo.pd, "PD code file");
  verify->add_option("--presentation", vo.presentation, "presentation JSON file");
  verify->add_option("--unknot", vo.unknot, "crossingless components for an empty PD code");
  verify->add_option("--coloring", vo.coloring, "coloring JSON file")->required();

  CoverOptions co;
  auto *cover = app.add_subcommand("cover", "Enumerate colorings up to conjugation");
  cover->add_option("--pd", co.pd, "PD code file");
  cover->add_option("--presentation", co.presentation, "presentation JSON file");
  cover->add_option("--unknot", co.unknot, "crossingless components for an empty PD code");
  cover->add_option("--degree,-n", co.degree, "symmetric group degree")->required();
  cover->add_flag("--transitive", co.transitive);
  cover->add_flag("--nontrivial", co.nontrivial);
  cover->add_flag("--noncyclic", co.noncyclic);
  cover->add_option("--cap", co.cap, "stop after this many classes");

  ComposeOptions mo;
  auto *comp = app.add_subcommand("compose", "Compose correspondences by fibered product");
  comp->add_option("--session", mo.session, "session JSON with loci and correspondences");
  comp->add_option("--left", mo.left);
  comp->add_option("--right", mo.right);
  comp->add_option("--middle", mo.middle, "middle diagram (JSON presentation or PD file)");
  comp->add_option("--side1", mo.side1, "1-based arcs coming from the left factor");
  comp->add_option("--side2", mo.side2, "1-based arcs coming from the right factor");
  comp->add_option("--left-ext", mo.left_ext, "coloring of the middle diagram by the left factor");
  comp->add_option("--right-ext", mo.right_ext, "coloring of the middle diagram by the right factor");
  comp->add_option("--request", mo.request, "composition request JSON");
  comp->add_flag("--emit-table", mo.emit_table, "compose stored pairs and emit a composition table");
  comp->add_option("--pairs", mo.pairs, "comma-separated A|B pairs for --emit-table");
  comp->add_option("--associativity", mo.associativity, "compare both bracketings of three labels")->expected(3);

  AlgebraOptions ao;
  auto *alg = app.add_subcommand("algebra", "Convolution algebra on a composition table");
  alg->add_option("--table", ao.table)->required();
  alg->add_option("--op", ao.op,
                  "validate|convolve|involve|expand|evolve|represent|annihilator|creator|hamiltonian|dirac|"
                  "commutator|check")
    ->required();
  alg->add_option("--f", ao.f, "element JSON");
  alg->add_option("--g", ao.g, "second element JSON");
  alg->add_option("--t", ao.t);
  alg->add_option("--mode", ao.mode, "left|right|ratio");
  alg->add_option("--label", ao.label);
  alg->add_option("--basis", ao.basis, "comma-separated basis labels (default: all)");

  QuotientOptions qo;
  auto *quot = app.add_subcommand("quotient", "Validate a declared equivalence and descend the table");
  quot->add_option("--table", qo.table)->required();
  quot->add_option("--declare", qo.declare)->required();
  quot->add_option("--f", qo.f);
  quot->add_option("--mode", qo.mode, "left|right|ratio, for the reported spectrum");

  CellsOptions lo;
  auto *cells = app.add_subcommand("cells", "Two-cell products, dagger and evolutions");
  cells->add_option("--cells", lo.cells)->required();
  cells->add_option("--table", lo.table, "composition table of the boundary correspondences");
  cells->add_option("--op", lo.op,
                    "validate|vertical|horizontal|dagger|convolve|evolve-vertical|evolve-horizontal|check")
    ->required();
  cells->add_option("--a", lo.a);
  cells->add_option("--b", lo.b);
  cells->add_option("--f", lo.f);
  cells->add_option("--g", lo.g);
  cells->add_option("--t", lo.t);
  cells->add_option("--invariant", lo.invariant);
  cells->add_option("--product", lo.product, "vertical|horizontal");

  BoundsOptions bo;
  auto *bounds = app.add_subcommand("bounds", "Partition counts, homotopy dimensions and zeta sums");
  bounds->add_option("--pn", bo.pn, "p(n)")->expected(1);
  bounds->add_option("--moebius", bo.moebius, "μ(d)")->expected(1);
  bounds->add_option("--Q", bo.q, "aperiodic necklaces Q(a, b)")->expected(2);
  bounds->add_option("--dim", bo.dim, "dim π_k(B_n) ⊗ Q for k n")->expected(2);
  bounds->add_option("--zeta", bo.zeta, "Z(β) truncated at n_max: beta nmax")->expected(2);
  bounds->add_option("--localized", bo.localized, "Z_p(β): beta p nmax")->expected(3);
  bounds->add_option("--gibbs", bo.gibbs, "Gibbs functional at beta");
  bounds->add_option("--oracle", bo.oracle, "multiplicity oracle JSON");
  bounds->add_option("--values", bo.values, "Gibbs basis JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    emit(out, error_object("UsageError", e.what()));
    err << e.what() << '\n';
    return 2;
  }

  try {
    Json report;
    if (verify->parsed())
      report = cmd_verify(vo);
    else if (cover->parsed())
      report = cmd_cover(co);
    else if (comp->parsed())
      report = cmd_compose(mo);
    else if (alg->parsed())
      report = cmd_algebra(ao);
    else if (quot->parsed())
      report = cmd_quotient(qo);
    else if (cells->parsed())
      report = cmd_cells(lo);
    else
      report = cmd_bounds(bo);
    emit(out, report);
    return 0;
  } catch (const ValidationFailure &f) {
    emit(out, f.report);
    return 1;
  } catch (const UsageError &e) {
    emit(out, error_object(e.code(), e.what()));
    err << e.what() << '\n';
    return 2;
  } catch (const Error &e) {
    emit(out, error_object(e.code(), e.what()));
    err << e.code() << ": " << e.what() << '\n';
    return 1;
  } catch (const Json::exception &e) {
    emit(out, error_object("ParseError", e.what()));
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    emit(out, error_object("InternalError", e.what()));
    err << e.what() << '\n';
    return 1;
  }
}

} // namespace corrcalc
