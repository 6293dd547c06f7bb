#include "corrcalc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace corrcalc {

double round12(double x)
{
  if (!std::isfinite(x))
    return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r; // no "-0"
}

Json big_to_json(const BigInt &x)
{
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

Json presentation_to_json(const Presentation &p)
{
  Json j;
  j["generators"] = p.generator_count();
  j["names"] = p.generator_names;
  j["relators"] = p.relators;
  Json comps = Json::object();
  for (int i = 0; i < p.generator_count(); ++i)
    comps[p.generator_names[i]] = p.component_of_generator[i];
  j["components"] = comps;
  return j;
}

Presentation presentation_from_json(const Json &j)
{
  try {
    const int k = j.at("generators").get<int>();
    std::vector<Word> relators;
    if (j.contains("relators"))
      relators = j.at("relators").get<std::vector<Word>>();

    std::vector<std::string> names;
    if (j.contains("names"))
      names = j.at("names").get<std::vector<std::string>>();
    if (!names.empty() && static_cast<int>(names.size()) != k)
      throw Error("ParseError", "presentation names must list every generator");

    std::vector<std::string> comps;
    if (j.contains("components") && k > 0) {
      const auto &c = j.at("components");
      if (c.is_array()) {
        comps = c.get<std::vector<std::string>>();
      } else {
        for (int i = 0; i < k; ++i) {
          std::string key = names.empty() ? "g" + std::to_string(i + 1) : names[i];
          if (!c.contains(key))
            throw Error("ComponentMismatch", "no component label for generator '" + key + "'");
          comps.push_back(c.at(key).get<std::string>());
        }
      }
    }
    auto p = explicit_presentation(k, std::move(relators), std::move(comps));
    if (!names.empty())
      p.generator_names = names;
    return p;
  } catch (const Json::exception &e) {
    throw Error("ParseError", std::string("presentation JSON: ") + e.what());
  }
}

int resolve_generator(const Presentation &p, const std::string &key)
{
  if (auto idx = p.generator_index(key))
    return *idx;
  auto numeric = [&](std::size_t offset) -> int {
    if (key.size() <= offset)
      return -1;
    for (std::size_t i = offset; i < key.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(key[i])))
        return -1;
    long v = std::stol(key.substr(offset));
    return (v >= 1 && v <= p.generator_count()) ? static_cast<int>(v - 1) : -1;
  };
  for (std::size_t offset : {std::size_t{0}, std::size_t{1}, std::size_t{3}}) {
    if (offset == 1 && key.rfind("g", 0) != 0)
      continue;
    if (offset == 3 && key.rfind("arc", 0) != 0)
      continue;
    int idx = numeric(offset);
    if (idx >= 0)
      return idx;
  }
  throw Error("UnknownGenerator", "unknown generator '" + key + "'");
}

Json coloring_to_json(const PermRep &r)
{
  Json images = Json::object();
  for (int i = 0; i < r.presentation->generator_count(); ++i)
    images[r.presentation->generator_names[i]] = r.images[i].to_cycle_string();
  return Json{{"degree", r.degree}, {"images", images}};
}

PermRep coloring_from_json(const Json &j, std::shared_ptr<const Presentation> p)
{
  try {
    const int n = j.at("degree").get<int>();
    if (n <= 0)
      throw Error("DegreeZero", "coloring degree must be positive");
    std::vector<std::optional<Perm>> images(p->generator_count());
    for (const auto &[key, value] : j.at("images").items()) {
      int idx = resolve_generator(*p, key);
      if (images[idx])
        throw Error("ParseError", "generator '" + key + "' assigned twice");
      images[idx] = Perm::parse_cycles(value.get<std::string>(), n);
    }
    std::vector<Perm> ordered;
    for (int i = 0; i < p->generator_count(); ++i) {
      if (!images[i])
        throw Error("MissingImage", "no image for generator '" + p->generator_names[i] + "'");
      ordered.push_back(*images[i]);
    }
    return check_coloring(std::move(p), std::move(ordered), n);
  } catch (const Json::exception &e) {
    throw Error("ParseError", std::string("coloring JSON: ") + e.what());
  }
}

Json table_to_json(const CompositionTable &t)
{
  Json labels = Json::object();
  for (const auto &[label, d] : t.labels()) {
    Json e{{"n", d.n}, {"m", d.m}, {"source", d.source}, {"target", d.target}};
    if (!d.transpose.empty())
      e["transpose"] = d.transpose;
    if (d.unit)
      e["unit"] = true;
    if (!d.parts.empty())
      e["parts"] = d.parts;
    labels[label] = e;
  }
  Json compose = Json::object();
  for (const auto &[key, comps] : t.entries())
    compose[key.first + "|" + key.second] = comps;
  return Json{{"labels", labels}, {"compose", compose}};
}

namespace {

std::pair<std::string, std::string> split_pair(const std::string &key)
{
  auto bar = key.find('|');
  if (bar == std::string::npos || key.find('|', bar + 1) != std::string::npos)
    throw Error("ParseError", "expected 'A|B' key, got '" + key + "'");
  return {key.substr(0, bar), key.substr(bar + 1)};
}

} // namespace

CompositionTable table_from_json(const Json &j)
{
  try {
    std::map<std::string, LabelData> labels;
    for (const auto &[label, e] : j.at("labels").items()) {
      LabelData d;
      d.n = e.at("n").get<int>();
      d.m = e.at("m").get<int>();
      d.source = e.value("source", std::string{});
      d.target = e.value("target", std::string{});
      d.transpose = e.value("transpose", std::string{});
      d.unit = e.value("unit", false);
      if (e.contains("parts"))
        d.parts = e.at("parts").get<std::vector<std::string>>();
      labels[label] = d;
    }
    CompositionTable::Entries entries;
    if (j.contains("compose"))
      for (const auto &[key, comps] : j.at("compose").items())
        entries[split_pair(key)] = comps.get<std::vector<std::string>>();
    return CompositionTable(std::move(labels), std::move(entries));
  } catch (const Json::exception &e) {
    throw Error("ParseError", std::string("table JSON: ") + e.what());
  }
}

Json element_to_json(const AlgebraElement &f)
{
  Json out = Json::object();
  for (const auto &[label, c] : f.coefficients)
    out[label] = Json::array({round12(c.real()), round12(c.imag())});
  return out;
}

AlgebraElement element_from_json(const Json &j)
{
  AlgebraElement f;
  const Json &src = j.contains("coefficients") ? j.at("coefficients") : j;
  for (const auto &[label, v] : src.items()) {
    if (v.is_number())
      f.add(label, v.get<double>());
    else if (v.is_array() && v.size() == 2)
      f.add(label, Complex(v[0].get<double>(), v[1].get<double>()));
    else
      throw Error("ParseError", "coefficient of '" + label + "' must be a number or [re, im]");
  }
  return f;
}

Json operator_to_json(const OperatorMatrix &op)
{
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c)
      row.push_back(Json::array({round12(op.matrix(r, c).real()), round12(op.matrix(r, c).imag())}));
    rows.push_back(row);
  }
  return Json{{"basis", op.basis}, {"matrix", rows}};
}

std::vector<std::pair<std::string, std::string>> declaration_from_json(const Json &j)
{
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto &p : j.at("equiv")) {
    if (!p.is_array() || p.size() != 2)
      throw Error("ParseError", "equivalence entries must be [a, b] pairs");
    pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return pairs;
}

CellTable cells_from_json(const Json &j, std::optional<CompositionTable> table)
{
  try {
    std::map<std::string, TwoCell> cells;
    for (const auto &[label, e] : j.at("cells").items()) {
      TwoCell w;
      w.label = label;
      w.source = e.at("src").get<std::string>();
      w.target = e.at("tgt").get<std::string>();
      w.degree = e.value("deg", 1);
      if (e.contains("inv"))
        w.invariants = e.at("inv").get<std::map<std::string, double>>();
      w.dagger = e.value("dagger", std::string{});
      cells[label] = w;
    }
    auto products = [&](const char *key) {
      CellTable::Products out;
      if (j.contains(key))
        for (const auto &[k, v] : j.at(key).items())
          out[split_pair(k)] = v.get<std::string>();
      return out;
    };
    BoundaryInvariantTable boundary;
    if (j.contains("boundary"))
      boundary.values = j.at("boundary").get<std::map<std::string, std::map<std::string, double>>>();
    return CellTable(std::move(cells), products("vertical"), products("horizontal"), std::move(boundary),
                     std::move(table));
  } catch (const Json::exception &e) {
    throw Error("ParseError", std::string("cell table JSON: ") + e.what());
  }
}

Json cell_to_json(const TwoCell &w)
{
  Json inv = Json::object();
  for (const auto &[k, v] : w.invariants)
    inv[k] = round12(v);
  Json out{{"label", w.label}, {"src", w.source}, {"tgt", w.target}, {"deg", w.degree}, {"inv", inv}};
  if (!w.dagger.empty())
    out["dagger"] = w.dagger;
  return out;
}

MultiplicityOracle oracle_from_json(const Json &j)
{
  MultiplicityOracle o;
  for (const auto &[key, v] : j.at("N").items())
    o.counts[std::stoi(key)] = v.get<double>();
  return o;
}

std::shared_ptr<const Presentation> locus_from_json(const Json &j)
{
  if (j.contains("pd"))
    return std::make_shared<const Presentation>(
      wirtinger(parse_pd(j.at("pd").get<std::string>(), j.value("unknot_components", 0))));
  return std::make_shared<const Presentation>(presentation_from_json(j));
}

Session session_from_json(const Json &j)
{
  Session s;
  if (j.contains("loci"))
    for (const auto &[name, spec] : j.at("loci").items())
      s.loci[name] = locus_from_json(spec);

  auto side_from = [&](const Json &e) {
    const std::string locus = e.at("locus").get<std::string>();
    auto it = s.loci.find(locus);
    if (it == s.loci.end())
      throw Error("UnknownLabel", "unknown locus '" + locus + "'");
    auto rep = coloring_from_json(e.at("coloring"), it->second);
    std::vector<std::string> marked = e.value("marked", it->second->components());
    return CoveringSide::from_rep(std::move(rep), locus, e.value("graph", locus), std::move(marked));
  };

  if (j.contains("correspondences"))
    for (const auto &[label, e] : j.at("correspondences").items()) {
      if (e.contains("cyclic")) {
        s.store.add(cyclic_cover(e.at("cyclic").get<int>(), label));
      } else if (e.value("diagonal", false)) {
        auto side = side_from(e.at("side"));
        s.store.add(make_diagonal(*side.rep, side.locus, side.graph, label));
      } else {
        s.store.add(make_correspondence(side_from(e.at("left")), side_from(e.at("right")), label));
      }
    }
  if (j.contains("units"))
    for (const auto &g : j.at("units"))
      s.store.add(unit(g.get<std::string>()));
  return s;
}

EmittedTable emit_table(const Session &session, const std::vector<std::pair<std::string, std::string>> &pairs)
{
  EmittedTable out;
  std::map<std::string, LabelData> labels;
  std::map<std::string, std::string> unit_of_graph;

  auto describe = [](const Correspondence &c) {
    LabelData d;
    d.n = c.n();
    d.m = c.m();
    d.source = c.source_graph;
    d.target = c.target_graph;
    d.unit = c.unit || (c.diagonal && c.n() == 1 && c.m() == 1);
    if (c.diagonal)
      d.transpose = c.label;
    return d;
  };

  for (const auto &[label, c] : session.store.items()) {
    LabelData d = describe(c);
    if (!c.diagonal) {
      auto t = transpose(c).label;
      if (session.store.contains(t))
        d.transpose = t;
    }
    if (d.unit && !unit_of_graph.emplace(d.source, label).second)
      throw Error("DuplicateUnit", "graph '" + d.source + "' has two units: " + unit_of_graph[d.source] + ", " + label);
    labels[label] = d;
  }

  std::vector<std::pair<std::string, std::string>> todo = pairs;
  if (todo.empty())
    for (const auto &[a, da] : labels)
      for (const auto &[b, db] : labels)
        if (da.target == db.source && !da.unit && !db.unit)
          todo.emplace_back(a, b);

  // Diagonal labels a component may be identified with: stored ones first,
  // then components registered earlier in this run.
  std::vector<const Correspondence *> known;
  for (const auto &[label, c] : session.store.items())
    if (c.diagonal && c.left.rep && !labels.at(label).unit)
      known.push_back(&c);
  std::vector<std::unique_ptr<Correspondence>> fresh;

  auto identify = [&](const Correspondence &corr) -> std::string {
    if (corr.diagonal && corr.left.rep)
      for (const auto *x : known)
        if (x->left.locus == corr.left.locus && x->source_graph == corr.source_graph && x->n() == corr.n() &&
            conjugate(*x->left.rep, *corr.left.rep))
          return x->label;
    std::string label = corr.label;
    if (labels.count(label))
      throw Error("DuplicateLabel", "component label '" + label + "' is already taken");
    LabelData d = describe(corr);
    d.unit = false;
    labels[label] = d;
    out.registered.push_back(label);
    fresh.push_back(std::make_unique<Correspondence>(corr));
    if (corr.diagonal && corr.left.rep)
      known.push_back(fresh.back().get());
    return label;
  };

  CompositionTable::Entries entries;
  for (const auto &[a, b] : todo) {
    if (!labels.count(a) || !labels.count(b))
      throw Error("UnknownLabel", "pair " + a + "|" + b + " names a label outside the session");
    if (labels.at(a).unit || labels.at(b).unit)
      continue; // unit law, implicit in the table
    CompositeCorrespondence cc;
    try {
      cc = compose(session.store.get(a), session.store.get(b));
    } catch (const Error &e) {
      out.failed.emplace_back(a, b);
      out.flags.push_back(a + "|" + b + ": " + e.code() + ": " + e.what());
      continue;
    }
    for (const auto &f : cc.flags)
      out.flags.push_back(a + "|" + b + ": " + f);

    std::vector<std::string> comps;
    for (const auto &comp : cc.components)
      comps.push_back(identify(comp.correspondence));
    entries[{a, b}] = comps;
  }

  for (const auto &[a, da] : labels)
    for (const auto &[b, db] : labels)
      if (da.target == db.source && !da.unit && !db.unit && !entries.count({a, b}))
        out.missing.emplace_back(a, b);

  out.table = CompositionTable(std::move(labels), std::move(entries));
  return out;
}

Json read_json_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("IOError", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw Error("ParseError", "'" + path + "': " + e.what());
  }
}

std::string read_text_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("IOError", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace corrcalc
