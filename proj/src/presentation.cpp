#include "corrcalc/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "corrcalc/error.hpp"

namespace corrcalc {

namespace {

struct Occurrence
{
  int crossing;
  int position;
};

std::vector<std::array<int, 4>> tokenize_pd(std::string_view text)
{
  std::vector<std::array<int, 4>> crossings;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };

  while (true) {
    skip();
    if (i == text.size())
      break;
    if (text[i] != 'X')
      throw Error("ParseError", "malformed PD token at offset " + std::to_string(i));
    ++i;
    if (i == text.size() || (text[i] != '(' && text[i] != '['))
      throw Error("ParseError", "expected '(' after X at offset " + std::to_string(i));
    char close = text[i] == '(' ? ')' : ']';
    ++i;

    std::array<int, 4> labels{};
    for (int k = 0; k < 4; ++k) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      if (i == text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw Error("ParseError", "expected arc index in PD token");
      long value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > 10000000)
          throw Error("ParseError", "arc index too large");
        ++i;
      }
      labels[k] = static_cast<int>(value);
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      if (k < 3) {
        if (i == text.size() || text[i] != ',')
          throw Error("ParseError", "expected ',' between arc indices");
        ++i;
      }
    }
    if (i == text.size() || text[i] != close)
      throw Error("ParseError", "PD token must have exactly four entries");
    ++i;
    crossings.push_back(labels);
  }
  return crossings;
}

} // namespace

std::optional<int> Presentation::generator_index(std::string_view name) const
{
  for (std::size_t i = 0; i < generator_names.size(); ++i)
    if (generator_names[i] == name)
      return static_cast<int>(i);
  return std::nullopt;
}

std::vector<std::string> Presentation::components() const
{
  std::vector<std::string> out;
  for (const auto &c : component_of_generator)
    if (std::find(out.begin(), out.end(), c) == out.end())
      out.push_back(c);
  return out;
}

Diagram parse_pd(std::string_view text, int unknot_components)
{
  Diagram d;
  d.crossings = tokenize_pd(text);

  if (d.crossings.empty()) {
    if (unknot_components <= 0)
      throw Error("ParseError", "empty PD code; declare crossingless components explicitly");
    d.arc_count = unknot_components;
    for (int k = 1; k <= unknot_components; ++k)
      d.component_of_arc.push_back("K" + std::to_string(k));
    return d;
  }

  int max_label = 0;
  for (const auto &x : d.crossings)
    for (int label : x) {
      if (label < 1)
        throw Error("ArcOutOfRange", "arc index " + std::to_string(label) + " out of range");
      max_label = std::max(max_label, label);
    }

  std::vector<std::vector<Occurrence>> occ(max_label + 1);
  for (int c = 0; c < static_cast<int>(d.crossings.size()); ++c) {
    std::set<int> local;
    for (int p = 0; p < 4; ++p) {
      int label = d.crossings[c][p];
      if (!local.insert(label).second)
        throw Error("InconsistentIncidence",
                    "arc " + std::to_string(label) + " occurs twice at crossing " + std::to_string(c + 1));
      occ[label].push_back({c, p});
    }
  }
  for (int label = 1; label <= max_label; ++label) {
    if (occ[label].empty())
      throw Error("ArcOutOfRange", "arc " + std::to_string(label) + " missing; labels must be 1.." +
                                       std::to_string(max_label));
    if (occ[label].size() != 2)
      throw Error("InconsistentIncidence", "arc " + std::to_string(label) + " appears " +
                                               std::to_string(occ[label].size()) + " times");
  }
  d.arc_count = max_label;
  d.component_of_arc.assign(max_label, "");

  // Walk each component. `incoming[c][p]` records whether the edge at that
  // slot enters the crossing; under-strand slots 0/2 fix the orientation.
  std::vector<std::array<int, 4>> incoming(d.crossings.size(), {-1, -1, -1, -1});
  int component = 0;

  auto walk = [&](Occurrence start) {
    std::string name = "K" + std::to_string(++component);
    Occurrence cur = start;
    do {
      auto &in_flag = incoming[cur.crossing][cur.position];
      if (in_flag == 0)
        throw Error("InconsistentOrientation", "strand orientation conflict at crossing " +
                                                   std::to_string(cur.crossing + 1));
      in_flag = 1;
      int out_pos = cur.position ^ 2;
      auto &out_flag = incoming[cur.crossing][out_pos];
      if (out_flag == 1)
        throw Error("InconsistentOrientation", "strand orientation conflict at crossing " +
                                                   std::to_string(cur.crossing + 1));
      out_flag = 0;
      int out_label = d.crossings[cur.crossing][out_pos];
      d.component_of_arc[out_label - 1] = name;
      const auto &pair = occ[out_label];
      cur = (pair[0].crossing == cur.crossing && pair[0].position == out_pos) ? pair[1] : pair[0];
    } while (cur.crossing != start.crossing || cur.position != start.position);
  };

  for (int pass = 0; pass < 2; ++pass) {
    for (int label = 1; label <= max_label; ++label) {
      if (!d.component_of_arc[label - 1].empty())
        continue;
      for (const auto &o : occ[label]) {
        bool under_in = o.position == 0;
        // first pass: only start where orientation is forced
        if (pass == 0 && !under_in)
          continue;
        if (incoming[o.crossing][o.position] != -1)
          continue;
        walk(o);
        break;
      }
    }
  }

  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    const auto &f = incoming[c];
    if (f[0] != 1 || f[2] != 0)
      throw Error("InconsistentOrientation",
                  "under-strand at crossing " + std::to_string(c + 1) + " is not oriented from slot 1 to slot 3");
    d.over_direction.push_back(f[3] == 1 ? 1 : -1);
  }
  return d;
}

Word invert(const Word &w)
{
  Word out(w.rbegin(), w.rend());
  for (int &x : out)
    x = -x;
  return out;
}

Word free_reduce(const Word &w)
{
  Word out;
  for (int x : w) {
    if (x == 0)
      throw Error("GeneratorOutOfRange", "generator index 0 is not valid");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Presentation wirtinger(const Diagram &d)
{
  Presentation p;
  for (int label = 1; label <= d.arc_count; ++label) {
    p.generator_names.push_back("arc" + std::to_string(label));
    p.component_of_generator.push_back(d.component_of_arc[label - 1]);
  }

  for (std::size_t c = 0; c < d.crossings.size(); ++c) {
    const auto &x = d.crossings[c];
    int in = x[0], out = x[2], over = x[1];
    int e = d.over_direction[c];
    // g_out = g_over^e g_in g_over^-e
    p.relators.push_back(free_reduce({e * over, in, -e * over, -out}));
  }
  // over-strand continuity: both over slots belong to one Wirtinger arc
  for (const auto &x : d.crossings)
    p.relators.push_back(free_reduce({x[1], -x[3]}));
  return p;
}

Presentation explicit_presentation(int generators, std::vector<Word> relators,
                                   std::vector<std::string> components)
{
  if (generators < 0)
    throw Error("GeneratorOutOfRange", "negative generator count");
  if (!components.empty() && static_cast<int>(components.size()) != generators)
    throw Error("ComponentMismatch", "component labels must cover every generator");

  Presentation p;
  for (int i = 1; i <= generators; ++i)
    p.generator_names.push_back("g" + std::to_string(i));
  p.component_of_generator =
    components.empty() ? std::vector<std::string>(generators, "K1") : std::move(components);

  for (std::size_t r = 0; r < relators.size(); ++r) {
    for (int x : relators[r])
      if (x == 0 || std::abs(x) > generators)
        throw Error("GeneratorOutOfRange", "relator " + std::to_string(r + 1) + " uses generator " +
                                               std::to_string(x) + " outside 1.." + std::to_string(generators));
    p.relators.push_back(free_reduce(relators[r]));
  }
  return p;
}

} // namespace corrcalc
