#pragma once

#include <map>
#include <memory>
#include <string>

#include "json.hpp"

#include "corrcalc/algebra.hpp"
#include "corrcalc/bounds.hpp"
#include "corrcalc/cobordism.hpp"
#include "corrcalc/correspondence.hpp"

namespace corrcalc {

using Json = nlohmann::json;

/// Rounds to 12 significant digits so reports are byte-stable.
double round12(double x);
Json big_to_json(const BigInt &x);

Json presentation_to_json(const Presentation &p);
Presentation presentation_from_json(const Json &j);

/// Accepts a generator's own name, "g<i>", "arc<i>" or a bare 1-based index.
int resolve_generator(const Presentation &p, const std::string &key);

Json coloring_to_json(const PermRep &r);
PermRep coloring_from_json(const Json &j, std::shared_ptr<const Presentation> p);

Json table_to_json(const CompositionTable &t);
CompositionTable table_from_json(const Json &j);

Json element_to_json(const AlgebraElement &f);
AlgebraElement element_from_json(const Json &j);

Json operator_to_json(const OperatorMatrix &op);

std::vector<std::pair<std::string, std::string>> declaration_from_json(const Json &j);

CellTable cells_from_json(const Json &j, std::optional<CompositionTable> table = std::nullopt);
Json cell_to_json(const TwoCell &w);

MultiplicityOracle oracle_from_json(const Json &j);

/// Branch loci and correspondences named in one file:
/// {"loci": {name: {"pd": ..., "unknot_components": k} | presentation},
///  "correspondences": {label: {"cyclic": n} | {"left": side, "right": side, "diagonal": b}},
///  "units": [graph, ...]}
struct Session
{
  std::map<std::string, std::shared_ptr<const Presentation>> loci;
  CorrespondenceStore store;
};

Session session_from_json(const Json &j);
std::shared_ptr<const Presentation> locus_from_json(const Json &j);

struct EmittedTable
{
  CompositionTable table;
  std::vector<std::string> registered;                          // fresh component labels
  std::vector<std::pair<std::string, std::string>> missing;     // composable pairs without entries
  std::vector<std::pair<std::string, std::string>> failed;      // requested pairs that could not be composed
  std::vector<std::string> flags;
};

/// Composes the requested pairs (all composable stored pairs when empty) and
/// emits a table for the algebra layer. Each component is identified with a
/// diagonal correspondence over the same locus whose monodromy is conjugate to
/// it (a relabeling of sheets), stored or registered earlier; otherwise it is
/// registered under its composite label "A∘B#k".
EmittedTable emit_table(const Session &session, const std::vector<std::pair<std::string, std::string>> &pairs = {});

Json read_json_file(const std::string &path);
std::string read_text_file(const std::string &path);

} // namespace corrcalc
