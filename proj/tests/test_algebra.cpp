#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "corrcalc/algebra.hpp"
#include "support.hpp"

using namespace corrcalc;
using support::error_code;

namespace {

// X: A → B with (n, m) = (2, 3) and its transpose; no products needed.
CompositionTable transpose_pair()
{
  std::map<std::string, LabelData> labels{
    {"X", {2, 3, "A", "B", "X∨", false, {}}},
    {"X∨", {3, 2, "B", "A", "X", false, {}}},
    {"U(A)", {1, 1, "A", "A", "U(A)", true, {}}},
  };
  return CompositionTable(labels, {});
}

bool diagonal_projection(const Eigen::MatrixXcd &p)
{
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      auto v = p(i, j);
      if (i != j && v != Complex{})
        return false;
      if (i == j && v != Complex{} && v != Complex{1})
        return false;
    }
  return (p * p - p).cwiseAbs().maxCoeff() == 0.0;
}

} // namespace

TEST_CASE("convolution of deltas")
{
  auto t = support::cyclic_divisor_table(6);
  auto f = convolve(AlgebraElement::delta("M(2)"), AlgebraElement::delta("M(3)"), t);
  CHECK(f.coefficients.size() == 1);
  CHECK(f("M(6)") == Complex{1});

  auto g = convolve(AlgebraElement::delta("M(2)"), AlgebraElement::delta("M(2)"), t);
  CHECK(g("M(2)") == Complex{2}); // two components, both M(2)

  auto p = support::path_table();
  auto zero = convolve(AlgebraElement::delta("P0:a"), AlgebraElement::delta("P0:a"), p.table);
  CHECK(zero.coefficients.empty());
  CHECK(convolve(AlgebraElement::delta("P0:a"), AlgebraElement::delta("P1:b"), p.table)("P0:ab") == Complex{1});
}

TEST_CASE("convolution is associative: triple-sum oracle")
{
  std::mt19937 rng(11);
  for (const auto &t : {support::cyclic_divisor_table(12), support::path_table().table}) {
    auto labels = support::labels_of(t);
    for (int trial = 0; trial < 30; ++trial) {
      auto f1 = support::random_element(labels, rng);
      auto f2 = support::random_element(labels, rng);
      auto f3 = support::random_element(labels, rng);
      auto left = convolve(convolve(f1, f2, t), f3, t);
      auto right = convolve(f1, convolve(f2, f3, t), t);
      auto oracle = support::triple_sum(f1, f2, f3, t);
      CHECK(max_difference(left, right) < 1e-12);
      CHECK(max_difference(left, oracle) < 1e-12);
    }
  }
}

TEST_CASE("involution")
{
  auto t = support::cyclic_divisor_table(12);
  auto labels = support::labels_of(t);
  std::mt19937 rng(3);
  auto a = AlgebraElement::delta("M(4)", Complex(1, 2));
  CHECK(involve(a, t)("M(4)") == Complex(1, -2));
  for (int trial = 0; trial < 30; ++trial) {
    auto f = support::random_element(labels, rng);
    auto g = support::random_element(labels, rng);
    CHECK(max_difference(involve(involve(f, t), t), f) == 0.0);
    CHECK(max_difference(involve(convolve(f, g, t), t), convolve(involve(g, t), involve(f, t), t)) < 1e-12);
  }
  auto x = transpose_pair();
  CHECK(involve(AlgebraElement::delta("X", Complex(0, 1)), x)("X∨") == Complex(0, -1));
  CHECK(error_code([] { involve(AlgebraElement::delta("P0:a"), support::path_table().table); }) ==
        "MissingTranspose");
}

TEST_CASE("time evolutions")
{
  auto x = transpose_pair();
  auto f = AlgebraElement::delta("X", Complex(0.5, -0.25));
  // n = 2, t = π / log 2 gives e^{iπ}
  auto e = evolve(f, std::numbers::pi / std::log(2.0), Evolution::Left, x);
  CHECK(std::abs(e("X") + f("X")) < 1e-12);

  auto t = support::cyclic_divisor_table(6);
  auto g = AlgebraElement::delta("M(3)", 2.0);
  CHECK(max_difference(evolve(g, 7.3, Evolution::Ratio, t), g) < 1e-15);

  std::mt19937 rng(5);
  auto labels = support::labels_of(x);
  for (double s : {0.1, 1.0, 10.0}) {
    auto h = support::random_element(labels, rng);
    // the involution exchanges the left and right evolutions
    CHECK(max_difference(evolve(involve(h, x), s, Evolution::Left, x),
                         involve(evolve(h, -s, Evolution::Right, x), x)) < 1e-12);
    // σ_t = σ^L_t σ^R_{-t}, and the two commute
    auto lr = evolve(evolve(h, s, Evolution::Left, x), -s, Evolution::Right, x);
    auto rl = evolve(evolve(h, -s, Evolution::Right, x), s, Evolution::Left, x);
    CHECK(max_difference(lr, rl) < 1e-12);
    CHECK(max_difference(lr, evolve(h, s, Evolution::Ratio, x)) < 1e-12);
  }
}

TEST_CASE("evolutions are automorphisms")
{
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> time(-10.0, 10.0);
  // products of labels up to 8 stay inside M(1)..M(64)
  const std::pair<CompositionTable, std::vector<std::string>> cases[] = {
    {support::path_table().table, support::labels_of(support::path_table().table)},
    {support::product_cyclic_table(64), support::cyclic_labels_upto(8)},
  };
  for (const auto &[t, labels] : cases) {
    CHECK(t.split_entries().empty());
    for (auto mode : {Evolution::Left, Evolution::Right, Evolution::Ratio})
      for (int trial = 0; trial < 20; ++trial) {
        auto f = support::random_element(labels, rng);
        auto g = support::random_element(labels, rng);
        double s = time(rng);
        CHECK(max_difference(evolve(convolve(f, g, t), s, mode, t),
                             convolve(evolve(f, s, mode, t), evolve(g, s, mode, t), t)) < 1e-9);
      }
  }
}

TEST_CASE("split composites break multiplicativity of σ^L")
{
  // M(2)∘M(2) = M(2) + M(2): each component has n = 2, not 4
  auto t = support::cyclic_divisor_table(12);
  CHECK_FALSE(t.split_entries().empty());
  auto d2 = AlgebraElement::delta("M(2)");
  const double s = 1.0;
  auto lhs = evolve(convolve(d2, d2, t), s, Evolution::Left, t);
  auto rhs = convolve(evolve(d2, s, Evolution::Left, t), evolve(d2, s, Evolution::Left, t), t);
  CHECK(std::abs(lhs("M(2)") - 2.0 * std::polar(1.0, std::log(2.0))) < 1e-12);
  CHECK(max_difference(lhs, rhs) > 0.1);
  // the ratio evolution is trivial on n = m and survives
  CHECK(max_difference(evolve(convolve(d2, d2, t), s, Evolution::Ratio, t), convolve(d2, d2, t)) == 0.0);
}

TEST_CASE("representation")
{
  auto t = support::cyclic_divisor_table(12);
  auto basis = support::labels_of(t);
  auto id = represent(AlgebraElement::delta("M(1)"), basis, t);
  CHECK(id.matrix.isIdentity());

  std::mt19937 rng(23);
  auto p = support::path_table();
  for (const auto &[table, b] : {std::pair{t, basis}, std::pair{p.table, p.basis}}) {
    auto labels = support::labels_of(table);
    for (int trial = 0; trial < 20; ++trial) {
      auto f = support::random_element(labels, rng);
      auto g = support::random_element(labels, rng);
      Eigen::MatrixXcd lhs = represent(convolve(f, g, table), b, table).matrix;
      Eigen::MatrixXcd rhs = represent(f, b, table).matrix * represent(g, b, table).matrix;
      CHECK(max_norm(lhs - rhs) < 1e-12);
    }
  }
  // ρ(δ_M) is A_M
  CHECK(represent(AlgebraElement::delta("P1:a"), p.basis, p.table).matrix ==
        annihilator("P1:a", p.basis, p.table).matrix);

  auto truncated = support::doubled_cyclic_table(4);
  CHECK(error_code([&] {
          represent(AlgebraElement::delta("M(3)"), support::labels_of(truncated), truncated);
        }) == "TruncationEscape");
  CHECK(error_code([&] { represent(AlgebraElement::delta("M(2)"), {"M(2)", "M(2)"}, t); }) == "BasisMismatch");
}

TEST_CASE("creation and annihilation operators")
{
  auto p = support::path_table();
  // ρ(δ_U(G)) projects onto the basis labels starting at G; the units sum to 1
  Eigen::MatrixXcd units = Eigen::MatrixXcd::Zero(p.basis.size(), p.basis.size());
  for (int g = 0; g <= 3; ++g) {
    auto u = annihilator("U(G" + std::to_string(g) + ")", p.basis, p.table).matrix;
    CHECK(u.isDiagonal());
    for (std::size_t i = 0; i < p.basis.size(); ++i)
      CHECK(u(i, i) == Complex(p.table.data(p.basis[i]).source == "G" + std::to_string(g) ? 1.0 : 0.0));
    units += u;
  }
  CHECK(units.isIdentity());

  std::mt19937 rng(29);
  std::normal_distribution<double> normal;
  for (const auto &[label, d] : p.table.labels()) {
    auto a = annihilator(label, p.basis, p.table).matrix;
    auto c = creator(label, p.basis, p.table).matrix;
    CHECK(c == a.adjoint());
    CHECK(diagonal_projection(c * a));
    CHECK(diagonal_projection(a * c));

    Eigen::VectorXcd xi(p.basis.size()), zeta(p.basis.size());
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      xi(i) = Complex(normal(rng), normal(rng));
      zeta(i) = Complex(normal(rng), normal(rng));
    }
    CHECK(std::abs(xi.dot(a * zeta) - (c * xi).dot(zeta)) < 1e-12);
  }

  auto t = support::cyclic_divisor_table(6);
  CHECK(error_code([&] { annihilator("M(2)", support::labels_of(t), t); }) == "DivisionViolation");
  CHECK_FALSE(t.division_violations().empty());
  CHECK(p.table.division_violations().empty());
}

TEST_CASE("Hamiltonians")
{
  auto t = support::cyclic_divisor_table(6);
  auto h = hamiltonian({"M(1)", "M(2)", "M(3)"}, Evolution::Left, t);
  CHECK(h.matrix.isDiagonal());
  CHECK(std::abs(h.matrix(0, 0)) == 0.0);
  CHECK(std::abs(h.matrix(1, 1) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(h.matrix(2, 2) - std::log(3.0)) < 1e-15);
  CHECK(hamiltonian({"M(1)"}, Evolution::Right, t).matrix.isZero());
}

TEST_CASE("diagonal exponential matches the matrix exponential")
{
  auto p = support::path_table();
  for (auto mode : {Evolution::Left, Evolution::Right, Evolution::Ratio}) {
    Eigen::MatrixXcd h = hamiltonian(p.basis, mode, p.table).matrix;
    for (double s : {0.1, 1.0, 10.0}) {
      Eigen::MatrixXcd arg = Complex(0, s) * h;
      Eigen::MatrixXcd expected = arg.exp();
      CHECK(max_norm(diagonal_exponential(h, s) - expected) < 1e-12);
    }
  }
}

TEST_CASE("evolutions are implemented by their Hamiltonians")
{
  auto t = support::cyclic_divisor_table(12);
  auto basis = support::labels_of(t);
  auto unit = conjugation_check(AlgebraElement::delta("M(1)"), 3.0, basis, t, Evolution::Left);
  CHECK(unit.residual < 1e-15);

  std::mt19937 rng(31);
  auto p = support::path_table();
  auto labels = support::labels_of(p.table);
  for (auto mode : {Evolution::Left, Evolution::Right, Evolution::Ratio})
    for (double s : {0.1, 1.0, 10.0}) {
      auto r = conjugation_check(support::random_element(labels, rng), s, p.basis, p.table, mode);
      CHECK(r.residual < 1e-9);
      CHECK(r.opposite_convention_reversed < 1e-9);
    }

  // the sign matters once n ≠ m
  CHECK(conjugation_check(AlgebraElement::delta("P0:a"), 1.0, p.basis, p.table, Evolution::Left).opposite_convention >
        0.1);

  // cyclic covers: the ratio evolution is trivial and conjugation holds; σ^L
  // does not, since M(2)∘M(2) splits into two copies of M(2)
  for (double s : {0.1, 1.0, 10.0}) {
    auto f = support::random_element(basis, rng);
    CHECK(conjugation_check(f, s, basis, t, Evolution::Ratio).residual < 1e-9);
  }
  CHECK(conjugation_check(AlgebraElement::delta("M(2)"), 1.0, basis, t, Evolution::Left).residual > 0.1);

  // σ^L_t(A_M) = n^{it} A_M
  for (const auto &[label, d] : p.table.labels()) {
    double s = 1.7;
    auto evolved = represent(evolve(AlgebraElement::delta(label), s, Evolution::Left, p.table), p.basis, p.table);
    Eigen::MatrixXcd expected = std::polar(1.0, s * std::log(double(d.n))) * annihilator(label, p.basis, p.table).matrix;
    CHECK(max_norm(evolved.matrix - expected) < 1e-12);
  }
}

TEST_CASE("bounded commutators with D")
{
  auto t = support::cyclic_divisor_table(12);
  auto basis = support::labels_of(t);
  CHECK(dirac_generator(basis, t).matrix.isZero());
  CHECK(commutator_norm(dirac_generator(basis, t), represent(AlgebraElement::delta("M(4)"), basis, t)) == 0.0);

  auto p = support::path_table();
  auto d = dirac_generator(p.basis, p.table);
  int checked = 0;
  for (const auto &[label, ld] : p.table.labels()) {
    auto a = annihilator(label, p.basis, p.table);
    if (a.matrix.isZero())
      continue;
    double expected = std::abs(std::log(double(ld.n) / ld.m));
    CHECK(std::abs(commutator_norm(d, a) - expected) < 1e-12);
    CHECK(std::abs(commutator_norm(d, creator(label, p.basis, p.table)) - expected) < 1e-12);
    ++checked;
  }
  CHECK(checked > 5);
}

TEST_CASE("multi-connected labels expand into their parts")
{
  std::map<std::string, LabelData> labels{
    {"A", {2, 2, "O", "O", "A", false, {}}},
    {"B", {3, 3, "O", "O", "B", false, {}}},
    {"A+B", {5, 5, "O", "O", "A+B", false, {"A", "B"}}},
  };
  CompositionTable t(labels, {});
  auto f = expand(AlgebraElement::delta("A+B", 2.0), t);
  CHECK(f("A") == Complex{2});
  CHECK(f("B") == Complex{2});
  CHECK(f("A+B") == Complex{});
}

TEST_CASE("table validation")
{
  auto base = [] {
    return std::map<std::string, LabelData>{
      {"U", {1, 1, "O", "O", "U", true, {}}},
      {"A", {2, 2, "O", "O", "A", false, {}}},
      {"B", {4, 4, "O", "O", "B", false, {}}},
      {"X", {2, 1, "O", "P", "", false, {}}},
    };
  };
  CHECK_NOTHROW(CompositionTable(base(), {{{"A", "A"}, {"B"}}}));
  CHECK(error_code([&] { CompositionTable(base(), {{{"A", "A"}, {"A"}}}); }) == "ProductRuleViolation");
  CHECK(error_code([&] { CompositionTable(base(), {{{"X", "A"}, {"X"}}}); }) == "CompositionMismatch");
  CHECK(error_code([&] { CompositionTable(base(), {{{"U", "A"}, {"B"}}}); }) != "");
  CHECK(error_code([&] { CompositionTable(base(), {{{"A", "A"}, {}}}); }) == "EmptyEntry");

  auto dup = base();
  dup["V"] = {1, 1, "O", "O", "V", true, {}};
  CHECK(error_code([&] { CompositionTable(dup, {}); }) == "DuplicateUnit");

  auto bad_t = base();
  bad_t["X"].transpose = "A";
  CHECK(error_code([&] { CompositionTable(bad_t, {}); }) == "TransposeIncompatible");
  auto missing_t = base();
  missing_t["X"].transpose = "Y";
  CHECK(error_code([&] { CompositionTable(missing_t, {}); }) == "MissingTranspose");

  // (A∘A)∘B must equal A∘(A∘B)
  auto four = base();
  four["C"] = {8, 8, "O", "O", "C", false, {}};
  four["D"] = {16, 16, "O", "O", "D", false, {}};
  four["E"] = {16, 16, "O", "O", "E", false, {}};
  CompositionTable::Entries entries{
    {{"A", "A"}, {"B"}}, {{"A", "B"}, {"C"}}, {{"B", "B"}, {"D"}}, {{"C", "A"}, {"D"}}, {{"B", "A"}, {"C"}},
    {{"A", "C"}, {"E"}},
  };
  CHECK(error_code([&] { CompositionTable(four, entries); }) == "NonAssociative");

  CompositionTable t(base(), {});
  CHECK(error_code([&] { t.product("A", "A"); }) == "TruncationEscape");
  CHECK_FALSE(t.product("X", "A").has_value());
  CHECK(t.product("U", "A") == std::vector<std::string>{"A"});
}
