#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace corrcalc {

using BigInt = boost::multiprecision::cpp_int;

/// Number of partitions of n, by Euler's pentagonal recurrence (memoized).
BigInt partitions(int n);

int moebius(long long d);

/// Number of aperiodic necklaces of length a over b letters,
/// (1/a) Σ_{d|a} μ(d) b^{a/d}. Throws if the sum is not divisible by a.
BigInt necklace_Q(int a, long long b);

/// Rank of the rational homotopy group π_k(B_n) ⊗ Q.
BigInt rational_homotopy_dim(int k, int n);

/// Per-degree counts N_n. Multiplicity oracles need N_n ≥ 1; localized
/// counts may be zero.
struct MultiplicityOracle
{
  std::map<int, double> counts;

  double at(int n) const;
  void require_multiplicities(int n_max) const;
};

struct PartitionSum
{
  double value = 0;       // Σ_{n ≤ n_max} N_n n^{-β}
  double zeta_lower = 0;  // Σ_{n ≤ n_max} n^{-β}
};

PartitionSum partition_function(double beta, const MultiplicityOracle &oracle, int n_max);

double localized_zeta(double beta, int p, const MultiplicityOracle &localized_counts, int n_max);

struct GibbsBasisEntry
{
  std::string label;
  int n = 1;
};

/// Σ f(M) N_n n^{-β} / Σ N_n n^{-β} over the basis; N_n from the oracle, or 1
/// when the oracle has no entries.
double gibbs_functional(const std::map<std::string, double> &values, double beta,
                        const std::vector<GibbsBasisEntry> &basis, const MultiplicityOracle &oracle = {});

bool is_prime(long long p);

} // namespace corrcalc
