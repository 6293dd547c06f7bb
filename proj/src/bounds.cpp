#include "corrcalc/bounds.hpp"

#include <cmath>
#include <mutex>

#include "corrcalc/error.hpp"

namespace corrcalc {

BigInt partitions(int n)
{
  if (n < 0)
    throw Error("InvalidArgument", "p(n) needs n >= 0");

  static std::mutex guard;
  static std::vector<BigInt> table{1};
  std::lock_guard lock(guard);

  for (int m = static_cast<int>(table.size()); m <= n; ++m) {
    BigInt sum = 0;
    for (int k = 1;; ++k) {
      int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m)
        break;
      BigInt term = table[m - g1];
      if (g2 <= m)
        term += table[m - g2];
      if (k % 2)
        sum += term;
      else
        sum -= term;
    }
    table.push_back(sum);
  }
  return table[n];
}

int moebius(long long d)
{
  if (d < 1)
    throw Error("InvalidArgument", "μ(d) needs d >= 1");
  int sign = 1;
  for (long long p = 2; p * p <= d; ++p) {
    if (d % p)
      continue;
    d /= p;
    if (d % p == 0)
      return 0;
    sign = -sign;
  }
  if (d > 1)
    sign = -sign;
  return sign;
}

BigInt necklace_Q(int a, long long b)
{
  if (a < 1 || b < 0)
    throw Error("InvalidArgument", "Q(a,b) needs a >= 1 and b >= 0");
  BigInt sum = 0;
  for (int d = 1; d <= a; ++d) {
    if (a % d)
      continue;
    int mu = moebius(d);
    if (mu == 0)
      continue;
    BigInt power = boost::multiprecision::pow(BigInt(b), static_cast<unsigned>(a / d));
    sum += mu * power;
  }
  if (sum % a != 0)
    throw Error("NonIntegral", "necklace sum not divisible by a");
  return sum / a;
}

BigInt rational_homotopy_dim(int k, int n)
{
  if (k < 1 || n < 1)
    throw Error("InvalidArgument", "dimension formula needs k >= 1 and n >= 1");
  const BigInt pn = partitions(n);
  if (k == 4)
    return pn;
  const long long b = static_cast<long long>(pn - 1);
  const int r = k % 12;
  if ((r == 1 || r == 4 || r == 10) && k != 1)
    return necklace_Q((k - 1) / 3, b);
  if (r == 7)
    return necklace_Q((k - 1) / 3, b) + necklace_Q((k - 1) / 6, b);
  return 0;
}

double MultiplicityOracle::at(int n) const
{
  auto it = counts.find(n);
  if (it == counts.end())
    throw Error("MissingOracleValue", "oracle has no value for n = " + std::to_string(n));
  return it->second;
}

void MultiplicityOracle::require_multiplicities(int n_max) const
{
  for (int n = 1; n <= n_max; ++n)
    if (at(n) < 1)
      throw Error("InvalidOracle", "multiplicity N_" + std::to_string(n) + " must be at least 1");
}

PartitionSum partition_function(double beta, const MultiplicityOracle &oracle, int n_max)
{
  if (n_max < 1)
    throw Error("InvalidArgument", "n_max must be at least 1");
  oracle.require_multiplicities(n_max);
  PartitionSum s;
  for (int n = 1; n <= n_max; ++n) {
    double w = std::exp(-beta * std::log(static_cast<double>(n)));
    s.value += oracle.at(n) * w;
    s.zeta_lower += w;
  }
  return s;
}

bool is_prime(long long p)
{
  if (p < 2)
    return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0)
      return false;
  return true;
}

double localized_zeta(double beta, int p, const MultiplicityOracle &localized_counts, int n_max)
{
  if (!is_prime(p))
    throw Error("InvalidArgument", std::to_string(p) + " is not prime");
  if (n_max < 1)
    throw Error("InvalidArgument", "n_max must be at least 1");
  double sum = 0;
  for (int n = 1; n <= n_max; ++n) {
    double count = localized_counts.at(n);
    if (count < 0)
      throw Error("InvalidOracle", "localized counts must be non-negative");
    sum += count * std::pow(static_cast<double>(n), -beta);
  }
  return sum;
}

double gibbs_functional(const std::map<std::string, double> &values, double beta,
                        const std::vector<GibbsBasisEntry> &basis, const MultiplicityOracle &oracle)
{
  if (basis.empty())
    throw Error("EmptyBasis", "Gibbs functional needs a non-empty basis");
  double num = 0, den = 0;
  for (const auto &e : basis) {
    auto it = values.find(e.label);
    if (it == values.end())
      throw Error("MissingValue", "no value for basis label '" + e.label + "'");
    double mult = oracle.counts.empty() ? 1.0 : oracle.at(e.n);
    double w = mult * std::pow(static_cast<double>(e.n), -beta);
    num += it->second * w;
    den += w;
  }
  return num / den;
}

} // namespace corrcalc
