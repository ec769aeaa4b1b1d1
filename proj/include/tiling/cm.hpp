#pragma once

// Coven-Meyerowitz conditions T1/T2 for finite sets of integers, and the
// local variants T1^N/T2^N relative to a cyclic group Z_N.
//
// Decision procedure, for A with diameter D:
//   1. find S_A, the prime powers s with Phi_s | A(X) (only phi(s) <= D can),
//   2. T1: |A| = prod over s = p^a in S_A of p,
//   3. with N_i powers of the i-th prime in S_A, if prod (N_i + 1) - 1 > D
//      then T2 fails, since each selection yields a distinct cyclotomic
//      divisor of a degree-D polynomial,
//   4. otherwise test Phi_{s_1...s_m} | A(X) for every selection of at most
//      one power per prime with m >= 2.
// T1 and T2 together imply tiling; T1 is necessary; T2 is necessary when
// |A| has at most two distinct prime factors. With three or more the answer
// for T1 and not T2 is left open.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tiling/cyclo.hpp"
#include "tiling/errors.hpp"
#include "tiling/numth.hpp"
#include "tiling/poly.hpp"
#include "tiling/residue_set.hpp"

namespace tiling {

enum class Verdict { Tiles, DoesNotTile, UnknownConjectural };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Tiles: return "Tiles";
    case Verdict::DoesNotTile: return "DoesNotTile";
    case Verdict::UnknownConjectural: return "UnknownConjectural";
  }
  return "?";
}

struct PrimeCount {
  std::int64_t prime = 0;
  int count = 0;
  friend bool operator==(const PrimeCount&, const PrimeCount&) = default;
};

struct CmReport {
  PrimePowerSet spectrum;
  std::vector<PrimeCount> prime_counts;
  std::int64_t diameter = 0;
  std::int64_t cardinality = 0;
  std::optional<std::int64_t> modulus;  // set for the local (Z_N) variant
  bool t1 = false;
  bool t2 = false;
  bool pruned = false;
  Verdict verdict = Verdict::DoesNotTile;

  friend bool operator==(const CmReport&, const CmReport&) = default;
};

namespace detail {

/// Phi_{p^a} divides c (deg c < p^a) iff, for every r < p^{a-1}, the p
/// coefficients at r, r + p^{a-1}, ..., r + (p-1) p^{a-1} coincide.
inline bool prime_power_cyclotomic_divides(std::int64_t s, const IntPoly& f) {
  const std::int64_t p = prime_power_base(s);
  const IntPoly c = reduce_cyclic(f, s);
  const std::int64_t stride = s / p;
  for (std::int64_t r = 0; r < stride; ++r) {
    const auto first = c[static_cast<std::size_t>(r)];
    for (std::int64_t j = 1; j < p; ++j)
      if (c[static_cast<std::size_t>(r + j * stride)] != first) return false;
  }
  return true;
}

/// Sorted, deduplicated, translated so the minimum is 0.
inline std::vector<std::int64_t> normalize_integer_set(std::span<const std::int64_t> a) {
  if (a.empty()) throw DomainError("Coven-Meyerowitz check: empty set");
  std::vector<std::int64_t> v(a.begin(), a.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  const auto lo = v.front();
  for (auto& x : v) x = checked_sub(x, lo);
  if (v.back() > kMaxApiInteger) throw DomainError("Coven-Meyerowitz check: diameter exceeds 2^31");
  return v;
}

inline std::vector<PrimeCount> count_primes(const PrimePowerSet& spectrum) {
  std::map<std::int64_t, int> counts;
  for (auto s : spectrum) ++counts[prime_power_base(s)];
  std::vector<PrimeCount> out;
  for (const auto& [p, c] : counts) out.push_back({p, c});
  return out;
}

}  // namespace detail

/// S_A for a finite set of integers (translated internally to min 0).
inline PrimePowerSet spectrum(std::span<const std::int64_t> a) {
  const auto v = detail::normalize_integer_set(a);
  const std::int64_t diam = v.back();
  const IntPoly mask = IntPoly::mask(v);
  std::vector<std::int64_t> out;
  // phi(p^k) = p^{k-1}(p-1) <= D bounds every candidate.
  for (std::int64_t p = 2; p - 1 <= diam; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t s = p; euler_phi(s) <= diam; s *= p) {
      if (s > (std::int64_t{1} << 20)) break;
      if (detail::prime_power_cyclotomic_divides(s, mask)) out.push_back(s);
    }
  }
  return PrimePowerSet(std::move(out));
}

/// S_A^N: the prime powers dividing N whose cyclotomic divides A(X).
inline PrimePowerSet local_spectrum(std::span<const std::int64_t> a, std::int64_t n) {
  const auto v = detail::normalize_integer_set(a);
  const IntPoly mask = IntPoly::mask(v);
  std::vector<std::int64_t> out;
  for (auto s : prime_powers(n))
    if (detail::prime_power_cyclotomic_divides(s, mask)) out.push_back(s);
  return PrimePowerSet(std::move(out));
}

inline bool check_t1(std::int64_t cardinality, const PrimePowerSet& spectrum) {
  return cardinality == spectrum.phi_one_product();
}

inline bool check_t1(std::span<const std::int64_t> a, const PrimePowerSet& spectrum) {
  return check_t1(static_cast<std::int64_t>(detail::normalize_integer_set(a).size()), spectrum);
}

/// prod (N_i + 1) - 1 > D.
inline bool t2_prune(std::span<const int> prime_counts, std::int64_t diameter) {
  std::int64_t prod = 1;
  for (auto c : prime_counts) {
    if (c < 0) throw DomainError("t2_prune: negative count");
    if (__builtin_mul_overflow(prod, static_cast<std::int64_t>(c) + 1, &prod)) return true;
  }
  return prod - 1 > diameter;
}

namespace detail {

inline bool t2_prune(const std::vector<PrimeCount>& counts, std::int64_t diameter) {
  std::vector<int> c;
  for (const auto& pc : counts) c.push_back(pc.count);
  return tiling::t2_prune(c, diameter);
}

/// Every selection of at most one power per prime with m >= 2 must have
/// Phi_{product} | A(X). `divides(s)` performs the test.
template <typename DividesFn>
bool t2_selections_hold(const PrimePowerSet& spectrum, std::int64_t diameter, DividesFn&& divides) {
  std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
  for (auto s : spectrum) by_prime[prime_power_base(s)].push_back(s);
  std::vector<std::vector<std::int64_t>> per_prime;
  for (auto& [p, powers] : by_prime) per_prime.push_back(std::move(powers));
  // Odometer over choices; index 0 means "no power of this prime".
  std::vector<std::size_t> choice(per_prime.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < choice.size() && choice[i] == per_prime[i].size()) choice[i++] = 0;
    if (i == choice.size()) break;
    ++choice[i];
    int m = 0;
    std::int64_t prod = 1;
    for (std::size_t k = 0; k < choice.size(); ++k)
      if (choice[k] != 0) {
        ++m;
        prod = checked_mul(prod, per_prime[k][choice[k] - 1]);
      }
    if (m < 2) continue;
    if (euler_phi(prod) > diameter) return false;
    if (!divides(prod)) return false;
  }
  return true;
}

}  // namespace detail

/// T2 (or T2^N when restrict_to = N, in which case every spectrum element
/// must divide N and the test runs on the exact mod-N Fourier engine).
inline bool check_t2(std::span<const std::int64_t> a, const PrimePowerSet& spectrum,
                     std::optional<std::int64_t> restrict_to = std::nullopt) {
  const auto v = detail::normalize_integer_set(a);
  const std::int64_t diam = v.back();
  if (detail::t2_prune(detail::count_primes(spectrum), diam)) return false;
  if (restrict_to) {
    const std::int64_t n = *restrict_to;
    for (auto s : spectrum)
      if (n % s != 0) throw DomainError("check_t2: spectrum element " + std::to_string(s) + " does not divide N");
    const auto& engine = ModularFourier::for_modulus(n);
    std::vector<std::int64_t> residues;
    for (auto x : v) residues.push_back(x % n);
    std::sort(residues.begin(), residues.end());
    if (std::adjacent_find(residues.begin(), residues.end()) != residues.end())
      throw DomainError("check_t2: set is not injective modulo N");
    return detail::t2_selections_hold(spectrum, diam, [&](std::int64_t s) { return engine.vanishes(s, residues); });
  }
  const IntPoly mask = IntPoly::mask(v);
  return detail::t2_selections_hold(spectrum, diam, [&](std::int64_t s) {
    if (s > kMaxCyclotomicIndex) throw DomainError("check_t2: cyclotomic index beyond supported range");
    return cyclotomic_divides(s, mask);
  });
}

namespace detail {

inline CmReport assemble_report(const std::vector<std::int64_t>& v, PrimePowerSet spec) {
  CmReport r;
  r.cardinality = static_cast<std::int64_t>(v.size());
  r.diameter = v.back();
  r.spectrum = std::move(spec);
  r.prime_counts = count_primes(r.spectrum);
  r.t1 = check_t1(r.cardinality, r.spectrum);
  r.pruned = t2_prune(r.prime_counts, r.diameter);
  r.t2 = !r.pruned && check_t2(v, r.spectrum);
  const bool few_primes = factorize(r.cardinality).distinct_primes() <= 2;
  if (r.t1 && r.t2) r.verdict = Verdict::Tiles;
  else if (!r.t1) r.verdict = Verdict::DoesNotTile;
  else r.verdict = few_primes ? Verdict::DoesNotTile : Verdict::UnknownConjectural;
  return r;
}

}  // namespace detail

/// Does A tile the integers? Exact when |A| has at most two prime factors.
inline CmReport decide_tiles_Z(std::span<const std::int64_t> a) {
  const auto v = detail::normalize_integer_set(a);
  return detail::assemble_report(v, spectrum(v));
}

/// Does A tile Z_N? Same verdict logic with the local spectrum; a cardinality
/// not dividing N answers DoesNotTile outright.
inline CmReport decide_tiles_ZN(const ResidueSet& a) {
  if (a.empty()) throw DomainError("decide_tiles_ZN: empty set");
  const std::int64_t n = a.modulus();
  const auto elems = a.elements();
  // Representatives in [0, N): the diameter bound of the prune uses them as given.
  CmReport r;
  r.cardinality = static_cast<std::int64_t>(elems.size());
  r.diameter = elems.back();
  r.modulus = n;
  r.spectrum = local_spectrum(elems, n);
  r.prime_counts = detail::count_primes(r.spectrum);
  r.t1 = check_t1(r.cardinality, r.spectrum);
  r.pruned = detail::t2_prune(r.prime_counts, r.diameter);
  if (!r.pruned) {
    const auto& engine = ModularFourier::for_modulus(n);
    r.t2 = detail::t2_selections_hold(r.spectrum, r.diameter, [&](std::int64_t s) { return engine.vanishes(s, elems); });
  }
  const bool few_primes = factorize(r.cardinality).distinct_primes() <= 2;
  if (n % r.cardinality != 0 || !r.t1) r.verdict = Verdict::DoesNotTile;
  else if (r.t2) r.verdict = Verdict::Tiles;
  else r.verdict = few_primes ? Verdict::DoesNotTile : Verdict::UnknownConjectural;
  return r;
}

}  // namespace tiling
