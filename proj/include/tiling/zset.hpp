#pragma once

// Translation normal form, periods and the two tiling checks on Z_N:
// direct convolution (every x = a + b exactly once) and signature coverage
// (|A||B| = N and the zero sets cover every block except d = 1).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "tiling/cyclo.hpp"
#include "tiling/errors.hpp"
#include "tiling/numth.hpp"
#include "tiling/residue_set.hpp"

namespace tiling {

/// Lexicographically least translate A - a (a in A); always contains 0.
///
/// With gaps g_i = e_{i+1} - e_i taken cyclically, A - e_i lists the partial
/// sums of the gap sequence rotated to start at i, so the least translate
/// comes from the least rotation of the gap sequence.
inline ResidueSet canonical_translate(const ResidueSet& a) {
  if (a.empty()) throw DomainError("canonical_translate: empty set");
  const auto e = a.elements();
  const std::size_t k = e.size();
  const std::int64_t n = a.modulus();
  std::vector<std::int64_t> gaps(k);
  for (std::size_t i = 0; i < k; ++i) gaps[i] = (i + 1 < k ? e[i + 1] : e[0] + n) - e[i];
  std::size_t best = 0;
  for (std::size_t cand = 1; cand < k; ++cand) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto x = gaps[(cand + j) % k];
      const auto y = gaps[(best + j) % k];
      if (x != y) {
        if (x < y) best = cand;
        break;
      }
    }
  }
  return a.translate(-e[best]);
}

/// A + g == A?
inline bool has_period(const ResidueSet& a, std::int64_t g) {
  const std::int64_t n = a.modulus();
  for (auto x : a.elements())
    if (!a.contains((x + g) % n)) return false;
  return true;
}

/// Smallest g | N with A + g = A; N means only the trivial period.
inline std::int64_t least_period(const ResidueSet& a) {
  const std::int64_t n = a.modulus();
  const std::int64_t size = a.size();
  for (auto g : divisors(n)) {
    if (g == n) break;
    if (size % (n / g) != 0) continue;
    if (has_period(a, g)) return g;
  }
  return n;
}

inline bool is_nonperiodic(const ResidueSet& a) { return least_period(a) == a.modulus(); }

/// If the signature alone forces a proper period, the largest such proper
/// divisor a of N; otherwise nullopt.
///
/// A set is a-periodic (N = ab) iff its transform vanishes off the multiples
/// of b; on blocks that reads Phi_d | A for every d | N with d not dividing a.
/// Those d are exactly the ones with v_p(d) = v_p(N) when a = N/p, and a
/// period a forces the period of every multiple of a, so only a = N/p needs
/// checking.
inline std::optional<std::int64_t> forced_period(const DivisorSignature& sig) {
  const std::int64_t n = sig.modulus();
  std::optional<std::int64_t> best;
  for (const auto& [p, e] : factorize(n).factors) {
    const std::int64_t a = n / p;
    bool all = true;
    for (auto d : divisors(n))
      if (a % d != 0 && !sig.contains(d)) {
        all = false;
        break;
      }
    if (all && (!best || a > *best)) best = a;
  }
  return best;
}

inline bool is_periodic_by_signature(const DivisorSignature& sig) { return forced_period(sig).has_value(); }

/// Every x in Z_N is a + b for exactly one pair? Marks A + B with collision
/// detection in O(|A| |B|).
inline bool verify_tiling(const ResidueSet& a, const ResidueSet& b) {
  if (a.modulus() != b.modulus()) throw DomainError("verify_tiling: mismatched moduli");
  const std::int64_t n = a.modulus();
  const auto ea = a.elements();
  const auto eb = b.elements();
  if (static_cast<std::int64_t>(ea.size()) * static_cast<std::int64_t>(eb.size()) != n) return false;
  std::vector<char> hit(static_cast<std::size_t>(n), 0);
  for (auto x : ea)
    for (auto y : eb) {
      auto& h = hit[static_cast<std::size_t>((x + y) % n)];
      if (h) return false;
      h = 1;
    }
  return true;
}

/// |A||B| = N and the two zero sets cover every block but d = 1.
inline bool signatures_cover(const DivisorSignature& sig_a, const DivisorSignature& sig_b, std::int64_t card_a,
                             std::int64_t card_b) {
  if (sig_a.modulus() != sig_b.modulus()) throw DomainError("signatures_cover: mismatched moduli");
  if (card_a * card_b != sig_a.modulus()) return false;
  return sig_a.united(sig_b) == DivisorSignature::all(sig_a.modulus());
}

}  // namespace tiling
