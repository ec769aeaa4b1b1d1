#pragma once

// Non-periodic tilings of Z_N, N = 30pq, by a 3x5 rectangle.
//
// Z_N is identified with Z_3p x Z_5q x Z_2 through the CRT. The rectangle
// {0,1,2} x {0,..,4} x {0} tiles each layer {c = 0} and {c = 1} with the
// lattice of block origins (3i, 5j). The lower layer has its first
// ceil(q/2) block-rows shifted sideways by sigma_j (mod 3 matters), the upper
// layer has one block-column shifted upward by tau in [1, 5). A period would
// have to fix the unique shifted column and respect a shift pattern that is
// neither constant nor invariant under any rotation of Z_q.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "tiling/errors.hpp"
#include "tiling/numth.hpp"
#include "tiling/residue_set.hpp"

namespace tiling {

inline constexpr std::int64_t kMaxLowerBoundModulus = 100000;

struct PerturbationSpec {
  std::int64_t p = 7;
  std::int64_t q = 11;
  std::int64_t column_index = 0;       // in [0, p)
  std::int64_t column_shift = 1;       // in [1, 5)
  std::vector<std::int64_t> row_shifts;  // ceil(q/2) entries, taken mod 3, not all 0
  friend bool operator==(const PerturbationSpec&, const PerturbationSpec&) = default;
};

namespace detail {

inline void check_lowerbound_primes(std::int64_t p, std::int64_t q) {
  for (auto r : {p, q})
    if (r <= 5 || !is_prime(r)) throw DomainError("lowerbound: p and q must be primes other than 2, 3, 5");
  if (p == q) throw DomainError("lowerbound: p and q must be distinct");
  if (30 * p * q > kMaxLowerBoundModulus) throw DomainError("lowerbound: 30pq exceeds " + std::to_string(kMaxLowerBoundModulus));
}

inline std::int64_t to_z(std::int64_t p, std::int64_t q, std::int64_t a, std::int64_t b, std::int64_t c) {
  return crt_combine({3 * p, 5 * q, 2}, {a, b, c});
}

}  // namespace detail

inline std::int64_t row_shift_count(std::int64_t q) { return (q + 1) / 2; }

inline void validate(const PerturbationSpec& s) {
  detail::check_lowerbound_primes(s.p, s.q);
  if (s.column_index < 0 || s.column_index >= s.p) throw DomainError("lowerbound: column_index must lie in [0, p)");
  if (s.column_shift < 1 || s.column_shift >= 5) throw DomainError("lowerbound: column_shift must lie in [1, 5)");
  if (static_cast<std::int64_t>(s.row_shifts.size()) != row_shift_count(s.q))
    throw DomainError("lowerbound: expected " + std::to_string(row_shift_count(s.q)) + " row shifts");
  bool any = false;
  for (auto r : s.row_shifts) any = any || detail::mod_floor(r, 3) != 0;
  if (!any) throw DomainError("lowerbound: at least one row shift must be nonzero mod 3");
}

/// {(i, j, 0) : i < 3, j < 5} in Z_30pq.
inline ResidueSet rectangle_tile(std::int64_t p, std::int64_t q) {
  detail::check_lowerbound_primes(p, q);
  ResidueSet a(30 * p * q);
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 5; ++j) a.insert(detail::to_z(p, q, i, j, 0));
  return a;
}

inline ResidueSet perturbed_complement(const PerturbationSpec& s) {
  validate(s);
  const std::int64_t p = s.p, q = s.q;
  ResidueSet b(30 * p * q);
  for (std::int64_t j = 0; j < q; ++j) {
    const std::int64_t sigma = j < row_shift_count(q) ? detail::mod_floor(s.row_shifts[static_cast<std::size_t>(j)], 3) : 0;
    for (std::int64_t i = 0; i < p; ++i) b.insert(detail::to_z(p, q, (3 * i + sigma) % (3 * p), 5 * j, 0));
  }
  for (std::int64_t i = 0; i < p; ++i) {
    const std::int64_t tau = i == s.column_index ? s.column_shift : 0;
    for (std::int64_t j = 0; j < q; ++j) b.insert(detail::to_z(p, q, 3 * i, (5 * j + tau) % (5 * q), 1));
  }
  return b;
}

/// Number of specs with row shifts in [0, 3); saturates at INT64_MAX.
inline std::int64_t admissible_spec_count(std::int64_t p, std::int64_t q) {
  detail::check_lowerbound_primes(p, q);
  std::int64_t rows = 1;
  for (std::int64_t i = 0; i < row_shift_count(q); ++i)
    if (__builtin_mul_overflow(rows, std::int64_t{3}, &rows)) return INT64_MAX;
  std::int64_t total = 0;
  if (__builtin_mul_overflow(rows - 1, 4 * p, &total)) return INT64_MAX;
  return total;
}

/// `count` distinct specs drawn from `seed`, with their complements.
inline std::vector<PerturbationSpec> sample_specs(std::int64_t p, std::int64_t q, std::int64_t count, std::uint64_t seed) {
  if (count < 1) throw DomainError("lowerbound: sample count must be positive");
  if (count > admissible_spec_count(p, q)) throw DomainError("lowerbound: sample count exceeds the number of admissible perturbations");
  std::mt19937_64 rng(seed);
  auto draw = [&rng](std::int64_t m) { return static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m)); };
  std::set<std::vector<std::int64_t>> seen;
  std::vector<PerturbationSpec> out;
  while (static_cast<std::int64_t>(out.size()) < count) {
    PerturbationSpec s{p, q, draw(p), 1 + draw(4), std::vector<std::int64_t>(static_cast<std::size_t>(row_shift_count(q)))};
    for (auto& r : s.row_shifts) r = draw(3);
    if (std::all_of(s.row_shifts.begin(), s.row_shifts.end(), [](std::int64_t r) { return r == 0; })) continue;
    std::vector<std::int64_t> key{s.column_index, s.column_shift};
    key.insert(key.end(), s.row_shifts.begin(), s.row_shifts.end());
    if (!seen.insert(key).second) continue;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<ResidueSet> sample_complements(std::int64_t p, std::int64_t q, std::int64_t count, std::uint64_t seed) {
  std::vector<ResidueSet> out;
  for (const auto& s : sample_specs(p, q, count, seed)) out.push_back(perturbed_complement(s));
  return out;
}

}  // namespace tiling
