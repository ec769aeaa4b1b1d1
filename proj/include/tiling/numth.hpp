#pragma once

// Elementary number theory: trial-division factorization, divisors,
// Moebius and Euler functions, prime powers and CRT recombination.
// All API values are bounded by 2^31; intermediates are 64-bit and checked.

#include <algorithm>
#include <compare>
#include <iterator>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tiling/errors.hpp"

namespace tiling {

inline constexpr std::int64_t kMaxApiInteger = std::int64_t{1} << 31;

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("64-bit multiplication overflow");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("64-bit addition overflow");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("64-bit subtraction overflow");
  return r;
}

inline void require_api_range(std::int64_t n, const char* what) {
  if (n < 1 || n > kMaxApiInteger)
    throw DomainError(std::string(what) + ": argument must lie in [1, 2^31], got " + std::to_string(n));
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m for gcd(a, m) = 1; 0 when m = 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  return mod_floor(old_s, m);
}

}  // namespace detail

struct PrimeFactor {
  std::int64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// n = product of prime^exponent, primes strictly increasing.
struct Factorization {
  std::int64_t n = 1;
  std::vector<PrimeFactor> factors;

  [[nodiscard]] std::size_t distinct_primes() const { return factors.size(); }

  [[nodiscard]] int exponent_of(std::int64_t p) const {
    for (const auto& f : factors)
      if (f.prime == p) return f.exponent;
    return 0;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline Factorization factorize(std::int64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  detail::require_api_range(n, "factorize");
  Factorization out;
  out.n = n;
  std::int64_t m = n;
  for (std::int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t p = 3; p * p <= n; p += 2)
    if (n % p == 0) return false;
  return true;
}

/// If n = p^a with a >= 1, returns p; otherwise 0.
inline std::int64_t prime_power_base(std::int64_t n) {
  if (n < 2) return 0;
  auto f = factorize(n);
  return f.factors.size() == 1 ? f.factors.front().prime : 0;
}

inline bool is_prime_power(std::int64_t n) { return prime_power_base(n) != 0; }

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  auto f = factorize(n);
  std::vector<std::int64_t> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t before = out.size();
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < before; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int mobius(std::int64_t n) {
  auto f = factorize(n);
  for (const auto& pf : f.factors)
    if (pf.exponent > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

inline std::int64_t euler_phi(std::int64_t n) {
  auto f = factorize(n);
  std::int64_t r = n;
  for (const auto& pf : f.factors) r = r / pf.prime * (pf.prime - 1);
  return r;
}

inline std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return detail::checked_mul(a / std::gcd(a, b), b);
}

/// Ascending, duplicate-free set of prime powers p^a >= 2. Houses S_A, the
/// local spectrum and both sides of a prime-power partition.
class PrimePowerSet {
 public:
  PrimePowerSet() = default;
  PrimePowerSet(std::initializer_list<std::int64_t> elems) : PrimePowerSet(std::vector<std::int64_t>(elems)) {}
  explicit PrimePowerSet(std::vector<std::int64_t> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    for (auto e : elems_)
      if (!is_prime_power(e)) throw DomainError("PrimePowerSet: " + std::to_string(e) + " is not a prime power");
  }

  [[nodiscard]] const std::vector<std::int64_t>& elements() const { return elems_; }
  [[nodiscard]] std::size_t size() const { return elems_.size(); }
  [[nodiscard]] bool empty() const { return elems_.empty(); }
  [[nodiscard]] auto begin() const { return elems_.begin(); }
  [[nodiscard]] auto end() const { return elems_.end(); }
  [[nodiscard]] bool contains(std::int64_t s) const { return std::binary_search(elems_.begin(), elems_.end(), s); }

  [[nodiscard]] bool is_subset_of(const PrimePowerSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
  }

  [[nodiscard]] PrimePowerSet intersect(const PrimePowerSet& other) const {
    PrimePowerSet out;
    std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                          std::back_inserter(out.elems_));
    return out;
  }

  [[nodiscard]] PrimePowerSet minus(const PrimePowerSet& other) const {
    PrimePowerSet out;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(), other.elems_.end(),
                        std::back_inserter(out.elems_));
    return out;
  }

  /// lcm of the elements; 1 for the empty set.
  [[nodiscard]] std::int64_t lcm() const {
    std::int64_t l = 1;
    for (auto e : elems_) l = lcm_checked(l, e);
    return l;
  }

  /// Product of Phi_s(1) = p over s = p^a in the set: the cardinality T_1 prescribes.
  [[nodiscard]] std::int64_t phi_one_product() const {
    std::int64_t c = 1;
    for (auto e : elems_) c = detail::checked_mul(c, prime_power_base(e));
    return c;
  }

  /// Distinct primes, ascending.
  [[nodiscard]] std::vector<std::int64_t> primes() const {
    std::vector<std::int64_t> ps;
    for (auto e : elems_) ps.push_back(prime_power_base(e));
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
  }

  /// "2,4,8"
  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (auto s : elems_) {
      if (!out.empty()) out += ',';
      out += std::to_string(s);
    }
    return out;
  }

  friend bool operator==(const PrimePowerSet&, const PrimePowerSet&) = default;
  friend auto operator<=>(const PrimePowerSet& a, const PrimePowerSet& b) { return a.elems_ <=> b.elems_; }

 private:
  std::vector<std::int64_t> elems_;
};

/// All p^a (a >= 1) dividing n.
inline PrimePowerSet prime_powers(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (const auto& [p, e] : factorize(n).factors) {
    std::int64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      out.push_back(pk);
    }
  }
  return PrimePowerSet(std::move(out));
}

/// Unique r in [0, prod moduli) with r = residues[i] (mod moduli[i]).
inline std::int64_t crt_combine(std::span<const std::int64_t> moduli, std::span<const std::int64_t> residues) {
  if (moduli.size() != residues.size()) throw DomainError("crt_combine: moduli and residues differ in length");
  std::int64_t modulus = 1;
  std::int64_t result = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::int64_t m = moduli[i];
    detail::require_api_range(m, "crt_combine");
    if (std::gcd(modulus, m) != 1) throw DomainError("crt_combine: moduli are not pairwise coprime");
    // Solve result + modulus * t = residues[i] (mod m).
    const std::int64_t target = detail::mod_floor(residues[i] - result, m);
    const std::int64_t t = detail::mod_floor(detail::checked_mul(target, detail::mod_inverse(modulus, m)), m);
    result = detail::checked_add(result, detail::checked_mul(modulus, t));
    modulus = detail::checked_mul(modulus, m);
    if (modulus > kMaxApiInteger) throw DomainError("crt_combine: product of moduli exceeds 2^31");
  }
  return result;
}

inline std::int64_t crt_combine(std::initializer_list<std::int64_t> moduli, std::initializer_list<std::int64_t> residues) {
  return crt_combine(std::span<const std::int64_t>(moduli.begin(), moduli.size()),
                     std::span<const std::int64_t>(residues.begin(), residues.size()));
}

}  // namespace tiling
