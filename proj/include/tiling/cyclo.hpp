#pragma once

// Cyclotomic polynomials and the exact Fourier side of tiling.
//
// The zero set of the Fourier transform of 1_A on Z_N is a union of
// cyclotomic blocks block(d) = {k : N / gcd(k, N) = d}, and A's transform
// vanishes on block(d) exactly when Phi_d divides the mask A(X). A
// DivisorSignature records those d. Two exact routes compute it:
//
//  * divides_mask / signature_by_division: fold A(X) modulo X^d - 1 and
//    divide by Phi_d over the integers.
//  * ModularFourier: evaluate A(X) at every N-th root of unity in F_q for a
//    prime q = 1 (mod N) with q > N. If alpha = A(zeta_d) is nonzero then
//    |Norm(alpha)| <= |A|^phi(d) < q^phi(d), so alpha cannot lie in all
//    phi(d) primes above q; hence A(X) vanishes mod q on the whole of
//    block(d) iff Phi_d | A(X). No floating point is involved.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "tiling/errors.hpp"
#include "tiling/numth.hpp"
#include "tiling/poly.hpp"
#include "tiling/residue_set.hpp"

namespace tiling {

inline constexpr std::int64_t kMaxCyclotomicIndex = 100000;

namespace detail {

inline IntPoly compute_cyclotomic(std::int64_t n) {
  if (n == 1) return IntPoly{-1, 1};
  // Phi_n = prod_{d | n} (1 - X^{n/d})^{mu(d)}; multiply the mu = +1 factors,
  // then divide out the mu = -1 ones. Both are O(degree) for a binomial.
  std::vector<std::int64_t> c{1};
  std::vector<std::size_t> denominators;
  for (auto d : divisors(n)) {
    const int mu = mobius(d);
    const auto k = static_cast<std::size_t>(n / d);
    if (mu == -1) denominators.push_back(k);
    if (mu != 1) continue;
    std::vector<std::int64_t> next(c.size() + k, 0);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = checked_sub(i < c.size() ? c[i] : 0, i >= k && i - k < c.size() ? c[i - k] : 0);
    c = std::move(next);
  }
  for (auto k : denominators) {
    // q_i = c_i + q_{i-k}; the top k coefficients must then match -q_{i-k}.
    std::vector<std::int64_t> q(c.size() - k, 0);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = checked_add(c[i], i >= k ? q[i - k] : 0);
    for (std::size_t i = q.size(); i < c.size(); ++i)
      if (c[i] != -q[i - k]) throw ArithmeticError("cyclotomic: inexact binomial division");
    c = std::move(q);
  }
  IntPoly num(std::move(c));
  if (num.leading() != 1) throw ArithmeticError("cyclotomic: result is not monic");
  return num;
}

struct CyclotomicCache {
  std::shared_mutex mu;
  std::map<std::int64_t, std::unique_ptr<const IntPoly>> table;
};

inline CyclotomicCache& cyclotomic_cache() {
  static CyclotomicCache cache;
  return cache;
}

}  // namespace detail

/// Phi_n, memoized for the life of the process. Returned references stay valid.
inline const IntPoly& cyclotomic(std::int64_t n) {
  if (n < 1 || n > kMaxCyclotomicIndex) throw DomainError("cyclotomic: n must lie in [1, 10^5]");
  auto& cache = detail::cyclotomic_cache();
  {
    std::shared_lock lock(cache.mu);
    if (auto it = cache.table.find(n); it != cache.table.end()) return *it->second;
  }
  auto poly = std::make_unique<const IntPoly>(detail::compute_cyclotomic(n));
  std::unique_lock lock(cache.mu);
  auto [it, inserted] = cache.table.try_emplace(n, std::move(poly));
  return *it->second;
}

/// Phi_s(1): p when s = p^a, 1 when s has two or more prime factors.
inline std::int64_t phi_at_one(std::int64_t s) {
  if (s < 2) throw DomainError("phi_at_one: s must be at least 2");
  const auto p = prime_power_base(s);
  return p != 0 ? p : 1;
}

/// Does Phi_d divide the polynomial f? Exact; f is first folded modulo X^d - 1.
inline bool cyclotomic_divides(std::int64_t d, const IntPoly& f) {
  if (d < 1) throw DomainError("cyclotomic_divides: d must be positive");
  const IntPoly& phi = cyclotomic(d);
  return remainder_monic(reduce_cyclic(f, d), phi).is_zero();
}

/// The divisors d >= 2 of N for which Phi_d divides a mask.
class DivisorSignature {
 public:
  DivisorSignature() = default;
  DivisorSignature(std::int64_t modulus, std::vector<std::int64_t> members) : n_(modulus), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (auto d : members_)
      if (d < 2 || n_ % d != 0)
        throw DomainError("DivisorSignature: " + std::to_string(d) + " is not a divisor >= 2 of " + std::to_string(n_));
  }

  /// Every divisor of N except 1.
  static DivisorSignature all(std::int64_t modulus) {
    auto ds = divisors(modulus);
    ds.erase(ds.begin());
    return {modulus, std::move(ds)};
  }

  [[nodiscard]] std::int64_t modulus() const { return n_; }
  [[nodiscard]] const std::vector<std::int64_t>& members() const { return members_; }
  [[nodiscard]] bool contains(std::int64_t d) const { return std::binary_search(members_.begin(), members_.end(), d); }
  [[nodiscard]] std::size_t size() const { return members_.size(); }

  [[nodiscard]] PrimePowerSet prime_power_part() const {
    std::vector<std::int64_t> pp;
    for (auto d : members_)
      if (is_prime_power(d)) pp.push_back(d);
    return PrimePowerSet(std::move(pp));
  }

  /// divisors(N) \ {1} \ members.
  [[nodiscard]] DivisorSignature complement() const {
    std::vector<std::int64_t> out;
    for (auto d : divisors(n_))
      if (d != 1 && !contains(d)) out.push_back(d);
    return {n_, std::move(out)};
  }

  [[nodiscard]] DivisorSignature united(const DivisorSignature& other) const {
    if (n_ != other.n_) throw DomainError("DivisorSignature: mismatched moduli");
    std::vector<std::int64_t> out;
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(), std::back_inserter(out));
    return {n_, std::move(out)};
  }

  [[nodiscard]] bool is_subset_of(const DivisorSignature& other) const {
    return n_ == other.n_ && std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  friend bool operator==(const DivisorSignature&, const DivisorSignature&) = default;
  friend auto operator<=>(const DivisorSignature& a, const DivisorSignature& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.members_ <=> b.members_;
  }

  /// "{3,4,6,12}".
  [[nodiscard]] std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(members_[i]);
    }
    return out + "}";
  }

 private:
  std::int64_t n_ = 1;
  std::vector<std::int64_t> members_;
};

inline bool divides_mask(std::int64_t d, const ResidueSet& a) {
  if (d < 2) throw DomainError("divides_mask: d must be at least 2");
  return cyclotomic_divides(d, a.mask());
}

/// Signature through integer polynomial division, one divisor at a time.
inline DivisorSignature signature_by_division(const ResidueSet& a) {
  if (a.empty()) throw DomainError("signature: empty set");
  const IntPoly m = a.mask();
  std::vector<std::int64_t> members;
  for (auto d : divisors(a.modulus()))
    if (d >= 2 && cyclotomic_divides(d, m)) members.push_back(d);
  return {a.modulus(), std::move(members)};
}

/// Evaluates set masks at all N-th roots of unity of F_q, q prime,
/// q = 1 (mod N), q > N. Immutable after construction.
class ModularFourier {
 public:
  explicit ModularFourier(std::int64_t n) : n_(n) {
    if (n < 1 || n > kMaxCyclotomicIndex) throw DomainError("ModularFourier: modulus out of range");
    q_ = n + 1;
    while (!is_prime(q_) || q_ <= n) q_ += n;
    const std::int64_t g = primitive_root_of_unity();
    powers_.resize(static_cast<std::size_t>(n));
    std::int64_t x = 1;
    for (auto& p : powers_) {
      p = x;
      x = x * g % q_;
    }
    for (auto d : divisors(n)) {
      if (d == 1) continue;
      Block b{d, {}};
      for (std::int64_t u = 1; u < d; ++u)
        if (std::gcd(u, d) == 1) b.frequencies.push_back(n / d * u);
      blocks_.push_back(std::move(b));
    }
  }

  [[nodiscard]] std::int64_t modulus() const { return n_; }
  [[nodiscard]] std::int64_t prime() const { return q_; }
  /// g^e mod q for e >= 0, g the chosen primitive N-th root of unity.
  [[nodiscard]] std::int64_t root_power(std::int64_t e) const { return powers_[static_cast<std::size_t>(e % n_)]; }

  /// Does Phi_d divide the mask of the residues in elems? d must divide N.
  [[nodiscard]] bool vanishes(std::int64_t d, std::span<const std::int64_t> elems) const {
    return block_vanishes(block_for(d), elems);
  }

  [[nodiscard]] DivisorSignature signature(std::span<const std::int64_t> elems) const {
    if (elems.empty()) throw DomainError("signature: empty set");
    std::vector<std::int64_t> members;
    for (const auto& b : blocks_)
      if (block_vanishes(b, elems)) members.push_back(b.d);
    return {n_, std::move(members)};
  }

  /// Process-wide engine for modulus n.
  static const ModularFourier& for_modulus(std::int64_t n) {
    static std::shared_mutex mu;
    static std::map<std::int64_t, std::unique_ptr<const ModularFourier>> engines;
    {
      std::shared_lock lock(mu);
      if (auto it = engines.find(n); it != engines.end()) return *it->second;
    }
    auto engine = std::make_unique<const ModularFourier>(n);
    std::unique_lock lock(mu);
    auto [it, inserted] = engines.try_emplace(n, std::move(engine));
    return *it->second;
  }

 private:
  struct Block {
    std::int64_t d;
    std::vector<std::int64_t> frequencies;
  };

  [[nodiscard]] const Block& block_for(std::int64_t d) const {
    for (const auto& b : blocks_)
      if (b.d == d) return b;
    throw DomainError("ModularFourier: " + std::to_string(d) + " is not a divisor >= 2 of " + std::to_string(n_));
  }

  [[nodiscard]] bool block_vanishes(const Block& b, std::span<const std::int64_t> elems) const {
    for (auto k : b.frequencies) {
      std::int64_t s = 0;
      for (auto a : elems) s += powers_[static_cast<std::size_t>(k * a % n_)];
      if (s % q_ != 0) return false;
    }
    return true;
  }

  static std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
      if (e & 1) r = r * b % m;
      b = b * b % m;
      e >>= 1;
    }
    return r;
  }

  [[nodiscard]] std::int64_t primitive_root_of_unity() const {
    if (q_ == 2) return 1;
    const auto f = factorize(q_ - 1);
    for (std::int64_t r = 2; r < q_; ++r) {
      bool generator = true;
      for (const auto& pf : f.factors)
        if (pow_mod(r, (q_ - 1) / pf.prime, q_) == 1) {
          generator = false;
          break;
        }
      if (generator) return pow_mod(r, (q_ - 1) / n_, q_);
    }
    throw ArithmeticError("ModularFourier: no primitive root found");
  }

  std::int64_t n_;
  std::int64_t q_ = 0;
  std::vector<std::int64_t> powers_;
  std::vector<Block> blocks_;
};

/// { d | N, d >= 2 : Phi_d | A(X) }, via the modular Fourier engine.
inline DivisorSignature signature(const ResidueSet& a) {
  if (a.empty()) throw DomainError("signature: empty set");
  const auto elems = a.elements();
  return ModularFourier::for_modulus(a.modulus()).signature(elems);
}

}  // namespace tiling
