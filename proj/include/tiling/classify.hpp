#pragma once

// Classification of the non-periodic tilings of Z_N.
//
// Every tiling A + B = Z_N splits the prime powers dividing N between the two
// factors (each Phi_s with s a prime power divides exactly one mask). For each
// such partition {H, Hc}:
//   1. discard it when the T2 closures already force a period on one side,
//      however the remaining divisors of N are shared out (a set is
//      a-periodic iff Phi_d divides it for every d | N not dividing a);
//   2. list every tile of the cheaper side by lifting the tiles of Z_L,
//      L = lcm(side), that tile with a universal complement;
//   3. group those tiles by divisor signature and drop periodic classes, and
//      classes whose complements are forced periodic;
//   4. run the fill-out search on one member per remaining class; its
//      non-periodic complements form the classes on the other side.
// Tiling depends only on signatures and cardinalities, so one representative
// per class suffices.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tiling/cyclo.hpp"
#include "tiling/errors.hpp"
#include "tiling/fillout.hpp"
#include "tiling/numth.hpp"
#include "tiling/residue_set.hpp"
#include "tiling/zset.hpp"

namespace tiling {

/// Unordered pair; `h` is the side holding the smallest prime power.
struct Partition {
  PrimePowerSet h;
  PrimePowerSet hc;

  Partition() = default;
  Partition(PrimePowerSet a, PrimePowerSet b) : h(std::move(a)), hc(std::move(b)) {
    if (h.empty() || (!hc.empty() && hc.elements().front() < h.elements().front())) std::swap(h, hc);
  }
  [[nodiscard]] bool has_side(const PrimePowerSet& s) const { return s == h || s == hc; }
  friend bool operator==(const Partition&, const Partition&) = default;
};

struct TileClass {
  DivisorSignature sig;
  std::int64_t cardinality = 0;
  std::vector<ResidueSet> members;  // canonical translates, sorted
  bool periodic = false;
  friend bool operator==(const TileClass&, const TileClass&) = default;
};

enum class PartitionStatus { DiscardedStep2, NoSurvivingClasses, Classified, SkippedExceptional };

inline const char* to_string(PartitionStatus s) {
  switch (s) {
    case PartitionStatus::DiscardedStep2: return "DiscardedStep2";
    case PartitionStatus::NoSurvivingClasses: return "NoSurvivingClasses";
    case PartitionStatus::Classified: return "Classified";
    case PartitionStatus::SkippedExceptional: return "SkippedExceptional";
  }
  return "?";
}

inline PartitionStatus partition_status_from_string(const std::string& s) {
  for (auto v : {PartitionStatus::DiscardedStep2, PartitionStatus::NoSurvivingClasses, PartitionStatus::Classified,
                 PartitionStatus::SkippedExceptional})
    if (s == to_string(v)) return v;
  throw ParseError("unknown partition status '" + s + "'");
}

/// Bookkeeping for the enumerated side; zero when nothing was enumerated.
struct PartitionStats {
  std::string enumerated_side;  // "H", "Hc" or empty
  std::int64_t base_tiles = 0;
  std::int64_t lifts = 0;
  std::int64_t classes = 0;  // non-periodic signature classes among the lifts
  std::int64_t discarded_step4 = 0;
  std::int64_t without_complement = 0;
  friend bool operator==(const PartitionStats&, const PartitionStats&) = default;
};

struct PartitionResult {
  Partition partition;
  PartitionStatus status = PartitionStatus::NoSurvivingClasses;
  std::vector<TileClass> a_classes;  // tiles whose prime-power part is partition.h
  std::vector<TileClass> b_classes;  // ... is partition.hc
  std::vector<std::vector<bool>> coverage;
  std::int64_t nonperiodic_pair_count = 0;
  std::string note;
  PartitionStats stats;
  friend bool operator==(const PartitionResult&, const PartitionResult&) = default;
};

struct ClassificationReport {
  std::int64_t n = 0;
  std::vector<PartitionResult> partitions;
  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

struct SkipEntry {
  PrimePowerSet side;
  std::string justification;
  friend bool operator==(const SkipEntry&, const SkipEntry&) = default;
};

struct ClassifyConfig {
  unsigned threads = 1;
  std::size_t memo_cap_bytes = std::size_t{1} << 31;
  std::optional<std::vector<SkipEntry>> skip_list;  // nullopt: built-in list for N
  bool force = false;                               // run N outside the supported range
  bool force_exceptional = false;                   // ignore the skip list
};

// ---------------------------------------------------------------- skip list

/// Built-in entries; only N = 144 has one.
inline std::vector<SkipEntry> default_skip_list(std::int64_t n) {
  if (n != 144) return {};
  return {{PrimePowerSet{2, 4, 8, 16},
           "no non-periodic tilings: by Sands' theorem one factor lies in 2Z_144 or 3Z_144; the part of the other "
           "factor in each coset then tiles a copy of Z_48 or Z_72 with a factor of cardinality 16 or 9, which "
           "forces period 48 or 72"}};
}

/// One entry per line, "H | justification"; blank lines and '#' comments skipped.
inline std::vector<SkipEntry> parse_skip_list(const std::string& text) {
  std::vector<SkipEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos) throw ParseError("skip list line " + std::to_string(lineno) + ": missing '|'");
    std::string lhs = line.substr(0, bar);
    std::string rhs = line.substr(bar + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(lhs);
    trim(rhs);
    std::vector<std::int64_t> side;
    try {
      side = parse_integer_list(lhs);
      out.push_back({PrimePowerSet(side), rhs});
    } catch (const std::exception& e) {
      throw ParseError("skip list line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------- steps 1-2

/// Empty when classify supports N; otherwise the reason it does not.
inline std::optional<std::string> unsupported_reason(std::int64_t n) {
  if (n < 2 || n > kMaxCyclotomicIndex)
    return "N must lie in [2, " + std::to_string(kMaxCyclotomicIndex) + "]";
  const auto f = factorize(n);
  if (f.distinct_primes() <= 2) return std::nullopt;
  if (f.distinct_primes() == 3 &&
      std::any_of(f.factors.begin(), f.factors.end(), [](const PrimeFactor& pf) { return pf.exponent == 1; }))
    return std::nullopt;
  return "tilings of Z_" + std::to_string(n) +
         " are not known to satisfy T2, so the search could miss tilings (supported: at most two distinct primes, "
         "or three with one of them to the first power)";
}

/// All 2^{|PP(N)|-1} unordered partitions; the smallest prime power is always in h.
inline std::vector<Partition> enumerate_partitions(std::int64_t n) {
  if (n < 2) throw DomainError("enumerate_partitions: N must be at least 2");
  const auto pp = prime_powers(n).elements();
  const std::size_t rest = pp.size() - 1;
  if (rest >= 31) throw DomainError("enumerate_partitions: too many prime powers");
  std::vector<Partition> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest); ++mask) {
    std::vector<std::int64_t> h{pp.front()}, hc;
    for (std::size_t i = 0; i < rest; ++i) ((mask >> i) & 1U ? h : hc).push_back(pp[i + 1]);
    out.emplace_back(PrimePowerSet(h), PrimePowerSet(hc));
  }
  return out;
}

/// Products of elements of `side` that are powers of pairwise distinct primes.
inline DivisorSignature t2_closure(const PrimePowerSet& side, std::int64_t n) {
  if (!side.is_subset_of(prime_powers(n))) throw DomainError("t2_closure: side is not a set of prime powers of N");
  std::map<std::int64_t, std::vector<std::int64_t>> by_prime;
  for (auto s : side) by_prime[prime_power_base(s)].push_back(s);
  std::vector<std::int64_t> products{1};
  for (const auto& [p, powers] : by_prime) {
    const std::size_t before = products.size();
    for (std::size_t i = 0; i < before; ++i)
      for (auto s : powers) products.push_back(products[i] * s);
  }
  products.erase(products.begin());
  std::sort(products.begin(), products.end());
  return {n, std::move(products)};
}

/// True when every set whose signature contains `known` is periodic.
inline bool forces_periodic(const DivisorSignature& known) { return is_periodic_by_signature(known); }

/// What a side's T1/T2 conditions force into its signature. The closure is a
/// theorem only when the side's cardinality has at most two prime factors.
inline DivisorSignature forced_signature(const PrimePowerSet& side, std::int64_t n) {
  if (side.primes().size() <= 2) return t2_closure(side, n);
  return {n, side.elements()};
}

namespace detail {

/// Can the divisors in free[i..] be split between the sides so that neither
/// signature forces a period? Adding divisors never removes a period.
inline bool split_avoids_period(std::vector<std::int64_t>& a, std::vector<std::int64_t>& b,
                                const std::vector<std::int64_t>& free, std::size_t i, std::int64_t n) {
  auto periodic = [n](std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    return forces_periodic(DivisorSignature(n, std::move(v)));
  };
  if (i == free.size()) return true;
  for (auto* side : {&a, &b}) {
    side->push_back(free[i]);
    const bool ok = !periodic(*side) && split_avoids_period(a, b, free, i + 1, n);
    side->pop_back();
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

/// Why Step 2 discards a partition, or nullopt if it survives. Beyond each
/// side's own forced signature, every divisor d > 1 of N must divide one of
/// the two masks; if no split of the remaining divisors keeps both sides free
/// of a forced period, the partition has no non-periodic tilings.
inline std::optional<std::string> step2_discard_reason(const Partition& part, std::int64_t n) {
  const auto fa = forced_signature(part.h, n);
  const auto fb = forced_signature(part.hc, n);
  for (const auto* f : {&fa, &fb})
    if (auto a = forced_period(*f))
      return "T2 closure of {" + (f == &fa ? part.h : part.hc).to_string() + "} forces period " + std::to_string(*a);
  std::vector<std::int64_t> free;
  for (auto d : divisors(n))
    if (d > 1 && !fa.contains(d) && !fb.contains(d)) free.push_back(d);
  if (free.size() > 24) return std::nullopt;  // too many splits to check; skipping is sound
  auto a = fa.members();
  auto b = fb.members();
  if (!detail::split_avoids_period(a, b, free, 0, n))
    return "every split of the divisors " + DivisorSignature(n, free).to_string() + " between the sides forces a period";
  return std::nullopt;
}

// ---------------------------------------------------------------- step 3

/// Digit tile in Z_L that tiles with every C such that Phi_h | C for all h in H.
inline ResidueSet universal_complement(const PrimePowerSet& h, std::int64_t l) {
  if (h.empty()) throw DomainError("universal_complement: H is empty");
  if (h.lcm() != l) throw DomainError("universal_complement: L must equal lcm(H)");
  const auto fl = factorize(l);
  std::vector<std::int64_t> sums{0};
  for (auto s : prime_powers(l).minus(h)) {
    const std::int64_t p = prime_power_base(s);
    std::int64_t top = 1;
    for (int i = 0; i < fl.exponent_of(p); ++i) top *= p;
    const std::int64_t e = l / top * (s / p);
    std::vector<std::int64_t> next;
    for (auto x : sums)
      for (std::int64_t j = 0; j < p; ++j) next.push_back((x + j * e) % l);
    sums = std::move(next);
  }
  ResidueSet u(l, sums);
  if (static_cast<std::size_t>(u.size()) != sums.size()) throw ArithmeticError("universal_complement: digit sets collide");
  return u;
}

/// Every C containing 0 that tiles Z_L with the universal complement of H.
inline std::vector<ResidueSet> base_tiles(const PrimePowerSet& h, std::int64_t l, const ExploreOptions& opts = {}) {
  return explore(universal_complement(h, l), opts);
}

namespace detail {

inline std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i)
    if (__builtin_mul_overflow(r, b, &r)) return UINT64_MAX;
  return r;
}

/// Number of lifts of a k-element tile of Z_L to Z_N.
inline std::uint64_t lift_count(std::int64_t card, std::int64_t l, std::int64_t n) {
  return saturating_pow(static_cast<std::uint64_t>(n / l), static_cast<std::uint64_t>(card - 1));
}

/// Calls fn(elements) for every lift of C; the vector is reused between calls.
template <typename Fn>
void for_each_lift_elems(const ResidueSet& c, std::int64_t n, Fn&& fn) {
  const std::int64_t l = c.modulus();
  if (n % l != 0) throw DomainError("lift_tiles: L must divide N");
  if (!c.contains(0)) throw DomainError("lift_tiles: base tile must contain 0");
  const auto base = c.elements();
  const std::int64_t m = n / l;
  std::vector<std::int64_t> elems = base;
  std::vector<std::int64_t> digit(base.size(), 0);
  while (true) {
    fn(elems);
    std::size_t i = 1;
    for (; i < base.size(); ++i) {
      if (++digit[i] < m) {
        elems[i] += l;
        break;
      }
      digit[i] = 0;
      elems[i] = base[i];
    }
    if (i >= base.size()) return;
  }
}

}  // namespace detail

/// All A in Z_N reducing to C mod L, with 0 kept fixed: (N/L)^{|C|-1} sets.
inline std::vector<ResidueSet> lift_tiles(const ResidueSet& c, std::int64_t n) {
  std::vector<ResidueSet> out;
  detail::for_each_lift_elems(c, n, [&](const std::vector<std::int64_t>& e) { out.emplace_back(n, e); });
  return out;
}

namespace detail {

inline std::vector<TileClass> finish_classes(std::map<std::pair<DivisorSignature, std::int64_t>, std::unordered_set<ResidueSet, ResidueSetHash>>& buckets) {
  std::vector<TileClass> out;
  for (auto& [key, members] : buckets) {
    TileClass tc{key.first, key.second, {members.begin(), members.end()}, is_periodic_by_signature(key.first)};
    std::sort(tc.members.begin(), tc.members.end());
    out.push_back(std::move(tc));
  }
  return out;
}

}  // namespace detail

/// Non-periodic signature classes among `tiles` whose prime-power part is exactly `h`.
inline std::vector<TileClass> group_into_classes(std::span<const ResidueSet> tiles, const PrimePowerSet& h) {
  std::map<std::pair<DivisorSignature, std::int64_t>, std::unordered_set<ResidueSet, ResidueSetHash>> buckets;
  for (const auto& t : tiles) {
    const auto sig = signature(t);
    if (sig.prime_power_part() != h || is_periodic_by_signature(sig)) continue;
    buckets[{sig, t.size()}].insert(canonical_translate(t));
  }
  return detail::finish_classes(buckets);
}

namespace detail {

/// Streams the lifts of base tiles straight into signature classes. Divisors
/// of L are read off the base tile; the rest use one Fourier coefficient as a
/// cheap filter, maintained incrementally as the lift odometer turns, before
/// the exact block test.
class LiftClassifier {
 public:
  LiftClassifier(std::int64_t n, std::int64_t l, PrimePowerSet h)
      : n_(n), l_(l), h_(std::move(h)), engine_(ModularFourier::for_modulus(n)) {
    const auto pp = prime_powers(n);
    for (auto d : divisors(n)) {
      if (d == 1) continue;
      const std::size_t idx = divs_.size();
      divs_.push_back(d);
      if (idx >= kMaxDivisors) throw DomainError("classify: N has too many divisors");
      if (l % d == 0) continue;
      (pp.contains(d) ? open_pp_ : open_other_).push_back(idx);
    }
    for (auto p : factorize(n).factors) {
      Bits mask{};
      std::int64_t top = 1;
      for (int i = 0; i < p.exponent; ++i) top *= p.prime;
      for (std::size_t i = 0; i < divs_.size(); ++i)
        if (divs_[i] % top == 0) set(mask, i);
      periodic_masks_.push_back(mask);
    }
  }

  /// Lifts C, keeping non-periodic lifts with prime-power part exactly H.
  void add_base_tile(const ResidueSet& c) {
    lifts_ += lift_count(c.size(), l_, n_);
    const auto sig_c = signature(c);
    if (sig_c.prime_power_part() != h_) return;
    Bits fixed{};
    for (std::size_t i = 0; i < divs_.size(); ++i)
      if (l_ % divs_[i] == 0 && sig_c.contains(divs_[i])) set(fixed, i);

    const auto base = c.elements();
    const std::size_t k = base.size();
    const std::int64_t m = n_ / l_;
    const std::int64_t q = engine_.prime();
    std::vector<std::size_t> open = open_pp_;
    open.insert(open.end(), open_other_.begin(), open_other_.end());
    std::vector<std::int64_t> freq, sums(open.size(), 0);
    for (auto idx : open) freq.push_back(n_ / divs_[idx]);
    std::vector<std::int64_t> elems = base, digit(k, 0);
    for (std::size_t j = 0; j < open.size(); ++j)
      for (auto a : elems) sums[j] = (sums[j] + engine_.root_power(freq[j] * a % n_)) % q;
    auto move_elem = [&](std::size_t i, std::int64_t to) {
      for (std::size_t j = 0; j < open.size(); ++j) {
        sums[j] += engine_.root_power(freq[j] * to % n_) - engine_.root_power(freq[j] * elems[i] % n_);
        sums[j] = ((sums[j] % q) + q) % q;
      }
      elems[i] = to;
    };

    while (true) {
      visit(elems, fixed, open, sums);
      std::size_t i = 1;
      for (; i < k; ++i) {
        if (++digit[i] < m) {
          move_elem(i, elems[i] + l_);
          break;
        }
        digit[i] = 0;
        move_elem(i, base[i]);
      }
      if (i >= k) break;
    }
  }

  [[nodiscard]] std::uint64_t lifts() const { return lifts_; }

  [[nodiscard]] std::vector<TileClass> classes() {
    std::map<std::pair<DivisorSignature, std::int64_t>, std::unordered_set<ResidueSet, ResidueSetHash>> buckets;
    for (auto& [key, members] : buckets_) {
      std::vector<std::int64_t> sig;
      for (std::size_t i = 0; i < divs_.size(); ++i)
        if (test(key.first, i)) sig.push_back(divs_[i]);
      buckets[{DivisorSignature(n_, std::move(sig)), key.second}] = std::move(members);
    }
    buckets_.clear();
    return finish_classes(buckets);
  }

 private:
  static constexpr std::size_t kMaxDivisors = 256;
  using Bits = std::array<std::uint64_t, kMaxDivisors / 64>;
  static void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
  static bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }

  void visit(const std::vector<std::int64_t>& elems, const Bits& fixed, const std::vector<std::size_t>& open,
             const std::vector<std::int64_t>& sums) {
    Bits bits = fixed;
    for (std::size_t j = 0; j < open.size(); ++j) {
      if (sums[j] != 0) continue;
      const std::int64_t d = divs_[open[j]];
      if (!engine_.vanishes(d, elems)) continue;
      if (j < open_pp_.size()) return;  // an extra prime power: belongs to another partition
      set(bits, open[j]);
    }
    for (const auto& mask : periodic_masks_) {
      bool all = true;
      for (std::size_t w = 0; w < mask.size(); ++w) all = all && (bits[w] & mask[w]) == mask[w];
      if (all) return;
    }
    buckets_[{bits, static_cast<std::int64_t>(elems.size())}].insert(canonical_translate(ResidueSet(n_, elems)));
  }

  std::int64_t n_, l_;
  PrimePowerSet h_;
  const ModularFourier& engine_;
  std::vector<std::int64_t> divs_;
  std::vector<std::size_t> open_pp_, open_other_;
  std::vector<Bits> periodic_masks_;
  std::map<std::pair<Bits, std::int64_t>, std::unordered_set<ResidueSet, ResidueSetHash>> buckets_;
  std::uint64_t lifts_ = 0;
};

struct SideEnumeration {
  std::vector<TileClass> classes;
  std::int64_t base_tiles = 0;
  std::int64_t lifts = 0;
};

inline SideEnumeration enumerate_side(const PrimePowerSet& side, std::int64_t n, const std::vector<ResidueSet>& bases) {
  LiftClassifier lc(n, side.lcm(), side);
  for (const auto& c : bases) lc.add_base_tile(c);
  SideEnumeration out;
  out.base_tiles = static_cast<std::int64_t>(bases.size());
  out.lifts = lc.lifts() > static_cast<std::uint64_t>(INT64_MAX) ? INT64_MAX : static_cast<std::int64_t>(lc.lifts());
  out.classes = lc.classes();
  return out;
}

/// Picks the side with fewer lifts and returns its base tiles. The base tiles
/// of the second side are only searched up to the count that could still win.
inline std::pair<bool, std::vector<ResidueSet>> choose_side(const Partition& part, std::int64_t n, const ExploreOptions& opts) {
  struct Side {
    bool is_h;
    const PrimePowerSet* set;
    std::int64_t l;
    std::uint64_t per_base;
  };
  std::array<Side, 2> sides{Side{true, &part.h, part.h.lcm(), 0}, Side{false, &part.hc, part.hc.lcm(), 0}};
  for (auto& s : sides) s.per_base = lift_count(s.set->phi_one_product(), s.l, n);
  std::sort(sides.begin(), sides.end(), [](const Side& a, const Side& b) {
    return std::tie(a.l, a.per_base, b.is_h) < std::tie(b.l, b.per_base, a.is_h);
  });
  auto first = base_tiles(*sides[0].set, sides[0].l, opts);
  std::uint64_t cost = first.empty() ? 0 : sides[0].per_base;
  if (!first.empty() && __builtin_mul_overflow(cost, static_cast<std::uint64_t>(first.size()), &cost)) cost = UINT64_MAX;
  if (sides[1].per_base < cost) {
    const std::uint64_t budget = cost / sides[1].per_base;
    if (auto second = explore_bounded(universal_complement(*sides[1].set, sides[1].l), budget, opts);
        second && second->size() * sides[1].per_base < cost)
      return {sides[1].is_h, std::move(*second)};
  }
  return {sides[0].is_h, std::move(first)};
}

inline std::vector<TileClass> classes_of_orbits(std::int64_t n, const PrimePowerSet& side, const std::vector<ResidueSet>& orbits) {
  std::map<std::pair<DivisorSignature, std::int64_t>, std::unordered_set<ResidueSet, ResidueSetHash>> buckets;
  for (const auto& a : orbits) {
    const auto sig = signature(a);
    if (sig.prime_power_part() != side) throw ArithmeticError("classify: complement with unexpected prime-power part in Z_" + std::to_string(n));
    buckets[{sig, a.size()}].insert(a);
  }
  return finish_classes(buckets);
}

inline PartitionResult classify_partition(std::int64_t n, const Partition& part, const std::vector<SkipEntry>& skips,
                                          const ClassifyConfig& cfg) {
  PartitionResult r;
  r.partition = part;
  if (auto why = step2_discard_reason(part, n)) {
    r.status = PartitionStatus::DiscardedStep2;
    r.note = *why;
    return r;
  }
  if (part.h.empty() || part.hc.empty()) {
    r.status = PartitionStatus::NoSurvivingClasses;
    r.note = "one side is the whole group";
    return r;
  }
  if (!cfg.force_exceptional) {
    for (const auto& s : skips)
      if (part.has_side(s.side)) {
        r.status = PartitionStatus::SkippedExceptional;
        r.note = s.justification;
        return r;
      }
  }

  const ExploreOptions opts{.memo_cap_bytes = cfg.memo_cap_bytes, .use_memo = true, .threads = 1};
  auto [use_h, bases] = choose_side(part, n, opts);
  const PrimePowerSet& side = use_h ? part.h : part.hc;
  const PrimePowerSet& other = use_h ? part.hc : part.h;
  auto en = enumerate_side(side, n, bases);
  r.stats.enumerated_side = use_h ? "H" : "Hc";
  r.stats.base_tiles = en.base_tiles;
  r.stats.lifts = en.lifts;
  r.stats.classes = static_cast<std::int64_t>(en.classes.size());

  std::vector<TileClass> kept;
  std::vector<ResidueSet> partners;
  for (auto& tc : en.classes) {
    if (forces_periodic(tc.sig.complement())) {
      ++r.stats.discarded_step4;
      continue;
    }
    const auto& rep = tc.members.front();
    const auto comps = explore(rep, opts);
    auto orbits = nonperiodic_orbits(comps);
    if (orbits.empty()) {
      ++r.stats.without_complement;
      continue;
    }
    for (const auto& a : orbits)
      if (!verify_tiling(a, rep)) throw ArithmeticError("classify: fill-out returned a non-complement");
    partners.insert(partners.end(), orbits.begin(), orbits.end());
    kept.push_back(std::move(tc));
  }
  detail::sort_unique(partners);
  auto partner_classes = classes_of_orbits(n, other, partners);
  r.a_classes = use_h ? std::move(kept) : std::move(partner_classes);
  r.b_classes = use_h ? std::move(partner_classes) : std::move(kept);

  r.coverage.assign(r.a_classes.size(), std::vector<bool>(r.b_classes.size(), false));
  for (std::size_t i = 0; i < r.a_classes.size(); ++i)
    for (std::size_t j = 0; j < r.b_classes.size(); ++j) {
      const auto& a = r.a_classes[i];
      const auto& b = r.b_classes[j];
      const bool cov = signatures_cover(a.sig, b.sig, a.cardinality, b.cardinality);
      r.coverage[i][j] = cov;
      if (cov)
        r.nonperiodic_pair_count += static_cast<std::int64_t>(a.members.size()) * static_cast<std::int64_t>(b.members.size());
    }
  r.status = r.a_classes.empty() ? PartitionStatus::NoSurvivingClasses : PartitionStatus::Classified;
  return r;
}

}  // namespace detail

/// The pipeline above for every partition of the prime powers of N. Partitions run on
/// up to config.threads threads; the report does not depend on scheduling.
inline ClassificationReport classify(std::int64_t n, const ClassifyConfig& config = {}) {
  if (auto why = unsupported_reason(n); why && !(config.force && n >= 2 && n <= kMaxCyclotomicIndex))
    throw DomainError("classify: " + *why);
  const auto skips = config.skip_list ? *config.skip_list : default_skip_list(n);
  const auto parts = enumerate_partitions(n);
  ClassificationReport report{n, std::vector<PartitionResult>(parts.size())};
  const unsigned threads = std::max(1U, std::min<unsigned>(config.threads, static_cast<unsigned>(parts.size())));
  std::atomic<std::size_t> cursor{0};
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = cursor++; i < parts.size(); i = cursor++)
        report.partitions[i] = detail::classify_partition(n, parts[i], skips, config);
    } catch (...) {
      errors[t] = std::current_exception();
      cursor = parts.size();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return report;
}

}  // namespace tiling
