#pragma once

// The fill-out procedure: enumerate every tiling complement B (0 in B) of a
// tile A in Z_N by growing packing complements P, starting from P = {0}.
//
// explore(P):
//   1. if P has been explored, return; 2. mark P explored;
//   3. if A + P covers Z_N, record P and return;
//   4. for each uncovered x, r(x) = number of translates A + y containing x
//      and disjoint from A + P;
//   5. rank uncovered x by (r(x), x);  6. if the first has r = 0, return;
//   7. for the first x, explore(P + {y}) for each admissible y, ascending.
//
// The memo is keyed by the exact bit vector of P. It never drops entries:
// when its byte budget is exhausted the search fails with
// MemoCapacityError rather than silently losing completeness.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstring>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "tiling/errors.hpp"
#include "tiling/residue_set.hpp"
#include "tiling/zset.hpp"

namespace tiling {

struct ExploreOptions {
  std::size_t memo_cap_bytes = std::size_t{1} << 31;
  bool use_memo = true;
  unsigned threads = 1;
};

struct ExploreStats {
  std::size_t nodes = 0;
  std::size_t memo_entries = 0;
  std::size_t memo_bytes = 0;
};

struct RankEntry {
  std::int64_t x = 0;
  std::int64_t r = 0;
  std::vector<std::int64_t> candidates;  // ascending
  friend bool operator==(const RankEntry&, const RankEntry&) = default;
};

/// Ordered by r ascending, then x ascending.
using RankTable = std::vector<RankEntry>;

/// r(x) and its candidate translates for every x outside `covered`.
inline RankTable rank(const ResidueSet& a, const ResidueSet& covered) {
  if (a.modulus() != covered.modulus()) throw DomainError("rank: mismatched moduli");
  const std::int64_t n = a.modulus();
  const auto elems = a.elements();
  RankTable table;
  for (std::int64_t x = 0; x < n; ++x) {
    if (covered.contains(x)) continue;
    RankEntry e{x, 0, {}};
    for (auto t : elems) {
      const std::int64_t y = detail::mod_floor(x - t, n);
      if (!a.translate(y).intersects(covered)) e.candidates.push_back(y);
    }
    std::sort(e.candidates.begin(), e.candidates.end());
    e.r = static_cast<std::int64_t>(e.candidates.size());
    table.push_back(std::move(e));
  }
  std::stable_sort(table.begin(), table.end(), [](const RankEntry& l, const RankEntry& r) { return l.r < r.r; });
  return table;
}

namespace detail {

using Word = ResidueSet::Word;

inline std::uint64_t hash_words(const Word* key, std::size_t w) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::size_t i = 0; i < w; ++i) {
    h ^= key[i];
    h *= 0x9e3779b97f4a7c15ULL;
    h ^= h >> 32;
  }
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 32;
  return h;
}

/// Open-addressing set of fixed-width nonzero bit vectors; the all-zero key
/// marks an empty slot (every P contains 0, so no real key is zero).
class FlatWordSet {
 public:
  explicit FlatWordSet(std::size_t words) : w_(words) {}

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] std::size_t bytes() const { return slots_.size() * sizeof(Word); }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }

  /// Inserts; false when already present. Growth goes through `reserve_bytes`
  /// which may throw before anything is modified.
  template <typename Reserve>
  bool insert(const Word* key, std::uint64_t h, Reserve&& reserve_bytes) {
    if ((count_ + 1) * 2 > capacity_) grow(reserve_bytes);
    const std::size_t mask = capacity_ - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      Word* slot = &slots_[i * w_];
      if (is_empty(slot)) {
        std::memcpy(slot, key, w_ * sizeof(Word));
        ++count_;
        return true;
      }
      if (std::memcmp(slot, key, w_ * sizeof(Word)) == 0) return false;
    }
  }

 private:
  [[nodiscard]] bool is_empty(const Word* slot) const {
    for (std::size_t k = 0; k < w_; ++k)
      if (slot[k] != 0) return false;
    return true;
  }

  template <typename Reserve>
  void grow(Reserve&& reserve_bytes) {
    const std::size_t new_cap = capacity_ == 0 ? 256 : capacity_ * 2;
    reserve_bytes((new_cap - capacity_) * w_ * sizeof(Word));
    std::vector<Word> fresh(new_cap * w_, 0);
    const std::size_t mask = new_cap - 1;
    for (std::size_t i = 0; i < capacity_; ++i) {
      const Word* slot = &slots_[i * w_];
      if (is_empty(slot)) continue;
      for (std::size_t j = hash_words(slot, w_) & mask;; j = (j + 1) & mask) {
        Word* dst = &fresh[j * w_];
        if (is_empty(dst)) {
          std::memcpy(dst, slot, w_ * sizeof(Word));
          break;
        }
      }
    }
    slots_ = std::move(fresh);
    capacity_ = new_cap;
  }

  std::size_t w_;
  std::size_t capacity_ = 0;
  std::size_t count_ = 0;
  std::vector<Word> slots_;
};

/// The "already explored" set, optionally sharded for concurrent claim-if-absent.
class ExploreMemo {
 public:
  ExploreMemo(std::size_t words, std::size_t cap_bytes, std::size_t shards)
      : w_(words), cap_(cap_bytes), shard_bits_(std::bit_width(std::bit_ceil(shards)) - 1) {
    const std::size_t count = std::size_t{1} << shard_bits_;
    shards_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) shards_.push_back(std::make_unique<Shard>(words));
  }

  /// True when the caller is the first to claim `key`.
  bool claim(const Word* key) {
    const std::uint64_t h = hash_words(key, w_);
    Shard& s = *shards_[shard_bits_ == 0 ? 0 : h >> (64 - shard_bits_)];
    std::lock_guard lock(s.mu);
    return s.set.insert(key, h, [this](std::size_t delta) { reserve(delta); });
  }

  [[nodiscard]] std::size_t entries() const {
    std::size_t n = 0;
    for (const auto& s : shards_) n += s->set.size();
    return n;
  }
  [[nodiscard]] std::size_t bytes() const { return used_.load(); }

 private:
  struct Shard {
    explicit Shard(std::size_t w) : set(w) {}
    std::mutex mu;
    FlatWordSet set;
  };

  void reserve(std::size_t delta) {
    const std::size_t before = used_.fetch_add(delta);
    if (before + delta > cap_) {
      used_.fetch_sub(delta);
      throw MemoCapacityError("fill-out memo exceeded its budget of " + std::to_string(cap_) + " bytes");
    }
  }

  std::size_t w_;
  std::size_t cap_;
  unsigned shard_bits_;
  std::atomic<std::size_t> used_{0};
  std::vector<std::unique_ptr<Shard>> shards_;
};

/// Precomputed translates of A as bit vectors, shared read-only by workers.
struct FillOutProblem {
  explicit FillOutProblem(const ResidueSet& tile)
      : n(tile.modulus()), w(ResidueSet::word_count(tile.modulus())), elems(tile.elements()) {
    shifts.assign(static_cast<std::size_t>(n) * w, 0);
    for (std::int64_t y = 0; y < n; ++y)
      for (auto a : elems) {
        const std::int64_t x = (a + y) % n;
        shifts[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x / 64)] |= Word{1} << (x % 64);
      }
    full.assign(w, ~Word{0});
    if (n % 64 != 0) full.back() = (Word{1} << (n % 64)) - 1;
  }

  [[nodiscard]] const Word* shifted(std::int64_t y) const { return &shifts[static_cast<std::size_t>(y) * w]; }

  std::int64_t n;
  std::size_t w;
  std::vector<std::int64_t> elems;
  std::vector<Word> shifts;
  std::vector<Word> full;
  std::size_t limit = 0;  // 0: unbounded
  mutable std::atomic<std::size_t> found{0};
};

struct ResultLimitReached {};

/// A search node: packing complement P and its cover A + P.
struct Node {
  std::vector<Word> p;
  std::vector<Word> covered;
};

class FillOutWorker {
 public:
  FillOutWorker(const FillOutProblem& prob, ExploreMemo* memo) : prob_(prob), memo_(memo) {
    valid_.resize(static_cast<std::size_t>(prob.n));
  }

  /// Full depth-first explore from `start`.
  void run(const Node& start) {
    const std::size_t depth_cap = static_cast<std::size_t>(prob_.n / static_cast<std::int64_t>(prob_.elems.size())) + 2;
    p_.assign(depth_cap * prob_.w, 0);
    cov_.assign(depth_cap * prob_.w, 0);
    cands_.assign(depth_cap, {});
    std::copy(start.p.begin(), start.p.end(), p_.begin());
    std::copy(start.covered.begin(), start.covered.end(), cov_.begin());
    dfs(0);
  }

  /// Steps 1-7 for one node without recursing; children go to `out`.
  void expand(const Node& node, std::vector<Node>& out) {
    if (!visit(node.p.data(), node.covered.data())) return;
    std::vector<std::int64_t> cands;
    if (!branch_candidates(node.covered.data(), cands)) return;
    for (auto y : cands) {
      Node child = node;
      set_bit(child.p.data(), y);
      const Word* s = prob_.shifted(y);
      for (std::size_t k = 0; k < prob_.w; ++k) child.covered[k] |= s[k];
      out.push_back(std::move(child));
    }
  }

  std::vector<ResidueSet> results;
  std::size_t nodes = 0;

 private:
  static void set_bit(Word* v, std::int64_t x) { v[x / 64] |= Word{1} << (x % 64); }
  static bool test_bit(const Word* v, std::int64_t x) { return (v[x / 64] >> (x % 64)) & 1U; }

  /// Steps 1-3. False when the node needs no further work.
  bool visit(const Word* p, const Word* covered) {
    ++nodes;
    if (memo_ != nullptr && !memo_->claim(p)) return false;
    if (std::equal(covered, covered + prob_.w, prob_.full.begin())) {
      ResidueSet b(prob_.n);
      for (std::int64_t x = 0; x < prob_.n; ++x)
        if (test_bit(p, x)) b.insert(x);
      results.push_back(std::move(b));
      if (prob_.limit != 0 && ++prob_.found > prob_.limit) throw ResultLimitReached{};
      return false;
    }
    return true;
  }

  /// Steps 4-7: candidates y for the top-ranked uncovered x; false if r = 0.
  bool branch_candidates(const Word* covered, std::vector<std::int64_t>& out) {
    const std::int64_t n = prob_.n;
    std::fill(valid_.begin(), valid_.end(), kUnknown);
    std::int64_t best_x = -1;
    std::int64_t best_r = 0;
    for (std::int64_t x = 0; x < n; ++x) {
      if (test_bit(covered, x)) continue;
      std::int64_t r = 0;
      for (auto a : prob_.elems) {
        std::int64_t y = x - a;
        if (y < 0) y += n;
        r += is_valid(covered, y);
      }
      if (best_x < 0 || r < best_r) {
        best_x = x;
        best_r = r;
        if (r == 0) return false;
      }
    }
    out.clear();
    for (auto a : prob_.elems) {
      std::int64_t y = best_x - a;
      if (y < 0) y += n;
      if (is_valid(covered, y)) out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    return true;
  }

  bool is_valid(const Word* covered, std::int64_t y) {
    auto& v = valid_[static_cast<std::size_t>(y)];
    if (v == kUnknown) {
      const Word* s = prob_.shifted(y);
      bool disjoint = true;
      for (std::size_t k = 0; k < prob_.w; ++k)
        if ((s[k] & covered[k]) != 0) {
          disjoint = false;
          break;
        }
      v = disjoint ? kValid : kInvalid;
    }
    return v == kValid;
  }

  void dfs(std::size_t depth) {
    const std::size_t w = prob_.w;
    Word* p = &p_[depth * w];
    Word* cov = &cov_[depth * w];
    if (!visit(p, cov)) return;
    auto& cands = cands_[depth];
    if (!branch_candidates(cov, cands)) return;
    Word* np = p + w;
    Word* ncov = cov + w;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const std::int64_t y = cands[i];
      std::copy(p, p + w, np);
      set_bit(np, y);
      const Word* s = prob_.shifted(y);
      for (std::size_t k = 0; k < w; ++k) ncov[k] = cov[k] | s[k];
      dfs(depth + 1);
    }
  }

  static constexpr char kUnknown = 0, kValid = 1, kInvalid = 2;

  const FillOutProblem& prob_;
  ExploreMemo* memo_;
  std::vector<char> valid_;
  std::vector<Word> p_, cov_;
  std::vector<std::vector<std::int64_t>> cands_;
};

inline void sort_unique(std::vector<ResidueSet>& sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

}  // namespace detail

namespace detail {

inline std::vector<ResidueSet> explore_impl(const ResidueSet& a, const ExploreOptions& opts, ExploreStats* stats, std::size_t limit) {
  if (a.empty() || !a.contains(0)) throw DomainError("explore: the tile must contain 0");
  const std::int64_t n = a.modulus();
  if (n % a.size() != 0) return {};
  detail::FillOutProblem prob(a);
  prob.limit = limit;
  const unsigned threads = std::max(1U, opts.threads);
  std::unique_ptr<detail::ExploreMemo> memo;
  if (opts.use_memo) memo = std::make_unique<detail::ExploreMemo>(prob.w, opts.memo_cap_bytes, threads > 1 ? 64 : 1);

  detail::Node root{std::vector<detail::Word>(prob.w, 0), std::vector<detail::Word>(prob.shifted(0), prob.shifted(0) + prob.w)};
  root.p[0] = 1;

  std::vector<ResidueSet> out;
  std::size_t nodes = 0;
  if (threads == 1) {
    detail::FillOutWorker worker(prob, memo.get());
    worker.run(root);
    out = std::move(worker.results);
    nodes = worker.nodes;
  } else {
    // Breadth-first until there is enough independent work, then hand the
    // frontier to workers that share the claim-if-absent memo.
    detail::FillOutWorker seed(prob, memo.get());
    std::vector<detail::Node> frontier{root};
    const std::size_t target = static_cast<std::size_t>(threads) * 16;
    while (!frontier.empty() && frontier.size() < target) {
      std::vector<detail::Node> next;
      for (const auto& node : frontier) seed.expand(node, next);
      frontier = std::move(next);
    }
    out = std::move(seed.results);
    nodes = seed.nodes;
    std::atomic<std::size_t> cursor{0};
    std::vector<std::unique_ptr<detail::FillOutWorker>> workers;
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        workers.push_back(std::make_unique<detail::FillOutWorker>(prob, memo.get()));
        pool.emplace_back([&, t] {
          try {
            for (std::size_t i = cursor++; i < frontier.size(); i = cursor++) workers[t]->run(frontier[i]);
          } catch (...) {
            errors[t] = std::current_exception();
            cursor = frontier.size();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto& w : workers) {
      out.insert(out.end(), std::make_move_iterator(w->results.begin()), std::make_move_iterator(w->results.end()));
      nodes += w->nodes;
    }
  }
  detail::sort_unique(out);
  if (stats != nullptr) {
    stats->nodes = nodes;
    stats->memo_entries = memo ? memo->entries() : 0;
    stats->memo_bytes = memo ? memo->bytes() : 0;
  }
  return out;
}

}  // namespace detail

/// All B with 0 in B and A + B = Z_N, each once, sorted. Requires 0 in A.
/// Output is identical for every thread count.
inline std::vector<ResidueSet> explore(const ResidueSet& a, const ExploreOptions& opts = {}, ExploreStats* stats = nullptr) {
  return detail::explore_impl(a, opts, stats, 0);
}

/// As explore, but gives up (nullopt) once more than `limit` complements turn up.
inline std::optional<std::vector<ResidueSet>> explore_bounded(const ResidueSet& a, std::size_t limit, const ExploreOptions& opts = {}) {
  if (limit == 0) throw DomainError("explore_bounded: limit must be positive");
  try {
    return detail::explore_impl(a, opts, nullptr, limit);
  } catch (const detail::ResultLimitReached&) {
    return std::nullopt;
  }
}

/// Non-periodic members mapped to their canonical translates, deduplicated, sorted.
inline std::vector<ResidueSet> nonperiodic_orbits(std::span<const ResidueSet> complements) {
  std::vector<ResidueSet> out;
  for (const auto& b : complements)
    if (is_nonperiodic(b)) out.push_back(canonical_translate(b));
  detail::sort_unique(out);
  return out;
}

}  // namespace tiling
