#pragma once

// ResidueSet: a subset of Z_N stored as a fixed-length bit vector, plus the
// set-literal text format "0,32,58,90,112,122".

#include <bit>
#include <charconv>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tiling/errors.hpp"
#include "tiling/numth.hpp"
#include "tiling/poly.hpp"

namespace tiling {

class ResidueSet {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  ResidueSet() = default;

  /// Empty subset of Z_n.
  explicit ResidueSet(std::int64_t n) : n_(n) {
    if (n < 1 || n > kMaxApiInteger) throw DomainError("ResidueSet: modulus must be positive");
    words_.assign(word_count(n), 0);
  }

  /// Elements are reduced modulo n; duplicates collapse.
  ResidueSet(std::int64_t n, std::span<const std::int64_t> elems) : ResidueSet(n) {
    for (auto e : elems) insert(detail::mod_floor(e, n));
  }
  ResidueSet(std::int64_t n, std::initializer_list<std::int64_t> elems)
      : ResidueSet(n, std::span<const std::int64_t>(elems.begin(), elems.size())) {}

  static ResidueSet full(std::int64_t n) {
    ResidueSet s(n);
    for (std::int64_t x = 0; x < n; ++x) s.insert(x);
    return s;
  }

  static std::size_t word_count(std::int64_t n) { return static_cast<std::size_t>((n + kWordBits - 1) / kWordBits); }

  [[nodiscard]] std::int64_t modulus() const { return n_; }
  [[nodiscard]] std::span<const Word> words() const { return words_; }

  [[nodiscard]] bool contains(std::int64_t x) const {
    return (words_[static_cast<std::size_t>(x / kWordBits)] >> (x % kWordBits)) & 1U;
  }
  void insert(std::int64_t x) {
    check_index(x);
    words_[static_cast<std::size_t>(x / kWordBits)] |= Word{1} << (x % kWordBits);
  }
  void erase(std::int64_t x) {
    check_index(x);
    words_[static_cast<std::size_t>(x / kWordBits)] &= ~(Word{1} << (x % kWordBits));
  }

  [[nodiscard]] std::int64_t size() const {
    std::int64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  [[nodiscard]] bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  /// Ascending element list.
  [[nodiscard]] std::vector<std::int64_t> elements() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      Word w = words_[i];
      while (w != 0) {
        out.push_back(static_cast<std::int64_t>(i) * kWordBits + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  [[nodiscard]] std::int64_t min_element() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] != 0) return static_cast<std::int64_t>(i) * kWordBits + std::countr_zero(words_[i]);
    throw DomainError("ResidueSet::min_element: empty set");
  }

  /// A + t.
  [[nodiscard]] ResidueSet translate(std::int64_t t) const {
    ResidueSet out(n_);
    const std::int64_t s = detail::mod_floor(t, n_);
    for (auto e : elements()) out.insert((e + s) % n_);
    return out;
  }

  [[nodiscard]] bool intersects(const ResidueSet& other) const {
    same_modulus(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  [[nodiscard]] ResidueSet united(const ResidueSet& other) const {
    same_modulus(other);
    ResidueSet out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
    return out;
  }

  [[nodiscard]] bool is_subset_of(const ResidueSet& other) const {
    same_modulus(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }

  /// Mask polynomial with representatives in [0, N).
  [[nodiscard]] IntPoly mask() const {
    auto e = elements();
    return IntPoly::mask(e);
  }

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

  /// Lexicographic order on ascending element lists (a proper prefix sorts
  /// first); sets over different moduli order by modulus.
  friend std::strong_ordering operator<=>(const ResidueSet& a, const ResidueSet& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t i = 0; i < a.words_.size(); ++i) {
      const Word diff = a.words_[i] ^ b.words_[i];
      if (diff == 0) continue;
      const Word bit = diff & (~diff + 1);
      const bool a_has = (a.words_[i] & bit) != 0;
      const ResidueSet& lacking = a_has ? b : a;
      // The set holding the first differing element is smaller unless the
      // other one has nothing beyond it (then the other is a prefix).
      const Word above = ~((bit << 1) - 1);
      bool lacking_has_more = (lacking.words_[i] & above) != 0;
      for (std::size_t j = i + 1; j < a.words_.size() && !lacking_has_more; ++j) lacking_has_more = lacking.words_[j] != 0;
      const bool a_smaller = a_has == lacking_has_more;
      return a_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  [[nodiscard]] std::size_t hash() const {
    std::size_t h = std::hash<std::int64_t>{}(n_);
    for (auto w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  /// Set literal: comma-separated ascending decimals, no spaces. Empty set -> "".
  [[nodiscard]] std::string to_string() const {
    std::string out;
    for (auto e : elements()) {
      if (!out.empty()) out += ',';
      out += std::to_string(e);
    }
    return out;
  }

 private:
  void check_index(std::int64_t x) const {
    if (x < 0 || x >= n_) throw DomainError("ResidueSet: residue " + std::to_string(x) + " outside [0, " + std::to_string(n_) + ")");
  }
  void same_modulus(const ResidueSet& other) const {
    if (n_ != other.n_) throw DomainError("ResidueSet: mismatched moduli");
  }

  std::int64_t n_ = 0;
  std::vector<Word> words_;
};

inline std::ostream& operator<<(std::ostream& os, const ResidueSet& s) { return os << '{' << s.to_string() << '}'; }

struct ResidueSetHash {
  std::size_t operator()(const ResidueSet& s) const { return s.hash(); }
};

/// Parses a set literal into strictly ascending nonnegative integers.
inline std::vector<std::int64_t> parse_integer_list(std::string_view text) {
  std::vector<std::int64_t> out;
  if (text.empty()) throw ParseError("empty set literal");
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError("malformed set literal element '" + std::string(tok) + "'");
    if (v < 0) throw ParseError("negative element in set literal");
    if (!out.empty() && v <= out.back()) throw ParseError("set literal must be strictly ascending");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Parses a set literal as a subset of Z_n; every element must lie in [0, n).
inline ResidueSet parse_residue_set(std::int64_t n, std::string_view text) {
  const auto elems = parse_integer_list(text);
  if (!elems.empty() && elems.back() >= n)
    throw ParseError("element " + std::to_string(elems.back()) + " is not a residue modulo " + std::to_string(n));
  return ResidueSet(n, elems);
}

}  // namespace tiling
