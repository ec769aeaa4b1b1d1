#pragma once

// Dense integer polynomials with overflow-checked 64-bit coefficients.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tiling/errors.hpp"
#include "tiling/numth.hpp"

namespace tiling {

/// coeffs[i] is the coefficient of X^i. Either empty (the zero polynomial)
/// or with a nonzero last entry.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) { trim(); }
  IntPoly(std::initializer_list<std::int64_t> coeffs) : c_(coeffs) { trim(); }

  static IntPoly monomial(std::size_t degree, std::int64_t coeff = 1) {
    std::vector<std::int64_t> c(degree + 1, 0);
    c[degree] = coeff;
    return IntPoly(std::move(c));
  }

  /// X^k - 1.
  static IntPoly x_pow_minus_one(std::size_t k) {
    std::vector<std::int64_t> c(k + 1, 0);
    c[0] = -1;
    c[k] += 1;
    return IntPoly(std::move(c));
  }

  /// The mask polynomial sum_{a in elems} X^a; repeated exponents accumulate.
  static IntPoly mask(std::span<const std::int64_t> elems) {
    std::vector<std::int64_t> c;
    for (auto a : elems) {
      if (a < 0) throw DomainError("IntPoly::mask: negative exponent");
      if (static_cast<std::size_t>(a) >= c.size()) c.resize(static_cast<std::size_t>(a) + 1, 0);
      c[static_cast<std::size_t>(a)] = detail::checked_add(c[static_cast<std::size_t>(a)], 1);
    }
    return IntPoly(std::move(c));
  }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<std::int64_t>& coeffs() const { return c_; }
  [[nodiscard]] std::int64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  [[nodiscard]] std::int64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// "c0 + c1*X + c2*X^2", zero terms omitted; "0" for the zero polynomial.
  [[nodiscard]] std::string to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const std::int64_t c = c_[i];
      if (c == 0) continue;
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const std::int64_t mag = c < 0 ? -c : c;
      if (i == 0) {
        out += std::to_string(mag);
        continue;
      }
      if (mag != 1) out += std::to_string(mag) + "*";
      out += i == 1 ? "X" : "X^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<std::int64_t> c_;
};

inline IntPoly multiply(const IntPoly& f, const IntPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = detail::checked_add(out[i + j], detail::checked_mul(a[i], b[j]));
  }
  return IntPoly(std::move(out));
}

inline IntPoly add(const IntPoly& f, const IntPoly& g) {
  std::vector<std::int64_t> out(std::max(f.coeffs().size(), g.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::checked_add(f[i], g[i]);
  return IntPoly(std::move(out));
}

inline IntPoly subtract(const IntPoly& f, const IntPoly& g) {
  std::vector<std::int64_t> out(std::max(f.coeffs().size(), g.coeffs().size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::checked_sub(f[i], g[i]);
  return IntPoly(std::move(out));
}

/// q with f = q*g when q has integer coefficients, std::nullopt otherwise.
/// Long division: every quotient coefficient must be an exact integer.
inline std::optional<IntPoly> exact_divide(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero()) throw DomainError("exact_divide: division by the zero polynomial");
  if (f.is_zero()) return IntPoly{};
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<std::int64_t> rem = f.coeffs();
  const auto& d = g.coeffs();
  const std::int64_t lead = g.leading();
  const std::size_t dg = d.size() - 1;
  std::vector<std::int64_t> q(rem.size() - dg, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::int64_t top = rem[k + dg];
    if (top == 0) continue;
    if (top % lead != 0) return std::nullopt;
    const std::int64_t qk = top / lead;
    q[k] = qk;
    for (std::size_t j = 0; j <= dg; ++j)
      if (d[j] != 0) rem[k + j] = detail::checked_sub(rem[k + j], detail::checked_mul(qk, d[j]));
  }
  for (std::size_t i = 0; i < dg; ++i)
    if (rem[i] != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

/// Remainder of f modulo a monic g (synthetic division). Used for divisibility
/// tests where the quotient is not needed.
inline IntPoly remainder_monic(const IntPoly& f, const IntPoly& g) {
  if (g.is_zero() || g.leading() != 1) throw DomainError("remainder_monic: divisor must be monic");
  if (f.degree() < g.degree()) return f;
  std::vector<std::int64_t> rem = f.coeffs();
  const auto& d = g.coeffs();
  const std::size_t dg = d.size() - 1;
  for (std::size_t k = rem.size() - dg; k-- > 0;) {
    const std::int64_t top = rem[k + dg];
    if (top == 0) continue;
    rem[k + dg] = 0;
    for (std::size_t j = 0; j < dg; ++j)
      if (d[j] != 0) rem[k + j] = detail::checked_sub(rem[k + j], detail::checked_mul(top, d[j]));
  }
  rem.resize(dg);
  return IntPoly(std::move(rem));
}

/// f mod (X^n - 1): exponents folded modulo n.
inline IntPoly reduce_cyclic(const IntPoly& f, std::int64_t n) {
  if (n < 1) throw DomainError("reduce_cyclic: n must be positive");
  const auto un = static_cast<std::size_t>(n);
  if (f.coeffs().size() <= un) return f;
  std::vector<std::int64_t> out(un, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i)
    out[i % un] = detail::checked_add(out[i % un], f.coeffs()[i]);
  return IntPoly(std::move(out));
}

inline std::int64_t eval_at_one(const IntPoly& f) {
  std::int64_t s = 0;
  for (auto c : f.coeffs()) s = detail::checked_add(s, c);
  return s;
}

}  // namespace tiling
