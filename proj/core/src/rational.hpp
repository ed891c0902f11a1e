#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace csf::detail {

__extension__ typedef __int128 Wide;

// Exact rational with 64-bit parts; arithmetic goes through 128-bit intermediates and
// throws std::overflow_error if a reduced result no longer fits.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num) : num_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<Wide>(a.num_) * b.den_ + static_cast<Wide>(b.num_) * a.den_,
                     static_cast<Wide>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<Wide>(a.num_) * b.num_, static_cast<Wide>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<Wide>(a.num_) * b.den_, static_cast<Wide>(a.den_) * b.num_);
  }
  bool operator==(const Rational&) const = default;

 private:
  static Wide gcd_wide(Wide a, Wide b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const Wide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static Rational from_wide(Wide num, Wide den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Wide g = gcd_wide(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr Wide kLimit = INT64_MAX;
    if (num > kLimit || num < -kLimit || den > kLimit) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den == 0 ? 1 : den);
    return r;
  }
  void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Reduced row echelon form in place; returns pivot columns (their count is the rank).
inline std::vector<std::size_t> reduce_rows(std::vector<std::vector<Rational>>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational lead = m[row][col];
    for (std::size_t k = col; k < cols; ++k) m[row][k] = m[row][k] / lead;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t k = col; k < cols; ++k) m[r][k] = m[r][k] - f * m[row][k];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace csf::detail
