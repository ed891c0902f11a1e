#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <string>

namespace csf {

inline constexpr int kSetWords = 4;
inline constexpr int kMaxVertices = 64 * kSetWords;

// A subset of {0..255}, stored as a fixed-width bit mask. Bit v set <=> vertex v is a member.
class VertexSet {
 public:
  using Words = std::array<std::uint64_t, kSetWords>;

  // Members in ascending order; walks a private copy of the set.
  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using reference = int;
    using pointer = void;

    constexpr Iterator() = default;
    constexpr explicit Iterator(const Words& rest) : rest_(rest), word_(0) { skip(); }
    constexpr int operator*() const { return 64 * word_ + std::countr_zero(rest_[word_]); }
    constexpr Iterator& operator++() {
      rest_[word_] &= rest_[word_] - 1;
      skip();
      return *this;
    }
    constexpr Iterator operator++(int) {
      Iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const Iterator& o) const { return word_ == o.word_ && rest_ == o.rest_; }

   private:
    constexpr void skip() {
      while (word_ < kSetWords && rest_[word_] == 0) ++word_;
    }

    Words rest_{};
    int word_ = kSetWords;
  };

  constexpr VertexSet() = default;
  // Members below 64 from a mask.
  constexpr explicit VertexSet(std::uint64_t low) : words_{low} {}
  constexpr VertexSet(std::initializer_list<int> members) {
    for (int v : members) insert(v);
  }

  static constexpr VertexSet singleton(int v) {
    VertexSet s;
    s.insert(v);
    return s;
  }
  // {0, ..., n-1}
  static constexpr VertexSet full(int n) {
    VertexSet s;
    for (int w = 0; w < kSetWords && n > 0; ++w, n -= 64) s.words_[w] = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    return s;
  }

  // Members below 64 as a mask; the whole set whenever every member is below 64.
  constexpr std::uint64_t bits() const { return words_[0]; }
  constexpr const Words& words() const { return words_; }

  constexpr int size() const {
    int k = 0;
    for (auto w : words_) k += std::popcount(w);
    return k;
  }
  constexpr bool empty() const {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  constexpr bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  constexpr bool is_subset_of(VertexSet other) const {
    for (int w = 0; w < kSetWords; ++w) {
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
  }
  constexpr bool is_proper_subset_of(VertexSet other) const { return is_subset_of(other) && *this != other; }
  constexpr bool intersects(VertexSet other) const {
    for (int w = 0; w < kSetWords; ++w) {
      if ((words_[w] & other.words_[w]) != 0) return true;
    }
    return false;
  }

  // Smallest / largest member; undefined on the empty set.
  constexpr int first() const {
    int w = 0;
    while (w + 1 < kSetWords && words_[w] == 0) ++w;
    return 64 * w + std::countr_zero(words_[w]);
  }
  constexpr int last() const {
    int w = kSetWords - 1;
    while (w > 0 && words_[w] == 0) --w;
    return 64 * w + 63 - std::countl_zero(words_[w]);
  }

  constexpr void insert(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  constexpr void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  constexpr VertexSet& operator|=(VertexSet o) {
    for (int w = 0; w < kSetWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  constexpr VertexSet& operator&=(VertexSet o) {
    for (int w = 0; w < kSetWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  constexpr VertexSet& operator-=(VertexSet o) {
    for (int w = 0; w < kSetWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  constexpr VertexSet operator|(VertexSet o) const { return o |= *this; }
  constexpr VertexSet operator&(VertexSet o) const { return o &= *this; }
  constexpr VertexSet operator-(VertexSet o) const {
    VertexSet out = *this;
    return out -= o;
  }

  constexpr bool operator==(const VertexSet&) const = default;
  // Numeric order of the masks; used only to give containers a deterministic order.
  constexpr std::strong_ordering operator<=>(const VertexSet& o) const {
    for (int w = kSetWords - 1; w >= 0; --w) {
      if (words_[w] != o.words_[w]) return words_[w] <=> o.words_[w];
    }
    return std::strong_ordering::equal;
  }

  constexpr Iterator begin() const { return Iterator(words_); }
  constexpr Iterator end() const { return Iterator(); }

  // Comma-joined ascending members, e.g. "0,2,5"; the empty set gives "".
  std::string to_string() const;
  // Inverse of to_string(); throws FormatError on malformed input.
  static VertexSet parse(const std::string& text);

 private:
  Words words_{};
};

}  // namespace csf

template <>
struct std::hash<csf::VertexSet> {
  std::size_t operator()(const csf::VertexSet& s) const noexcept {
    std::uint64_t h = 0;
    for (auto w : s.words()) h = (h ^ w) * 0x9E3779B97F4A7C15ULL + (h >> 29);
    return std::hash<std::uint64_t>{}(h);
  }
};
