#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgec {

/// Thrown on any dimension mismatch between vectors or matrices.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Packed bit vector over GF(2).
///
/// Bit i lives in bit (i % 64) of word (i / 64). Bits past size() are
/// kept zero so that word-wise comparisons and popcounts are exact.
class BitVec {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  /// Builds from indices of the set bits.
  static BitVec from_indices(std::size_t len, std::initializer_list<std::size_t> ones) {
    BitVec v(len);
    for (auto i : ones) v.set(i);
    return v;
  }
  static BitVec from_indices(std::size_t len, const std::vector<std::size_t>& ones) {
    BitVec v(len);
    for (auto i : ones) v.set(i);
    return v;
  }

  /// Parses a string of '0'/'1', index 0 first.
  static BitVec from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i);
      } else if (s[i] != '0') {
        throw std::invalid_argument("bit string contains a character other than '0'/'1' at position " +
                                    std::to_string(i));
      }
    }
    return v;
  }

  /// Low `len` bits of `bits`, bit 0 of the integer becoming index 0.
  static BitVec from_u64(std::size_t len, word_type bits) {
    if (len > kWordBits) throw DimensionError("from_u64: length exceeds 64");
    BitVec v(len);
    if (len > 0) v.words_[0] = bits & tail_mask(len);
    return v;
  }

  std::size_t size() const noexcept { return len_; }
  bool empty() const noexcept { return len_ == 0; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool value = true) {
    const word_type m = word_type{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= m;
    } else {
      words_[i / kWordBits] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= word_type{1} << (i % kWordBits); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (auto x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
  }
  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type x) { return x == 0; });
  }

  /// Index of the lowest set bit, or size() when zero.
  std::size_t first_one() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return len_;
  }

  /// Parity of the bitwise AND (the GF(2) inner product).
  bool dot(const BitVec& other) const {
    check_same(other, "dot");
    word_type acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return (std::popcount(acc) & 1) != 0;
  }

  /// Weight of the bitwise AND.
  std::size_t overlap(const BitVec& other) const {
    check_same(other, "overlap");
    std::size_t n = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
    }
    return n;
  }

  BitVec& operator^=(const BitVec& other) {
    check_same(other, "xor");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  BitVec& operator&=(const BitVec& other) {
    check_same(other, "and");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  BitVec& operator|=(const BitVec& other) {
    check_same(other, "or");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

  /// Lexicographic on the packed words; only meant for ordered containers.
  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.len_ != b.len_) return a.len_ < b.len_;
    return a.words_ < b.words_;
  }

  /// Circular rotation towards higher indices: result[(i + k) % n] = v[i].
  BitVec rotated_right(std::size_t k) const {
    BitVec out(len_);
    if (len_ == 0) return out;
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) out.set((i + k) % len_);
    }
    return out;
  }

  /// Concatenation `*this` followed by `tail`.
  BitVec concat(const BitVec& tail) const {
    BitVec out(len_ + tail.len_);
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) out.set(i);
    }
    for (std::size_t i = 0; i < tail.len_; ++i) {
      if (tail.get(i)) out.set(len_ + i);
    }
    return out;
  }

  /// Bits [offset, offset + count).
  BitVec slice(std::size_t offset, std::size_t count) const {
    if (offset + count > len_) throw DimensionError("slice out of range");
    BitVec out(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (get(offset + i)) out.set(i);
    }
    return out;
  }

  /// Packed value of the first 64 bits; requires size() <= 64.
  word_type to_u64() const {
    if (len_ > kWordBits) throw DimensionError("to_u64: length exceeds 64");
    return words_.empty() ? 0 : words_[0];
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  std::span<const word_type> words() const noexcept { return words_; }

 private:
  static std::size_t word_count(std::size_t len) { return (len + kWordBits - 1) / kWordBits; }
  static word_type tail_mask(std::size_t len) {
    const std::size_t r = len % kWordBits;
    return r == 0 ? ~word_type{0} : (word_type{1} << r) - 1;
  }
  void check_same(const BitVec& other, const char* op) const {
    if (other.len_ != len_) {
      throw DimensionError(std::string(op) + ": length mismatch (" + std::to_string(len_) + " vs " +
                           std::to_string(other.len_) + ")");
    }
  }

  std::size_t len_ = 0;
  std::vector<word_type> words_;
};

/// Row-major matrix over GF(2); every row is a BitVec of length cols().
class BitMat {
 public:
  BitMat() = default;
  BitMat(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  /// Rows must share one length; `cols` disambiguates the zero-row case.
  BitMat(std::vector<BitVec> rows, std::size_t cols) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw DimensionError("BitMat: rows have differing lengths");
    }
  }

  static BitMat identity(std::size_t n) {
    BitMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i);
    return m;
  }

  /// One string per row, '0'/'1' only.
  static BitMat from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BitVec> out;
    out.reserve(rows.size());
    for (auto s : rows) out.push_back(BitVec::from_string(s));
    const std::size_t cols = out.empty() ? 0 : out.front().size();
    return BitMat(std::move(out), cols);
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  const BitVec& row(std::size_t i) const { return rows_[i]; }
  BitVec& row(std::size_t i) { return rows_[i]; }
  const std::vector<BitVec>& row_list() const noexcept { return rows_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }

  void push_row(BitVec r) {
    if (r.size() != cols_) throw DimensionError("push_row: length mismatch");
    rows_.push_back(std::move(r));
  }

  BitVec column(std::size_t c) const {
    BitVec out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].get(c)) out.set(r);
    }
    return out;
  }

  BitMat transpose() const {
    BitMat t(cols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (rows_[r].get(c)) t.rows_[c].set(r);
      }
    }
    return t;
  }

  bool is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVec& r) { return r.is_zero(); });
  }

  friend bool operator==(const BitMat&, const BitMat&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

}  // namespace qgec
