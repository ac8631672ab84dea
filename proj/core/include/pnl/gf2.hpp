#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pnl {

// Fixed-width GF(2) vector, bit-packed little-endian (bit i of word w is
// coordinate 64w + i).
struct BitVec {
  size_t size = 0;
  std::vector<std::uint64_t> words;

  explicit BitVec(size_t n = 0) : size(n), words((n + 63) / 64, 0) {}

  bool get(size_t i) const { return (words[i / 64] >> (i % 64)) & 1u; }
  void set(size_t i, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v)
      words[i / 64] |= mask;
    else
      words[i / 64] &= ~mask;
  }
  void flip(size_t i) { words[i / 64] ^= std::uint64_t{1} << (i % 64); }

  void xor_with(const BitVec& o) {
    for (size_t w = 0; w < words.size(); ++w) words[w] ^= o.words[w];
  }
  size_t popcount() const;
  bool any() const;

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.size == b.size && a.words == b.words;
  }
};

// Lexicographic by coordinate (position 0 most significant): the vector
// with 0 at the first differing coordinate sorts first. Ties broken as
// equal. Used for deterministic dependency ordering.
bool lex_less(const BitVec& a, const BitVec& b);

// Dense GF(2) matrix, one BitVec per row.
class BitMatrix {
public:
  BitMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), row_(rows, BitVec(cols)) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool get(size_t r, size_t c) const { return row_[r].get(c); }
  void set(size_t r, size_t c, bool v) { row_[r].set(c, v); }
  const BitVec& row(size_t r) const { return row_[r]; }
  BitVec& row(size_t r) { return row_[r]; }

private:
  size_t rows_, cols_;
  std::vector<BitVec> row_;
};

// Basis of {c in GF(2)^rows : c^T M = 0} — the relation-selection vectors
// that cancel every exponent coordinate. Computed by eliminating [M | I]
// and collecting the identity parts of the zeroed rows; with r rows and
// rank q the basis has exactly r - q >= rows - cols vectors.
std::vector<BitVec> nullspace(const BitMatrix& m);

// Nonzero combinations of the basis, at most `cap` of them, sorted by
// (Hamming weight of the combination, lexicographic). Small combinations
// are generated first (singles, then pairs, ...), so when the cap bites
// the lightest dependencies are the ones kept.
std::vector<BitVec> iterate_dependencies(const std::vector<BitVec>& basis,
                                         size_t cap = size_t{1} << 16);

}  // namespace pnl
