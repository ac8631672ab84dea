#include "pnl/gf2.hpp"

#include <algorithm>
#include <bit>

namespace pnl {

size_t BitVec::popcount() const {
  size_t n = 0;
  for (std::uint64_t w : words) n += static_cast<size_t>(std::popcount(w));
  return n;
}

bool BitVec::any() const {
  for (std::uint64_t w : words)
    if (w) return true;
  return false;
}

bool lex_less(const BitVec& a, const BitVec& b) {
  for (size_t w = 0; w < a.words.size() && w < b.words.size(); ++w) {
    std::uint64_t diff = a.words[w] ^ b.words[w];
    if (diff) {
      // Lowest set bit of diff is the first differing coordinate.
      std::uint64_t mask = diff & (~diff + 1);
      return (a.words[w] & mask) == 0;
    }
  }
  return false;
}

std::vector<BitVec> nullspace(const BitMatrix& m) {
  size_t rows = m.rows(), cols = m.cols();

  // Work rows [M_i | e_i]; eliminate the M part, read combinations off
  // the identity part of rows that end up all-zero on the left.
  std::vector<BitVec> left, right;
  left.reserve(rows);
  right.reserve(rows);
  for (size_t r = 0; r < rows; ++r) {
    left.push_back(m.row(r));
    BitVec id(rows);
    id.set(r, true);
    right.push_back(std::move(id));
  }

  size_t pivot_row = 0;
  for (size_t c = 0; c < cols && pivot_row < rows; ++c) {
    size_t sel = pivot_row;
    while (sel < rows && !left[sel].get(c)) ++sel;
    if (sel == rows) continue;
    std::swap(left[sel], left[pivot_row]);
    std::swap(right[sel], right[pivot_row]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || !left[r].get(c)) continue;
      left[r].xor_with(left[pivot_row]);
      right[r].xor_with(right[pivot_row]);
    }
    ++pivot_row;
  }

  std::vector<BitVec> basis;
  for (size_t r = pivot_row; r < rows; ++r)
    if (!left[r].any()) basis.push_back(std::move(right[r]));
  return basis;
}

std::vector<BitVec> iterate_dependencies(const std::vector<BitVec>& basis,
                                         size_t cap) {
  std::vector<BitVec> out;
  if (basis.empty() || cap == 0) return out;
  size_t n = basis.size();

  // Subset-size-first generation keeps light combinations when the cap
  // truncates; the final sort orders the kept set by combined weight.
  std::vector<size_t> idx;
  for (size_t take = 1; take <= n && out.size() < cap; ++take) {
    idx.resize(take);
    for (size_t i = 0; i < take; ++i) idx[i] = i;
    // Next k-combination of {0..n-1} in lexicographic order.
    auto advance = [&]() {
      size_t i = take;
      while (i-- > 0) {
        if (idx[i] != i + n - take) {
          ++idx[i];
          for (size_t j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      BitVec c = basis[idx[0]];
      for (size_t i = 1; i < take; ++i) c.xor_with(basis[idx[i]]);
      if (c.any()) out.push_back(std::move(c));  // always nonzero for a basis
    } while (out.size() < cap && advance());
  }

  std::sort(out.begin(), out.end(), [](const BitVec& a, const BitVec& b) {
    size_t wa = a.popcount(), wb = b.popcount();
    if (wa != wb) return wa < wb;
    return lex_less(a, b);
  });
  return out;
}

}  // namespace pnl
