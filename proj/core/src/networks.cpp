#include "reflekt/networks.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "reflekt/errors.hpp"
#include "reflekt/reflections.hpp"

namespace reflekt {

ComparatorSeq ComparatorSeq::as(SeqOrder target) const {
  ComparatorSeq out = *this;
  if (target != order) {
    std::reverse(out.comparators.begin(), out.comparators.end());
    out.order = target;
  }
  return out;
}

void ComparatorSeq::validate() const {
  for (const auto& c : comparators) {
    if (c.k == c.l || c.k < 1 || c.l < 1 || c.k > n || c.l > n) {
      throw InvalidArgument("comparator (" + std::to_string(c.k) + "," + std::to_string(c.l) +
                            ") invalid for n=" + std::to_string(n));
    }
  }
}

namespace {

// Knuth's merge-exchange formulation of Batcher's odd-even mergesort over
// 0-based indices of a power-of-two width.
void odd_even_merge_sort(std::size_t width, std::vector<Comparator>& out, std::size_t n) {
  for (std::size_t p = 1; p < width; p <<= 1) {
    for (std::size_t k = p; k >= 1; k >>= 1) {
      for (std::size_t j = k % p; j + k < width; j += 2 * k) {
        for (std::size_t i = 0; i < k; ++i) {
          const std::size_t a = i + j;
          const std::size_t b = i + j + k;
          if (b >= width) continue;
          if (a / (2 * p) != b / (2 * p)) continue;
          if (b < n) out.push_back({a + 1, b + 1});
        }
      }
    }
  }
}

}  // namespace

ComparatorSeq batcher(std::size_t n) {
  if (n == 0) throw InvalidArgument("batcher network needs n >= 1");
  std::size_t width = 1;
  while (width < n) width <<= 1;
  ComparatorSeq seq{n, {}, SeqOrder::application};
  odd_even_merge_sort(width, seq.comparators, n);
  return seq;
}

ComparatorSeq insertion(std::size_t n) {
  if (n == 0) throw InvalidArgument("insertion network needs n >= 1");
  ComparatorSeq seq{n, {}, SeqOrder::application};
  for (std::size_t i = 2; i <= n; ++i) {
    for (std::size_t j = i; j >= 2; --j) seq.comparators.push_back({j - 1, j});
  }
  return seq;
}

bool is_sorting_network(const ComparatorSeq& seq) {
  if (seq.n > 24) throw InvalidArgument("exhaustive 0/1 check is capped at n = 24");
  seq.validate();
  const ComparatorSeq app = seq.as(SeqOrder::application);
  const std::uint32_t total = std::uint32_t{1} << seq.n;
  for (std::uint32_t input = 0; input < total; ++input) {
    std::uint32_t bits = input;
    for (const auto& c : app.comparators) {
      const std::uint32_t bk = (bits >> (c.k - 1)) & 1U;
      const std::uint32_t bl = (bits >> (c.l - 1)) & 1U;
      if (bk > bl) bits ^= (std::uint32_t{1} << (c.k - 1)) | (std::uint32_t{1} << (c.l - 1));
    }
    // Sorted iff the ones occupy the top positions.
    const std::uint32_t ones = static_cast<std::uint32_t>(__builtin_popcount(bits));
    const std::uint32_t expected = ones == 0 ? 0 : ((total - 1) ^ ((std::uint32_t{1} << (seq.n - ones)) - 1));
    if (bits != expected) return false;
  }
  return true;
}

ComparatorSeq theta_seq(std::size_t k) {
  if (k < 3) throw InvalidArgument("theta sequence needs k >= 3");
  ComparatorSeq seq{k, {}, SeqOrder::relation};
  for (std::size_t i = k - 2; i >= 1; --i) seq.comparators.push_back({i, i + 1});
  for (std::size_t i = k - 1; i >= 1; --i) seq.comparators.push_back({i, i + 1});
  return seq;
}

std::vector<std::size_t> stride_indices(std::size_t k) {
  if (k < 3) throw InvalidArgument("stride sequence needs k >= 3");
  std::vector<std::size_t> idx{k, k - 1};
  std::size_t step = 1;
  while (idx.back() > step) {
    idx.push_back(idx.back() - step);
    step <<= 1;
  }
  return idx;
}

ComparatorSeq stride_seq(std::size_t k) {
  const std::vector<std::size_t> idx = stride_indices(k);
  const std::size_t r = idx.size();
  ComparatorSeq seq{k, {}, SeqOrder::relation};
  // (i_2,i_1), ..., (i_r,i_{r-1}), then back down to (i_2,i_1); idx is 0-based here.
  for (std::size_t l = 1; l < r; ++l) seq.comparators.push_back({idx[l], idx[l - 1]});
  for (std::size_t l = r - 2; l >= 1; --l) seq.comparators.push_back({idx[l], idx[l - 1]});
  return seq;
}

Vector apply_comparators(const ComparatorSeq& seq, const Vector& y, SeqOrder order) {
  if (y.size() != seq.n) throw DimensionError("apply_comparators: dimension mismatch");
  seq.validate();
  const ComparatorSeq app = seq.as(order);
  Vector out = y;
  for (const auto& c : app.comparators) {
    if (exact_less(out[c.l - 1], out[c.k - 1])) std::swap(out[c.k - 1], out[c.l - 1]);
  }
  return out;
}

std::vector<PolyhedralRelation> transposition_chain(const ComparatorSeq& seq, Backend backend) {
  seq.validate();
  const ComparatorSeq rel = seq.as(SeqOrder::relation);
  std::vector<PolyhedralRelation> out;
  out.reserve(rel.size());
  for (const auto& c : rel.comparators) out.push_back(transposition_relation(c.k, c.l, seq.n, backend));
  return out;
}

}  // namespace reflekt
