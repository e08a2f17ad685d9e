#pragma once

#include <cstddef>
#include <vector>

#include "reflekt/polyhedra.hpp"

namespace reflekt {

/// Places the minimum at k and the maximum at l (1-based).
struct Comparator {
  std::size_t k = 0;
  std::size_t l = 0;

  friend bool operator==(const Comparator&, const Comparator&) = default;
};

/// Application order: first comparator acts first when sorting. Relation order
/// is the order in which the matching transposition relations are composed,
/// which is the reverse.
enum class SeqOrder { application, relation };

struct ComparatorSeq {
  std::size_t n = 0;
  std::vector<Comparator> comparators;
  SeqOrder order = SeqOrder::application;

  std::size_t size() const { return comparators.size(); }
  /// The same sequence re-expressed in `target` order.
  ComparatorSeq as(SeqOrder target) const;
  /// Throws InvalidArgument on k == l or an index outside 1..n.
  void validate() const;

  friend bool operator==(const ComparatorSeq&, const ComparatorSeq&) = default;
};

/// Odd-even mergesort on the next power of two, pruned to indices <= n.
ComparatorSeq batcher(std::size_t n);

/// Bubble-style insertion network, n(n-1)/2 comparators.
ComparatorSeq insertion(std::size_t n);

/// Exhaustive 0/1 check. Throws InvalidArgument for n > 24.
bool is_sorting_network(const ComparatorSeq& seq);

/// Theta_k in relation order, length 2k - 3. Throws for k < 3.
ComparatorSeq theta_seq(std::size_t k);

/// The logarithmic stride sequence for level k in relation order. Throws for k < 3.
ComparatorSeq stride_seq(std::size_t k);

/// i^k_1, ..., i^k_{r(k)}.
std::vector<std::size_t> stride_indices(std::size_t k);

/// Folds the min/max preimage maps over y in the given order of the list.
Vector apply_comparators(const ComparatorSeq& seq, const Vector& y, SeqOrder order);

/// One transposition relation per comparator, in relation order.
std::vector<PolyhedralRelation> transposition_chain(const ComparatorSeq& seq,
                                                    Backend backend = Backend::rational);

}  // namespace reflekt
