#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "maxstable/common.hpp"

namespace maxstable {

// Nonempty set of distinct 0-based coordinate indices, kept strictly
// increasing. Blocks never validate against a dimension here; consumers
// that know the ambient dimension check membership themselves.
class IndexBlock {
public:
  explicit IndexBlock(std::vector<int> indices);
  static IndexBlock full(int d);  // {0, 1, ..., d-1}

  int size() const { return static_cast<int>(idx_.size()); }
  const std::vector<int>& indices() const { return idx_; }
  int operator[](int i) const { return idx_[static_cast<std::size_t>(i)]; }
  bool contains(int i) const;
  int min_index() const { return idx_.front(); }
  int max_index() const { return idx_.back(); }
  std::string to_string() const;

  bool operator==(const IndexBlock&) const = default;

private:
  std::vector<int> idx_;
};

// Partition of an index set into disjoint blocks, canonically ordered by
// smallest element. The constructor sorts and rejects overlapping blocks.
class SetPartition {
public:
  explicit SetPartition(std::vector<IndexBlock> blocks);

  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<IndexBlock>& blocks() const { return blocks_; }
  std::string to_string() const;

private:
  std::vector<IndexBlock> blocks_;
};

// m-th derivative of an outer scalar function, evaluated at a point y.
struct OuterDerivatives {
  std::function<double(int order, double y)> eval;
};

// Mixed partial of an inner function over the distinct indices of a block.
struct InnerBlockDerivatives {
  std::function<double(const IndexBlock& block)> eval;
};

// Visits every set partition of `indices`, finest first (all singletons)
// down to the single-block partition, blocks ordered by smallest element.
// Partitions are produced one at a time; nothing is materialized beyond the
// visitor's argument.
void for_each_partition(const IndexBlock& indices,
                        const std::function<void(const SetPartition&)>& visit,
                        int max_dimension = kDefaultMaxDimension);

std::vector<SetPartition> enumerate_partitions(
    const IndexBlock& indices, int max_dimension = kDefaultMaxDimension);

// Mixed partial of a composition outer(inner(x)) over distinct coordinates:
//   sum over set partitions P of `indices` of
//     outer(|P|)|_{inner_value} * prod_{B in P} inner(B).
// Throws NumericError naming the offending partition if any factor is
// non-finite.
double faa_di_bruno(const OuterDerivatives& outer, double inner_value,
                    const InnerBlockDerivatives& inner,
                    const IndexBlock& indices,
                    int max_dimension = kDefaultMaxDimension);

}  // namespace maxstable
