#include "maxstable/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace maxstable {

IndexBlock::IndexBlock(std::vector<int> indices) : idx_(std::move(indices)) {
  require(!idx_.empty(), "IndexBlock: empty index set");
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    require(idx_[i] >= 0, "IndexBlock: negative index");
    if (i > 0)
      require(idx_[i] > idx_[i - 1],
              "IndexBlock: indices must be strictly increasing");
  }
}

IndexBlock IndexBlock::full(int d) {
  require(d >= 1, "IndexBlock::full: dimension must be positive");
  std::vector<int> v(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = i;
  return IndexBlock(std::move(v));
}

bool IndexBlock::contains(int i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

std::string IndexBlock::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (i) os << ',';
    os << idx_[i];
  }
  os << '}';
  return os.str();
}

SetPartition::SetPartition(std::vector<IndexBlock> blocks)
    : blocks_(std::move(blocks)) {
  require(!blocks_.empty(), "SetPartition: no blocks");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const IndexBlock& a, const IndexBlock& b) {
              return a.min_index() < b.min_index();
            });
  std::vector<int> seen;
  for (const IndexBlock& b : blocks_)
    seen.insert(seen.end(), b.indices().begin(), b.indices().end());
  std::sort(seen.begin(), seen.end());
  require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
          "SetPartition: blocks overlap");
}

std::string SetPartition::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << ',';
    os << blocks_[i].to_string();
  }
  os << '}';
  return os.str();
}

namespace {

// Restricted growth strings: labels[0] = 0 and labels[i] <= max(labels[<i]) + 1.
// Each string maps to the partition whose j-th block collects the positions
// labeled j; first-occurrence labeling orders blocks by smallest element.
// Walks finest-first: the all-singletons partition leads, the one-block
// partition closes.
template <typename Fn>
void walk_growth_strings(int m, Fn&& emit) {
  std::vector<int> a(static_cast<std::size_t>(m));
  // cap[i] = max(a[0..i-1]); position i may carry labels 0..cap[i]+1.
  std::vector<int> cap(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    a[static_cast<std::size_t>(i)] = i;
    cap[static_cast<std::size_t>(i)] = i - 1;
  }
  while (true) {
    emit(a);
    int i = m - 1;
    while (i > 0 && a[static_cast<std::size_t>(i)] == 0) --i;
    if (i == 0) return;
    --a[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j) {
      cap[static_cast<std::size_t>(j)] =
          std::max(cap[static_cast<std::size_t>(j - 1)],
                   a[static_cast<std::size_t>(j - 1)]);
      a[static_cast<std::size_t>(j)] = cap[static_cast<std::size_t>(j)] + 1;
    }
  }
}

SetPartition partition_from_labels(const IndexBlock& indices,
                                   const std::vector<int>& labels) {
  int nblocks = 0;
  for (int l : labels) nblocks = std::max(nblocks, l + 1);
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(nblocks));
  for (std::size_t pos = 0; pos < labels.size(); ++pos)
    groups[static_cast<std::size_t>(labels[pos])].push_back(
        indices[static_cast<int>(pos)]);
  std::vector<IndexBlock> blocks;
  blocks.reserve(groups.size());
  for (auto& g : groups) blocks.emplace_back(std::move(g));
  return SetPartition(std::move(blocks));
}

}  // namespace

void for_each_partition(const IndexBlock& indices,
                        const std::function<void(const SetPartition&)>& visit,
                        int max_dimension) {
  if (indices.size() > max_dimension)
    throw DimensionLimitError("for_each_partition: " +
                              std::to_string(indices.size()) +
                              " indices exceed the dimension cap " +
                              std::to_string(max_dimension));
  walk_growth_strings(indices.size(), [&](const std::vector<int>& labels) {
    visit(partition_from_labels(indices, labels));
  });
}

std::vector<SetPartition> enumerate_partitions(const IndexBlock& indices,
                                               int max_dimension) {
  std::vector<SetPartition> out;
  for_each_partition(
      indices, [&](const SetPartition& p) { out.push_back(p); },
      max_dimension);
  return out;
}

double faa_di_bruno(const OuterDerivatives& outer, double inner_value,
                    const InnerBlockDerivatives& inner,
                    const IndexBlock& indices, int max_dimension) {
  if (!std::isfinite(inner_value))
    throw NumericError("faa_di_bruno: non-finite inner value");
  double total = 0.0;
  for_each_partition(
      indices,
      [&](const SetPartition& p) {
        double term = outer.eval(p.block_count(), inner_value);
        for (const IndexBlock& b : p.blocks()) term *= inner.eval(b);
        if (!std::isfinite(term))
          throw NumericError("faa_di_bruno: non-finite term at partition " +
                             p.to_string());
        total += term;
      },
      max_dimension);
  return total;
}

}  // namespace maxstable
