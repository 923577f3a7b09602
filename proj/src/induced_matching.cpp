#include "indmatch/induced_matching.hpp"

#include <algorithm>
#include <map>

namespace indmatch {

namespace {

std::vector<EnumeratedBlock> blocks_by(const Barcode& barcode, bool right) {
  std::map<DecoratedEndpoint, std::vector<BarRef>> groups;
  for (const auto& bar : barcode.elements()) {
    groups[right ? bar.interval.death() : bar.interval.birth()].push_back(bar);
  }
  std::vector<EnumeratedBlock> out;
  for (auto& [key, items] : groups) {
    std::stable_sort(items.begin(), items.end(), [right](const BarRef& a, const BarRef& b) {
      if (right) {
        if (a.interval.birth() != b.interval.birth()) return a.interval.birth() < b.interval.birth();
      } else if (a.interval.death() != b.interval.death()) {
        return a.interval.death() > b.interval.death();
      }
      return a.copy < b.copy;
    });
    out.push_back({key, std::move(items)});
  }
  return out;
}

// Pairs the i-th item of each small block with the i-th item of the matching big block.
std::vector<BarPair> pair_blocks(const std::vector<EnumeratedBlock>& small, const std::vector<EnumeratedBlock>& big,
                                 BlockOrder order, const char* side) {
  std::map<DecoratedEndpoint, const EnumeratedBlock*> lookup;
  for (const auto& block : big) lookup[block.key] = &block;
  std::vector<BarPair> pairs;
  for (const auto& block : small) {
    const auto it = lookup.find(block.key);
    const std::size_t available = it == lookup.end() ? 0 : it->second->items.size();
    if (available < block.items.size()) {
      throw DomainError(std::string("block with ") + side + " endpoint " + block.key.to_string() + " has " +
                        std::to_string(block.items.size()) + " bars but only " + std::to_string(available) +
                        " are available");
    }
    const auto& targets = it->second->items;
    for (std::size_t i = 0; i < block.items.size(); ++i) {
      const std::size_t k = order == BlockOrder::largest_first ? i : targets.size() - 1 - i;
      const std::size_t s = order == BlockOrder::largest_first ? i : block.items.size() - 1 - i;
      pairs.emplace_back(block.items[s], targets[k]);
    }
  }
  return pairs;
}

}  // namespace

std::vector<EnumeratedBlock> right_endpoint_blocks(const Barcode& barcode) { return blocks_by(barcode, true); }
std::vector<EnumeratedBlock> left_endpoint_blocks(const Barcode& barcode) { return blocks_by(barcode, false); }

Matching mono_injection(const Barcode& sub, const Barcode& sup, BlockOrder order) {
  auto pairs = pair_blocks(right_endpoint_blocks(sub), right_endpoint_blocks(sup), order, "right");
  return Matching(sub, sup, std::move(pairs));
}

Matching epi_injection(const Barcode& quotient, const Barcode& src, BlockOrder order) {
  auto pairs = pair_blocks(left_endpoint_blocks(quotient), left_endpoint_blocks(src), order, "left");
  for (auto& [a, b] : pairs) std::swap(a, b);
  return Matching(src, quotient, std::move(pairs));
}

Matching induced_matching(const Morphism& f, BlockOrder order) {
  const Factorization factors = factorize(f);
  const Barcode image = module_barcode(factors.image);
  const Matching epi = epi_injection(image, module_barcode(f.source()), order);
  const Matching mono = mono_injection(image, module_barcode(f.target()), order);
  return matching_compose(epi, mono);
}

Barcode image_barcode_of(const Matching& matching) {
  std::vector<Interval> pieces;
  for (const auto& [from, to] : matching.pairs()) {
    const auto overlap = from.interval.intersect(to.interval);
    if (!overlap) {
      throw DomainError("matched bars " + from.to_string() + " and " + to.to_string() + " do not overlap");
    }
    pieces.push_back(*overlap);
  }
  return Barcode(pieces);
}

}  // namespace indmatch
