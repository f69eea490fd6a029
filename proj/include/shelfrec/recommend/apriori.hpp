#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "shelfrec/core/ids.hpp"
#include "shelfrec/recommend/recommendation.hpp"

namespace shelfrec {

using Itemset = std::vector<ItemId>;  // sorted, duplicate free

struct FrequentItemset {
  Itemset items;
  std::size_t count = 0;
  double support = 0.0;

  friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

struct AssociationRule {
  Itemset antecedent;
  ItemId consequent;
  double support = 0.0;
  double confidence = 0.0;

  friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

struct AprioriRuleSet {
  std::vector<AssociationRule> rules;  // support desc, confidence desc, lexicographic
  std::vector<FrequentItemset> frequent_itemsets;  // by size, then lexicographic
  double min_support = 0.0;
  double min_confidence = 0.0;
  std::size_t transaction_count = 0;
};

struct AprioriOptions {
  double min_support = 0.5;
  double min_confidence = 0.5;
  std::optional<std::size_t> max_itemset_size;  // unlimited when unset
};

/// Admission test shared by mining and validation: count / n >= threshold,
/// with a 1e-12 slack so thresholds like 2/3 admit exactly 2 of 3.
bool meets_support(std::size_t count, std::size_t n, double threshold) noexcept;

/// Level-wise frequent-itemset mining followed by (itemset \ {c}) -> c rule
/// generation. An itemset is frequent when it occurs at least once and
/// meets min_support. Transactions may contain duplicates; they are
/// collapsed. An empty transaction list yields an empty rule set.
AprioriRuleSet apriori_mine(std::span<const Itemset> transactions, const AprioriOptions& options);

/// Consequents of rules whose antecedent is contained in the cart, scored by
/// the highest firing confidence. Cart items are never returned.
std::vector<Recommendation> apriori_recommend(const AprioriRuleSet& rules,
                                              std::span<const ItemId> cart, std::size_t top_n);

}  // namespace shelfrec
