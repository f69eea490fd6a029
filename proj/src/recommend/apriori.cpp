#include "shelfrec/recommend/apriori.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

bool meets_support(std::size_t count, std::size_t n, double threshold) noexcept {
  if (n == 0) return false;
  return static_cast<double>(count) / static_cast<double>(n) + 1e-12 >= threshold;
}

namespace {

using Code = std::uint32_t;
using Codes = std::vector<Code>;
using Word = std::uint64_t;

// One mining level: itemsets of equal size in lexicographic order, each with
// its transaction-id bitset.
struct Level {
  std::vector<Codes> itemsets;
  std::vector<std::size_t> counts;
  std::vector<Word> tids;  // itemsets.size() * words
};

std::size_t popcount_and(const Word* a, const Word* b, Word* out, std::size_t words) {
  std::size_t total = 0;
  for (std::size_t w = 0; w < words; ++w) {
    out[w] = a[w] & b[w];
    total += static_cast<std::size_t>(std::popcount(out[w]));
  }
  return total;
}

bool contains_sorted(const std::vector<Codes>& sorted, const Codes& key) {
  return std::binary_search(sorted.begin(), sorted.end(), key);
}

}  // namespace

AprioriRuleSet apriori_mine(std::span<const Itemset> transactions, const AprioriOptions& options) {
  if (options.min_support < 0.0 || options.min_support > 1.0)
    fail(ErrorCode::invalid_argument, "min_support must lie in [0, 1]");
  if (options.min_confidence < 0.0 || options.min_confidence > 1.0)
    fail(ErrorCode::invalid_argument, "min_confidence must lie in [0, 1]");

  AprioriRuleSet result;
  result.min_support = options.min_support;
  result.min_confidence = options.min_confidence;
  const std::size_t n = transactions.size();
  result.transaction_count = n;
  if (n == 0) return result;

  // Codes follow ascending item id, so code order is lexicographic order.
  std::set<ItemId> universe;
  for (const auto& t : transactions) universe.insert(t.begin(), t.end());
  const std::vector<ItemId> items(universe.begin(), universe.end());
  std::map<ItemId, Code> code_of;
  for (Code c = 0; c < items.size(); ++c) code_of.emplace(items[c], c);

  const std::size_t words = (n + 63) / 64;
  std::vector<Word> item_tids(items.size() * words, 0);
  for (std::size_t t = 0; t < n; ++t)
    for (const auto& item : transactions[t])
      item_tids[code_of[item] * words + t / 64] |= Word{1} << (t % 64);

  std::map<Codes, std::size_t> frequent_counts;
  auto admit = [&](std::size_t count) {
    return count >= 1 && meets_support(count, n, options.min_support);
  };
  auto record = [&](const Codes& set, std::size_t count) {
    frequent_counts.emplace(set, count);
    FrequentItemset fi;
    for (Code c : set) fi.items.push_back(items[c]);
    fi.count = count;
    fi.support = static_cast<double>(count) / static_cast<double>(n);
    result.frequent_itemsets.push_back(std::move(fi));
  };

  Level level;
  for (Code c = 0; c < items.size(); ++c) {
    const Word* bits = &item_tids[c * words];
    std::size_t count = 0;
    for (std::size_t w = 0; w < words; ++w) count += static_cast<std::size_t>(std::popcount(bits[w]));
    if (!admit(count)) continue;
    level.itemsets.push_back({c});
    level.counts.push_back(count);
    level.tids.insert(level.tids.end(), bits, bits + words);
    record({c}, count);
  }

  std::size_t size = 1;
  std::vector<Word> scratch(words);
  while (!level.itemsets.empty() &&
         (!options.max_itemset_size || size < *options.max_itemset_size)) {
    Level next;
    const auto& sets = level.itemsets;
    // Join itemsets sharing their first size-1 codes; such runs are contiguous.
    for (std::size_t run = 0; run < sets.size();) {
      std::size_t run_end = run + 1;
      while (run_end < sets.size() &&
             std::equal(sets[run].begin(), sets[run].end() - 1, sets[run_end].begin()))
        ++run_end;
      for (std::size_t a = run; a < run_end; ++a) {
        for (std::size_t b = a + 1; b < run_end; ++b) {
          Codes candidate = sets[a];
          candidate.push_back(sets[b].back());
          // Every subset of size `size` must be frequent. Dropping either of
          // the last two codes gives the joined parents, so check the rest.
          bool pruned = false;
          for (std::size_t drop = 0; drop + 2 < candidate.size() && !pruned; ++drop) {
            Codes subset;
            subset.reserve(size);
            for (std::size_t k = 0; k < candidate.size(); ++k)
              if (k != drop) subset.push_back(candidate[k]);
            pruned = !contains_sorted(sets, subset);
          }
          if (pruned) continue;
          const std::size_t count = popcount_and(&level.tids[a * words], &level.tids[b * words],
                                                 scratch.data(), words);
          if (!admit(count)) continue;
          next.itemsets.push_back(candidate);
          next.counts.push_back(count);
          next.tids.insert(next.tids.end(), scratch.begin(), scratch.end());
          record(candidate, count);
        }
      }
      run = run_end;
    }
    level = std::move(next);
    ++size;
  }

  for (const auto& [set, count] : frequent_counts) {
    if (set.size() < 2) continue;
    for (std::size_t c = 0; c < set.size(); ++c) {
      Codes antecedent;
      for (std::size_t k = 0; k < set.size(); ++k)
        if (k != c) antecedent.push_back(set[k]);
      const double confidence =
          static_cast<double>(count) / static_cast<double>(frequent_counts.at(antecedent));
      if (confidence + 1e-12 < options.min_confidence) continue;
      AssociationRule rule;
      for (Code a : antecedent) rule.antecedent.push_back(items[a]);
      rule.consequent = items[set[c]];
      rule.support = static_cast<double>(count) / static_cast<double>(n);
      rule.confidence = confidence;
      result.rules.push_back(std::move(rule));
    }
  }
  std::sort(result.rules.begin(), result.rules.end(),
            [](const AssociationRule& a, const AssociationRule& b) {
              if (a.support != b.support) return a.support > b.support;
              if (a.confidence != b.confidence) return a.confidence > b.confidence;
              if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
              return a.consequent < b.consequent;
            });
  return result;
}

std::vector<Recommendation> apriori_recommend(const AprioriRuleSet& rules,
                                              std::span<const ItemId> cart, std::size_t top_n) {
  if (top_n == 0) fail(ErrorCode::invalid_argument, "top_n must be >= 1");
  std::vector<ItemId> basket(cart.begin(), cart.end());
  std::sort(basket.begin(), basket.end());
  basket.erase(std::unique(basket.begin(), basket.end()), basket.end());

  std::map<ItemId, double> best;
  for (const auto& rule : rules.rules) {
    if (std::binary_search(basket.begin(), basket.end(), rule.consequent)) continue;
    if (!std::includes(basket.begin(), basket.end(), rule.antecedent.begin(),
                       rule.antecedent.end()))
      continue;
    auto [it, fresh] = best.try_emplace(rule.consequent, rule.confidence);
    if (!fresh) it->second = std::max(it->second, rule.confidence);
  }
  std::vector<Recommendation> out;
  for (const auto& [item, confidence] : best) out.push_back({item, confidence, RecSource::apriori});
  rank_and_truncate(out, top_n);
  return out;
}

}  // namespace shelfrec
