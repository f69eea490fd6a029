#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "shelfrec/core/geometry.hpp"
#include "shelfrec/core/ids.hpp"

namespace shelfrec {

struct Item {
  ItemId item_id;
  std::string name;
  ShelfId shelf_id;
  std::map<std::string, std::string> attributes;

  friend bool operator==(const Item&, const Item&) = default;
};

struct Shelf {
  ShelfId shelf_id;
  std::vector<ItemId> item_ids;  // stocking order
  ShelfZone zone;

  friend bool operator==(const Shelf&, const Shelf&) = default;
};

enum class ViolationKind {
  degenerate_zone,
  zone_overlap,
  duplicate_placement,
  empty_shelf,
  unknown_shelf,
  unknown_item,
  shelf_mismatch,
  duplicate_item,
  duplicate_shelf,
  unstocked_item,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct LayoutViolation {
  ViolationKind kind;
  std::string subject;  // offending id(s)
  std::string detail;

  friend bool operator==(const LayoutViolation&, const LayoutViolation&) = default;
};

/// Store catalog plus shelf placement. Shelves and items keep document order.
class StoreLayout {
 public:
  static constexpr int kFormatVersion = 1;

  StoreLayout() = default;
  StoreLayout(std::string name, std::vector<Shelf> shelves, std::vector<Item> items);

  const std::string& name() const noexcept { return name_; }
  const std::vector<Shelf>& shelves() const noexcept { return shelves_; }
  const std::vector<Item>& items() const noexcept { return items_; }

  const Item* find_item(const ItemId& id) const;
  const Shelf* find_shelf(const ShelfId& id) const;

  /// Catalog item ids in ascending order.
  std::vector<ItemId> sorted_item_ids() const;

  friend bool operator==(const StoreLayout& a, const StoreLayout& b) {
    return a.name_ == b.name_ && a.shelves_ == b.shelves_ && a.items_ == b.items_;
  }

 private:
  std::string name_;
  std::vector<Shelf> shelves_;
  std::vector<Item> items_;
  std::unordered_map<ItemId, std::size_t> item_pos_;
  std::unordered_map<ShelfId, std::size_t> shelf_pos_;
};

/// Empty result means the layout satisfies every catalog invariant.
std::vector<LayoutViolation> validate_layout(const StoreLayout& layout);

std::string serialize_layout(const StoreLayout& layout);
StoreLayout parse_layout(std::string_view text);
StoreLayout load_layout_file(const std::string& path);

}  // namespace shelfrec
