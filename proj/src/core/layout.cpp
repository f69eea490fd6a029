#include "shelfrec/core/layout.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

using nlohmann::json;

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::degenerate_zone: return "degenerate-zone";
    case ViolationKind::zone_overlap: return "zone-overlap";
    case ViolationKind::duplicate_placement: return "duplicate-placement";
    case ViolationKind::empty_shelf: return "empty-shelf";
    case ViolationKind::unknown_shelf: return "unknown-shelf";
    case ViolationKind::unknown_item: return "unknown-item";
    case ViolationKind::shelf_mismatch: return "shelf-mismatch";
    case ViolationKind::duplicate_item: return "duplicate-item";
    case ViolationKind::duplicate_shelf: return "duplicate-shelf";
    case ViolationKind::unstocked_item: return "unstocked-item";
  }
  return "unknown";
}

StoreLayout::StoreLayout(std::string name, std::vector<Shelf> shelves, std::vector<Item> items)
    : name_(std::move(name)), shelves_(std::move(shelves)), items_(std::move(items)) {
  // First occurrence wins for lookups; duplicates are reported by validate_layout.
  for (std::size_t i = 0; i < items_.size(); ++i) item_pos_.try_emplace(items_[i].item_id, i);
  for (std::size_t i = 0; i < shelves_.size(); ++i)
    shelf_pos_.try_emplace(shelves_[i].shelf_id, i);
}

const Item* StoreLayout::find_item(const ItemId& id) const {
  auto it = item_pos_.find(id);
  return it == item_pos_.end() ? nullptr : &items_[it->second];
}

const Shelf* StoreLayout::find_shelf(const ShelfId& id) const {
  auto it = shelf_pos_.find(id);
  return it == shelf_pos_.end() ? nullptr : &shelves_[it->second];
}

std::vector<ItemId> StoreLayout::sorted_item_ids() const {
  std::set<ItemId> ids;
  for (const auto& item : items_) ids.insert(item.item_id);
  return {ids.begin(), ids.end()};
}

std::vector<LayoutViolation> validate_layout(const StoreLayout& layout) {
  std::vector<LayoutViolation> out;
  auto report = [&](ViolationKind kind, std::string subject, std::string detail) {
    out.push_back({kind, std::move(subject), std::move(detail)});
  };

  std::unordered_set<ShelfId> shelf_ids;
  for (const auto& shelf : layout.shelves()) {
    if (!shelf_ids.insert(shelf.shelf_id).second)
      report(ViolationKind::duplicate_shelf, shelf.shelf_id.str(), "shelf id declared twice");
    if (!shelf.zone.well_formed())
      report(ViolationKind::degenerate_zone, shelf.shelf_id.str(),
             "min corner must be strictly below max corner on both axes");
    if (shelf.item_ids.empty())
      report(ViolationKind::empty_shelf, shelf.shelf_id.str(), "shelf stocks no items");
  }

  const auto& shelves = layout.shelves();
  for (std::size_t a = 0; a < shelves.size(); ++a) {
    for (std::size_t b = a + 1; b < shelves.size(); ++b) {
      if (shelves[a].shelf_id == shelves[b].shelf_id) continue;
      if (shelves[a].zone.overlaps(shelves[b].zone))
        report(ViolationKind::zone_overlap,
               shelves[a].shelf_id.str() + "," + shelves[b].shelf_id.str(),
               "detection zones intersect");
    }
  }

  std::unordered_set<ItemId> item_ids;
  for (const auto& item : layout.items()) {
    if (!item_ids.insert(item.item_id).second)
      report(ViolationKind::duplicate_item, item.item_id.str(), "item id declared twice");
    if (!shelf_ids.contains(item.shelf_id))
      report(ViolationKind::unknown_shelf, item.item_id.str(),
             "item refers to missing shelf '" + item.shelf_id.str() + "'");
  }

  std::unordered_map<ItemId, ShelfId> placed;
  for (const auto& shelf : layout.shelves()) {
    for (const auto& id : shelf.item_ids) {
      auto [it, fresh] = placed.try_emplace(id, shelf.shelf_id);
      if (!fresh) {
        report(ViolationKind::duplicate_placement, id.str(),
               "stocked on '" + it->second.str() + "' and '" + shelf.shelf_id.str() + "'");
        continue;
      }
      const Item* item = layout.find_item(id);
      if (item == nullptr) {
        report(ViolationKind::unknown_item, id.str(),
               "shelf '" + shelf.shelf_id.str() + "' stocks an undeclared item");
      } else if (item->shelf_id != shelf.shelf_id) {
        report(ViolationKind::shelf_mismatch, id.str(),
               "declared on '" + item->shelf_id.str() + "' but stocked on '" +
                   shelf.shelf_id.str() + "'");
      }
    }
  }
  for (const auto& item : layout.items()) {
    if (!placed.contains(item.item_id) && shelf_ids.contains(item.shelf_id))
      report(ViolationKind::unstocked_item, item.item_id.str(),
             "shelf '" + item.shelf_id.str() + "' does not list this item");
  }
  return out;
}

namespace {

json point_to_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::parse_error, "corner must be a [x, y] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) fail(ErrorCode::parse_error, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string serialize_layout(const StoreLayout& layout) {
  json doc;
  doc["format"] = "shelfrec-layout";
  doc["version"] = StoreLayout::kFormatVersion;
  doc["name"] = layout.name();
  json shelves = json::array();
  for (const auto& shelf : layout.shelves()) {
    json ids = json::array();
    for (const auto& id : shelf.item_ids) ids.push_back(id.str());
    shelves.push_back({{"shelf_id", shelf.shelf_id.str()},
                       {"zone", {{"min", point_to_json(shelf.zone.min_corner)},
                                 {"max", point_to_json(shelf.zone.max_corner)}}},
                       {"item_ids", std::move(ids)}});
  }
  json items = json::array();
  for (const auto& item : layout.items()) {
    items.push_back({{"item_id", item.item_id.str()},
                     {"name", item.name},
                     {"shelf_id", item.shelf_id.str()},
                     {"attributes", item.attributes}});
  }
  doc["shelves"] = std::move(shelves);
  doc["items"] = std::move(items);
  return doc.dump(2) + "\n";
}

StoreLayout parse_layout(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse_error, std::string("layout is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::parse_error, "layout document must be an object");
  if (require_string(doc, "format") != "shelfrec-layout")
    fail(ErrorCode::parse_error, "unexpected layout format tag");
  const json& version = require(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != StoreLayout::kFormatVersion)
    fail(ErrorCode::parse_error, "unsupported layout version");

  std::vector<Shelf> shelves;
  for (const auto& s : require(doc, "shelves")) {
    Shelf shelf;
    shelf.shelf_id = ShelfId(require_string(s, "shelf_id"));
    const json& zone = require(s, "zone");
    shelf.zone.min_corner = point_from_json(require(zone, "min"));
    shelf.zone.max_corner = point_from_json(require(zone, "max"));
    for (const auto& id : require(s, "item_ids")) {
      if (!id.is_string()) fail(ErrorCode::parse_error, "item_ids entries must be strings");
      shelf.item_ids.emplace_back(id.get<std::string>());
    }
    shelves.push_back(std::move(shelf));
  }

  std::vector<Item> items;
  for (const auto& i : require(doc, "items")) {
    Item item;
    item.item_id = ItemId(require_string(i, "item_id"));
    item.name = require_string(i, "name");
    item.shelf_id = ShelfId(require_string(i, "shelf_id"));
    if (auto attrs = i.find("attributes"); attrs != i.end()) {
      if (!attrs->is_object()) fail(ErrorCode::parse_error, "attributes must be an object");
      for (const auto& [key, value] : attrs->items()) {
        if (!value.is_string()) fail(ErrorCode::parse_error, "attribute values must be strings");
        item.attributes.emplace(key, value.get<std::string>());
      }
    }
    items.push_back(std::move(item));
  }
  return StoreLayout(doc.value("name", std::string{}), std::move(shelves), std::move(items));
}

StoreLayout load_layout_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::storage, "cannot open layout file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_layout(buffer.str());
}

}  // namespace shelfrec
