#include "shelfrec/session/spatial.hpp"

namespace shelfrec {

std::optional<ShelfId> locate(Point2 position, const StoreLayout& layout) {
  for (const auto& shelf : layout.shelves())
    if (shelf.zone.contains(position)) return shelf.shelf_id;
  return std::nullopt;
}

}  // namespace shelfrec
