#pragma once

#include <optional>

#include "shelfrec/core/geometry.hpp"
#include "shelfrec/core/layout.hpp"

namespace shelfrec {

/// Shelf whose detection zone contains the point (min edges inclusive, max
/// edges exclusive), or none when standing in an aisle. Zones of a valid
/// layout are disjoint, so the answer is unique.
std::optional<ShelfId> locate(Point2 position, const StoreLayout& layout);

}  // namespace shelfrec
