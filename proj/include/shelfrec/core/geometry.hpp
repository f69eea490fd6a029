#pragma once

namespace shelfrec {

/// Floor-plane coordinates in meters, origin at the store corner.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Rectangular detection area in front of a shelf. Half-open: the min corner
/// is inside, the max edges are outside.
struct ShelfZone {
  Point2 min_corner;
  Point2 max_corner;

  bool well_formed() const noexcept {
    return min_corner.x < max_corner.x && min_corner.y < max_corner.y;
  }

  bool contains(Point2 p) const noexcept {
    return p.x >= min_corner.x && p.x < max_corner.x && p.y >= min_corner.y &&
           p.y < max_corner.y;
  }

  bool overlaps(const ShelfZone& other) const noexcept {
    return min_corner.x < other.max_corner.x && other.min_corner.x < max_corner.x &&
           min_corner.y < other.max_corner.y && other.min_corner.y < max_corner.y;
  }

  friend bool operator==(const ShelfZone&, const ShelfZone&) = default;
};

}  // namespace shelfrec
