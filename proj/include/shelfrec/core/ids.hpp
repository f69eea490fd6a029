#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace shelfrec {

// Typed wrapper around a string identifier so user, item, shelf and session
// ids cannot be mixed up at call sites.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

using UserId = StrongId<struct UserIdTag>;
using ItemId = StrongId<struct ItemIdTag>;
using ShelfId = StrongId<struct ShelfIdTag>;
using SessionId = StrongId<struct SessionIdTag>;

}  // namespace shelfrec

template <typename Tag>
struct std::hash<shelfrec::StrongId<Tag>> {
  std::size_t operator()(const shelfrec::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
