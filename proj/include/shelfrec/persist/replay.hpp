#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "shelfrec/core/event.hpp"
#include "shelfrec/core/rating_matrix.hpp"

namespace shelfrec {

/// State derived purely from the event log: scores (via the feedback rules),
/// per-session purchase history, and recommendation panels not yet settled.
struct ReplayState {
  struct OpenPanel {
    SessionId session;
    UserId user;
    std::vector<ItemId> shown;
    std::vector<ItemId> purchased;

    friend bool operator==(const OpenPanel&, const OpenPanel&) = default;
  };

  RatingMatrix ratings;
  std::map<SessionId, UserId> sessions;
  std::map<SessionId, std::vector<ItemId>> carts;
  std::map<std::string, OpenPanel> open_panels;  // by rec_id
  std::set<SessionId> checked_out;
  std::uint64_t last_sequence = 0;

  /// Applies one record. Records must arrive in sequence order; a record
  /// that contradicts the state (accepting an item never shown, events after
  /// checkout) throws parse_error.
  void apply(const EventRecord& record);

  /// Same ratings, carts, open panels and sessions.
  bool equivalent(const ReplayState& other) const;
};

ReplayState replay(std::span<const EventRecord> records);

inline constexpr std::size_t kDefaultSnapshotEvery = 1000;

/// Snapshot file with format header; preserves the rating matrix's
/// enumeration order so restored models index identically. Written to a
/// temporary file and renamed into place.
void write_snapshot(const ReplayState& state, const std::string& path);
ReplayState read_snapshot(const std::string& path);

/// Loads the snapshot (if present) and applies the log records after it.
ReplayState recover(const std::string& log_path, const std::optional<std::string>& snapshot_path);

}  // namespace shelfrec
