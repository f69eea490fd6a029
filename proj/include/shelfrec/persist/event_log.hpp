#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "shelfrec/core/event.hpp"

namespace shelfrec {

/// One record per line, self-describing JSON. The first line is a format
/// header: {"format":"shelfrec-events","version":1}.
std::string serialize_event(const EventRecord& record);
EventRecord parse_event(std::string_view line);

struct EventLogOptions {
  bool sync_each_append = false;  // fdatasync after every record
};

/// Append-only event log file with a single writer. Sequence numbers are
/// assigned here and are gap free, starting at 1.
class EventLog {
 public:
  static constexpr int kFormatVersion = 1;

  /// Opens (or creates) the log and recovers the last sequence number.
  explicit EventLog(std::string path, EventLogOptions options = {});
  ~EventLog();

  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  /// Stamps the next sequence number onto the record, writes it as one line
  /// and returns the number. On a failed write the file is truncated back so
  /// no partial record remains, and Error(storage) is thrown.
  std::uint64_t append(EventRecord record);

  std::uint64_t last_sequence() const noexcept { return last_sequence_; }
  const std::string& path() const noexcept { return path_; }

  /// Reads and validates a whole log: header, parse, and gap-free numbering.
  static std::vector<EventRecord> read_all(const std::string& path);

 private:
  std::string path_;
  EventLogOptions options_;
  int fd_ = -1;
  std::uint64_t last_sequence_ = 0;
};

}  // namespace shelfrec
