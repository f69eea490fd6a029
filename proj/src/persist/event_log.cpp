#include "shelfrec/persist/event_log.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

using nlohmann::json;

namespace {

const std::string kHeader = R"({"format":"shelfrec-events","version":1})";

[[noreturn]] void io_error(const std::string& what, const std::string& path) {
  fail(ErrorCode::storage, what + " '" + path + "': " + std::strerror(errno));
}

bool write_all(int fd, const std::string& data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

}  // namespace

std::string serialize_event(const EventRecord& r) {
  json j;
  j["seq"] = r.sequence_number;
  j["session"] = r.session_id.str();
  j["user"] = r.user_id.str();
  j["t"] = r.timestamp;
  j["kind"] = std::string(to_string(r.kind));
  if (r.item) j["item"] = r.item->str();
  if (r.rec_id) j["rec_id"] = *r.rec_id;
  if (!r.items.empty()) {
    json items = json::array();
    for (const auto& i : r.items) items.push_back(i.str());
    j["items"] = std::move(items);
  }
  if (r.position) {
    j["x"] = r.position->x;
    j["y"] = r.position->y;
  }
  return j.dump();
}

EventRecord parse_event(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
    EventRecord r;
    r.sequence_number = j.at("seq").get<std::uint64_t>();
    r.session_id = SessionId(j.at("session").get<std::string>());
    r.user_id = UserId(j.at("user").get<std::string>());
    r.timestamp = j.at("t").get<double>();
    const auto kind_name = j.at("kind").get<std::string>();
    auto kind = event_kind_from_string(kind_name);
    if (!kind) fail(ErrorCode::parse_error, "unknown event kind '" + kind_name + "'");
    r.kind = *kind;
    if (j.contains("item")) r.item = ItemId(j["item"].get<std::string>());
    if (j.contains("rec_id")) r.rec_id = j["rec_id"].get<std::string>();
    if (j.contains("items"))
      for (const auto& i : j["items"]) r.items.emplace_back(i.get<std::string>());
    if (j.contains("x") || j.contains("y"))
      r.position = Point2{j.at("x").get<double>(), j.at("y").get<double>()};
    validate_event(r);
    return r;
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed event record: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) throw;
    fail(ErrorCode::parse_error, e.what());
  }
}

EventLog::EventLog(std::string path, EventLogOptions options)
    : path_(std::move(path)), options_(options) {
  struct stat st {};
  const bool exists = ::stat(path_.c_str(), &st) == 0 && st.st_size > 0;
  if (exists) {
    auto records = read_all(path_);
    last_sequence_ = records.empty() ? 0 : records.back().sequence_number;
  }
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) io_error("cannot open event log", path_);
  if (!exists && !write_all(fd_, kHeader + "\n")) {
    ::close(fd_);
    io_error("cannot write event log header", path_);
  }
}

EventLog::~EventLog() {
  if (fd_ >= 0) ::close(fd_);
}

std::uint64_t EventLog::append(EventRecord record) {
  validate_event(record);
  record.sequence_number = last_sequence_ + 1;
  const std::string line = serialize_event(record) + "\n";
  const off_t before = ::lseek(fd_, 0, SEEK_END);
  if (before < 0) io_error("cannot seek event log", path_);
  if (!write_all(fd_, line) || (options_.sync_each_append && ::fdatasync(fd_) != 0)) {
    const int saved = errno;
    // If truncation fails too, read_all rejects the torn tail.
    [[maybe_unused]] const int rc = ::ftruncate(fd_, before);
    errno = saved;
    io_error("failed appending to event log", path_);
  }
  last_sequence_ = record.sequence_number;
  return last_sequence_;
}

std::vector<EventRecord> EventLog::read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::storage, "cannot open event log '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) return {};
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception&) {
    fail(ErrorCode::parse_error, "event log '" + path + "' has no format header");
  }
  if (header.value("format", "") != "shelfrec-events" || header.value("version", 0) != kFormatVersion)
    fail(ErrorCode::parse_error, "event log '" + path + "' has an unsupported format header");

  std::vector<EventRecord> records;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    EventRecord r;
    try {
      r = parse_event(line);
    } catch (const Error& e) {
      fail(ErrorCode::parse_error,
           "event log line " + std::to_string(line_number) + ": " + e.what());
    }
    const std::uint64_t expected = records.empty() ? 1 : records.back().sequence_number + 1;
    if (r.sequence_number != expected)
      fail(ErrorCode::parse_error, "event log line " + std::to_string(line_number) +
                                       ": sequence " + std::to_string(r.sequence_number) +
                                       " where " + std::to_string(expected) + " was expected");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace shelfrec
