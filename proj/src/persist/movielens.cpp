#include "shelfrec/persist/movielens.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "shelfrec/core/errors.hpp"

namespace shelfrec {

namespace {

std::uint64_t mix(std::uint64_t x) noexcept {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

[[noreturn]] void bad_line(std::size_t line_number, const std::string& why) {
  fail(ErrorCode::parse_error, "ratings line " + std::to_string(line_number) + ": " + why);
}

std::int64_t parse_int(std::string_view field, std::size_t line_number, const char* name) {
  std::int64_t value = 0;
  auto r = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || r.ec != std::errc() || r.ptr != field.data() + field.size())
    bad_line(line_number, std::string("malformed ") + name + " '" + std::string(field) + "'");
  return value;
}

}  // namespace

MovieLensRecord parse_movielens_line(std::string_view line, std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string_view fields[4];
  std::size_t count = 0;
  while (true) {
    const auto sep = line.find("::");
    if (count == 3) {
      if (sep != std::string_view::npos) bad_line(line_number, "expected exactly 4 fields");
      fields[count++] = line;
      break;
    }
    if (sep == std::string_view::npos) bad_line(line_number, "expected exactly 4 fields");
    fields[count++] = line.substr(0, sep);
    line.remove_prefix(sep + 2);
  }
  MovieLensRecord r;
  r.user_id = parse_int(fields[0], line_number, "user id");
  r.movie_id = parse_int(fields[1], line_number, "movie id");
  const auto rating = parse_int(fields[2], line_number, "rating");
  r.timestamp = parse_int(fields[3], line_number, "timestamp");
  if (rating < 1 || rating > 5)
    bad_line(line_number, "rating " + std::to_string(rating) + " outside 1..5");
  r.rating = static_cast<int>(rating);
  return r;
}

std::string format_movielens_line(const MovieLensRecord& r) {
  return std::to_string(r.user_id) + "::" + std::to_string(r.movie_id) + "::" +
         std::to_string(r.rating) + "::" + std::to_string(r.timestamp);
}

bool in_test_split(const MovieLensRecord& r, std::uint64_t seed) noexcept {
  std::uint64_t h = mix(seed);
  h = mix(h ^ static_cast<std::uint64_t>(r.user_id));
  h = mix(h ^ static_cast<std::uint64_t>(r.movie_id));
  h = mix(h ^ static_cast<std::uint64_t>(r.timestamp));
  return h % 5 == 0;
}

MovieLensData load_movielens(const std::string& path, const MovieLensLoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::storage, "cannot open ratings file '" + path + "'");
  if (!(options.user_fraction > 0.0 && options.user_fraction <= 1.0))
    fail(ErrorCode::invalid_argument, "user_fraction must lie in (0, 1]");
  const auto user_cutoff = static_cast<std::uint64_t>(options.user_fraction * 1'000'000.0);

  MovieLensData data;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    const auto record = parse_movielens_line(line, line_number);
    ++data.total_lines;
    if (options.user_fraction < 1.0 &&
        mix(mix(options.seed) ^ static_cast<std::uint64_t>(record.user_id)) % 1'000'000 >=
            user_cutoff)
      continue;
    if (options.split != Split::all &&
        in_test_split(record, options.seed) != (options.split == Split::test))
      continue;
    data.ratings.set(UserId(std::to_string(record.user_id)),
                     ItemId(std::to_string(record.movie_id)), record.rating);
    data.max_movie_id = std::max(data.max_movie_id, record.movie_id);
    ++data.record_count;
  }
  if (data.total_lines == 0) fail(ErrorCode::parse_error, "ratings file '" + path + "' is empty");
  return data;
}

std::vector<Itemset> binarize_transactions(const RatingMatrix& ratings, int like_threshold) {
  if (like_threshold < 1 || like_threshold > 5)
    fail(ErrorCode::invalid_argument, "like_threshold must lie in 1..5");
  std::vector<Itemset> out;
  for (RatingMatrix::Index u = 0; u < ratings.user_count(); ++u) {
    Itemset basket;
    for (const auto& e : ratings.row(u))
      if (e.score >= like_threshold) basket.push_back(ratings.item_at(e.index));
    if (basket.empty()) continue;
    std::sort(basket.begin(), basket.end());
    out.push_back(std::move(basket));
  }
  return out;
}

}  // namespace shelfrec
