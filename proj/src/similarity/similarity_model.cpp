#include "shelfrec/similarity/similarity_model.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <thread>

#include "shelfrec/core/errors.hpp"
#include "shelfrec/similarity/vector_math.hpp"

namespace shelfrec {

std::string_view to_string(ModelKind kind) noexcept {
  return kind == ModelKind::item_item ? "item_item" : "user_user";
}

std::optional<ModelKind> model_kind_from_string(std::string_view text) noexcept {
  if (text == "item_item" || text == "item" || text == "icf") return ModelKind::item_item;
  if (text == "user_user" || text == "user" || text == "ucf") return ModelKind::user_user;
  return std::nullopt;
}

std::size_t SimilarityModel::pair_count() const noexcept {
  std::size_t diagonal = 0;
  for (Index a = 0; a + 1 < offsets_.size(); ++a)
    for (std::size_t k = offsets_[a]; k < offsets_[a + 1]; ++k)
      if (neighbors_[k].index == a) ++diagonal;
  return (neighbors_.size() - diagonal) / 2;
}

std::optional<SimilarityModel::Index> SimilarityModel::find(std::string_view id) const {
  auto it = id_index_.find(std::string(id));
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const SimilarityModel::Neighbor> SimilarityModel::neighbors(Index index) const {
  if (static_cast<std::size_t>(index) + 1 >= offsets_.size()) return {};
  return {neighbors_.data() + offsets_[index], offsets_[index + 1] - offsets_[index]};
}

std::optional<double> SimilarityModel::similarity(Index a, Index b) const {
  auto row = neighbors(a);
  auto it = std::lower_bound(row.begin(), row.end(), b,
                             [](const Neighbor& n, Index i) { return n.index < i; });
  if (it == row.end() || it->index != b) return std::nullopt;
  return it->similarity;
}

std::optional<double> SimilarityModel::similarity(std::string_view a, std::string_view b) const {
  auto ia = find(a);
  auto ib = find(b);
  if (!ia || !ib) return std::nullopt;
  return similarity(*ia, *ib);
}

void SimilarityModel::index_ids() {
  id_index_.clear();
  id_index_.reserve(ids_.size());
  for (Index i = 0; i < ids_.size(); ++i) id_index_.emplace(ids_[i], i);
}

bool operator==(const SimilarityModel& a, const SimilarityModel& b) {
  if (a.kind_ != b.kind_ || a.ids_ != b.ids_ || a.offsets_ != b.offsets_ ||
      a.source_revision_ != b.source_revision_ || a.neighbors_.size() != b.neighbors_.size())
    return false;
  for (std::size_t k = 0; k < a.neighbors_.size(); ++k) {
    if (a.neighbors_[k].index != b.neighbors_[k].index ||
        a.neighbors_[k].similarity != b.neighbors_[k].similarity)
      return false;
  }
  return true;
}

namespace {

using Entry = RatingMatrix::Entry;
using Index = RatingMatrix::Index;
using Neighbor = SimilarityModel::Neighbor;

struct RowBlock {
  std::vector<std::size_t> counts;
  std::vector<Neighbor> neighbors;
};

// Computes rows [begin, end). vectors(a) lists entity a's recorded
// components; transposed(k) lists every entity with a recorded component k.
// Contributions to a pair accumulate in ascending component order from
// either side, so row a and row b produce bit-identical values.
template <typename VectorsFn, typename TransposedFn>
RowBlock compute_rows(Index begin, Index end, std::size_t entity_count,
                      const std::vector<double>& norms, VectorsFn vectors,
                      TransposedFn transposed) {
  RowBlock block;
  block.counts.reserve(end - begin);
  std::vector<double> dot(entity_count, 0.0);
  std::vector<char> seen(entity_count, 0);
  std::vector<Index> touched;
  for (Index a = begin; a < end; ++a) {
    touched.clear();
    for (const Entry& comp : vectors(a)) {
      for (const Entry& other : transposed(comp.index)) {
        if (!seen[other.index]) {
          seen[other.index] = 1;
          touched.push_back(other.index);
        }
        dot[other.index] += comp.score * other.score;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (Index b : touched) {
      double sim;
      if (b == a) {
        sim = norms[a] > 0.0 ? 1.0 : 0.0;
      } else {
        sim = cosine_from_parts(dot[b], norms[a], norms[b]);
      }
      block.neighbors.push_back({b, sim});
      dot[b] = 0.0;
      seen[b] = 0;
    }
    block.counts.push_back(touched.size());
  }
  return block;
}

}  // namespace

SimilarityModel build_model(const RatingMatrix& ratings, ModelKind kind, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  SimilarityModel model;
  model.kind_ = kind;
  model.source_revision_ = ratings.revision();

  const auto columns = ratings.columns();
  std::vector<std::span<const Entry>> rows(ratings.user_count());
  for (Index u = 0; u < rows.size(); ++u) rows[u] = ratings.row(u);

  // Item model: an item's vector is its column; co-raters are found via rows.
  const bool items = kind == ModelKind::item_item;
  const std::size_t n = items ? ratings.item_count() : ratings.user_count();
  auto vectors = [&](Index a) -> std::span<const Entry> {
    return items ? std::span<const Entry>(columns[a]) : rows[a];
  };
  auto transposed = [&](Index k) -> std::span<const Entry> {
    return items ? rows[k] : std::span<const Entry>(columns[k]);
  };

  model.ids_.reserve(n);
  for (Index a = 0; a < n; ++a)
    model.ids_.push_back(items ? ratings.item_at(a).str() : ratings.user_at(a).str());
  model.index_ids();

  std::vector<double> norms(n, 0.0);
  for (Index a = 0; a < n; ++a) {
    double sq = 0.0;
    for (const Entry& e : vectors(a)) sq += e.score * e.score;
    norms[a] = std::sqrt(sq);
  }

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<RowBlock> blocks(threads);
  if (threads == 1) {
    blocks[0] = compute_rows(0, static_cast<Index>(n), n, norms, vectors, transposed);
  } else {
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const Index b = static_cast<Index>(std::min(n, t * chunk));
      const Index e = static_cast<Index>(std::min(n, (t + 1) * chunk));
      workers.emplace_back([&, t, b, e] {
        blocks[t] = compute_rows(b, e, n, norms, vectors, transposed);
      });
    }
    for (auto& w : workers) w.join();
  }

  model.offsets_.assign(1, 0);
  model.offsets_.reserve(n + 1);
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.neighbors.size();
  model.neighbors_.reserve(total);
  for (auto& b : blocks) {
    for (std::size_t c : b.counts) model.offsets_.push_back(model.offsets_.back() + c);
    model.neighbors_.insert(model.neighbors_.end(), b.neighbors.begin(), b.neighbors.end());
    b = RowBlock{};
  }

  model.build_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return model;
}

// Snapshot format (text, one token per field):
//   shelfrec-similarity 1
//   kind <item_item|user_user>
//   revision <n>
//   build_seconds <double>
//   entities <n>
//   <byte length> <id>            (n lines)
//   row <count> {<index> <sim>}   (n lines)
// Doubles are written in shortest round-trip form.

namespace {

std::string format_double(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& token) {
  double v = 0.0;
  auto r = std::from_chars(token.data(), token.data() + token.size(), v);
  if (r.ec != std::errc() || r.ptr != token.data() + token.size())
    fail(ErrorCode::parse_error, "bad number '" + token + "' in similarity snapshot");
  return v;
}

void expect(std::istream& in, std::string_view word) {
  std::string got;
  if (!(in >> got) || got != word)
    fail(ErrorCode::parse_error,
         "similarity snapshot: expected '" + std::string(word) + "', got '" + got + "'");
}

}  // namespace

void SimilarityModel::save(std::ostream& out) const {
  out << "shelfrec-similarity 1\n";
  out << "kind " << to_string(kind_) << "\n";
  out << "revision " << source_revision_ << "\n";
  out << "build_seconds " << format_double(build_seconds_) << "\n";
  out << "entities " << ids_.size() << "\n";
  for (const auto& id : ids_) out << id.size() << ' ' << id << "\n";
  for (Index a = 0; a < ids_.size(); ++a) {
    auto row = neighbors(a);
    out << "row " << row.size();
    for (const auto& nb : row) out << ' ' << nb.index << ' ' << format_double(nb.similarity);
    out << "\n";
  }
  if (!out) fail(ErrorCode::storage, "failed writing similarity snapshot");
}

SimilarityModel SimilarityModel::load(std::istream& in) {
  SimilarityModel m;
  expect(in, "shelfrec-similarity");
  int version = 0;
  if (!(in >> version) || version != 1)
    fail(ErrorCode::parse_error, "unsupported similarity snapshot version");
  expect(in, "kind");
  std::string kind;
  in >> kind;
  auto k = model_kind_from_string(kind);
  if (!k) fail(ErrorCode::parse_error, "unknown model kind '" + kind + "'");
  m.kind_ = *k;
  expect(in, "revision");
  in >> m.source_revision_;
  expect(in, "build_seconds");
  std::string token;
  in >> token;
  m.build_seconds_ = parse_double(token);
  expect(in, "entities");
  std::size_t n = 0;
  if (!(in >> n)) fail(ErrorCode::parse_error, "bad entity count");
  m.ids_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t len = 0;
    if (!(in >> len) || in.get() != ' ') fail(ErrorCode::parse_error, "bad entity id line");
    std::string id(len, '\0');
    if (!in.read(id.data(), static_cast<std::streamsize>(len)))
      fail(ErrorCode::parse_error, "truncated entity id");
    m.ids_.push_back(std::move(id));
  }
  m.index_ids();
  m.offsets_.assign(1, 0);
  for (std::size_t a = 0; a < n; ++a) {
    expect(in, "row");
    std::size_t count = 0;
    if (!(in >> count)) fail(ErrorCode::parse_error, "bad row length");
    for (std::size_t c = 0; c < count; ++c) {
      Neighbor nb{};
      if (!(in >> nb.index >> token) || nb.index >= n)
        fail(ErrorCode::parse_error, "bad neighbor entry");
      nb.similarity = parse_double(token);
      m.neighbors_.push_back(nb);
    }
    m.offsets_.push_back(m.neighbors_.size());
  }
  return m;
}

}  // namespace shelfrec
