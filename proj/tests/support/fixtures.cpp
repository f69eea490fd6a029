#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fixture {

using namespace shelfrec;

StoreLayout three_shelves() {
  auto zone = [](double x) { return ShelfZone{{x, 0.0}, {x + 2.0, 1.0}}; };
  std::vector<Item> items{
      {ItemId("a1"), "A one", ShelfId("A"), {{"price", "1.00"}}},
      {ItemId("a2"), "A two", ShelfId("A"), {}},
      {ItemId("b1"), "B one", ShelfId("B"), {}},
      {ItemId("b2"), "B two", ShelfId("B"), {}},
      {ItemId("c1"), "C one", ShelfId("C"), {}},
  };
  std::vector<Shelf> shelves{
      {ShelfId("A"), {ItemId("a1"), ItemId("a2")}, zone(0.0)},
      {ShelfId("B"), {ItemId("b1"), ItemId("b2")}, zone(3.0)},
      {ShelfId("C"), {ItemId("c1")}, zone(6.0)},
  };
  return StoreLayout("three", std::move(shelves), std::move(items));
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("shelfrec-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

}  // namespace fixture
