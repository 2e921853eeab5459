#include <gtest/gtest.h>

#include <filesystem>

#include "qtgi/errors.hpp"
#include "qtgi/fixtures.hpp"
#include "qtgi/qt_io.hpp"

namespace {

using namespace qtgi;

const std::filesystem::path kFixtureDir = QTGI_FIXTURE_DIR;

struct FileCase {
  std::string example;
  int number;
};

TEST(Fixtures, FilesMatchEmbeddedData) {
  const std::vector<FileCase> cases = {{"mp", 1}, {"drazin", 2}, {"inv-along", 3}};
  for (const auto& fc : cases) {
    const ReferenceExample& ex = reference_example(fc.example);
    const std::string stem = "example" + std::to_string(fc.number) + "_";
    for (const auto& [key, tensor] : ex.inputs) {
      EXPECT_EQ(read_qt_file(kFixtureDir / (stem + key + ".qt")), tensor) << stem << key;
    }
    EXPECT_EQ(read_qt_file(kFixtureDir / (stem + "printed_" + ex.printed_name + ".qt")), ex.printed) << stem;
  }
}

TEST(Fixtures, Shapes) {
  EXPECT_EQ(reference_example("mp").input("A").n1(), 2u);
  EXPECT_EQ(reference_example("mp").input("A").n2(), 3u);
  EXPECT_EQ(reference_example("mp").input("A").n3(), 4u);
  const QTensor& a = reference_example("mp").input("A");
  EXPECT_EQ(reference_example("mp").printed.n1(), a.n2());
  EXPECT_EQ(reference_example_names().size(), 3u);
}

TEST(Fixtures, UnknownName) { EXPECT_THROW(reference_example("nope"), Error); }

}  // namespace
