#include "doctest.h"
#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace ccc45;

namespace {

Dataset parse(const std::string& text, std::optional<std::string> label = std::nullopt) {
  std::istringstream in(text);
  return parse_csv(in, label);
}

}  // namespace

TEST_CASE("table 1 sample loads as 24 x 8 with two classes") {
  auto d = testing::table1();
  CHECK(d->num_instances() == 24);
  CHECK(d->num_attributes() == 8);
  CHECK(d->num_classes() == 2);
  CHECK(d->attribute_names().front() == "a1");
  CHECK(d->class_names() == std::vector<std::string>{"0", "1"});
  CHECK(d->value(1, 6) == doctest::Approx(0.153));
  CHECK(d->label(1) == 1);
}

TEST_CASE("single class input is rejected") {
  CHECK_THROWS_AS(parse("x,y\n1,a\n"), StructureError);
}

TEST_CASE("non-numeric feature cell names its row") {
  try {
    parse("x,z,y\n1,2,a\n3,4,b\n5,abc,a\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 3") != std::string::npos);
    CHECK(msg.find("'z'") != std::string::npos);
  }
}

TEST_CASE("structural CSV errors") {
  CHECK_THROWS_AS(parse(""), StructureError);
  CHECK_THROWS_AS(parse("x,y\n"), StructureError);
  CHECK_THROWS_AS(parse("x,y\n1,a\n2\n"), StructureError);
  CHECK_THROWS_AS(parse("x,y\n1,a\n,b\n"), ParseError);
  CHECK_THROWS_AS(parse("x,y\n1,a\ninf,b\n"), ParseError);
  CHECK_THROWS_AS(parse("x,y\n1,a\n2,b\n", "missing"), StructureError);
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv"), StructureError);
}

TEST_CASE("label column by name and first-appearance class order") {
  Dataset d = parse("cls,x,w\nyes,1,2\nno,3,4\nyes,5,6\nmaybe,7,8\n", "cls");
  CHECK(d.num_attributes() == 2);
  CHECK(d.attribute_names() == std::vector<std::string>{"x", "w"});
  CHECK(d.class_names() == std::vector<std::string>{"yes", "no", "maybe"});
  CHECK(d.label(3) == 2);
  CHECK(d.value(3, 1) == 8.0);
}

TEST_CASE("instance subsets reject bad indices") {
  auto d = testing::table1();
  CHECK_THROWS_AS(InstanceSubset(d, {0, 0}), ArgumentError);
  CHECK_THROWS_AS(InstanceSubset(d, {24}), ArgumentError);
  CHECK(InstanceSubset(d, {3, 1}).class_histogram() == std::vector<std::size_t>{1, 1});
}

TEST_CASE("60/40 split on 24 rows is 14/10 and seeded") {
  auto d = testing::table1();
  std::mt19937_64 a(7), b(7), c(8);
  auto [tr1, te1] = split_train_test(d, 0.6, a);
  auto [tr2, te2] = split_train_test(d, 0.6, b);
  auto [tr3, te3] = split_train_test(d, 0.6, c);
  CHECK(tr1.size() == 14);
  CHECK(te1.size() == 10);
  CHECK(std::ranges::equal(tr1.indices(), tr2.indices()));
  CHECK(std::ranges::equal(te1.indices(), te2.indices()));
  CHECK(tr3.size() == 14);
  CHECK(te3.size() == 10);
  CHECK_FALSE(std::ranges::equal(tr1.indices(), tr3.indices()));
}

TEST_CASE("split rounding is half-up") {
  auto d = testing::table1();
  std::mt19937_64 rng(1);
  CHECK(split_train_test(d, 0.0625, rng).first.size() == 2);  // 1.5 -> 2
  CHECK(split_train_test(d, 0.25, rng).first.size() == 6);
}

TEST_CASE("split argument errors") {
  auto d = testing::table1();
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(split_train_test(d, 0.0, rng), ArgumentError);
  CHECK_THROWS_AS(split_train_test(d, 1.0, rng), ArgumentError);
  CHECK_THROWS_AS(split_train_test(d, 0.01, rng), ArgumentError);
  CHECK_THROWS_AS(split_train_test(d, 0.99, rng), ArgumentError);
}

TEST_CASE("property: splits partition the rows and preserve values bit-exactly") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 60;
    auto d = testing::random_dataset(rng, n, 3, 2);
    std::uniform_real_distribution<double> frac(0.05, 0.95);
    const double f = frac(rng);
    const auto train_size = static_cast<std::size_t>(std::floor(f * static_cast<double>(n) + 0.5));
    if (train_size < 1 || train_size >= n) continue;
    auto [train, test] = split_train_test(d, f, rng);
    CHECK(train.size() == train_size);
    std::set<std::size_t> seen(train.indices().begin(), train.indices().end());
    for (std::size_t i : test.indices()) CHECK(seen.insert(i).second);
    CHECK(seen.size() == n);
    // Recombine and compare every value to the source dataset.
    for (std::size_t i : seen) {
      for (std::size_t a = 0; a < 3; ++a) CHECK(train.dataset().value(i, a) == d->column(a)[i]);
    }
  }
}
