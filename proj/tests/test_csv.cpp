#include <catch2/catch.hpp>

#include <filesystem>

#include "corrcs/csv.hpp"
#include "support/oracles.hpp"

using namespace corrcs;

TEST_CASE("vector csv round-trips exactly") {
  Substream rng(17);
  Vec v = testing::gaussian_vec(rng, 40);
  v[3] = 0.0;
  v[7] = 1e-300;
  v[9] = -12345.6789;
  const Vec back = parse_vector_csv(vector_csv(v));
  REQUIRE(back.size() == v.size());
  for (Index i = 0; i < v.size(); ++i) REQUIRE(back[i] == v[i]);
}

TEST_CASE("matrix csv round-trips exactly and keeps shape") {
  Substream rng(18);
  Mat a(3, 5);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 5; ++j) a(i, j) = rng.next_gaussian();
  const Mat back = parse_matrix_csv(matrix_csv(a));
  REQUIRE(back.rows() == 3);
  REQUIRE(back.cols() == 5);
  REQUIRE(back == a);
}

TEST_CASE("format_real keeps 17 significant digits") {
  REQUIRE(std::strtod(format_real(0.1).c_str(), nullptr) == 0.1);
  REQUIRE(format_real(0.1).size() >= 17);
}

TEST_CASE("malformed csv is rejected") {
  REQUIRE_THROWS(parse_vector_csv("1.0\nnot_a_number\n"));
  REQUIRE_THROWS(parse_matrix_csv("1,2\n3\n"));
  REQUIRE_THROWS(parse_vector_csv("1,2\n"));
}

TEST_CASE("sidecar preserves order") {
  const KeyValues kv = {{"b", "2"}, {"a", "1"}};
  REQUIRE(sidecar_text(kv) == "b=2\na=1\n");
}

TEST_CASE("file-level round trip") {
  const std::string dir = std::filesystem::temp_directory_path() / "corrcs_csv_test";
  std::filesystem::create_directories(dir);
  Substream rng(19);
  const Vec v = testing::gaussian_vec(rng, 7);
  write_vector_csv(dir + "/v.csv", v);
  REQUIRE(read_vector_csv(dir + "/v.csv") == v);

  Mat a(2, 3);
  a << 1, 2, 3, 4, 5, 6.5;
  write_matrix_csv(dir + "/a.csv", a);
  REQUIRE(read_matrix_csv(dir + "/a.csv") == a);

  REQUIRE_THROWS(read_vector_csv(dir + "/does_not_exist.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("empty text parses to empty shapes") {
  REQUIRE(parse_vector_csv("").size() == 0);
  REQUIRE(parse_matrix_csv("").rows() == 0);
}
