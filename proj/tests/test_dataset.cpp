#include <sstream>

#include "doctest.h"
#include "tailcone/dataset.hpp"
#include "tailcone/error.hpp"
#include "tailcone/random.hpp"

using namespace tailcone;

TEST_CASE("write then read reproduces the data exactly") {
  Xoshiro256 rng(5);
  Dataset data(ConeSpec::euclidean(3));
  for (int i = 0; i < 500; ++i) {
    data.push_back(ConeElement{rng.normal() * 1e5, rng.normal() * 1e-7, rng.normal()});
  }
  for (bool header : {false, true}) {
    std::stringstream ss;
    write_csv(ss, data, {header});
    CHECK(read_csv(ss, data.spec()) == data);
  }
}

TEST_CASE("header flag names the coordinates") {
  Dataset data(ConeSpec::euclidean(2), {1.5, -2.0});
  std::stringstream ss;
  write_csv(ss, data, {true});
  CHECK(ss.str() == "x0,x1\n1.5,-2\n");
}

TEST_CASE("non-finite coordinates are rejected with the row number") {
  std::stringstream ss("1,2\n3,nan\n");
  try {
    read_csv(ss, ConeSpec::euclidean(2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::input);
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  std::stringstream inf("1,inf\n");
  CHECK_THROWS_AS(read_csv(inf, ConeSpec::euclidean(2)), Error);
}

TEST_CASE("malformed rows") {
  std::stringstream wrong_width("1,2\n3\n");
  CHECK_THROWS_AS(read_csv(wrong_width, ConeSpec::euclidean(2)), Error);
  std::stringstream garbage("1,2\nfoo,3\n");
  CHECK_THROWS_AS(read_csv(garbage, ConeSpec::euclidean(2)), Error);
  std::stringstream negative("-1\n");
  CHECK_THROWS_AS(read_csv(negative, ConeSpec::max_cone()), Error);
}

TEST_CASE("missing file is an I/O error") {
  try {
    read_csv_file("/nonexistent/file.csv", ConeSpec::euclidean(2));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::io);
  }
}

TEST_CASE("scaled multiplies every coordinate") {
  Dataset data(ConeSpec::euclidean(2), {1, 2, 3, 4});
  const auto s = data.scaled(2.0);
  CHECK(s.values() == std::vector<double>{2, 4, 6, 8});
  CHECK_THROWS_AS(data.scaled(0.0), Error);
}
