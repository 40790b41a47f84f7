#include <cstdio>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "groth/errors.hpp"
#include "groth/io.hpp"
#include "groth/random.hpp"
#include "groth/report.hpp"

using namespace groth;

TEST_CASE("json matrices") {
  const DenseMatrix a = parse_matrix(R"({"rows": 1, "cols": 1, "entries": [[2, 0]]})", MatrixFormat::json);
  CHECK(a.rows() == 1);
  CHECK(a(0, 0) == cplx(2, 0));

  const DenseMatrix b = parse_matrix(R"({"rows": 1, "cols": 2, "entries": [[1, -1], [0.5, 3e-2]]})",
                                     MatrixFormat::json);
  CHECK(b(0, 0) == cplx(1, -1));
  CHECK(b(0, 1) == cplx(0.5, 0.03));

  for (const char* bad : {R"({"rows": 2, "cols": 1, "entries": [[1, 0]]})",
                          R"({"rows": 1, "cols": 1, "entries": [[1]]})",
                          R"({"rows": 0, "cols": 1, "entries": []})",
                          R"({"rows": 1, "cols": 1, "entries": [[1e400, 0]]})",
                          R"({"rows": 1, "cols": 1, "entries": [[NaN, 0]]})",
                          R"({"rows": 1, "cols": 1)",
                          R"([1, 2])"})
    CHECK_THROWS_AS(parse_matrix(bad, MatrixFormat::json), Error);

  try {
    parse_matrix("{\"rows\": 1,\n \"cols\": }", MatrixFormat::json);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse);
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("csv matrices") {
  const DenseMatrix h = parse_matrix("2,2\n1,1\n1,-1\n", MatrixFormat::csv);
  CHECK(h == DenseMatrix{{1, 1}, {1, -1}});
  CHECK(parse_matrix("1,2\r\n0.25,4\r\n", MatrixFormat::csv)(0, 1) == cplx(4, 0));
  for (const char* bad : {"2,2\n1,1\n", "1,2\n1,x\n", "1,1\nnan\n", "1,1\ninf\n", "2\n1\n", "", "1,2\n1,2,3\n"})
    CHECK_THROWS_AS(parse_matrix(bad, MatrixFormat::csv), Error);
  try {
    parse_matrix("2,2\n1,1\n1,q\n", MatrixFormat::csv);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(format_matrix(DenseMatrix{{cplx(0, 1)}}, MatrixFormat::csv), Error);
}

TEST_CASE("round trips are exact") {
  Rng rng(197);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix x = ginibre(3, 3, rng);
    const std::string s = format_matrix(x, MatrixFormat::json);
    const DenseMatrix y = parse_matrix(s, MatrixFormat::json);
    CHECK(y == x);
    CHECK(format_matrix(y, MatrixFormat::json) == s);

    const DenseMatrix r = real_gaussian(2, 4, rng);
    const std::string c = format_matrix(r, MatrixFormat::csv);
    CHECK(parse_matrix(c, MatrixFormat::csv) == r);
  }
  const std::string path = "io_roundtrip_test.json";
  const DenseMatrix x = ginibre(2, 3, rng);
  write_matrix(x, path, format_from_path(path));
  CHECK(read_matrix(path, MatrixFormat::json) == x);
  std::remove(path.c_str());
  CHECK(format_from_path("a.csv") == MatrixFormat::csv);
  CHECK_THROWS_AS(read_matrix("does/not/exist.json", MatrixFormat::json), Error);
}

TEST_CASE("report serialization") {
  Report r;
  r.command = "norm --kind cbB";
  r.seed = 7;
  auto& it = r.add("cbB", 4.0);
  it.bracket = std::pair{4.0, 4.000000001};
  it.slack = -0.0;
  r.add("odd \"name\"", std::numeric_limits<double>::quiet_NaN(), CheckStatus::skipped);
  r.vectors.emplace_back("xi", RVector{0.5, 0.25});
  const std::string s = serialize(r);
  CHECK(s.find("\"version\": \"0.1.0\"") < s.find("\"command\""));
  CHECK(s.find("\"command\"") < s.find("\"seed\": 7"));
  CHECK(s.find("\"bracket\": [4, 4.0000000010000001]") != std::string::npos);
  CHECK(s.find("\"slack\": 0}") != std::string::npos);
  CHECK(s.find("\"value\": null") != std::string::npos);
  CHECK(s.find("odd \\\"name\\\"") != std::string::npos);
  CHECK(s.find("\"status\": \"pass\"") != std::string::npos);
  CHECK(serialize(r) == s);

  r.items[0].status = CheckStatus::fail;
  CHECK(r.overall() == CheckStatus::fail);
  r.error_code = "parse";
  CHECK(serialize(r).find("\"status\": \"error\"") != std::string::npos);
}
