// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "pbdfs/graphs.hpp"
#include "pbdfs/mip.hpp"

using namespace pbdfs;

namespace {

UGraph triangle() { return UGraph{3, {{0, 1}, {0, 2}, {1, 2}}}; }

Assignment assign(std::initializer_list<int> vals) {
  Assignment a(static_cast<int>(vals.size()));
  int i = 0;
  for (int v : vals) a.values[i++] = static_cast<std::int8_t>(v);
  return a;
}

}  // namespace

TEST_CASE("validate accepts a well-formed instance") {
  CHECK(validate(formulate_misp(triangle())).empty());
}

TEST_CASE("validate flags column out of range") {
  MipInstance inst = formulate_misp(triangle());
  inst.rows[0].coefs[1].first = inst.nvars;  // == n
  auto errors = validate(inst);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("column out of range") != std::string::npos);
}

TEST_CASE("validate flags duplicate column") {
  MipInstance inst;
  inst.name = "dup";
  inst.nvars = 4;
  inst.obj.assign(4, 1.0);
  ConstraintRow row;
  row.coefs = {{3, 1.0}, {3, 1.0}};
  row.rhs = 1.0;
  inst.rows.push_back(row);
  auto errors = validate(inst);
  REQUIRE_FALSE(errors.empty());
  CHECK(errors[0].find("duplicate column 3") != std::string::npos);
}

TEST_CASE("objective_value") {
  MipInstance misp = formulate_misp(triangle());
  CHECK(objective_value(misp, assign({1, 0, 0})) == 1.0);
  CHECK(objective_value(misp, assign({0, 0, 0})) == 0.0);

  MipInstance two;
  two.nvars = 2;
  two.obj = {2.0, 3.0};
  CHECK(objective_value(two, assign({1, 1})) == 5.0);

  Assignment partial(3);
  partial.values[0] = 1;
  CHECK_THROWS_AS(objective_value(misp, partial), std::invalid_argument);
}

TEST_CASE("check_feasible") {
  MipInstance misp = formulate_misp(triangle());
  auto [ok, rows] = check_feasible(misp, assign({1, 1, 0}));
  CHECK_FALSE(ok);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == 0);  // the x0 + x1 <= 1 row

  // star K1,3 with center 0
  UGraph star{4, {{0, 1}, {0, 2}, {0, 3}}};
  MipInstance dsp = formulate_dsp(star);
  auto [dok, drows] = check_feasible(dsp, assign({1, 0, 0, 0}));
  CHECK(dok);
  CHECK(drows.empty());

  UGraph edge{2, {{0, 1}}};
  MipInstance vcp = formulate_vcp(edge);
  auto [vok, vrows] = check_feasible(vcp, assign({0, 0}));
  CHECK_FALSE(vok);
  REQUIRE(vrows.size() == 1);
  CHECK(vrows[0] == 0);
}

TEST_CASE("instance file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "pbdfs_rt.json";
  MipInstance misp = formulate_misp(triangle());
  write_instance(misp, path.string());
  MipInstance back = read_instance(path.string());
  CHECK(structurally_equal(misp, back));
  std::filesystem::remove(path);
}

TEST_CASE("unknown relation token is a parse error") {
  const auto path = std::filesystem::temp_directory_path() / "pbdfs_bad.json";
  {
    std::ofstream out(path);
    out << R"({"name":"x","sense":"min","nvars":1,"obj":[1.0],
               "rows":[{"coefs":[[0,1.0]],"rel":"<=","rhs":1.0}]})";
  }
  CHECK_THROWS(read_instance(path.string()));
  std::filesystem::remove(path);
}

TEST_CASE("empty rows list is a valid degenerate instance") {
  const auto path = std::filesystem::temp_directory_path() / "pbdfs_empty.json";
  MipInstance inst;
  inst.name = "norows";
  inst.sense = Sense::maximize;
  inst.nvars = 2;
  inst.obj = {1.0, 1.0};
  write_instance(inst, path.string());
  MipInstance back = read_instance(path.string());
  CHECK(back.nrows() == 0);
  CHECK(structurally_equal(inst, back));
  std::filesystem::remove(path);
}
