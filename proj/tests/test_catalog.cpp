#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilprob/catalog.hpp"

using namespace nilprob;

TEST_CASE("group spec grammar") {
  CHECK(parse_group_spec("alt:5").kind == GroupKind::alternating);
  CHECK(parse_group_spec("psl2:13").parameter == 13);
  CHECK(parse_group_spec("file:m11.gens").path == "m11.gens");
  CHECK(parse_group_spec("pgammal2:8").to_string() == "pgammal2:8");
  CHECK_THROWS_AS(parse_group_spec("alt"), parse_error);
  CHECK_THROWS_AS(parse_group_spec("foo:3"), parse_error);
  CHECK_THROWS_AS(parse_group_spec("alt:x"), parse_error);
  CHECK_THROWS_AS(parse_group_spec("alt:0"), parse_error);
  CHECK_THROWS_AS(parse_group_spec("file:"), parse_error);
}

TEST_CASE("constructed orders") {
  CHECK(symmetric_group(1).order() == 1);
  CHECK(symmetric_group(5).order() == 120);
  CHECK(alternating_group(3).order() == 3);
  CHECK(alternating_group(6).order() == 360);
  CHECK(cyclic_group(1).order() == 1);
  CHECK(cyclic_group(12).order() == 12);
  CHECK(dihedral_group(6).order() == 12);
  CHECK(psl2(4).order() == 60);
  CHECK(psl2(7).order() == 168);
  CHECK(psl2(8).order() == 504);
  CHECK(psl2(9).order() == 360);
  CHECK(pgl2(7).order() == 336);
  CHECK(pgl2(8).order() == 504);
  CHECK(pgammal2(8).order() == 1512);
  CHECK(pgammal2(9).order() == 1440);
  CHECK(psl2_order(13) == 1092);
  CHECK_THROWS_AS(psl2(6), std::invalid_argument);
}

TEST_CASE("automorphism pairs") {
  auto a6 = build_aut_pair(parse_group_spec("alt:6"));
  CHECK(a6.socle.order() == 360);
  CHECK(a6.ambient.order() == 1440);
  auto a7 = build_aut_pair(parse_group_spec("alt:7"));
  CHECK(a7.ambient.order() == 5040);
  CHECK(build_aut_pair(parse_group_spec("psl2:8")).ambient.order() == 1512);
  CHECK_THROWS(build_aut_pair(parse_group_spec("alt:4")));
  CHECK_THROWS(build_aut_pair(parse_group_spec("cyc:5")));
  auto s5 = build_coset_pair(parse_group_spec("sym:5"));
  CHECK(s5.socle.order() == 60);
}

TEST_CASE("bundled generator files") {
  struct Case {
    const char* file;
    std::uint64_t ambient, socle;
  };
  for (auto c : {Case{"m11.gens", 7920, 7920}, Case{"psl3_3_aut.gens", 11232, 5616},
                 Case{"psu4_2_aut.gens", 51840, 25920}, Case{"psl3_4.gens", 20160, 20160},
                 Case{"psl3_4_2_2.gens", 40320, 20160}}) {
    INFO(c.file);
    auto pair = load_generator_file(c.file);
    CHECK(pair.ambient.order() == c.ambient);
    CHECK(pair.socle.order() == c.socle);
  }
}

TEST_CASE("generator file parsing") {
  std::istringstream good("# title line\ndegree 3\norder 6\ngen 2,1,3\ngen 2,3,1\n");
  auto gf = parse_generator_file(good, "good");
  CHECK(gf.degree == 3);
  CHECK(gf.order == 6);
  CHECK(gf.generators.size() == 2);

  std::istringstream bad("degree 3\norder 6\ngen 2,2,3\n");
  try {
    parse_generator_file(bad, "bad");
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(std::string(e.what()).find("bad:3") != std::string::npos);
  }
  std::istringstream wrong_degree("degree 4\norder 6\ngen 2,1,3\n");
  CHECK_THROWS_AS(parse_generator_file(wrong_degree, "x"), parse_error);
}

TEST_CASE("files whose socle is not simple are refused") {
  const auto path = std::filesystem::temp_directory_path() / "nilprob_sym3.gens";
  {
    std::ofstream out(path);
    out << "degree 3\norder 6\nsocle-order 3\ngen 2,1,3\ngen 2,3,1\nsocle-gen 2,3,1\n";
  }
  CHECK_THROWS_AS(load_generator_file(path.string()), group_error);
  {
    std::ofstream out(path);
    out << "degree 3\norder 5\ngen 2,1,3\ngen 2,3,1\n";
  }
  CHECK_THROWS_AS(load_generator_file(path.string()), group_error);
  std::filesystem::remove(path);
  CHECK_THROWS(load_generator_file("no_such_file.gens"));
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(build(parse_group_spec("sym:11")), budget_exceeded);
}
