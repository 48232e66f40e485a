#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hardylab/continuous.hpp"
#include "hardylab/report_io.hpp"
#include "hardylab/weight_parse.hpp"
#include "oracles.hpp"

using namespace hardylab;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("numbers") {
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(std::nan("")) == "nan");
  CHECK(io::format_number(-HUGE_VAL) == "-inf");
  CHECK(io::number_json(HUGE_VAL) == "inf");
  CHECK(std::isnan(io::number_from_json(io::Json("nan"))));
  CHECK(io::number_from_json(io::Json(2.5)) == 2.5);
  CHECK_THROWS_AS(io::number_from_json(io::Json("x")), DomainError);
  CHECK_THROWS_AS(io::number_from_json(io::Json::array()), DomainError);
}

TEST_CASE("property: reports survive a JSON round trip") {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const double lhs = rng.spread(30.0);
    const double rhs = rng.spread(30.0);
    auto r = make_report("theorem2", trial % 2 ? Relation::kLessEqual : Relation::kGreaterEqual, lhs,
                         rhs, 1e-9, {{"p", rng.uniform(0, 5)}, {"q", rng.uniform(0, 5)}});
    r.diagnostics = {{"x", rng.spread(100.0)}};
    const auto back = io::report_from_json(io::Json::parse(io::to_json(r).dump()));
    CHECK(back == r);
  }
  auto r = make_report("hardy-cont", Relation::kIdentity, 1, 1, 1e-9);
  r.diagnostics = {{"nan", std::nan("")}, {"inf", HUGE_VAL}};
  const auto back = io::report_from_json(io::Json::parse(io::to_json(r).dump()));
  CHECK(std::isnan(lookup(back.diagnostics, "nan")));
  CHECK(lookup(back.diagnostics, "inf") == HUGE_VAL);
}

TEST_CASE("weights survive a JSON round trip") {
  const std::vector<WeightFamily> ws{make_constant(2), make_power(1.5, -0.25),
                                     make_extremal_g(-0.3, 2), make_extremal_phi(0.5, 0.01),
                                     make_step({0.2, 0.7}, {1, 2, 5}),
                                     make_tabulated({0, 0.5, 1}, {1, 3, 2})};
  for (const auto& w : ws) {
    const auto back = io::weight_from_json(io::Json::parse(io::to_json(w).dump()));
    CHECK(family_name(back) == family_name(w));
    for (double t : {0.01, 0.2, 0.5, 0.99, 1.0}) CHECK(evaluate_weight(back, t) == evaluate_weight(w, t));
  }
  CHECK_THROWS_AS(io::weight_from_json(io::Json{{"family", "zigzag"}}), DomainError);
}

TEST_CASE("sweep tables survive a JSON round trip") {
  io::SweepTable t{"theorem1", true, 1e-3, {}};
  for (std::size_t i = 0; i < 5; ++i) {
    t.rows.push_back({"theorem1", i, -0.5 + 0.1 * i, 1.0 / (i + 1), 2.0 / (i + 3), 0.1 * i, -0.5,
                      std::ldexp(1.0, -static_cast<int>(i))});
  }
  CHECK(io::sweep_from_json(io::Json::parse(io::to_json(t).dump())) == t);
}

TEST_CASE("CSV layouts") {
  std::ostringstream os;
  io::write_csv(os, {make_report("copson", Relation::kLessEqual, 1, 2, 1e-9, {{"p", 2}, {"N", 3}})});
  CHECK(os.str() ==
        "schema_version,inequality,relation,lhs,rhs,margin,relative_margin,tolerance,satisfied,params\n"
        "1,copson,le,1,2,1,0.5,1.0000000000000001e-09,true,p=2;N=3\n");
  std::ostringstream ss;
  io::write_csv(ss, io::SweepTable{"theoremD", true, 1e-3, {{"theoremD", 0, -0.25, 1, 2, 0.5, 1, 0.5}}});
  CHECK(ss.str() == "kind,index,parameter,lhs,rhs,value,limit,deviation\ntheoremD,0,-0.25,1,2,0.5,1,0.5\n");
}

TEST_CASE("number and list parsing") {
  CHECK(text::parse_number("1e-3") == 1e-3);
  CHECK(text::parse_number("+2.5") == 2.5);
  CHECK_THROWS_AS(text::parse_number("2.5x"), DomainError);
  CHECK_THROWS_AS(text::parse_number(""), DomainError);
  CHECK(text::parse_list("1, 2,3") == std::vector<double>{1, 2, 3});
  CHECK(text::parse_list("").empty());
  const auto iv = text::parse_interval("0.5,2");
  CHECK(iv.lo == 0.5);
  CHECK(iv.hi == 2);
  CHECK_THROWS_AS(text::parse_interval("1"), DomainError);
  CHECK_THROWS_AS(text::parse_interval("2,1"), DomainError);
}

TEST_CASE("weight grammar") {
  CHECK(evaluate_weight(text::parse_weight("const:3"), 0.5) == 3);
  CHECK(evaluate_weight(text::parse_weight("pow:2,0.5"), 0.25) == doctest::Approx(1));
  CHECK(evaluate_weight(text::parse_weight("extg:-0.5,1"), 0.25) == doctest::Approx(1.5 * 0.5));
  CHECK(evaluate_weight(text::parse_weight("extphi:0.5"), 0.25) == doctest::Approx(0.5));
  CHECK(evaluate_weight(text::parse_weight("extphi:0.5,0.1"), 0.25) == doctest::Approx(0.6));
  const auto step = text::parse_weight("step:0.5;1,4");
  CHECK(evaluate_weight(step, 0.4) == 1);
  CHECK(evaluate_weight(step, 0.6) == 4);
  const auto path = temp_file("hardylab_table.txt", "# t value\n0 1\n0.5, 2\n1\t4\n");
  const auto tab = text::parse_weight("table:" + path);
  CHECK(evaluate_weight(tab, 0.75) == doctest::Approx(3));
  for (const char* bad : {"const", "const:", "const:-1", "pow:1", "step:0.5;1", "wave:1",
                          "extg:0.5,1", "table:/nonexistent/file"}) {
    CHECK_THROWS_AS(text::parse_weight(bad), DomainError);
  }
}

TEST_CASE("sequence files") {
  const auto path = temp_file("hardylab_seq.txt", "1 2\n1 3 # comment\n\n2,0.5\n");
  const auto seq = text::read_sequence(path);
  CHECK(seq.lambda == std::vector<double>{1, 1, 2});
  CHECK(seq.a == std::vector<double>{2, 3, 0.5});
  const auto bad = temp_file("hardylab_bad.txt", "1 2 3\n");
  CHECK_THROWS_AS(text::read_sequence(bad), DomainError);
}
