#include <doctest.h>

#include <cstdlib>
#include <set>
#include <sstream>

#include "kohnen/cli_support.hpp"
#include "kohnen/csv.hpp"
#include "kohnen/error.hpp"

using namespace kohnen;

TEST_CASE("number parsing") {
  CHECK(cli::parse_number("100000") == 100000.0);
  CHECK(cli::parse_number("1e5") == 100000.0);
  CHECK(cli::parse_number("10^5") == 100000.0);
  CHECK(cli::parse_number("3*10^4") == 30000.0);
  CHECK(cli::parse_number(" 2.5 ") == 2.5);
  CHECK(cli::parse_count("10^7") == 10000000u);
  CHECK_THROWS_AS(cli::parse_number("abc"), ValidationError);
  CHECK_THROWS_AS(cli::parse_number("10^"), ValidationError);
  CHECK_THROWS_AS(cli::parse_count("2.5"), ValidationError);
  CHECK_THROWS_AS(cli::parse_count("-3"), ValidationError);
  const auto list = cli::parse_list("10^4,3*10^4,1e5");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == 30000.0);
}

TEST_CASE("seeded generator") {
  cli::Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  cli::Rng c(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = c.between(3, 9);
    CHECK(v >= 3);
    CHECK(v <= 9);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("csv output") {
  std::ostringstream out;
  csv::Writer w(out, {"name", "value", "ok"});
  w.field("a,b").field(0.1).field(true);
  w.end_row();
  w.field("say \"hi\"").field(std::int64_t{-3}).field(false);
  w.end_row();
  CHECK(out.str() == "name,value,ok\r\n\"a,b\",0.10000000000000001,true\r\n\"say \"\"hi\"\"\",-3,false\r\n");
  CHECK(w.rows() == 2);
  w.field("short");
  CHECK_THROWS_AS(w.end_row(), ValidationError);
  for (double v : {1.0 / 3.0, 1e-300, -2.5e17, 0.79212283864}) {
    CHECK(std::strtod(csv::format_double(v).c_str(), nullptr) == v);
  }
  CHECK(csv::quote("plain") == "plain");
  CHECK(csv::quote("line\nbreak") == "\"line\nbreak\"");
}
