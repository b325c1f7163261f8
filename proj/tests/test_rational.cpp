#include <string>
#include <vector>

#include "doctest.h"
#include "dsgames/rational.hpp"

using dsg::Rat;
using dsg::rat_approx;
using dsg::rat_parse;
using dsg::rat_pow;
using dsg::rat_str;

TEST_CASE("rational parsing accepts the documented grammar") {
  CHECK(rat_parse("0") == Rat(0));
  CHECK(rat_parse("7") == Rat(7));
  CHECK(rat_parse("-7") == Rat(-7));
  CHECK(rat_parse("1/2") == Rat(1, 2));
  CHECK(rat_parse("-3/4") == Rat(-3, 4));
  CHECK(rat_parse("007") == Rat(7));
  CHECK(rat_parse("123456789123456789123456789") ==
        Rat("123456789123456789123456789"));
}

TEST_CASE("rational parsing canonicalizes") {
  CHECK(rat_str(rat_parse("2/4")) == "1/2");
  CHECK(rat_str(rat_parse("-6/4")) == "-3/2");
  CHECK(rat_str(rat_parse("0/5")) == "0");
  CHECK(rat_str(rat_parse("-0")) == "0");
  CHECK(rat_str(rat_parse("10/5")) == "2");
}

TEST_CASE("rational parsing rejects everything outside the grammar") {
  const std::vector<std::string> bad = {
      "",     " 1",  "1 ",  "+3",   "1.5",  "a",    "1/",   "/2",   "1//2",
      "3/0",  "3/-2", "3/02", "0x10", "1e3", "--1",  "1/+2", "½",    "1 /2",
  };
  for (const auto& s : bad) {
    CAPTURE(s);
    CHECK_THROWS_AS(rat_parse(s), dsg::ParseError);
  }
}

TEST_CASE("rendering round-trips exactly") {
  const std::vector<std::string> canon = {"0", "1", "-1", "1/2", "-22/7", "355/113", "100"};
  for (const auto& s : canon) {
    CAPTURE(s);
    CHECK(rat_str(rat_parse(s)) == s);
    CHECK(rat_parse(rat_str(rat_parse(s))) == rat_parse(s));
  }
}

TEST_CASE("powers are exact") {
  CHECK(rat_pow(Rat(1, 2), 0) == Rat(1));
  CHECK(rat_pow(Rat(1, 2), 10) == Rat(1, 1024));
  CHECK(rat_pow(Rat(2, 3), 5) == Rat(32, 243));
  CHECK(rat_pow(Rat(-1, 2), 3) == Rat(-1, 8));
  CHECK(rat_pow(Rat(3), 4) == Rat(81));
}

TEST_CASE("exact arithmetic has no drift over long geometric sums") {
  // sum of (1/2)^i for i < 64, against the closed form 2 - 2^-63.
  Rat acc = 0, w = 1;
  for (int i = 0; i < 64; ++i) {
    acc += w;
    w *= Rat(1, 2);
  }
  CHECK(acc == Rat(2) - rat_pow(Rat(1, 2), 63));
}

TEST_CASE("approximation is close for display purposes") {
  CHECK(rat_approx(Rat(1, 2)) == doctest::Approx(0.5));
  CHECK(rat_approx(Rat(-22, 7)) == doctest::Approx(-3.142857).epsilon(1e-5));
}
