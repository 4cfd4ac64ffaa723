#include <doctest.h>

#include <sstream>

#include "tridiag/io.hpp"

using namespace tridiag;

TEST_CASE("complex literal parsing") {
  CHECK(io::parse_complex("1.5") == Complex(1.5, 0.0));
  CHECK(io::parse_complex("-0.3") == Complex(-0.3, 0.0));
  CHECK(io::parse_complex("2i") == Complex(0.0, 2.0));
  CHECK(io::parse_complex("0.7+0.2i") == Complex(0.7, 0.2));
  CHECK(io::parse_complex("0.4-0.1i") == Complex(0.4, -0.1));
  CHECK(io::parse_complex("1e-3-2e-4i") == Complex(1e-3, -2e-4));
  CHECK(io::parse_complex("i") == Complex(0.0, 1.0));
  CHECK(io::parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(io::parse_complex(" 3+4i ") == Complex(3.0, 4.0));
  CHECK_THROWS_AS(io::parse_complex(""), Error);
  CHECK_THROWS_AS(io::parse_complex("abc"), std::exception);
}

TEST_CASE("complex formatting round-trips") {
  for (Complex z : {Complex(0.1, -0.25), Complex(-2.0, 0.0),
                    Complex(0.0, 1.0), Complex(1e-15, 1e15)}) {
    CHECK(io::parse_complex(io::format_complex(z)) == z);
  }
}

TEST_CASE("spectrum JSON round trip is exact") {
  BoundaryParams p;
  p.b0 = Complex(0.3, -0.2);
  p.b1 = -0.4;
  p.n = 24;
  auto res = solve_spectrum(p);
  auto j = io::spectrum_to_json(res, 12.5);
  CHECK(j.at("schema") == "tridiag/1");
  auto back = io::spectrum_from_json(j);
  CHECK(back.n_input == res.n_input);
  CHECK(back.n == res.n);
  CHECK(back.Q == res.Q);
  CHECK(back.w == res.w);
  REQUIRE(back.eigenpairs.size() == res.eigenpairs.size());
  for (std::size_t i = 0; i < back.eigenpairs.size(); ++i) {
    CHECK(back.eigenpairs[i].lambda == res.eigenpairs[i].lambda);
    CHECK(back.eigenpairs[i].kind == res.eigenpairs[i].kind);
    if (res.eigenpairs[i].kind == EigKind::regular)
      CHECK(back.eigenpairs[i].t == res.eigenpairs[i].t);
  }
  CHECK(back.diagnostics.warnings == res.diagnostics.warnings);

  // serialization itself is deterministic
  CHECK(io::spectrum_to_json(res, 0.0).dump() ==
        io::spectrum_to_json(res, 0.0).dump());
}

TEST_CASE("spectrum CSV shape") {
  BoundaryParams p;
  p.n = 6;
  auto res = solve_spectrum(p);
  std::string csv = io::spectrum_to_csv(res);
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line == "re,im,kind,t,residual");
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 7);
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "eps_t = 1e-13\n"
      "# a comment\n"
      "threads = 4   # trailing comment\n"
      "\n"
      "format = csv\n");
  auto kv = io::load_config(in);
  CHECK(kv.at("eps_t") == "1e-13");
  CHECK(kv.at("threads") == "4");
  CHECK(kv.at("format") == "csv");
  CHECK(kv.size() == 3);

  std::istringstream bad("novalue\n");
  CHECK_THROWS_AS(io::load_config(bad), Error);
}
