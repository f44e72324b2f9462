// fanstalk tests: input parsing and canonical formatting.
// Distributed under the MIT license; see LICENSE.

#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fanstalk/parser.hpp"

using namespace fanstalk;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_system(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: " << text);
  return ErrorKind::SyntaxError;
}

} // namespace

TEST_CASE("systems parse into binomial normal form", "[parser]") {
  BinomialSystem sys = parse_system(
      "# comment\nvars: x y\n\nx^2 - y^3\n  x^5*y - 2*x^3*y^4 # trailing\n");
  REQUIRE(sys.order.names == std::vector<std::string>{"x", "y"});
  REQUIRE(sys.members.size() == 2);

  const Binomial& f = sys.members[0];
  CHECK(f.kind == BinomialKind::Pure);
  CHECK(f.c == IntVec{0, 0});
  CHECK(f.a == IntVec{2, 0});
  CHECK(f.b == IntVec{0, 3});
  CHECK(f.lambda == 1);
  CHECK(f.unit == 1);

  // x^5 y - 2 x^3 y^4 = x^3 y (x^2 - 2 y^3): the monomial factor is the
  // componentwise minimum and the pure supports are disjoint.
  const Binomial& g = sys.members[1];
  CHECK(g.kind == BinomialKind::Pure);
  CHECK(g.c == IntVec{3, 1});
  CHECK(g.a == IntVec{2, 0});
  CHECK(g.b == IntVec{0, 3});
  CHECK(g.lambda == 2);
}

TEST_CASE("monomials, constants, and rational coefficients", "[parser]") {
  BinomialSystem sys = parse_system(
      "vars: x y\n3*x^2*y\nx - 1\n1/2*x^3 - 2/3*y\nx + y\n");
  CHECK(sys.members[0].kind == BinomialKind::Monomial);
  CHECK(sys.members[0].c == IntVec{2, 1});
  CHECK(sys.members[0].unit == 3);

  // x - 1 is pure with an empty second support.
  CHECK(sys.members[1].kind == BinomialKind::Pure);
  CHECK(sys.members[1].a == IntVec{1, 0});
  CHECK(sys.members[1].b == IntVec{0, 0});
  CHECK(sys.members[1].lambda == 1);

  CHECK(sys.members[2].unit == Rat(1) / 2);
  CHECK(sys.members[2].lambda == Rat(4) / 3);

  // A plus sign flips lambda's sign.
  CHECK(sys.members[3].lambda == -1);
}

TEST_CASE("format_binomial round-trips the samples", "[parser]") {
  BinomialSystem sys = parse_system(
      "vars: x y z\nx^2 - y^3\nx*y^5 - 1\n-2*x^2*z\nz^4 - 1/3*x*y\n");
  for (const Binomial& b : sys.members) {
    Binomial again = parse_binomial(format_binomial(b), b.order);
    CHECK(again == b);
  }
}

TEST_CASE("format_binomial round-trips random members", "[parser]") {
  corpus::Rng rng(551);
  for (int t = 0; t < 200; ++t) {
    std::size_t m = corpus::pick(rng, 2, 5);
    Binomial b;
    switch (t % 3) {
      case 0: b = corpus::random_pure(rng, m, 9); break;
      case 1: b = corpus::random_one_sided(rng, m, 9); break;
      default: b = corpus::random_monomial(rng, m, 9); break;
    }
    Binomial again = parse_binomial(format_binomial(b), b.order);
    CHECK(again == b);
  }
}

TEST_CASE("parse errors carry the right kind", "[parser]") {
  CHECK(kind_of("x^2 - y^3\n") == ErrorKind::SyntaxError); // no header
  CHECK(kind_of("vars: x y\nx - z\n") == ErrorKind::UnknownVariable);
  CHECK(kind_of("vars: x y\nx + y - 1\n") == ErrorKind::NotBinomial);
  CHECK(kind_of("vars: x y\nx^-2 - y\n") == ErrorKind::NegativeExponent);
  CHECK(kind_of("vars: x y\nx^2 -\n") == ErrorKind::SyntaxError);
  CHECK(kind_of("vars:\nx\n") == ErrorKind::SyntaxError);
}
