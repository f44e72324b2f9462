// fanstalk tests: the independent brute-force oracles — Minkowski vertex
// enumeration, facet certification, the finite-field smoothness scan, and
// the fan validity checks — plus their agreement with the engine.
// Distributed under the MIT license; see LICENSE.

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fanstalk/oracle.hpp"

using namespace fanstalk;

namespace {

const auto kind_is = [](ErrorKind kind) {
  return Catch::Matchers::Predicate<Error>(
      [kind](const Error& e) { return e.kind() == kind; });
};

} // namespace

TEST_CASE("brute-force vertex enumeration golds", "[oracle]") {
  BinomialSystem pair = parse_system("vars: x y\nx^2 - y^3\nx^2 - y^5\n");
  IntMat brute = minkowski_vertices_bruteforce(pair);
  REQUIRE(brute == IntMat{{0, 8}, {2, 3}, {4, 0}});
  // (2, 5) is a term sum but dominated by (2, 3): not a vertex.
  CHECK(std::find(brute.begin(), brute.end(), IntVec{2, 5}) == brute.end());
  CHECK(newton_polyhedron(pair).vertices == brute);

  BinomialSystem surf = parse_system("vars: x y z\nx^2 - y^3\nx^4 - z^5\n");
  CHECK(minkowski_vertices_bruteforce(surf) ==
        IntMat{{0, 3, 5}, {2, 0, 5}, {4, 3, 0}, {6, 0, 0}});

  CHECK_THROWS_MATCHES(minkowski_vertices_bruteforce(
                           BinomialSystem{corpus::variables(2), {}}),
                       Error, kind_is(ErrorKind::EmptySystem));
  BinomialSystem big;
  big.order = corpus::variables(2);
  for (int i = 0; i < 9; ++i)
    big.members.push_back(parse_binomial("x1 - x2", big.order));
  CHECK_THROWS_MATCHES(minkowski_vertices_bruteforce(big), Error,
                       kind_is(ErrorKind::TooManyMembers));
}

TEST_CASE("vertex enumeration agrees with the dual description engine",
          "[oracle]") {
  for (const BinomialSystem& sys : corpus::system_corpus())
    REQUIRE(minkowski_vertices_bruteforce(sys) ==
            newton_polyhedron(sys).vertices);
}

TEST_CASE("facet certification golds", "[oracle]") {
  BinomialSystem surf = parse_system("vars: x y z\nx^2 - y^3\nx^4 - z^5\n");
  NewtonPolyhedron np = newton_polyhedron(surf);
  CHECK(certify_facet(np, {1, 0, 0}));
  CHECK(certify_facet(np, {0, 1, 0}));
  CHECK(certify_facet(np, {0, 0, 1}));
  CHECK(certify_facet(np, {15, 10, 12})); // the bounded facet
  CHECK(!certify_facet(np, {1, 1, 1}));   // unique minimizer: a vertex
  CHECK(!certify_facet(np, {1, 1, 0}));   // an edge, not a facet

  BinomialSystem pair = parse_system("vars: x y\nx^2 - y^3\nx^2 - y^5\n");
  NewtonPolyhedron np2 = newton_polyhedron(pair);
  CHECK(certify_facet(np2, {1, 0}));
  CHECK(!certify_facet(np2, {1, 1}));

  CHECK_THROWS_MATCHES(certify_facet(np, {0, 0, 0}), Error,
                       kind_is(ErrorKind::ZeroVector));
  CHECK_THROWS_MATCHES(certify_facet(np, {1, 0}), Error,
                       kind_is(ErrorKind::DimensionMismatch));
}

TEST_CASE("certified facets are exactly the dual-fan rays", "[oracle]") {
  // A nonnegative direction spans a facet normal iff it is (a multiple of)
  // a ray of the normal fan; pairwise ray sums probe both sides.
  for (const BinomialSystem& sys : corpus::system_corpus()) {
    NewtonPolyhedron np = newton_polyhedron(sys);
    Fan fan = dual_fan(np);
    for (const IntVec& r : fan.rays) REQUIRE(certify_facet(np, r));
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
      for (std::size_t j = i + 1; j < fan.rays.size(); ++j) {
        IntVec v = primitive(add(fan.rays[i], fan.rays[j]));
        bool is_ray =
            std::find(fan.rays.begin(), fan.rays.end(), v) != fan.rays.end();
        REQUIRE(certify_facet(np, v) == is_ray);
      }
  }
}

TEST_CASE("smoothness scan golds", "[oracle]") {
  BinomialSystem sys = parse_system("vars: x y\nx^2 - y^2\n");
  StackyFan sf = build_stacky_fan(orthant_fan(2), sys.order);
  std::vector<PulledBinomial> pbs = pullback(sys, sf);
  Chart chart = charts(sf)[0];

  // Unreduced at q = 2 the double line is singular along its support.
  CHECK(smoothness_scan(pbs, chart, 2) == IntMat{{0, 0}, {1, 1}});
  // After reduction the locus is the smooth line x = y.
  std::vector<PulledBinomial> red = {reduce_pure(pbs[0], 2)};
  CHECK(smoothness_scan(red, chart, 2).empty());
  // At a good prime even the unreduced equation passes the rank test.
  CHECK(smoothness_scan(pbs, chart, 5).empty());

  // Monomial members carry no residual factors.
  BinomialSystem mono = parse_system("vars: x y\nx^2*y\n");
  CHECK(smoothness_scan(pullback(mono, sf), chart, 5).empty());

  CHECK_THROWS_MATCHES(smoothness_scan(pbs, chart, 9), Error,
                       kind_is(ErrorKind::BadCharacteristic));
  CHECK_THROWS_MATCHES(smoothness_scan(pbs, chart, 17), Error,
                       kind_is(ErrorKind::FieldTooLarge));

  BinomialSystem bad = parse_system("vars: x y\nx^2 - 5*y^2\n");
  std::vector<PulledBinomial> badp = pullback(bad, sf);
  CHECK_THROWS_MATCHES(smoothness_scan(badp, chart, 5), Error,
                       kind_is(ErrorKind::BadCharacteristic));
  CHECK(smoothness_scan(badp, chart, 3).empty());

  BinomialSystem wide = parse_system(
      "vars: x1 x2 x3 x4 x5 x6 x7 x8\nx1 - x2\n");
  StackyFan sf8 = build_stacky_fan(orthant_fan(8), wide.order);
  CHECK_THROWS_MATCHES(
      smoothness_scan(pullback(wide, sf8), charts(sf8)[0], 13), Error,
      kind_is(ErrorKind::TooManyCoordinates));
}

TEST_CASE("reduced preimages are smooth at good primes", "[oracle]") {
  for (const BinomialSystem& sys : corpus::system_corpus()) {
    IntMat rows = exponent_matrix(sys);
    if (rows.empty()) continue;
    std::vector<Int> bad = problematic_primes(sys);
    StackyFan sf = build_stacky_fan(system_fan(sys), sys.order);
    std::vector<PulledBinomial> pulled = pullback(sys, sf);
    for (Int q : {Int(5), Int(7)}) {
      if (std::find(bad.begin(), bad.end(), q) != bad.end()) continue;
      if (sf.n() > (q == 5 ? 7 : 6)) continue; // keep the scan budget small
      std::vector<PulledBinomial> reduced;
      for (const PulledBinomial& pb : pulled)
        reduced.push_back(pb.is_pure() ? reduce_pure(pb, q) : pb);
      for (const Chart& chart : charts(sf)) {
        IntMat violations = smoothness_scan(reduced, chart, q);
        if (!violations.empty()) {
          CAPTURE(chart.cone_index, q);
          FAIL("singular rational point on a reduced preimage");
        }
      }
    }
  }
}

TEST_CASE("fan validity checks", "[oracle]") {
  BinomialSystem surf = parse_system("vars: x y z\nx^2 - y^3\nx^4 - z^5\n");
  Fan fan = system_fan(surf);
  CHECK(!fan_face_violation(fan).has_value());
  CHECK(!fan_coverage_gap(fan).has_value());
  Fan star = star_subdivide_all_rays(fan);
  CHECK(!fan_face_violation(star).has_value());
  CHECK(!fan_coverage_gap(star).has_value());

  // Two cones overlapping in a full-dimensional wedge violate the face
  // axiom even though they cover the orthant.
  Fan broken;
  broken.dim = 2;
  broken.maximal = {cone_from_rays({{1, 0}, {1, 2}}, 2),
                    cone_from_rays({{2, 1}, {0, 1}}, 2)};
  auto violation = fan_face_violation(broken);
  REQUIRE(violation.has_value());
  CHECK(*violation == std::make_pair(std::size_t{0}, std::size_t{1}));

  // A single wedge leaves most of the orthant uncovered.
  Fan gappy;
  gappy.dim = 2;
  gappy.maximal = {cone_from_rays({{1, 0}, {1, 1}}, 2)};
  CHECK(fan_coverage_gap(gappy).has_value());
}
