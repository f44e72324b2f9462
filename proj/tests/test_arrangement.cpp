// fanstalk tests: torus-coset consistency, coset membership, the
// intersection poset, simplicity, and the staged blowup schedule.
// Distributed under the MIT license; see LICENSE.

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fanstalk/transform.hpp"

using namespace fanstalk;

namespace {

TorusForm form(IntVec d, Rat lambda = 1) { return TorusForm{std::move(d), std::move(lambda)}; }

bool node_below(const PosetNode& x, const PosetNode& y) {
  return x.subset != y.subset &&
         std::includes(x.subset.begin(), x.subset.end(), y.subset.begin(),
                       y.subset.end());
}

} // namespace

TEST_CASE("coset consistency", "[arrangement]") {
  // A single condition is consistent whenever lambda survives reduction.
  CHECK(consistent({form({1, 0}, Rat(1) / 2)}, 0));
  CHECK(consistent({form({1, 0}, Rat(1) / 2)}, 5));
  CHECK(!consistent({form({1, 0}, Rat(1) / 2)}, 2)); // 1/2 is not a 2-unit

  // x = 1 and x = 4 conflict over Q but agree in F_3.
  std::vector<TorusForm> clash = {form({1, 0}, 1), form({1, 0}, 4)};
  CHECK(!consistent(clash, 0));
  CHECK(consistent(clash, 3));
  CHECK(!consistent(clash, 5));

  // The triple point: the relation (1, -1, -1) has matching lambdas.
  std::vector<TorusForm> triple = {form({1, 0}), form({0, 1}), form({1, 1})};
  CHECK(consistent(triple, 0));
  CHECK(consistent(triple, 7));
  std::vector<TorusForm> shifted = {form({1, 0}), form({0, 1}),
                                    form({1, 1}, 2)};
  CHECK(!consistent(shifted, 0));

  CHECK_THROWS_MATCHES(consistent({}, 0), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::EmptySystem;
                       }));
}

TEST_CASE("coset membership", "[arrangement]") {
  std::vector<TorusForm> point = {form({1, 0}), form({0, 1})};
  CHECK(vanishes_on(form({1, 1}), point, 0));
  CHECK(!vanishes_on(form({1, 1}, 2), point, 0));
  CHECK(vanishes_on(form({2, -3}), point, 0));

  // Integer span matters over Q: x^2 = 9 does not force x = 3 (x = -3 is
  // also on the locus) ...
  std::vector<TorusForm> square = {form({2, 0}, 9)};
  CHECK(!vanishes_on(form({1, 0}, 3), square, 0));
  // ... but in characteristic 2 squaring is injective, so the square root is
  // forced; 5 has the same image as 3 there.
  CHECK(vanishes_on(form({1, 0}, 3), square, 2));
  CHECK(vanishes_on(form({1, 0}, 5), square, 2));
  // Denominator 2 is not a power of 5, so characteristic 5 behaves like Q.
  CHECK(!vanishes_on(form({1, 0}, 3), square, 5));
  // A lambda that is not a unit makes the subset's coset empty.
  CHECK_THROWS_MATCHES(
      vanishes_on(form({1, 0}, 3), square, 3), Error,
      Catch::Matchers::Predicate<Error>(
          [](const Error& e) { return e.kind() == ErrorKind::Inconsistent; }));

  // Exponent outside the rational span never vanishes.
  CHECK(!vanishes_on(form({0, 1}), {form({1, 0}, 2)}, 0));
  // Matching lambda power: x = 2 forces x^2 = 4.
  CHECK(vanishes_on(form({2, 0}, 4), {form({1, 0}, 2)}, 0));
  CHECK(!vanishes_on(form({2, 0}, 5), {form({1, 0}, 2)}, 0));

  CHECK_THROWS_MATCHES(
      vanishes_on(form({1, 0}), {form({1, 0}, 1), form({1, 0}, 4)}, 0), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.kind() == ErrorKind::Inconsistent;
      }));
}

TEST_CASE("triple point poset and schedule", "[arrangement]") {
  std::vector<TorusForm> triple = {form({1, 0}), form({0, 1}), form({1, 1})};
  IntersectionPoset poset = intersection_poset(triple, 0);
  REQUIRE(poset.nodes.size() == 4);
  CHECK(poset.simple);

  // Deepest node first: the common point, closed under all three forms.
  CHECK(poset.nodes[0].subset == std::vector<std::size_t>{0, 1, 2});
  CHECK(poset.nodes[0].codim == 2);
  CHECK(poset.nodes[0].rank == 0);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(poset.nodes[i].subset == std::vector<std::size_t>{i - 1});
    CHECK(poset.nodes[i].codim == 1);
    CHECK(poset.nodes[i].rank == 1);
  }
  using Edge = std::pair<std::size_t, std::size_t>;
  CHECK(poset.edges == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});

  BlowupSchedule sched = hu_schedule(poset);
  REQUIRE(sched.stages.size() == 2);
  CHECK(sched.stages[0] == std::vector<std::size_t>{0});
  CHECK(sched.stages[1] == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("disjoint lines poset", "[arrangement]") {
  // x = 1 and y = 2 meet in a single point; the poset is a vee.
  std::vector<TorusForm> forms = {form({1, 0}), form({0, 1}, 2)};
  IntersectionPoset poset = intersection_poset(forms, 0);
  REQUIRE(poset.nodes.size() == 3);
  CHECK(poset.nodes[0].subset == std::vector<std::size_t>{0, 1});
  CHECK(poset.nodes[0].codim == 2);
  CHECK(poset.nodes[1].subset == std::vector<std::size_t>{0});
  CHECK(poset.nodes[2].subset == std::vector<std::size_t>{1});
  BlowupSchedule sched = hu_schedule(poset);
  REQUIRE(sched.stages.size() == 2);
  CHECK(sched.stages[0].size() == 1);
  CHECK(sched.stages[1].size() == 2);
}

TEST_CASE("component refinement keeps codimension", "[arrangement]") {
  // {x^2 = 1} has two components; {x = 1} is strictly smaller but of the
  // same codimension, so ranks see a chain the codimension cannot.
  std::vector<TorusForm> forms = {form({1, 0}), form({2, 0})};
  IntersectionPoset poset = intersection_poset(forms, 0);
  REQUIRE(poset.nodes.size() == 2);
  CHECK(poset.nodes[0].subset == std::vector<std::size_t>{0, 1});
  CHECK(poset.nodes[1].subset == std::vector<std::size_t>{1});
  CHECK(poset.nodes[0].codim == 1);
  CHECK(poset.nodes[1].codim == 1);
  CHECK(poset.nodes[0].rank == 0);
  CHECK(poset.nodes[1].rank == 1);
}

TEST_CASE("simplicity of the twisted triple", "[arrangement]") {
  BinomialSystem sys = parse_system("vars: x y\nx - 1\ny - 1\nx*y^5 - 1\n");
  SystemForms forms5 = torus_forms(sys, 5);
  SimpleReport at5 = is_simple_arrangement(forms5.forms, 5);
  REQUIRE(!at5.simple);
  REQUIRE(at5.failing_subsets ==
          std::vector<std::vector<std::size_t>>{{0, 2}});
  CHECK(is_simple_arrangement(torus_forms(sys, 7).forms, 7).simple);
  CHECK(is_simple_arrangement(torus_forms(sys, 0).forms, 0).simple);

  IntersectionPoset poset = intersection_poset(forms5.forms, 5);
  CHECK(!poset.simple);
  CHECK_THROWS_MATCHES(hu_schedule(poset), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NotSimple;
                       }));
}

TEST_CASE("characteristic zero is always simple", "[arrangement]") {
  for (const BinomialSystem& sys : corpus::system_corpus()) {
    SystemForms forms = torus_forms(sys, 0);
    if (forms.forms.size() > kMaxSubsetForms) continue;
    CHECK(is_simple_arrangement(forms.forms, 0).simple);
  }
}

TEST_CASE("poset invariants on corpus arrangements", "[arrangement]") {
  std::vector<Int> chars = {0, 5};
  std::size_t posets_checked = 0;
  const std::vector<BinomialSystem>& systems = corpus::system_corpus();
  for (std::size_t s = 0; s < systems.size(); ++s) {
    for (const Int& p : chars) {
      SystemForms sf = torus_forms(systems[s], p);
      if (sf.forms.empty() || sf.forms.size() > kMaxSubsetForms) continue;
      IntersectionPoset poset = intersection_poset(sf.forms, p);
      ++posets_checked;
      const auto& nodes = poset.nodes;

      // Nodes are sorted by (rank, subset) and subsets are distinct.
      for (std::size_t i = 1; i < nodes.size(); ++i) {
        bool ordered = nodes[i - 1].rank < nodes[i].rank ||
                       (nodes[i - 1].rank == nodes[i].rank &&
                        nodes[i - 1].subset < nodes[i].subset);
        REQUIRE(ordered);
      }

      // Codimension is the rational rank of the closure's exponent rows,
      // and every listed form really cuts the locus.
      for (const PosetNode& node : nodes) {
        IntMat rows;
        std::vector<TorusForm> sub;
        for (std::size_t j : node.subset) {
          rows.push_back(sf.forms[j].d);
          sub.push_back(sf.forms[j]);
        }
        REQUIRE(consistent(sub, p));
        REQUIRE(node.codim == rank_rational(rows));
        for (std::size_t j = 0; j < sf.forms.size(); ++j) {
          bool inside = std::find(node.subset.begin(), node.subset.end(), j) !=
                        node.subset.end();
          REQUIRE(vanishes_on(sf.forms[j], sub, p) == inside);
        }
      }

      // Rank equals the longest chain strictly below, recomputed naively.
      std::vector<std::size_t> longest(nodes.size(), 0);
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t y = 0; y < nodes.size(); ++y)
          for (std::size_t x = 0; x < nodes.size(); ++x)
            if (node_below(nodes[x], nodes[y]) &&
                longest[x] + 1 > longest[y]) {
              longest[y] = longest[x] + 1;
              changed = true;
            }
      }
      for (std::size_t i = 0; i < nodes.size(); ++i)
        REQUIRE(nodes[i].rank == longest[i]);

      // Edges are exactly the cover pairs, oriented deeper -> shallower.
      std::vector<std::pair<std::size_t, std::size_t>> covers;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          if (!node_below(nodes[i], nodes[j])) continue;
          bool covered = true;
          for (std::size_t k = 0; k < nodes.size() && covered; ++k)
            if (k != i && k != j && node_below(nodes[i], nodes[k]) &&
                node_below(nodes[k], nodes[j]))
              covered = false;
          if (covered) covers.emplace_back(i, j);
        }
      std::sort(covers.begin(), covers.end());
      std::vector<std::pair<std::size_t, std::size_t>> edges = poset.edges;
      std::sort(edges.begin(), edges.end());
      REQUIRE(edges == covers);
      for (const auto& [lo, hi] : edges) REQUIRE(nodes[lo].rank < nodes[hi].rank);

      // The schedule partitions the nodes by rank when the arrangement is
      // simple at p.
      if (poset.simple) {
        BlowupSchedule sched = hu_schedule(poset);
        std::size_t total = 0;
        for (std::size_t r = 0; r < sched.stages.size(); ++r) {
          REQUIRE(!sched.stages[r].empty());
          for (std::size_t id : sched.stages[r]) {
            REQUIRE(nodes[id].rank == r);
            ++total;
          }
        }
        REQUIRE(total == nodes.size());
      }
    }
  }
  REQUIRE(posets_checked >= 40);
}
