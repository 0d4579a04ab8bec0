#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ramsey/analysis.hpp"
#include "ramsey/energy.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/verifier.hpp"
#include "support.hpp"

using namespace ramsey;

namespace {

double density_sum(const DosHistogram& dos) {
  double sum = 0.0;
  for (const auto& [energy, d] : dos.density) sum += d;
  return sum;
}

Colouring rotate(const Colouring& c) {
  const std::size_t n = c.n_vertices();
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = static_cast<Vertex>((v + 1) % n);
  return c.relabelled(perm);
}

}  // namespace

TEST(Dos, PartyColouringEveryFlipMakesOneTriangle) {
  const Colouring c = test::party5();
  const Problem unit = Problem({3, 3}).with_unit_weights();
  std::map<std::int64_t, std::uint64_t> expected;
  for (std::size_t i = 0; i < c.n_edges(); ++i) {
    Colouring flipped = c;
    flipped.set_index(i, static_cast<ColourId>(1 - c.at_index(i)));
    ++expected[static_cast<std::int64_t>(test::bitmask_energy(flipped, unit))];
  }
  ASSERT_EQ(expected, (std::map<std::int64_t, std::uint64_t>{{1, 10}}));

  const DosHistogram dos = single_flip_dos(c, unit);
  EXPECT_EQ(dos.counts, expected);
  EXPECT_EQ(dos.neighbour_count, 10u);
  EXPECT_FALSE(dos.off_manifold);
  EXPECT_EQ(dos.density, (std::map<std::int64_t, double>{{1, 1.0}}));
  EXPECT_DOUBLE_EQ(dos.mean_energy(), 1.0);

  std::ostringstream out;
  write_dos(out, dos);
  EXPECT_EQ(out.str(), "1 1\n");
}

TEST(Dos, RequiresUnitWeights) {
  EXPECT_THROW(single_flip_dos(test::party5(), Problem({3, 3})), ConfigError);
}

TEST(Dos, ColdEdgeFlipBinsAtZero) {
  // Three vertices under targets (4,4): no clique can form at all.
  const DosHistogram dos = single_flip_dos(Colouring(3, 2), Problem({4, 4}).with_unit_weights());
  EXPECT_EQ(dos.density, (std::map<std::int64_t, double>{{0, 1.0}}));
}

TEST(Dos, OffManifoldIsFlagged) {
  const DosHistogram dos = single_flip_dos(Colouring(4, 2), Problem({3, 3}).with_unit_weights());
  EXPECT_TRUE(dos.off_manifold);
  EXPECT_EQ(dos.base_energy, 4);
  // Each recoloured edge of uniform K4 destroys its two triangles.
  EXPECT_EQ(dos.counts, (std::map<std::int64_t, std::uint64_t>{{2, 6}}));
}

TEST(Dos, NormalizedAndConsistentWithRecompute) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const auto& sizes = test::small_targets()[trial % test::small_targets().size()];
    const Problem unit = Problem(sizes).with_unit_weights();
    const Colouring c = test::random_fill(3 + rng() % 7, unit.n_colours(), rng);
    const DosHistogram dos = single_flip_dos(c, unit);
    EXPECT_EQ(dos.neighbour_count, c.n_edges() * (unit.n_colours() - 1));
    EXPECT_NEAR(density_sum(dos), 1.0, 1e-12);

    std::map<std::int64_t, std::uint64_t> recomputed;
    for (std::size_t i = 0; i < c.n_edges(); ++i) {
      for (std::size_t k = 0; k < unit.n_colours(); ++k) {
        if (k == c.at_index(i)) continue;
        const Colouring flipped = apply_flip(c, c.edge_at(i), static_cast<ColourId>(k));
        ++recomputed[static_cast<std::int64_t>(std::llround(total_energy(flipped, unit).total))];
      }
    }
    EXPECT_EQ(dos.counts, recomputed);
    for (const auto& [energy, d] : dos.density) EXPECT_GE(energy, 0);
  }
}

TEST(Cyclic, ExpandFiveVertexClassesGivesPentagon) {
  const Colouring c = expand_cyclic(CyclicColouring(5, 2, {0, 1}));
  EXPECT_TRUE(verify_clique_free(c, Problem({3, 3})));
  // Relabel the pentagon 0-1-2-3-4 onto the party colouring's blue cycle 0-1-4-3-2.
  const std::vector<Vertex> perm = {0, 1, 4, 3, 2};
  EXPECT_EQ(c.relabelled(perm), test::party5());
}

TEST(Cyclic, ConstantClassesAreUniform) {
  EXPECT_EQ(expand_cyclic(CyclicColouring(8, 3, {2, 2, 2, 2})), Colouring(8, 3, ColourId{2}));
}

TEST(Cyclic, ExpansionIsShiftInvariant) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    const std::size_t l = 2 + rng() % 3;
    std::vector<ColourId> classes(n / 2);
    for (auto& k : classes) k = static_cast<ColourId>(rng() % l);
    const Colouring c = expand_cyclic(CyclicColouring(n, l, classes));
    EXPECT_EQ(rotate(c), c);
    for (Vertex p = 0; p < n; ++p) {
      for (Vertex q = p + 1; q < n; ++q) {
        EXPECT_EQ(c.at(p, q), c.at((p + 1) % n, (q + 1) % n));
      }
    }
  }
}

TEST(Cyclic, RejectsBadClassVectors) {
  EXPECT_THROW(CyclicColouring(6, 2, {0, 1}), PreconditionError);
  EXPECT_THROW(CyclicColouring(6, 2, {0, 1, 2}), PreconditionError);
}

TEST(Cyclic, ExhaustiveFindsPentagon) {
  const CyclicSearchResult r = cyclic_search(Problem({3, 3}), 5, CyclicMode::Exhaustive);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.found->class_colours(), (std::vector<ColourId>{0, 1}));
  EXPECT_EQ(r.index, 1u);
  EXPECT_EQ(r.candidates_tested, 2u);
}

TEST(Cyclic, ExhaustiveSixVerticesTestsAllEight) {
  const CyclicSearchResult r = cyclic_search(Problem({3, 3}), 6, CyclicMode::Exhaustive);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.candidates_tested, 8u);
}

TEST(Cyclic, ExhaustiveAgreesWithFullVerification) {
  // Count clique-free class vectors for (3,4) on 8 vertices both ways.
  const Problem prob({3, 4});
  std::size_t via_verifier = 0;
  for (std::uint32_t bits = 0; bits < 16; ++bits) {
    std::vector<ColourId> classes(4);
    for (int d = 0; d < 4; ++d) classes[d] = static_cast<ColourId>(bits >> (3 - d) & 1);
    if (verify_clique_free(expand_cyclic(CyclicColouring(8, 2, classes)), prob)) {
      if (via_verifier++ == 0) {
        const CyclicSearchResult r = cyclic_search(prob, 8, CyclicMode::Exhaustive);
        ASSERT_TRUE(r.found);
        EXPECT_EQ(r.found->class_colours(), classes);
        EXPECT_EQ(r.index, bits);
      }
    }
  }
  EXPECT_GT(via_verifier, 0u);
}

TEST(Cyclic, PaleySeventeen) {
  const CyclicSearchResult r = cyclic_search(Problem({4, 4}), 17, CyclicMode::Exhaustive);
  ASSERT_TRUE(r.found);
  EXPECT_TRUE(verify_clique_free(expand_cyclic(*r.found), Problem({4, 4})));
}

TEST(Cyclic, BudgetRefusal) {
  CyclicSearchOptions options;
  options.budget = 1000;
  try {
    cyclic_search(Problem({3, 3, 4}), 29, CyclicMode::Exhaustive, options);
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& e) {
    EXPECT_NE(std::string(e.what()).find("3^14"), std::string::npos) << e.what();
  }
}

TEST(Cyclic, AnnealedFindsSmallCases) {
  CyclicSearchOptions options;
  options.anneal.rng_seed = 4;
  options.anneal.max_steps = 100'000;
  const CyclicSearchResult five = cyclic_search(Problem({3, 3}), 5, CyclicMode::Annealed, options);
  ASSERT_TRUE(five.found);
  const CyclicSearchResult paley = cyclic_search(Problem({4, 4}), 17, CyclicMode::Annealed, options);
  ASSERT_TRUE(paley.found);
  EXPECT_TRUE(verify_clique_free(expand_cyclic(*paley.found), Problem({4, 4})));

  options.anneal.max_steps = 2'000;
  EXPECT_FALSE(cyclic_search(Problem({3, 3}), 6, CyclicMode::Annealed, options).found);
}
