#include <gtest/gtest.h>

#include <sstream>

#include "ramsey/colouring_io.hpp"
#include "ramsey/energy.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/verifier.hpp"
#include "support.hpp"

using namespace ramsey;

namespace {

std::string cert_text(const Certificate& cert) {
  std::ostringstream out;
  cert.write(out);
  return out.str();
}

Certificate reread(const std::string& text) {
  std::istringstream in(text);
  return read_certificate(in);
}

}  // namespace

TEST(Verifier, PartyColouringIsCliqueFree) {
  EXPECT_TRUE(verify_clique_free(test::party5(), Problem({3, 3})));
  EXPECT_FALSE(find_violation(test::party5(), Problem({3, 3})));
}

TEST(Verifier, UniformTriangleViolation) {
  const auto v = find_violation(Colouring(3, 2), Problem({3, 3}));
  ASSERT_TRUE(v);
  EXPECT_EQ(v->vertices, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(v->colour, 0);
  EXPECT_EQ(v->describe(), "{0,1,2} colour 0");
}

TEST(Verifier, EveryColouringOfSixVerticesHasATriangle) {
  const Problem prob({3, 3});
  std::uint64_t checked = 0;
  for (std::uint32_t bits = 0; bits < (1u << 15); ++bits) {
    std::vector<ColourId> edges(15);
    for (int i = 0; i < 15; ++i) edges[i] = static_cast<ColourId>(bits >> i & 1);
    const Colouring c(6, 2, std::move(edges));
    ASSERT_FALSE(verify_clique_free(c, prob)) << to_canonical_string(c);
    ++checked;
  }
  EXPECT_EQ(checked, 32768u);
}

TEST(Verifier, CountsMatchBitmaskOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto& sizes = test::small_targets()[trial % test::small_targets().size()];
    const Problem prob(sizes);
    const Colouring c = test::random_fill(2 + rng() % 8, prob.n_colours(), rng);
    EXPECT_EQ(naive_mono_counts(c, prob), test::bitmask_mono_counts(c, sizes));
  }
}

TEST(Verifier, ZeroEnergyEquivalence) {
  std::mt19937_64 rng(32);
  int clique_free = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto& sizes = test::small_targets()[trial % test::small_targets().size()];
    const Problem prob(sizes);
    const Colouring c = test::random_fill(3 + rng() % 7, prob.n_colours(), rng);
    const bool free = verify_clique_free(c, prob);
    clique_free += free;
    EXPECT_EQ(free, total_energy(c, prob).total == 0.0);
  }
  EXPECT_GT(clique_free, 20);
}

TEST(Verifier, CliqueFreeIsHereditary) {
  std::mt19937_64 rng(33);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 40; ++trial) {
    const Problem prob({3, 4});
    const Colouring c = test::random_fill(7, 2, rng);
    if (!verify_clique_free(c, prob)) continue;
    ++tested;
    for (Vertex drop = 0; drop < 7; ++drop) {
      std::vector<Vertex> keep;
      for (Vertex v = 0; v < 7; ++v) {
        if (v != drop) keep.push_back(v);
      }
      EXPECT_TRUE(verify_clique_free(c.induced(keep), prob));
    }
  }
  EXPECT_GT(tested, 0);
}

TEST(ExhaustiveMinimum, FiveVerticesReachZero) {
  const ExhaustiveMinimum m = min_energy_exhaustive(5, Problem({3, 3}).with_unit_weights());
  EXPECT_EQ(m.min_energy, 0.0);
  // Clique-free 2-colourings of K5 are exactly the labelled pentagon/pentagram pairs.
  EXPECT_EQ(m.minimizers, 12u);
  EXPECT_EQ(m.colourings_checked, 1024u);
}

TEST(ExhaustiveMinimum, SixVerticesHaveTwoTriangles) {
  const ExhaustiveMinimum m = min_energy_exhaustive(6, Problem({3, 3}).with_unit_weights());
  EXPECT_EQ(m.min_energy, 2.0);
  EXPECT_EQ(m.colourings_checked, 32768u);
  EXPECT_GT(m.minimizers, 0u);
}

TEST(ExhaustiveMinimum, Triangle) {
  const ExhaustiveMinimum m = min_energy_exhaustive(3, Problem({3, 3}).with_unit_weights());
  EXPECT_EQ(m.min_energy, 0.0);
  EXPECT_EQ(m.minimizers, 6u);
}

TEST(ExhaustiveMinimum, RefusesOverBudget) {
  try {
    min_energy_exhaustive(8, Problem({3, 3}));
    FAIL() << "expected BudgetError";
  } catch (const BudgetError& e) {
    EXPECT_NE(std::string(e.what()).find("2^28"), std::string::npos) << e.what();
  }
}

TEST(Certificate, PartyColouringCertifiesSix) {
  const Certificate cert = make_certificate(test::party5(), Problem({3, 3}));
  EXPECT_EQ(cert.statement(), "R(3,3) >= 6");
  EXPECT_EQ(cert.implied_bound(), 6u);
  EXPECT_EQ(cert.hash_algorithm(), "sha256");
  EXPECT_EQ(cert.checksum(), sha256_hex(to_canonical_string(test::party5())));
}

TEST(Certificate, RefusesWithViolatingClique) {
  try {
    make_certificate(Colouring(3, 2), Problem({3, 3}));
    FAIL() << "expected VerificationError";
  } catch (const VerificationError& e) {
    EXPECT_NE(std::string(e.what()).find("{0,1,2} colour 0"), std::string::npos) << e.what();
  }
}

TEST(Certificate, RoundTrip) {
  const Certificate cert = make_certificate(test::party5(), Problem({3, 3}));
  const std::string text = cert_text(cert);
  const Certificate back = reread(text);
  EXPECT_EQ(back.colouring(), cert.colouring());
  EXPECT_EQ(back.problem(), cert.problem());
  EXPECT_EQ(back.checksum(), cert.checksum());
  EXPECT_EQ(back.verified_at(), cert.verified_at());
  EXPECT_EQ(cert_text(back), text);
}

TEST(Certificate, TamperingIsDetected) {
  const std::string text = cert_text(make_certificate(test::party5(), Problem({3, 3})));

  std::string wrong_sum = text;
  const auto at = wrong_sum.find("checksum: ") + 10;
  wrong_sum[at] = wrong_sum[at] == 'a' ? 'b' : 'a';
  EXPECT_THROW(reread(wrong_sum), VerificationError);

  std::string wrong_bound = text;
  wrong_bound.replace(wrong_bound.find("bound: 6"), 8, "bound: 7");
  EXPECT_THROW(reread(wrong_bound), VerificationError);

  // Recolour (3,4) so {2,3,4} becomes monochromatic; checksum check may fire
  // either way, but the certificate must not load.
  std::string bad_colouring = text;
  bad_colouring.replace(bad_colouring.rfind("\n0\n"), 3, "\n1\n");
  EXPECT_THROW(reread(bad_colouring), VerificationError);

  EXPECT_THROW(reread("not a certificate\n"), ParseError);
  EXPECT_THROW(reread(text.substr(0, text.find("checksum"))), ParseError);
}

TEST(Sha256, KnownDigests) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
