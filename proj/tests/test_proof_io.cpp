#include <gtest/gtest.h>

#include "mres/proof_io.hpp"
#include "mres/qdimacs.hpp"
#include "support.hpp"

using namespace mres;

TEST(ProofIo, RoundTripsBuiltProofs) {
  for (const auto& bp : {build_example(), build_kbkf_lq_we(2), build_heq2_wf(2), build_mparity(2)}) {
    const auto text = write_proof(bp.proof);
    const auto back = parse_proof(text);
    EXPECT_EQ(back.steps, bp.proof.steps);
    EXPECT_EQ(back.formula_hash, bp.proof.formula_hash);
    EXPECT_EQ(write_proof(back), text);
  }
}

TEST(ProofIo, ExampleText) {
  const auto bp = build_example();
  const auto text = write_proof(bp.proof);
  EXPECT_EQ(text.rfind("p mresproof " + format_hash(formula_hash(bp.formula)) + " 7\n", 0), 0U);
  EXPECT_NE(text.find("R 7 3 6 3\n"), std::string::npos);
}

TEST(ProofIo, ParsesEveryRule) {
  const auto p = parse_proof("p mresproof 00000000000000ff 4\nc note\nA 1 2\nWE 2 1 -3\nWF 3 2 4 1\nR 4 3 1 5\n");
  EXPECT_EQ(p.formula_hash, 0xffU);
  ASSERT_EQ(p.steps.size(), 4U);
  EXPECT_EQ(std::get<AxiomStep>(p.steps[0]).clause, 1U);
  EXPECT_EQ(std::get<ResolveStep>(p.steps[3]).left, 2U);
  EXPECT_EQ(std::get<WeakenExistStep>(p.steps[1]).lit, Lit(Var{3}, false));
  EXPECT_EQ(std::get<WeakenStrategyStep>(p.steps[2]).universal, Var{4});
  EXPECT_TRUE(std::get<WeakenStrategyStep>(p.steps[2]).value);
  EXPECT_EQ(std::get<ResolveStep>(p.steps[3]).pivot, Var{5});
  ASSERT_EQ(p.comments.size(), 1U);
  EXPECT_EQ(p.comments[0], "note");
}

TEST(ProofIo, RejectsMalformedText) {
  EXPECT_THROW(parse_proof(""), ProofParseError);
  EXPECT_THROW(parse_proof("p mresproof zz 0\n"), ProofParseError);
  EXPECT_THROW(parse_proof("p mresproof 0 1\nA 2 1\n"), ProofParseError);
  EXPECT_THROW(parse_proof("p mresproof 0 2\nA 1 1\nR 2 1 2 1\n"), ProofParseError);
  EXPECT_THROW(parse_proof("p mresproof 0 2\nA 1 1\n"), ProofParseError);
  EXPECT_THROW(parse_proof("p mresproof 0 1\nX 1 1\n"), ProofParseError);
  EXPECT_THROW(parse_proof("p mresproof 0 1\nWF 1 1 2 3\n"), ProofParseError);
  try {
    parse_proof("p mresproof 0 2\nA 1 1\nA 3 1\n");
    FAIL();
  } catch (const ProofParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(ProofIo, FamilyDirective) {
  const auto bp = build_mparity(3);
  const auto d = find_family_directive(bp.proof);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->family, "mparity");
  EXPECT_EQ(d->n, 3U);
  EXPECT_EQ(family_directive("eq2", 4), "family eq2 4");
  EXPECT_FALSE(find_family_directive(Proof{}).has_value());
}
