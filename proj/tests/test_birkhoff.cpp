#include <gtest/gtest.h>

#include "pnf/birkhoff.hpp"
#include "pnf/harness.hpp"
#include "support.hpp"

using namespace pnf;
using pnf::test::poly;

namespace {

const Grading kDiag = Grading::diag();
const Grading kNondiag = Grading::nondiag();

bool is_zero(const MapPair& f) { return f.comp_x.is_zero() && f.comp_y.is_zero(); }

void expect_det_preserved(const MapPair& before, const MapPair& after) {
  const int p = reliable_det_order(before);
  EXPECT_TRUE(equal_to_order(jacobian_det(before), jacobian_det(after), p));
}

}  // namespace

TEST(OddifyNondiag, AlreadyOddIsUntouched) {
  const MapPair f = test::pair(kNondiag, 16, {{1, 0, 0, "-1"}, {0, 1, 0, "-1"}}, {{0, 1, 0, "-1"}});
  const OddifyResult r = oddify_nondiag(f);
  EXPECT_EQ(r.family, f);
  EXPECT_TRUE(r.log.empty());
}

TEST(OddifyNondiag, SeededFamiliesBecomeOdd) {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    const MapPair f = random_case_family(CaseTag::jordan_minus, s, 14);
    ASSERT_FALSE(is_zero(even_part(f))) << "seed " << s << " not contaminated";
    const OddifyResult r = oddify_nondiag(f);
    EXPECT_TRUE(is_zero(even_part(r.family))) << "seed " << s;
    EXPECT_EQ(replay(f, r.log), r.family);
    expect_det_preserved(f, r.family);
  }
}

TEST(OddifyDiagMinus, Examples) {
  const MapPair minus_id = -MapPair::identity(kDiag, 8);
  EXPECT_EQ(oddify_diag_minus(minus_id).family, minus_id);

  const Series h = poly(kDiag, 9, {{2, 2, 0, "1"}, {4, 0, 0, "-2"}, {1, 1, 1, "3"}});
  const MapPair f = -time_one_map(Generator(h), 8);
  const OddifyResult r = oddify_diag_minus(f);
  EXPECT_EQ(r.family, f);
  EXPECT_TRUE(r.log.empty());
}

TEST(OddifyDiagMinus, SeededFamiliesBecomeOdd) {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    const MapPair f = random_case_family(CaseTag::diag_minus, s, 10);
    ASSERT_FALSE(is_zero(even_part(f))) << "seed " << s << " not contaminated";
    const OddifyResult r = oddify_diag_minus(f);
    EXPECT_TRUE(is_zero(even_part(r.family))) << "seed " << s;
    EXPECT_EQ(replay(f, r.log), r.family);
    expect_det_preserved(f, r.family);
  }
}

TEST(ReversingOddify, Examples) {
  const MapPair flip = test::pair(kDiag, 8, {{1, 0, 0, "-1"}}, {{0, 1, 0, "1"}});
  EXPECT_EQ(reversing_oddify(flip).family, flip);

  MapPair f = time_one_map(Generator(poly(kDiag, 9, {{1, 2, 0, "1"}, {3, 0, 0, "1"}})), 8);
  f.comp_x = -f.comp_x;
  ASSERT_TRUE(is_zero(reversing_defect(f)));
  const OddifyResult r = reversing_oddify(f);
  EXPECT_EQ(r.family, f);
  EXPECT_TRUE(r.log.empty());
}

TEST(ReversingOddify, SeededFamiliesGetPattern) {
  for (std::uint64_t s = 1; s <= 4; ++s) {
    const MapPair f = random_case_family(CaseTag::reversing, s, 10);
    ASSERT_FALSE(is_zero(reversing_defect(f))) << "seed " << s << " not contaminated";
    const OddifyResult r = reversing_oddify(f);
    EXPECT_TRUE(has_parity(r.family.comp_x, Parity::odd_x)) << "seed " << s;
    EXPECT_TRUE(has_parity(r.family.comp_y, Parity::even_x)) << "seed " << s;
    EXPECT_EQ(replay(f, r.log), r.family);
    expect_det_preserved(f, r.family);
  }
}
