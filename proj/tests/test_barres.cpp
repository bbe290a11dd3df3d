#include "einf/barres.hpp"

#include <gtest/gtest.h>

using namespace einf;

namespace {

Perm C(const char* s, int n) { return Perm::from_cycles(s, n); }

RChain id_minus_eta_eps(const BarWord& w)
{
    RChain r(w);
    if (w.dim() == 0) r.add(BarWord::unit(w.arity()), -1);
    return r;
}

// (D x 1) D and (1 x D) D written as triple words.
using Triple = std::tuple<BarWord, BarWord, BarWord>;
Lin<Triple> left_iter(const BarWord& w)
{
    Lin<Triple> r;
    for (const auto& [p, v] : coproduct_R(w))
        for (const auto& [q, u] : coproduct_R(p.first)) r.add(Triple(q.first, q.second, p.second), v * u);
    return r;
}
Lin<Triple> right_iter(const BarWord& w)
{
    Lin<Triple> r;
    for (const auto& [p, v] : coproduct_R(w))
        for (const auto& [q, u] : coproduct_R(p.second)) r.add(Triple(p.first, q.first, q.second), v * u);
    return r;
}

}  // namespace

TEST(Face, Cases)
{
    Perm a = C("(12)", 3), b = C("(23)", 3);
    BarWord w(Perm(3), {a, b});
    EXPECT_EQ(face(0, w), RChain(BarWord(a, {b})));
    EXPECT_EQ(face(2, w), RChain(BarWord(Perm(3), {a})));
    EXPECT_EQ(face(1, w), RChain(BarWord(Perm(3), {a * b})));
    BarWord inv(Perm(3), {C("(123)", 3), C("(132)", 3)});
    EXPECT_TRUE(face(1, inv).empty());
    EXPECT_THROW(face(3, w), RangeError);
}

TEST(Differential, LowDims)
{
    Perm a = C("(12)", 2);
    RChain expect(BarWord(a, {}));
    expect.add(BarWord::unit(2), -1);
    EXPECT_EQ(differential(BarWord(Perm(2), {a})), expect);
    EXPECT_TRUE(differential(BarWord(a, {})).empty());
}

TEST(Phi, Cases)
{
    Perm a = C("(12)", 2);
    EXPECT_EQ(phi(BarWord(a, {})), RChain(BarWord(Perm(2), {a})));
    EXPECT_TRUE(phi(BarWord(Perm(2), {a})).empty());
}

TEST(Coproduct, LowDims)
{
    EXPECT_EQ(coproduct_R(BarWord::unit(2)), RRChain(RPair(BarWord::unit(2), BarWord::unit(2))));
    Perm a = C("(12)", 2);
    BarWord w(Perm(2), {a});
    RRChain expect;
    expect.add(RPair(BarWord::unit(2), w), 1);
    expect.add(RPair(w, BarWord(a, {})), 1);
    EXPECT_EQ(coproduct_R(w), expect);
}

TEST(Parse, RoundTrip)
{
    BarWord w = BarWord::parse("(12)[(123)|(13)]", 3);
    EXPECT_EQ(w.dim(), 2);
    EXPECT_EQ(BarWord::parse(w.to_string(), 3), w);
    EXPECT_EQ(BarWord::parse("1[(12)]", 2), BarWord(Perm(2), {C("(12)", 2)}));
    EXPECT_THROW(BarWord::parse("1[1]", 2), InputError);
}

// Exhaustive contracting-cochain and coproduct suite on small arities.
class BarSuite : public ::testing::TestWithParam<int> {};

TEST_P(BarSuite, ContractionIdentities)
{
    int n = GetParam();
    int maxd = n <= 3 ? 4 : 3;
    for (int d = 0; d <= maxd; ++d)
        for (const auto& w : bar_basis(n, d, false)) {
            EXPECT_TRUE(differential(differential(w)).empty()) << w.to_string();
            RChain lhs = differential(phi(w)) + phi(differential(w));
            EXPECT_EQ(lhs, id_minus_eta_eps(w)) << w.to_string();
            EXPECT_TRUE(phi(phi(w)).empty());
        }
}

TEST_P(BarSuite, CoproductChainMapCoassociativeEquivariant)
{
    int n = GetParam();
    int maxd = n <= 3 ? 3 : 2;
    std::vector<Perm> perms = all_perms(n);
    for (int d = 0; d <= maxd; ++d)
        for (const auto& w : bar_basis(n, d, false)) {
            EXPECT_EQ(differential(coproduct_R(w)), coproduct_R(differential(w))) << w.to_string();
            EXPECT_EQ(left_iter(w), right_iter(w)) << w.to_string();
            const Perm& s = perms[(d * 7 + w.bytes().size()) % perms.size()];
            EXPECT_EQ(coproduct_R(act(s, w)), act_diag(s, coproduct_R(w)));
            EXPECT_EQ(differential(act(s, RChain(w))), act(s, differential(w)));
        }
}

INSTANTIATE_TEST_SUITE_P(Arities, BarSuite, ::testing::Values(1, 2, 3));
