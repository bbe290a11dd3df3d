#include "einf/soperad.hpp"

#include <gtest/gtest.h>

using namespace einf;

namespace {
Perm C(const char* s, int n) { return Perm::from_cycles(s, n); }
}  // namespace

TEST(Compose, UnitBaseCase)
{
    SOperad s;
    EXPECT_EQ(s.compose(BarWord::unit(1), 1, BarWord::unit(1)), RChain(BarWord::unit(1)));
    EXPECT_EQ(s.compose(BarWord::unit(2), 2, BarWord::unit(2)), RChain(BarWord::unit(3)));
}

TEST(Compose, DimZeroMatchesS0)
{
    OperadReport r = verify_s0(3);
    EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations[0]);
    EXPECT_GT(r.per_identity["matches-S-dim0"], 0);
}

TEST(Compose, LeaderOneInvariant)
{
    SOperad s;
    BarWord a(Perm(2), {C("(12)", 2)});
    RChain r = s.compose(a, 1, BarWord::unit(2));
    ASSERT_FALSE(r.empty());
    for (const auto& [w, v] : r) {
        EXPECT_TRUE(w.leader_is_one());
        EXPECT_EQ(w.dim(), 1);
        EXPECT_EQ(w.arity(), 3);
    }
    // Every leader-1 pair produces leader-1 output.
    for (int d = 0; d <= 2; ++d)
        for (const auto& x : bar_basis(2, d, true))
            for (const auto& y : bar_basis(2, 2 - d, true))
                for (int i = 1; i <= 2; ++i)
                    for (const auto& [w, v] : s.compose(x, i, y)) EXPECT_TRUE(w.leader_is_one());
}

TEST(Compose, OrderIndependenceOfRecursion)
{
    // Clearing the cache and computing in reverse order yields identical chains.
    SOperad s1, s2;
    std::vector<std::tuple<BarWord, int, BarWord>> jobs;
    for (int d = 0; d <= 2; ++d)
        for (const auto& x : bar_basis(2, d, true))
            for (const auto& y : bar_basis(3, 2 - d, true))
                for (int i = 1; i <= 3; ++i) jobs.emplace_back(x, i, y);
    std::vector<RChain> fwd, bwd(jobs.size());
    for (auto& [x, i, y] : jobs) fwd.push_back(s1.compose(x, i, y));
    for (std::size_t k = jobs.size(); k-- > 0;) {
        auto& [x, i, y] = jobs[k];
        bwd[k] = s2.compose(x, i, y);
    }
    EXPECT_EQ(fwd, bwd);
}

TEST(Gamma, UnitsAndSingleSlot)
{
    SOperad s;
    RChain top(BarWord(Perm(2), {C("(12)", 2)}));
    RChain u(BarWord::unit(1));
    EXPECT_EQ(s.gamma({u, u}, top), top);
    RChain a(BarWord(C("(12)", 2), {}));
    EXPECT_EQ(s.gamma({a}, RChain(BarWord::unit(1))), s.compose(a, 1, RChain(BarWord::unit(1))));
    EXPECT_THROW(s.gamma({u}, top), RangeError);
}

TEST(Gamma, MatchesS0)
{
    SOperad s;
    for (const auto& a : all_perms(2))
        for (const auto& b : all_perms(1))
            for (const auto& top : all_perms(2)) {
                RChain g = s.gamma({RChain(BarWord(a, {})), RChain(BarWord(b, {}))}, RChain(BarWord(top, {})));
                EXPECT_EQ(g, RChain(BarWord(s0_compose({a, b}, top), {})));
            }
}

TEST(S0, Rules)
{
    Perm sigma = C("(123)", 3);
    EXPECT_EQ(s0_compose({Perm(2), Perm(1), Perm(3)}, sigma), block_tmap({2, 1, 3}, sigma));
    Perm a = C("(12)", 2), b = C("(123)", 3);
    EXPECT_EQ(s0_compose({a, b}, Perm(2)), block_sum(a, b));
}

TEST(Coassoc, Law)
{
    EXPECT_EQ(coassoc_compose(2, 2, 1), 3);
    EXPECT_EQ(coassoc_compose(1, 4, 2), 4);
    EXPECT_EQ(coassoc_compose(3, 2, 1), coassoc_compose(3, 2, 2));
    EXPECT_TRUE(verify_coassoc(4).ok());
}

TEST(Diagonal, BaseAndEquivariance)
{
    SOperad s;
    BarWord u = BarWord::unit(2);
    EXPECT_EQ(s.diagonal(u), RRChain(RPair(u, u)));
    BarWord g(C("(12)", 2), {});
    EXPECT_EQ(s.diagonal(g), RRChain(RPair(g, g)));
}

TEST(Diagonal, ChainMapCoassociativeEquivariant)
{
    SOperad s;
    using Triple = std::tuple<BarWord, BarWord, BarWord>;
    for (int n = 2; n <= 3; ++n)
        for (int d = 0; d <= (n == 2 ? 3 : 2); ++d)
            for (const auto& w : bar_basis(n, d, false)) {
                RRChain D = s.diagonal(w);
                EXPECT_EQ(differential(D), s.diagonal(differential(w))) << w.to_string();
                Lin<Triple> l, r;
                for (const auto& [p, v] : D) {
                    for (const auto& [q, u] : s.diagonal(p.first)) l.add(Triple(q.first, q.second, p.second), v * u);
                    for (const auto& [q, u] : s.diagonal(p.second)) r.add(Triple(p.first, q.first, q.second), v * u);
                }
                if (d <= 2) EXPECT_EQ(l, r) << w.to_string();
                for (const auto& g : all_perms(n)) EXPECT_EQ(s.diagonal(act(g, w)), act_diag(g, D));
            }
}

TEST(Diagonal, MorphismForComposition)
{
    // D(a o_i b) = sum (a' o_i b') x (a'' o_i b'') with the Koszul sign (-1)^{|a''||b'|}.
    SOperad s;
    for (int d = 0; d <= 2; ++d)
        for (const auto& a : bar_basis(2, d, true))
            for (const auto& b : bar_basis(2, 2 - d, true))
                for (int i = 1; i <= 2; ++i) {
                    RRChain lhs = s.diagonal(s.compose(RChain(a), i, RChain(b)));
                    RRChain rhs;
                    for (const auto& [pa, va] : s.diagonal(a))
                        for (const auto& [pb, vb] : s.diagonal(b)) {
                            Int sg = va * vb * sign_of(pa.second.dim() * pb.first.dim());
                            for (const auto& [x, xv] : s.compose(pa.first, i, pb.first))
                                for (const auto& [y, yv] : s.compose(pa.second, i, pb.second)) rhs.add(RPair(x, y), sg * xv * yv);
                        }
                    EXPECT_EQ(lhs, rhs) << a.to_string() << " o_" << i << " " << b.to_string();
                }
}

TEST(AInfinity, Images)
{
    SOperad s;
    auto f = s.ainfty_images(5);
    EXPECT_EQ(f[2], RChain(BarWord::unit(2)));
    // n = 3: f(D2) o_2 f(D2) - f(D2) o_1 f(D2) vanishes in dimension 0.
    EXPECT_TRUE(s.ainfty_quadratic(f, 3).empty());
    for (int n = 3; n <= 5; ++n) {
        RChain total = differential(f[n]) + s.ainfty_quadratic(f, n);
        EXPECT_TRUE(total.empty());
        for (const auto& [w, v] : f[n]) EXPECT_EQ(w.dim(), n - 2);
    }
}

TEST(Verify, SmallBounds)
{
    SOperad s;
    OperadReport r = verify_operad(s, 1, 2);
    EXPECT_TRUE(r.ok()) << (r.violations.empty() ? "" : r.violations[0]);
    EXPECT_GT(r.per_identity["associativity"], 0);
    EXPECT_GT(r.per_identity["commutativity"], 0);
}
