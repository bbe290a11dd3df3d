#include "einf/exactchain.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <random>

using namespace einf;

namespace {

GradedComplex interval()
{
    GradedComplex c;
    c.add_cell("p0", 0);
    c.add_cell("p1", 0);
    Chain b;
    b.add("p1", 1);
    b.add("p0", -1);
    c.add_cell("q", 1, b);
    return c;
}

GradedComplex circle3()
{
    GradedComplex c;
    for (auto v : {"v0", "v1", "v2"}) c.add_cell(v, 0);
    auto edge = [&](const char* n, const char* a, const char* b) {
        Chain ch;
        ch.add(b, 1);
        ch.add(a, -1);
        c.add_cell(n, 1, ch);
    };
    edge("e01", "v0", "v1");
    edge("e12", "v1", "v2");
    edge("e02", "v0", "v2");
    return c;
}

// Rank over a prime field; an independent oracle for integer ranks of small matrices.
std::size_t rank_mod_p(const Matrix& m, long long p = 1000003)
{
    std::vector<std::vector<long long>> a(m.rows, std::vector<long long>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            Int v = m(i, j) % p;
            if (v < 0) v += p;
            a[i][j] = static_cast<long long>(v);
        }
    auto inv = [&](long long x) {
        long long r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t piv = r;
        while (piv < m.rows && a[piv][c] == 0) ++piv;
        if (piv == m.rows) continue;
        std::swap(a[piv], a[r]);
        long long iv = inv(a[r][c]);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            long long f = a[i][c] * iv % p;
            for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

}  // namespace

TEST(ApplyMap, IdentityTensor)
{
    GradedComplex i = interval();
    std::vector<const GradedComplex*> f{&i, &i};
    TChain r = apply_tensor({identity_map(), identity_map()}, Word{"q", "p0"}, f);
    EXPECT_EQ(r, TChain(Word{"q", "p0"}));
}

TEST(ApplyMap, KoszulSignOnSecondFactor)
{
    GradedComplex i = interval();
    std::vector<const GradedComplex*> f{&i, &i};
    GradedMap d{-1, [&](const std::string& s) { return i.boundary(s); }};
    TChain r = apply_tensor({identity_map(), d}, Word{"q", "q"}, f);
    TChain expect;
    expect.add(Word{"q", "p1"}, -1);
    expect.add(Word{"q", "p0"}, 1);
    EXPECT_EQ(r, expect);
}

TEST(ApplyMap, TensorDifferentialSquaresToZero)
{
    GradedComplex i = interval();
    GradedComplex s = circle3();
    std::vector<const GradedComplex*> f{&i, &s};
    for (const auto& a : {"p0", "p1", "q"})
        for (const auto& b : {"v0", "e01", "e02"}) EXPECT_TRUE(tensor_d(tensor_d(TChain(Word{a, b}), f), f).empty());
}

TEST(ApplyMap, CompositionLaw)
{
    // (f1 x g1)(f2 x g2) = (-1)^{deg f2 deg g1} (f1 f2 x g1 g2)
    GradedComplex i = interval();
    std::vector<const GradedComplex*> f{&i, &i};
    GradedMap d{-1, [&](const std::string& s) { return i.boundary(s); }};
    GradedMap id = identity_map();
    for (const auto& a : {"p0", "p1", "q"})
        for (const auto& b : {"p0", "p1", "q"}) {
            TChain lhs = apply_tensor({id, d}, apply_tensor({d, id}, Word{a, b}, f), f);
            TChain rhs = -apply_tensor({d, d}, Word{a, b}, f);
            EXPECT_EQ(lhs, rhs) << a << " " << b;
        }
}

TEST(ApplyMap, RangeError)
{
    GradedComplex i = interval();
    EXPECT_THROW(apply_map(identity_map(), Chain("zz"), i), RangeError);
}

TEST(Suspend, ZeroShiftIsIdentity)
{
    GradedComplex i = interval();
    EXPECT_TRUE(suspend(i, 0) == i);
}

TEST(Suspend, PointDown)
{
    GradedComplex c;
    c.add_cell("x", 0);
    GradedComplex s = suspend(c, -1);
    EXPECT_EQ(s.dim("x"), -1);
    EXPECT_TRUE(s.boundary("x").empty());
}

TEST(Suspend, BoundarySquaresToZero)
{
    GradedComplex s = suspend(interval(), 3);
    EXPECT_TRUE(s.check_d2().empty());
    EXPECT_EQ(s.boundary("q").coeff("p1"), -1);
}

TEST(Homology, Circle)
{
    GradedComplex c = circle3();
    EXPECT_EQ(smith_homology(c, 0), (Homology{1, {}}));
    EXPECT_EQ(smith_homology(c, 1), (Homology{1, {}}));
}

TEST(Homology, AcyclicAndTorsion)
{
    GradedComplex a;
    a.add_cell("x", 0);
    a.add_cell("y", 1, Chain("x"));
    EXPECT_EQ(smith_homology(a, 0), (Homology{0, {}}));
    EXPECT_EQ(smith_homology(a, 1), (Homology{0, {}}));
    GradedComplex t;
    t.add_cell("x", 0);
    t.add_cell("y", 1, Chain("x", 2));
    EXPECT_EQ(smith_homology(t, 0), (Homology{0, {Int(2)}}));
}

TEST(Homology, RankNullityAgainstFieldRank)
{
    GradedComplex c = circle3();
    std::vector<const GradedComplex*> f{&c, &c};
    TensorComplex t = tensor_complex(f, 0, 2);
    for (int d = 0; d <= 2; ++d) {
        std::size_t nd = t.complex.rank(d);
        std::size_t r_out = d > 0 ? rank_mod_p(boundary_matrix(t.complex, d)) : 0;
        std::size_t r_in = d < 2 ? rank_mod_p(boundary_matrix(t.complex, d + 1)) : 0;
        Homology h = smith_homology(t.complex, d);
        EXPECT_EQ(h.betti, static_cast<long>(nd - r_out - r_in));
        EXPECT_TRUE(h.torsion.empty());
    }
    // Torus Betti numbers 1, 2, 1.
    EXPECT_EQ(smith_homology(t.complex, 1).betti, 2);
    EXPECT_EQ(smith_homology(t.complex, 2).betti, 1);
}

TEST(Smith, TransformsReproduceDiagonal)
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix a(4 + trial % 3, 5);
        for (auto& x : a.a) x = dist(rng);
        Smith s = smith_normal_form(a, true);
        EXPECT_EQ(s.U * a * s.V, s.D);
        EXPECT_EQ(s.U * s.Uinv, Matrix::identity(a.rows));
        EXPECT_EQ(s.V * s.Vinv, Matrix::identity(a.cols));
        for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) EXPECT_EQ(s.diag[i + 1] % s.diag[i], 0);
        EXPECT_EQ(s.rank, rank_mod_p(a));
    }
}

TEST(SolveBoundary, Basics)
{
    GradedComplex i = interval();
    EXPECT_TRUE(solve_boundary(i, Chain{})->empty());
    Chain b;
    b.add("p1", 1);
    b.add("p0", -1);
    auto x = solve_boundary(i, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, Chain("q"));
    EXPECT_THROW(solve_boundary(i, Chain("q")), MathError);
    GradedComplex c = circle3();
    Chain e("e01");
    e.add("e12", 1);
    e.add("e02", -1);
    EXPECT_FALSE(solve_boundary(c, e).has_value());
}

TEST(SolveBoundary, RandomBoundaries)
{
    GradedComplex i = interval();
    std::vector<const GradedComplex*> f{&i, &i, &i};
    TensorComplex t = tensor_complex(f, 0, 3);
    ASSERT_EQ(t.complex.size(), 27u);
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + trial % 3;
        Chain y;
        for (const auto& n : t.complex.basis(d)) y.add(n, dist(rng));
        Chain b = t.complex.d(y);
        auto x = solve_boundary(t.complex, b, d - 1);
        ASSERT_TRUE(x.has_value());
        EXPECT_EQ(t.complex.d(*x), b);
    }
}

TEST(Json, RoundTripBitExact)
{
    GradedComplex c = circle3();
    std::string s1 = c.to_json().dump();
    GradedComplex back = GradedComplex::from_json(nlohmann::json::parse(s1));
    EXPECT_TRUE(back == c);
    EXPECT_EQ(back.to_json().dump(), s1);
    EXPECT_THROW(GradedComplex::from_json(nlohmann::json::parse("{\"x\":1}")), InputError);
}

TEST(HomologyGenerators, TorsionCycle)
{
    GradedComplex t;
    t.add_cell("x", 0);
    t.add_cell("y", 1, Chain("x", 2));
    HomologyBasis hb = homology_generators(t, 0);
    ASSERT_EQ(hb.torsion.size(), 1u);
    EXPECT_EQ(hb.torsion[0].second, 2);
    GradedComplex c = circle3();
    HomologyBasis h1 = homology_generators(c, 1);
    ASSERT_EQ(h1.free.size(), 1u);
    EXPECT_TRUE(c.d(h1.free[0]).empty());
}
