#include "einf/barcobar.hpp"
#include "einf/steenrod.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>

using namespace einf;

namespace {

std::shared_ptr<MCoalgebra> fixture(const std::string& name)
{
    std::ifstream in(std::string(EINF_FIXTURES) + "/" + name);
    return coalgebra_from_json(nlohmann::json::parse(in));
}

SOperad& shared_operad()
{
    static SOperad op;
    return op;
}

AInftyCoalgebra ainfty(const std::string& name, int arity = 4)
{
    return ainfty_of_mcoalgebra(fixture(name), shared_operad(), arity);
}

std::vector<long> betti(const GradedComplex& c, int lo, int hi)
{
    std::vector<long> b;
    for (int d = lo; d <= hi; ++d) {
        Homology h = smith_homology(c, d);
        EXPECT_TRUE(h.torsion.empty()) << "torsion in dimension " << d;
        b.push_back(h.betti);
    }
    return b;
}

// B^2 (x) B^2: one vertex, cells in dimensions 2, 2, 4, and a nonzero reduced coproduct.
AInftyCoalgebra sphere_square()
{
    static auto t = std::make_shared<TensorCoalgebra>(sphere_coalgebra(2), sphere_coalgebra(2), &shared_operad(), 12);
    return ainfty_of_mcoalgebra(t, shared_operad(), 4);
}

}  // namespace

TEST(AInftyCoalgebra, IdentityOnBoundaryOfSimplex)
{
    auto c = ainfty("dDelta3.json", 5);
    EXPECT_TRUE(check_ainfty_coalgebra(c, 5, 6).empty());
    auto s = sphere_square();
    EXPECT_TRUE(check_ainfty_coalgebra(s, 4, 6).empty());
}

TEST(AInftyCoalgebra, IntervalCoproductAndTrivialBall)
{
    auto c = ainfty("interval.json", 3);
    TChain q(Word{"p0", "q"});
    q.add(Word{"q", "p1"}, 1);
    EXPECT_EQ(c.delta(2, "q"), q);
    EXPECT_TRUE(c.delta(3, "q").empty());
    auto b = ainfty("b3.json", 4);
    TChain e(Word{"*", "e3"});
    e.add(Word{"e3", "*"}, 1);
    EXPECT_EQ(b.delta(2, "e3"), e);
    EXPECT_TRUE(b.delta(3, "e3").empty());
    EXPECT_TRUE(b.delta(4, "e3").empty());
}

TEST(Cobar, BallsAndReducedThreeSphere)
{
    auto b3 = cobar(ainfty("b3.json"), 8);
    EXPECT_TRUE(b3.complex.check_d2().empty());
    EXPECT_EQ(betti(b3.complex, 0, 8), (std::vector<long>{1, 0, 1, 0, 1, 0, 1, 0, 1}));
    auto b2 = cobar(ainfty("b2.json"), 6);
    EXPECT_EQ(betti(b2.complex, 0, 6), (std::vector<long>(7, 1)));
    auto s3 = cobar(ainfty("s3_reduced.json"), 6);
    EXPECT_TRUE(s3.complex.check_d2().empty());
    EXPECT_EQ(betti(s3.complex, 0, 6), betti(b3.complex, 0, 6));
}

TEST(Cobar, LoopsOnSphereSquare)
{
    // H(Omega(S^2 x S^2)) = H(Omega S^2)^{(x) 2}: Poincare series (1/(1-t))^2
    auto c = cobar(sphere_square(), 5);
    EXPECT_TRUE(c.complex.check_d2().empty());
    EXPECT_EQ(betti(c.complex, 0, 5), (std::vector<long>{1, 2, 3, 4, 5, 6}));
}

TEST(Cobar, RejectsNonReducedOrOneCells)
{
    EXPECT_THROW(cobar(ainfty("interval.json", 2), 3), InputError);
    EXPECT_THROW(cobar(ainfty("dDelta3.json", 2), 3), InputError);
    EXPECT_THROW(cobar(ainfty("s1.json", 2), 3), InputError);
    EXPECT_NO_THROW(make_cobar(ainfty("s1.json", 2), 2, 3));
}

TEST(Cobar, DerivationOnWords)
{
    auto c = ainfty("dDelta3.json", 3);
    auto t = truncated_cobar(c, 3, 2);
    auto concat = [](const TChain& a, const Word& b, bool left) {
        TChain r;
        for (const auto& [w, v] : a) {
            Word o = left ? w : b;
            const Word& tail = left ? b : w;
            o.insert(o.end(), tail.begin(), tail.end());
            r.add(std::move(o), v);
        }
        return r;
    };
    int checked = 0;
    for (const auto& [n1, w1] : t.words)
        for (const auto& [n2, w2] : t.words) {
            if (w1.empty() || w2.empty() || w1.size() + w2.size() > 3) continue;
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            TChain lhs = cobar_d(c, t.reduced, w);
            TChain rhs = concat(cobar_d(c, t.reduced, w1), w2, true);
            rhs.add(concat(cobar_d(c, t.reduced, w2), w1, false), sign_of(cobar_degree(t.reduced, w1)));
            EXPECT_EQ(lhs, rhs) << n1 << " " << n2;
            if (++checked > 400) return;
        }
}

TEST(Cobar, TruncationLevels)
{
    auto c = ainfty("s2_collapsed.json");
    // n = 1: desuspension of C-bar
    auto t1 = truncated_cobar(c, 1, 3);
    GradedComplex red = reduced_complex(c.complex, c.basepoint);
    for (int d : red.dims())
        for (const auto& x : red.basis(d)) {
            std::string n = cobar_name({x});
            EXPECT_EQ(t1.complex.dim(n), d - 1);
            Chain expect;
            for (const auto& [y, v] : red.boundary(x)) expect.add(cobar_name({y}), -v);
            EXPECT_EQ(t1.complex.boundary(n), expect);
        }
    // large n agrees with the cobar through the bound
    auto full = cobar(c, 6);
    auto t7 = truncated_cobar(c, 7, 6);
    for (int d = 0; d <= 7; ++d) {
        EXPECT_EQ(full.complex.basis(d), t7.complex.basis(d));
        for (const auto& n : full.complex.basis(d)) EXPECT_EQ(full.complex.boundary(n), t7.complex.boundary(n));
    }
    // the projection onto F_{1,2} is a chain map
    auto t2 = truncated_cobar(c, 2, 6);
    auto proj = [&](const Chain& x) {
        Chain r;
        for (const auto& [n, v] : x)
            if (t2.complex.has(n)) r.add(n, v);
        return r;
    };
    for (const auto& [n, w] : full.words) EXPECT_EQ(proj(full.complex.boundary(n)), t2.complex.d(proj(Chain(n)))) << n;
}

TEST(Cobar, TelescopeViewMatchesWords)
{
    struct Case {
        AInftyCoalgebra c;
        int levels, max_dim;
        bool truncated;
    };
    std::vector<Case> cases{{sphere_square(), 3, 5, false},
                            {ainfty("s2_collapsed.json"), 4, 4, false},
                            {ainfty("interval.json", 3), 3, 1, true},
                            {ainfty("dDelta3.json", 4), 3, 2, true}};
    for (const auto& k : cases) {
        CobarSequence s = cobar_sequence(k.c, k.levels, k.max_dim);
        EXPECT_TRUE(check_coherence(s.seq).empty());
        GradedComplex red = reduced_complex(k.c.complex, k.c.basepoint);
        GradedComplex tel = telescope_complex(s.seq, -k.levels, k.max_dim + 1);
        EXPECT_TRUE(tel.check_d2().empty());
        int checked = 0;
        for (int d = tel.lo(); d <= tel.hi(); ++d)
            for (const auto& x : tel.basis(d)) {
                TChain lhs;
                for (const auto& [y, v] : tel.boundary(x)) lhs.add(telescope_to_cobar(s, red, y), v);
                TChain rhs;
                for (const auto& [w, v] : telescope_to_cobar(s, red, x)) rhs.add(cobar_d(k.c, red, w, k.levels), v);
                EXPECT_EQ(lhs, rhs) << x;
                ++checked;
            }
        EXPECT_GE(checked, 5);
    }
}

TEST(TwistedTensor, CanonicalProductIsAcyclic)
{
    for (auto c : {ainfty("s2_collapsed.json"), sphere_square(), ainfty("s3_reduced.json")}) {
        auto f = cobar(c, 7);
        auto x = canonical_twist(c);
        EXPECT_TRUE(check_twisting_cochain(c, f, x, 8).empty());
        auto t = twisted_tensor(c, f, x, 6);
        EXPECT_TRUE(t.complex.check_d2().empty());
        EXPECT_EQ(betti(t.complex, 0, 6), (std::vector<long>{1, 0, 0, 0, 0, 0, 0}));
    }
}

TEST(TwistedTensor, BallSquaresToZeroThroughEight)
{
    auto c = ainfty("b3.json");
    auto f = cobar(c, 8);
    auto t = twisted_tensor(c, f, canonical_twist(c), 8);
    EXPECT_TRUE(t.complex.check_d2().empty());
}

TEST(TwistedTensor, ZeroTwistIntoIntegers)
{
    auto c = ainfty("rp2.json", 2);
    auto z = truncated_cobar(c, 0, 3);
    auto t = twisted_tensor(c, z, [](const std::string&) { return TChain{}; }, 3);
    for (int d = 0; d <= 2; ++d) EXPECT_EQ(smith_homology(t.complex, d), smith_homology(c.complex, d));
}

TEST(TwistedTensor, RejectsBadTwist)
{
    auto c = sphere_square();
    auto f = cobar(c, 4);
    auto canon = canonical_twist(c);
    CobarTwist doubled = [canon](const std::string& x) { return Int(2) * canon(x); };
    EXPECT_THROW(twisted_tensor(c, f, doubled, 3), MathError);
}

namespace {

// Z[x]/(x^3) with |x| = 2, on the reduced basis x, xx.
AInftyAlgebra<std::string> truncated_polynomial()
{
    AInftyAlgebra<std::string> a;
    a.degree = [](const std::string& s) { return 2 * static_cast<int>(s.size()); };
    a.d = [](const std::string&) { return Chain{}; };
    a.mu = [](const std::vector<std::string>& w) {
        std::string s = w[0] + w[1];
        return s.size() <= 2 ? Chain(s) : Chain{};
    };
    return a;
}

}  // namespace

TEST(Bar, IntegersAndTruncatedPolynomial)
{
    auto a = truncated_polynomial();
    auto z = bar_complex(a, {}, 3);
    EXPECT_EQ(z.complex.size(), 1u);
    auto b = bar_complex(a, {"x", "xx"}, 4);
    EXPECT_TRUE(b.complex.check_d2().empty());
    // Tor over Z[x]/(x^3): Z in degrees 0, 3, 8, 11, then 16
    std::vector<long> expect(13, 0);
    for (int d : {0, 3, 8, 11}) expect[d] = 1;
    EXPECT_EQ(betti(b.complex, 0, 12), expect);
}

TEST(Bar, CochainAlgebraOfInterval)
{
    auto c = ainfty("interval.json", 3);
    auto a = cochain_ainfty_algebra(c);
    auto b = bar_complex(a, {"p1", "q"}, 6);
    EXPECT_TRUE(b.complex.check_d2().empty());
    EXPECT_EQ(a.mu({"q", "p1"}), Chain("q"));
    EXPECT_TRUE(a.mu({"p1", "q"}).empty());
    EXPECT_EQ(a.mu({"p1", "p1"}), Chain("p1"));
}

TEST(Bar, CochainProductIsCup)
{
    auto m = fixture("rp2.json");
    auto c = ainfty_of_mcoalgebra(m, shared_operad(), 3);
    auto a = cochain_ainfty_algebra(c);
    const GradedComplex& k = c.complex;
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; p + q <= 2; ++q)
            for (const auto& x : k.basis(p))
                for (const auto& y : k.basis(q)) {
                    if (x == c.basepoint || y == c.basepoint) continue;
                    Cochain u{Chain(x), p}, v{Chain(y), q};
                    Chain cup_xy = cup(*m, u, v).values;
                    cup_xy.add(Chain(c.basepoint), -cup_xy.coeff(c.basepoint));
                    EXPECT_EQ(a.mu({x, y}), cup_xy) << x << " " << y;
                }
    EXPECT_TRUE(bar_complex(a, [&] {
                    std::vector<std::string> r;
                    for (int d = 0; d <= 2; ++d)
                        for (const auto& x : k.basis(d))
                            if (x != c.basepoint) r.push_back(x);
                    return r;
                }(), 2).complex.check_d2().empty());
}

TEST(BarDualCobar, IntervalThroughFour)
{
    auto c = ainfty("interval.json", 3);
    auto bad = check_bar_dual_cobar(c, 4);
    EXPECT_TRUE(bad.empty()) << bad.size() << " " << (bad.empty() ? "" : bad.front());
    EXPECT_EQ(bar_cobar_pairing(c.complex, {}, {}), Int(1));
}

TEST(BarDualCobar, OtherFixtures)
{
    for (const char* f : {"s2_collapsed.json", "dDelta3.json"}) {
        auto bad = check_bar_dual_cobar(ainfty(f, 3), 2);
        EXPECT_TRUE(bad.empty()) << f << " " << (bad.empty() ? "" : bad.front());
    }
}

TEST(BarTwist, CanonicalTwistOnInterval)
{
    auto c = ainfty("interval.json", 3);
    const int Lc = 4, Lb = 4;
    auto f = truncated_cobar(c, Lc, 2);
    auto x = canonical_twist(c);
    AInftyAlgebra<Word> alg;
    alg.degree = [&](const Word& w) { return cobar_degree(f.reduced, w); };
    alg.d = [&](const Word& w) { return cobar_d(c, f.reduced, w, Lc); };
    alg.mu = [&](const std::vector<Word>& ws) {
        Word o = ws[0];
        o.insert(o.end(), ws[1].begin(), ws[1].end());
        return static_cast<int>(o.size()) <= Lc ? TChain(o) : TChain{};
    };
    std::function<Lin<std::pair<std::string, std::string>>(const std::string&)> delta = [&](const std::string& y) {
        Lin<std::pair<std::string, std::string>> r;
        for (const auto& [w, v] : c.delta(2, y)) r.add({w[0], w[1]}, v);
        return r;
    };
    std::function<TChain(const std::string&)> xf = x;
    auto b = [&](const std::string& y, int len) {
        return bar_twist<std::string, Word>(y, c.complex.dim(y) == 0 ? 1 : 0, delta, xf, len);
    };
    auto short_part = [](const Lin<std::vector<Word>>& l, std::size_t n) {
        Lin<std::vector<Word>> r;
        for (const auto& [w, v] : l)
            if (w.size() <= n) r.add(w, v);
        return r;
    };
    for (const auto& y : {"p0", "p1", "q"}) {
        Lin<std::vector<Word>> lhs;
        for (const auto& [w, v] : b(y, Lb)) lhs.add(bar_d(alg, w), v);
        Lin<std::vector<Word>> rhs;
        for (const auto& [z, v] : c.complex.boundary(y)) rhs.add(b(z, Lb), v);
        EXPECT_EQ(short_part(lhs, Lb - 1), short_part(rhs, Lb - 1)) << y;
        // coalgebra morphism
        Lin<std::pair<std::vector<Word>, std::vector<Word>>> l2, r2;
        for (const auto& [w, v] : b(y, Lb)) l2.add(bar_coproduct(w), v);
        for (const auto& [pr, v] : delta(y))
            for (const auto& [u1, v1] : b(pr.first, Lb))
                for (const auto& [u2, v2] : b(pr.second, Lb)) r2.add({u1, u2}, v * v1 * v2);
        auto cut = [&](const Lin<std::pair<std::vector<Word>, std::vector<Word>>>& l) {
            Lin<std::pair<std::vector<Word>, std::vector<Word>>> r;
            for (const auto& [k, v] : l)
                if (k.first.size() + k.second.size() <= static_cast<std::size_t>(Lb)) r.add(k, v);
            return r;
        };
        EXPECT_EQ(cut(l2), cut(r2)) << y;
    }
    // the zero twist gives the counit
    std::function<TChain(const std::string&)> zero = [](const std::string&) { return TChain{}; };
    EXPECT_EQ((bar_twist<std::string, Word>("q", 0, delta, zero, 3)), (Lin<std::vector<Word>>{}));
    EXPECT_EQ((bar_twist<std::string, Word>("p0", 1, delta, zero, 3)), (Lin<std::vector<Word>>(std::vector<Word>{})));
}
