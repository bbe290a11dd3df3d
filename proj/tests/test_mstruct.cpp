#include "einf/mstruct.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <random>

using namespace einf;

namespace {

nlohmann::json load(const std::string& name)
{
    std::ifstream in(std::string(EINF_FIXTURES) + "/" + name);
    return nlohmann::json::parse(in);
}

TChain tensor_boundary(const TChain& c, const GradedComplex& k, int n)
{
    return tensor_d(c, std::vector<const GradedComplex*>(n, &k));
}

// d f(A x) = f(dA x) + (-1)^{dim A} f(A dx)
bool chain_map_at(MCoalgebra& c, int n, const BarWord& A, const std::string& x)
{
    const GradedComplex& k = c.complex();
    TChain lhs = tensor_boundary(c.structure(n, A, x), k, n);
    TChain rhs = c.structure(n, differential(A), Chain(x));
    rhs.add(c.structure(n, RChain(A), k.boundary(x)), sign_of(A.dim()));
    return lhs == rhs;
}

std::vector<BarWord> words_upto(int n, int dmax, bool leader_one)
{
    std::vector<BarWord> r;
    for (int d = 0; d <= dmax; ++d)
        for (const auto& w : bar_basis(n, d, leader_one)) r.push_back(w);
    return r;
}

}  // namespace

TEST(SimplicialSet, StandardSimplexIdentities)
{
    SimplicialSet s = standard_simplex(3);
    EXPECT_TRUE(s.check_identities().empty());
    EXPECT_EQ(s.simplices(1).size(), 6u);
    EXPECT_EQ(s.face_of("[0,1,2,3]", {1, 3}), (SimplexRef{"[1,3]", {}}));
}

TEST(SimplicialSet, DegenerateRestriction)
{
    SimplicialSet s = standard_simplex(1);
    SimplexRef r = s.restrict("[0,1]", {0, 0, 1});
    EXPECT_EQ(r, (SimplexRef{"[0,1]", {0, 0, 1}}));
    SimplexRef v = s.restrict("[0,1]", {1, 1});
    EXPECT_EQ(v, (SimplexRef{"[1]", {0, 0}}));
}

TEST(SimplicialSet, CollapseGivesOneVertexSphere)
{
    SimplicialSet s = SimplicialSet::from_json(load("s2_collapsed.json"));
    EXPECT_EQ(s.simplices(0).size(), 1u);
    EXPECT_TRUE(s.simplices(1).empty());
    GradedComplex c = normalized_chains(s);
    EXPECT_EQ(smith_homology(c, 2), (Homology{1, {}}));
    EXPECT_EQ(smith_homology(c, 0), (Homology{1, {}}));
}

TEST(SimplicialSet, JsonRoundTrip)
{
    SimplicialSet s = SimplicialSet::from_json(load("s3_reduced.json"));
    SimplicialSet t = SimplicialSet::from_json(s.to_json());
    EXPECT_EQ(t.to_json().dump(), s.to_json().dump());
    EXPECT_THROW(SimplicialSet::from_json(nlohmann::json::parse(R"({"simplices":[{"name":"e","dim":1,"faces":["a","b"]}]})")),
                 InputError);
}

TEST(FixtureHomology, ClassicalValues)
{
    auto h = [](const std::string& f, int d) { return smith_homology(normalized_chains(SimplicialSet::from_json(load(f))), d); };
    EXPECT_EQ(h("s1.json", 1), (Homology{1, {}}));
    EXPECT_EQ(h("dDelta3.json", 1), (Homology{0, {}}));
    EXPECT_EQ(h("dDelta3.json", 2), (Homology{1, {}}));
    EXPECT_EQ(h("rp2.json", 1), (Homology{0, {Int(2)}}));
    EXPECT_EQ(h("rp2.json", 2), (Homology{0, {}}));
    EXPECT_EQ(h("torus.json", 1), (Homology{2, {}}));
    EXPECT_EQ(h("torus.json", 2), (Homology{1, {}}));
    EXPECT_EQ(h("s3_reduced.json", 3), (Homology{1, {}}));
    EXPECT_EQ(h("s3_reduced.json", 2), (Homology{0, {}}));
}

TEST(Contraction, SimplexFormula)
{
    EXPECT_TRUE(simplex_contraction({1}, 1).empty());
    EXPECT_EQ(simplex_contraction({0}, 1), Chain("[0,1]", -1));
    EXPECT_EQ(simplex_contraction({0, 1}, 2), Chain("[0,1,2]", 1));
}

TEST(Contraction, CartanOnStandardSimplices)
{
    for (int k = 0; k <= 3; ++k) EXPECT_TRUE(SimplicialCoalgebra(standard_simplex(k)).is_cartan()) << k;
    EXPECT_FALSE(SimplicialCoalgebra(boundary_of_simplex(2)).is_cartan());
}

TEST(UnitInterval, ListedValues)
{
    auto iv = unit_interval();
    BarWord e = BarWord::unit(2);
    BarWord t = BarWord::parse("[(12)]", 2);
    EXPECT_EQ(iv->structure(2, e, "p0"), TChain(Word{"p0", "p0"}));
    EXPECT_EQ(iv->structure(2, e, "p1"), TChain(Word{"p1", "p1"}));
    TChain aw(Word{"p0", "q"});
    aw.add(Word{"q", "p1"}, 1);
    EXPECT_EQ(iv->structure(2, e, "q"), aw);
    EXPECT_EQ(iv->structure(2, t, "q"), TChain(Word{"q", "q"}));
    EXPECT_TRUE(iv->structure(2, t, "p0").empty());
    EXPECT_TRUE(iv->structure(2, t, "p1").empty());
    for (const auto& a : words_upto(2, 4, false))
        if (a.dim() > 1)
            for (const auto& x : {"p0", "p1", "q"}) EXPECT_TRUE(iv->structure(2, a, x).empty()) << a.to_string();
}

TEST(SimplexStructure, BaseCases)
{
    SimplicialCoalgebra pt(standard_simplex(0));
    EXPECT_EQ(pt.structure(3, BarWord::unit(3), "[0]"), TChain(Word(3, "[0]")));
    EXPECT_TRUE(pt.structure(2, BarWord::parse("[(12)]", 2), "[0]").empty());
}

class S2Structure : public ::testing::TestWithParam<int> {};

TEST_P(S2Structure, EquivariantChainMap)
{
    const int n = GetParam();
    SimplicialCoalgebra s(standard_simplex(2));
    const GradedComplex& k = s.complex();
    for (const auto& A : words_upto(n, 2, false))
        for (int d = 0; d <= 2; ++d)
            for (const auto& x : k.basis(d)) {
                EXPECT_TRUE(chain_map_at(s, n, A, x)) << A.to_string() << " " << x;
                for (const auto& g : all_perms(n)) {
                    TChain lhs = s.structure(n, act(g, A), x);
                    TChain rhs = permute_factors(g, s.structure(n, A, x), [&](const std::string& c) { return k.dim(c); });
                    EXPECT_EQ(lhs, rhs);
                }
            }
}

// The recursion lands in the image of the mirrored tensor homotopy: in each
// term the last factor that is not the vertex [k] ends in k and is not a vertex.
TEST_P(S2Structure, ImageOfHomotopyInvariant)
{
    const int n = GetParam();
    SimplicialCoalgebra s(standard_simplex(2));
    for (const auto& A : words_upto(n, 2, true)) {
        if (A.dim() == 0) continue;
        for (const auto& [w, c] : s.structure(n, A, "[0,1,2]")) {
            int j = n - 1;
            while (j >= 0 && w[j] == "[2]") --j;
            ASSERT_GE(j, 0);
            EXPECT_EQ(w[j].back(), ']');
            EXPECT_EQ(w[j].substr(w[j].size() - 3), ",2]") << A.to_string();
        }
    }
}

TEST_P(S2Structure, Counit)
{
    const int n = GetParam();
    SimplicialCoalgebra s(standard_simplex(2));
    const GradedComplex& k = s.complex();
    for (int d = 0; d <= 2; ++d)
        for (const auto& x : k.basis(d)) {
            // Apply the augmentation to every slot but one.
            for (int slot = 0; slot < n; ++slot) {
                Chain r;
                for (const auto& [w, c] : s.structure(n, BarWord::unit(n), x)) {
                    bool ok = true;
                    for (int j = 0; j < n; ++j)
                        if (j != slot && k.dim(w[j]) != 0) ok = false;
                    if (ok) r.add(w[slot], c);
                }
                EXPECT_EQ(r, Chain(x));
            }
        }
}

INSTANTIATE_TEST_SUITE_P(Arity, S2Structure, ::testing::Values(2, 3));

// (1^{i-1} (x) f_a (x) 1^{m-i}) f_b = f_{a o_i b}, with a Koszul sign for f_a passing the first i-1 factors.
TChain apply_in_slot(MCoalgebra& c, int n, const BarWord& a, int i, const TChain& fb)
{
    const GradedComplex& k = c.complex();
    TChain r;
    for (const auto& [w, v] : fb) {
        long long before = 0;
        for (int j = 0; j < i - 1; ++j) before += k.dim(w[j]);
        for (const auto& [u, c2] : c.structure(n, a, w[i - 1])) {
            Word out(w.begin(), w.begin() + (i - 1));
            out.insert(out.end(), u.begin(), u.end());
            out.insert(out.end(), w.begin() + i, w.end());
            r.add(std::move(out), v * c2 * sign_of(before * a.dim()));
        }
    }
    return r;
}

TEST(OperadAction, CompositionDiagram)
{
    SOperad op;
    for (const char* fx : {"s2", "interval"}) {
        SimplicialCoalgebra s(std::string(fx) == "s2" ? standard_simplex(2) : standard_simplex(1));
        const GradedComplex& k = s.complex();
        for (int n = 1; n <= 2; ++n)
            for (int m = 1; m <= 2; ++m)
                for (const auto& a : words_upto(n, 1, false))
                    for (const auto& b : words_upto(m, 1, false))
                        for (int i = 1; i <= m; ++i)
                            for (int d = 0; d <= k.hi(); ++d)
                                for (const auto& x : k.basis(d)) {
                                    TChain lhs = apply_in_slot(s, n, a, i, s.structure(m, b, x));
                                    TChain rhs = s.structure(n + m - 1, op.compose(a, i, b), Chain(x));
                                    EXPECT_EQ(lhs, rhs) << fx << " " << a.to_string() << " o_" << i << " " << b.to_string() << " on " << x;
                                }
    }
}

TEST(OperadAction, SampledHigherDimensions)
{
    SOperad op;
    SimplicialCoalgebra s(standard_simplex(2));
    std::mt19937 rng(5);
    auto w2 = words_upto(2, 2, false);
    auto w3 = words_upto(3, 1, false);
    for (int trial = 0; trial < 40; ++trial) {
        const BarWord& a = w2[rng() % w2.size()];
        const BarWord& b = trial % 2 ? w2[rng() % w2.size()] : w3[rng() % w3.size()];
        int i = 1 + static_cast<int>(rng() % b.arity());
        TChain lhs = apply_in_slot(s, 2, a, i, s.structure(b.arity(), b, "[0,1,2]"));
        TChain rhs = s.structure(b.arity() + 1, op.compose(a, i, b), Chain("[0,1,2]"));
        EXPECT_EQ(lhs, rhs) << a.to_string() << " o_" << i << " " << b.to_string();
    }
}

TEST(SimplicialStructure, ChainMapOnFixtures)
{
    for (const char* f : {"rp2.json", "s2_collapsed.json", "torus.json"}) {
        SimplicialCoalgebra s(SimplicialSet::from_json(load(f)));
        const GradedComplex& k = s.complex();
        for (const auto& A : words_upto(2, 2, true))
            for (int d = 0; d <= k.hi(); ++d)
                for (const auto& x : k.basis(d)) EXPECT_TRUE(chain_map_at(s, 2, A, x)) << f << " " << A.to_string() << " " << x;
        EXPECT_EQ(s.structure(2, BarWord::unit(2), s.basepoint()), TChain(Word(2, s.basepoint())));
    }
}

TEST(TrivialCoalgebra, SphereStructure)
{
    auto b = sphere_coalgebra(3);
    TChain prim(Word{"e3", "*", "*"});
    prim.add(Word{"*", "e3", "*"}, 1);
    prim.add(Word{"*", "*", "e3"}, 1);
    EXPECT_EQ(b->structure(3, BarWord::unit(3), "e3"), prim);
    for (const auto& A : words_upto(2, 2, false)) {
        EXPECT_TRUE(chain_map_at(*b, 2, A, "e3"));
        EXPECT_TRUE(chain_map_at(*b, 2, A, "*"));
    }
    auto j = coalgebra_from_json(load("b2.json"));
    EXPECT_EQ(j->complex().dim("e2"), 2);
}

TEST(TensorCoalgebra, PointFactorIsNeutral)
{
    SOperad op;
    auto s = std::make_shared<SimplicialCoalgebra>(standard_simplex(1));
    auto pt = std::make_shared<SimplicialCoalgebra>(standard_simplex(0));
    TensorCoalgebra t(s, pt, &op, 3);
    for (const auto& A : words_upto(2, 2, false))
        for (const auto& x : {"[0]", "[1]", "[0,1]"}) {
            TChain expect = s->structure(2, A, x).map_keys([](const Word& w) {
                Word o;
                for (const auto& f : w) o.push_back(join_word({f, "[0]"}));
                return o;
            });
            EXPECT_EQ(t.structure(2, A, join_word({x, "[0]"})), expect) << A.to_string() << x;
        }
}

TEST(TensorCoalgebra, IntervalSquaredChainMapAndEquivariance)
{
    SOperad op;
    auto iv = unit_interval();
    TensorCoalgebra t(iv, iv, &op, 6);
    const GradedComplex& k = t.complex();
    for (int n = 2; n <= 3; ++n)
        for (const auto& A : words_upto(n, n == 2 ? 2 : 1, false))
            for (int d = 0; d <= 2; ++d)
                for (const auto& x : k.basis(d)) {
                    EXPECT_TRUE(chain_map_at(t, n, A, x)) << A.to_string() << " " << x;
                }
}

TEST(TensorCoalgebra, OperadDiagram)
{
    SOperad op;
    auto iv = unit_interval();
    TensorCoalgebra t(iv, iv, &op, 6);
    std::string top = join_word({"q", "q"});
    for (const auto& a : words_upto(2, 1, false))
        for (const auto& b : words_upto(2, 1, false))
            for (int i = 1; i <= 2; ++i) {
                TChain lhs = apply_in_slot(t, 2, a, i, t.structure(2, b, top));
                TChain rhs = t.structure(3, op.compose(a, i, b), Chain(top));
                EXPECT_EQ(lhs, rhs) << a.to_string() << " o_" << i << " " << b.to_string();
            }
}

TEST(Suspension, ThreeSphereFromTwoSphere)
{
    SOperad op;
    auto c = std::make_shared<SimplicialCoalgebra>(SimplicialSet::from_json(load("s2_collapsed.json")));
    auto s = suspension(c, &op);
    const GradedComplex& k = s->complex();
    EXPECT_EQ(smith_homology(k, 3), (Homology{1, {}}));
    EXPECT_EQ(smith_homology(k, 2), (Homology{0, {}}));
    for (const auto& A : words_upto(2, 2, false))
        for (int d = 0; d <= k.hi(); ++d)
            for (const auto& x : k.basis(d)) EXPECT_TRUE(chain_map_at(*s, 2, A, x)) << A.to_string() << " " << x;
    // The fundamental class is primitive under the coproduct.
    std::string top = k.basis(3).front();
    TChain prim(Word{top, "*"});
    prim.add(Word{"*", top}, 1);
    EXPECT_EQ(s->structure(2, BarWord::unit(2), top), prim);
}

TEST(Wedge, CellsAndStructure)
{
    auto a = sphere_coalgebra(2);
    auto b = std::make_shared<SimplicialCoalgebra>(SimplicialSet::from_json(load("s1.json")));
    WedgeCoalgebra w(a, b);
    const GradedComplex& k = w.complex();
    EXPECT_EQ(smith_homology(k, 2), (Homology{1, {}}));
    EXPECT_EQ(smith_homology(k, 1), (Homology{1, {}}));
    EXPECT_EQ(smith_homology(k, 0), (Homology{1, {}}));
    for (const auto& A : words_upto(2, 2, false))
        for (int d = 0; d <= k.hi(); ++d)
            for (const auto& x : k.basis(d)) EXPECT_TRUE(chain_map_at(w, 2, A, x)) << A.to_string() << " " << x;
}

TEST(Cylinder, ContractionAndStructure)
{
    auto s1 = std::make_shared<SimplicialCoalgebra>(SimplicialSet::from_json(load("s1.json")));
    auto d2 = std::make_shared<SimplicialCoalgebra>(standard_simplex(2));
    // inclusion of the boundary circle
    CylinderCoalgebra cyl(s1, d2, [](const std::string& x) { return Chain(x); });
    EXPECT_TRUE(cyl.is_cartan());
    const GradedComplex& k = cyl.complex();
    for (int d = 0; d <= 3; ++d) EXPECT_EQ(smith_homology(k, d), (Homology{d == 0 ? 1 : 0, {}})) << d;
    for (int n = 2; n <= 3; ++n)
        for (const auto& A : words_upto(n, 2, false))
            for (int d = 0; d <= k.hi(); ++d)
                for (const auto& x : k.basis(d)) EXPECT_TRUE(chain_map_at(cyl, n, A, x)) << A.to_string() << " " << x;
    // restriction to the source end is the source structure
    EXPECT_EQ(cyl.structure(2, BarWord::unit(2), "0:[0,1]").size(), s1->structure(2, BarWord::unit(2), "[0,1]").size());
}

TEST(Cylinder, OperadDiagram)
{
    SOperad op;
    auto s1 = std::make_shared<SimplicialCoalgebra>(SimplicialSet::from_json(load("s1.json")));
    auto d2 = std::make_shared<SimplicialCoalgebra>(standard_simplex(2));
    CylinderCoalgebra cyl(s1, d2, [](const std::string& x) { return Chain(x); });
    for (const auto& a : words_upto(2, 1, false))
        for (const auto& b : words_upto(2, 1, false))
            for (int i = 1; i <= 2; ++i)
                for (const auto& x : {"q:[0,1]", "q:[1]", "0:[1,2]"}) {
                    TChain lhs = apply_in_slot(cyl, 2, a, i, cyl.structure(2, b, x));
                    TChain rhs = cyl.structure(3, op.compose(a, i, b), Chain(x));
                    EXPECT_EQ(lhs, rhs) << a.to_string() << " o_" << i << " " << b.to_string() << " " << x;
                }
}
