#include "einf/perm.hpp"

#include <gtest/gtest.h>

using namespace einf;

namespace {

Perm P(std::vector<int> v) { return Perm::from_one_line(v); }

std::vector<IntSeq> seqs(int n, int maxv)
{
    std::vector<IntSeq> out{IntSeq{}};
    for (int i = 0; i < n; ++i) {
        std::vector<IntSeq> next;
        for (const auto& s : out)
            for (int v = 0; v <= maxv; ++v) {
                IntSeq t = s;
                t.push_back(v);
                next.push_back(t);
            }
        out = next;
    }
    return out;
}

IntSeq compose_seq(const IntSeq& alpha, const Perm& s)
{
    IntSeq r(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) r[j] = alpha[s[j]];
    return r;
}

// Count inversions directly: an independent parity oracle.
int inversion_sign(const Perm& p)
{
    int inv = 0;
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

}  // namespace

TEST(Compose, WorkedProduct)
{
    EXPECT_EQ(compose(P({2, 3, 1, 4}), P({4, 3, 2, 1})), P({4, 1, 3, 2}));
    Perm p = P({3, 1, 4, 2});
    EXPECT_EQ(compose(Perm(4), p), p);
    EXPECT_TRUE(compose(p, p.inverse()).is_identity());
    EXPECT_THROW(compose(Perm(2), Perm(3)), std::exception);
}

TEST(Parity, Basics)
{
    EXPECT_EQ(Perm(3).parity(), 1);
    EXPECT_EQ(P({2, 1, 3}).parity(), -1);
    EXPECT_EQ(P({2, 3, 1}).parity(), 1);
    for (const auto& p : all_perms(4)) EXPECT_EQ(p.parity(), inversion_sign(p));
}

TEST(Parity, Multiplicative)
{
    for (const auto& p : all_perms(4))
        for (const auto& q : all_perms(4)) EXPECT_EQ(parity(compose(p, q)), parity(p) * parity(q));
}

TEST(Cycles, ParseAndPrint)
{
    EXPECT_EQ(Perm::from_cycles("(12)", 3), P({2, 1, 3}));
    EXPECT_EQ(Perm::from_cycles("(1,3,2)", 3), P({3, 1, 2}));
    EXPECT_EQ(P({3, 1, 2}).to_cycles(), "(132)");
    EXPECT_EQ(Perm(2).to_cycles(), "1");
    EXPECT_THROW(Perm::from_cycles("(1,1)", 3), std::exception);
}

TEST(BlockTmap, WorkedExample)
{
    // alpha = (2,1,3), sigma the cycle (1,3,2): blocks L3 L1 L2.
    Perm sigma = Perm::from_cycles("(1,3,2)", 3);
    Perm t = block_tmap({2, 1, 3}, sigma);
    EXPECT_EQ(t, P({4, 5, 6, 1, 2, 3}));
    EXPECT_EQ(t.to_cycles(), "(14)(25)(36)");
}

TEST(BlockTmap, TrivialCases)
{
    EXPECT_TRUE(block_tmap({2, 0, 3}, Perm(3)).is_identity());
    for (const auto& s : all_perms(3)) EXPECT_EQ(block_tmap({1, 1, 1}, s), s);
    EXPECT_THROW(block_tmap({1, 1}, Perm(3)), std::exception);
}

TEST(BlockTmap, FunctionalEquations)
{
    for (int n = 1; n <= 3; ++n)
        for (const auto& alpha : seqs(n, 2))
            for (const auto& s : all_perms(n))
                for (const auto& t : all_perms(n)) {
                    // literal form: T_a(st) = T_a(s) T_{a.s}(t)
                    EXPECT_EQ(block_tmap(alpha, s * t), block_tmap(alpha, s) * block_tmap(compose_seq(alpha, s), t));
                    // source-indexed form: B_a(st) = B_{t.a}(s) B_a(t)
                    EXPECT_EQ(block_permute(alpha, s * t), block_permute(act_seq(t, alpha), s) * block_permute(alpha, t));
                    // the two forms are related by T_a(s) = B_{a.s}(s)
                    EXPECT_EQ(block_tmap(alpha, s), block_permute(compose_seq(alpha, s), s));
                }
}

TEST(Shuffle, Examples)
{
    auto one = shuffle_Z({{2, 0, 1}});
    EXPECT_TRUE(one.perm.is_identity());
    EXPECT_EQ(one.sign, 1);
    auto col = shuffle_Z({{2}, {3}});
    EXPECT_TRUE(col.perm.is_identity());
    auto z = shuffle_Z({{1, 1}, {1, 1}});
    EXPECT_EQ(z.perm, P({1, 3, 2, 4}));
    EXPECT_EQ(z.sign, -1);
    EXPECT_THROW(shuffle_Z({{1, 1}, {1}}), std::exception);
}

TEST(Shuffle, AgainstTransposeBlockMap)
{
    // The shuffle is the inverse of the literal block map of the concatenated
    // lengths over p(n,k).
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= 3; ++k)
            for (const auto& b1 : seqs(n, 1))
                for (const auto& b2 : seqs(n, 1)) {
                    std::vector<IntSeq> betas{b1, b2};
                    if (k == 3) betas.push_back(b1);
                    if (k == 1) betas.pop_back();
                    IntSeq concat;
                    for (const auto& b : betas) concat.insert(concat.end(), b.begin(), b.end());
                    if (seq_sum(concat) == 0) continue;
                    Perm p = transpose_perm(n, static_cast<int>(betas.size()));
                    auto z = shuffle_Z(betas);
                    EXPECT_EQ(z.perm, block_tmap(concat, p).inverse());
                    EXPECT_EQ(z.sign, z.perm.parity());
                }
}

TEST(Shuffle, BruteForceColumnOrder)
{
    // Label each element by (row t, column c, offset) and sort into column order.
    std::vector<IntSeq> betas{{1, 2, 0}, {2, 0, 1}};
    std::vector<std::tuple<int, int, int>> labels;
    for (int t = 0; t < 2; ++t)
        for (int c = 0; c < 3; ++c)
            for (int o = 0; o < betas[t][c]; ++o) labels.emplace_back(c, t, o);
    std::vector<std::tuple<int, int, int>> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    auto z = shuffle_Z(betas);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto pos = std::find(sorted.begin(), sorted.end(), labels[i]) - sorted.begin();
        EXPECT_EQ(z.perm[static_cast<int>(i)], pos);
    }
}
