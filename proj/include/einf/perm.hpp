#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace einf {

using IntSeq = std::vector<int>;

inline int seq_sum(const IntSeq& a)
{
    int s = 0;
    for (int x : a) s += x;
    return s;
}

// Permutation of {0..n-1}; img[i] is the image of i. I/O is 1-based.
class Perm {
public:
    static constexpr int kMax = 24;

    Perm() : n_(0) { img_.fill(0); }
    explicit Perm(int n);
    static Perm identity(int n) { return Perm(n); }
    // From 1-based one-line notation.
    static Perm from_one_line(const std::vector<int>& one_line);
    // Cycle notation like "(1,2)(3,4)" or "(12)"; n is the degree.
    static Perm from_cycles(const std::string& s, int n);

    int size() const { return n_; }
    int operator[](int i) const { return img_[i]; }
    std::uint8_t& operator[](int i) { return img_[i]; }

    Perm inverse() const;
    bool is_identity() const;
    int parity() const;
    std::vector<int> one_line() const;
    std::string to_cycles() const;
    std::string to_string() const { return to_cycles(); }

    friend bool operator==(const Perm& a, const Perm& b)
    {
        return a.n_ == b.n_ && std::equal(a.img_.begin(), a.img_.begin() + a.n_, b.img_.begin());
    }
    friend bool operator<(const Perm& a, const Perm& b)
    {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        return std::lexicographical_compare(a.img_.begin(), a.img_.begin() + a.n_, b.img_.begin(),
                                            b.img_.begin() + b.n_);
    }

private:
    std::array<std::uint8_t, kMax> img_;
    int n_;
};

// p after q.
Perm compose(const Perm& p, const Perm& q);
inline Perm operator*(const Perm& p, const Perm& q) { return compose(p, q); }
inline int parity(const Perm& p) { return p.parity(); }

// Direct sum p (+) q acting on {0..|p|+|q|-1}.
Perm block_sum(const Perm& p, const Perm& q);
Perm block_sum(const std::vector<Perm>& ps);
// tau acting on positions [offset, offset+|tau|) of a degree-n permutation.
Perm embed(const Perm& tau, int offset, int n);

// Literal block map: one-line notation is L_{s(1)} ... L_{s(n)} where L_i is the
// i-th block of lengths alpha. Satisfies T_a(st) = T_a(s) T_{a.s}(t).
Perm block_tmap(const IntSeq& alpha, const Perm& sigma);
// Source-indexed block map: block k of alpha moves to position sigma(k).
// Satisfies B_a(st) = B_{t.a}(s) B_a(t) where (t.a)_{t(k)} = a_k.
Perm block_permute(const IntSeq& alpha, const Perm& sigma);
// Sequence with entries moved by sigma: result[sigma(k)] = alpha[k].
IntSeq act_seq(const Perm& sigma, const IntSeq& alpha);

// The transpose permutation p(n,k): one-line (1, n+1, ..., (k-1)n+1, 2, n+2, ...).
Perm transpose_perm(int n, int k);

struct SignedPerm {
    int sign;
    Perm perm;
};
// Shuffle of the concatenated blocks (b_{1,1..n}, ..., b_{k,1..n}) into column order.
SignedPerm shuffle_Z(const std::vector<IntSeq>& betas);

// All permutations of degree n in lexicographic one-line order.
std::vector<Perm> all_perms(int n);

}  // namespace einf
