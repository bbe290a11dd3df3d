#pragma once

#include "einf/mapseq.hpp"
#include "einf/mstruct.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace einf {

// ---------------------------------------------------------------------------
// A-infinity coalgebras

// C with C_0 = Z (the basepoint) plus Delta_j: C -> C^{(x) j} of degree j - 2 for 2 <= j <= max_arity.
struct AInftyCoalgebra {
    GradedComplex complex;
    std::string basepoint;
    int max_arity = 2;
    std::function<TChain(int j, const std::string& x)> delta;
};

// Delta_j(x) = f_j(f(D_j) (x) x).
AInftyCoalgebra ainfty_of_mcoalgebra(std::shared_ptr<MCoalgebra> c, SOperad& op, int max_arity);

// d Delta_n - (-1)^n Delta_n d + sum_{2<=k<n, lambda} (-1)^{k+lambda+k lambda}
// (1^{s-1} (x) Delta_k (x) 1) Delta_{n-k+1} = 0 with s = n-k-lambda+1, on cells of dim <= max_dim.
std::vector<std::string> check_ainfty_coalgebra(const AInftyCoalgebra& c, int max_n, int max_dim);

// C-bar: C without the basepoint; boundaries lose their basepoint terms.
GradedComplex reduced_complex(const GradedComplex& c, const std::string& basepoint);
bool is_reduced(const GradedComplex& c);

// ---------------------------------------------------------------------------
// Cobar construction: words in S^{-1}C-bar, stored as lists of cell names.

std::string cobar_name(const Word& w);
int cobar_degree(const GradedComplex& reduced, const Word& w);

// D(dc) = -sum_{i>=1} d^{(x) i} Delta_i c, extended as a derivation. Words longer than
// max_len are dropped (max_len < 0: no truncation).
TChain cobar_d(const AInftyCoalgebra& c, const GradedComplex& reduced, const Word& w, int max_len = -1);

struct CobarComplex {
    GradedComplex complex;
    std::map<std::string, Word> words;
    GradedComplex reduced;
    int max_dim = 0;
    int max_len = -1;
};
// Needs C reduced with C_1 = 0; exact through max_dim (cells materialized through max_dim + 1).
CobarComplex cobar(const AInftyCoalgebra& c, int max_dim);
// F_{1,n}: words of length <= n, any C. Degrees from -n through max_dim + 1.
CobarComplex truncated_cobar(const AInftyCoalgebra& c, int max_len, int max_dim);
// max_len < 0 selects cobar(), which throws InputError when C_1 != 0 or C is not reduced.
CobarComplex make_cobar(const AInftyCoalgebra& c, int max_dim, int max_len);

// The cobar as a right mapping sequence on C-bar^{(x) i}, i <= levels, with
// f_{i,j} = sum_beta (-1)^{(2 beta + j)(j+1)/2} 1 (x) .. Delta_{j+2} .. (x) 1.
struct CobarSequence {
    RightMappingSequence seq;
    std::vector<std::map<std::string, Word>> words;  // level cell -> letters
};
CobarSequence cobar_sequence(const AInftyCoalgebra& c, int levels, int max_dim);
// S^{-n}(c_1 (x) .. (x) c_n) -> (-1)^{n(n-1)/2} (d (x) .. (x) d)(c_1 (x) .. (x) c_n)
TChain telescope_to_cobar(const CobarSequence& s, const GradedComplex& reduced, const std::string& telescope_cell);

// ---------------------------------------------------------------------------
// Twisted tensor products C (x)_x A with A a (possibly truncated) cobar construction.

using CobarTwist = std::function<TChain(const std::string&)>;
// c -> [c] off the basepoint.
CobarTwist canonical_twist(const AInftyCoalgebra& c);
// d_A x + x d + sum_{i>=2} mu^{i-1} x^{(x) i} Delta_i on cells of dim <= max_dim.
std::vector<std::string> check_twisting_cochain(const AInftyCoalgebra& c, const CobarComplex& a, const CobarTwist& x,
                                                int max_dim);

struct TwistedTensor {
    GradedComplex complex;
    std::map<std::string, std::pair<std::string, Word>> cells;
};
// Cells c (x) w of total dimension <= max_dim + 1. Throws MathError naming the first
// cell where the twisting identity fails.
TwistedTensor twisted_tensor(const AInftyCoalgebra& c, const CobarComplex& a, const CobarTwist& x, int max_dim);

// ---------------------------------------------------------------------------
// A-infinity algebras on a reduced basis and their bar constructions.

template <class K>
struct AInftyAlgebra {
    std::function<int(const K&)> degree;
    std::function<Lin<K>(const K&)> d;                // mu_1
    std::function<Lin<K>(const std::vector<K>&)> mu;  // mu_j, j = size >= 2
    int max_arity = 2;
};

// [a_1|..|a_k] stands for (up a_1) (x) .. (x) (up a_k), of degree sum(|a_i| + 1).
template <class K>
int bar_degree(const AInftyAlgebra<K>& a, const std::vector<K>& w)
{
    int d = 0;
    for (const auto& x : w) d += a.degree(x) + 1;
    return d;
}

// D = -up mu_1 down + sum_{j>=2} up mu_j down^{(x) j}, extended as a coderivation (Koszul signed).
template <class K>
Lin<std::vector<K>> bar_d(const AInftyAlgebra<K>& a, const std::vector<K>& w)
{
    Lin<std::vector<K>> r;
    const int k = static_cast<int>(w.size());
    std::vector<int> up(k);
    for (int i = 0; i < k; ++i) up[i] = a.degree(w[i]) + 1;
    int before = 0;
    for (int i = 0; i < k; ++i) {
        for (int j = 1; j <= a.max_arity && i + j <= k; ++j) {
            long long e = before + (j == 1 ? 1 : 0);
            for (int l = 0; l < j; ++l) e += static_cast<long long>(j - 1 - l) * up[i + l];
            Lin<K> m = j == 1 ? a.d(w[i]) : a.mu(std::vector<K>(w.begin() + i, w.begin() + i + j));
            for (const auto& [y, v] : m) {
                std::vector<K> out(w.begin(), w.begin() + i);
                out.push_back(y);
                out.insert(out.end(), w.begin() + i + j, w.end());
                r.add(std::move(out), v * sign_of(e));
            }
        }
        before += up[i];
    }
    return r;
}

// Deconcatenation.
template <class K>
Lin<std::pair<std::vector<K>, std::vector<K>>> bar_coproduct(const std::vector<K>& w)
{
    Lin<std::pair<std::vector<K>, std::vector<K>>> r;
    for (std::size_t i = 0; i <= w.size(); ++i)
        r.add({std::vector<K>(w.begin(), w.begin() + i), std::vector<K>(w.begin() + i, w.end())}, 1);
    return r;
}

// b(x) = eps + sum_i (-up x)^{(x) i} Delta^{i-1}; words longer than max_len are dropped.
// delta is the full coproduct of the coalgebra, iterated on the first factor.
template <class C, class K>
Lin<std::vector<K>> bar_twist(const C& c, const Int& counit, const std::function<Lin<std::pair<C, C>>(const C&)>& delta,
                              const std::function<Lin<K>(const C&)>& x, int max_len)
{
    Lin<std::vector<K>> r;
    if (counit != 0) r.add(std::vector<K>{}, counit);
    Lin<std::vector<C>> level;
    level.add(std::vector<C>{c}, 1);
    for (int i = 1; i <= max_len && !level.empty(); ++i) {
        for (const auto& [cw, v] : level) {
            Lin<std::vector<K>> acc;
            acc.add(std::vector<K>{}, v * sign_of(i));
            for (const auto& ci : cw) {
                Lin<K> xi = x(ci);
                Lin<std::vector<K>> next;
                for (const auto& [pre, pv] : acc)
                    for (const auto& [y, yv] : xi) {
                        std::vector<K> w = pre;
                        w.push_back(y);
                        next.add(std::move(w), pv * yv);
                    }
                acc = std::move(next);
                if (acc.empty()) break;
            }
            r.add(acc, 1);
        }
        if (i == max_len) break;
        Lin<std::vector<C>> nxt;
        for (const auto& [cw, v] : level)
            for (const auto& [pr, pv] : delta(cw.front())) {
                std::vector<C> w{pr.first, pr.second};
                w.insert(w.end(), cw.begin() + 1, cw.end());
                nxt.add(std::move(w), v * pv);
            }
        level = std::move(nxt);
    }
    return r;
}

// Bar complex on words over a finite reduced basis, lengths 0..max_len.
struct BarComplex {
    GradedComplex complex;
    std::map<std::string, std::vector<std::string>> words;
};
std::string bar_name(const std::vector<std::string>& w);
BarComplex bar_complex(const AInftyAlgebra<std::string>& a, const std::vector<std::string>& reduced_basis, int max_len);

// Hom(C, Z) on the duals of the cells off the basepoint, degree -|x|;
// mu_j(x_1*, .., x_j*)(y) = <x_1* (x) .. (x) x_j*, Delta_j y> with the Koszul pairing sign.
AInftyAlgebra<std::string> cochain_ainfty_algebra(const AInftyCoalgebra& c);

// <up u, dc> = (-1)^{|u|} u(c), extended to words with the Koszul sign of up u_l passing dc_i, i < l.
Int bar_cobar_pairing(const GradedComplex& c, const std::vector<std::string>& bar_word, const Word& cobar_word);
// Phi(Db)(w) = -(-1)^{|b|} Phi(b)(Dw) for bar and cobar words of length <= max_len.
std::vector<std::string> check_bar_dual_cobar(const AInftyCoalgebra& c, int max_len);

}  // namespace einf
