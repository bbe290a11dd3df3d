#pragma once

#include "einf/barcobar.hpp"
#include "einf/mapseq.hpp"
#include "einf/soperad.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace einf {

// down^{|alpha|} w in Sigma^{-|alpha|} R_alpha, written in desuspended-tensor coordinates
// (down (x) .. (x) down, Koszul signed). For Z_n, alpha has length n and w arity |alpha|;
// for Y_n, w has arity n + |alpha| and block k is one undesuspended slot followed by alpha_k letters.
struct SeqCell {
    IntSeq alpha;
    BarWord w;

    friend bool operator<(const SeqCell& a, const SeqCell& b) { return std::tie(a.alpha, a.w) < std::tie(b.alpha, b.w); }
    friend bool operator==(const SeqCell& a, const SeqCell& b) { return a.alpha == b.alpha && a.w == b.w; }
};
using SeqChain = Lin<SeqCell>;

int cell_dim(const SeqCell& c);
int cell_level(const SeqCell& c);
std::string seq_cell_name(const SeqCell& c);
std::string to_string(const SeqChain& c);
SeqChain level_part(const SeqChain& c, int level);

// 0-based block holding the i-th letter (1-based): the least k with i <= alpha_1 + .. + alpha_{k+1}.
int block_of(const IntSeq& alpha, int i);

// Boundary of Z'_n:
//   (-1)^{|a|} down^{|a|} dw + sum_{i<=|a|, j>=2} (-1)^{i+|a|j+ij} down^{|a|+j-1}(f(D_j) o_i w),
// the j-term landing in alpha with alpha_{block(i)} raised by j-1. Terms with |alpha| > max_level are
// dropped when max_level >= 0 (the quotient by higher levels, a DG ideal).
SeqChain z_boundary(SOperad& op, const SeqCell& c, int max_level = -1);
SeqChain z_boundary(SOperad& op, const SeqChain& c, int max_level = -1);
// Same for Y'_n; the i-th letter sits in slot i + block(i) + 1.
SeqChain y_boundary(SOperad& op, const SeqCell& c, int max_level = -1);
SeqChain y_boundary(SOperad& op, const SeqChain& c, int max_level = -1);

// sigma . (alpha, w) = Parity(B) (sigma.alpha, B w) with B = block_permute(alpha, sigma):
// block k moves to position sigma(k). For Y the word is permuted by the blocks alpha_k + 1, but the sign
// only counts crossings of desuspended letters, i.e. it stays Parity(block_permute(alpha, sigma)).
SeqChain act_z(const Perm& sigma, const SeqChain& c);
SeqChain act_y(const Perm& sigma, const SeqChain& c);

// Basis of Z'_n (or Y'_n): all alpha of length n with 1 <= |alpha| <= max_level (0 <= for Y),
// words of every leader with dim <= max_rdim.
std::vector<SeqCell> z_basis(int n, int max_level, int max_rdim);
std::vector<SeqCell> y_basis(int n, int max_level, int max_rdim);

// Complexes on those bases from z_boundary / y_boundary (terms leaving the basis are dropped).
GradedComplex z_complex(SOperad& op, int n, int max_level, int max_rdim);
GradedComplex y_complex(SOperad& op, int n, int max_level, int max_rdim);

// The right mapping sequence {sum_{|alpha|=m} R_alpha, z_{m,j}} obtained by pulling back the n-fold
// product of the cobar sequence: on block k (offset A = alpha_1 + .. + alpha_{k-1})
//   z_{m,j} = sum_k (-1)^{A(j+1)} sum_{b=1}^{alpha_k} (-1)^{(2b+j)(j+1)/2} f(D_{j+2}) o_{A+b} *.
// Level 0 (the ground ring) is left empty.
RightMappingSequence z_sequence(SOperad& op, int n, int max_level, int max_rdim);
// Its telescope, re-expressed in desuspended-tensor coordinates
// (S^{-m} x = (-1)^{m(m-1)/2} down^{(x) m} x), with cells named by seq_cell_name.
GradedComplex z_telescope_complex(SOperad& op, int n, int max_level, int max_rdim);

// t_n(top)(x_1, .., x_k): (-1)^{|top| sum|x_i|} (-1)^{sum_{i<l} |alpha_l| |w_i|} Parity(Z) down^{|alpha|} Z gamma(top; w_1..w_k),
// Z the shuffle of {alpha_1, .., alpha_k} into column order; alpha is the elementwise sum.
SeqChain t_product(SOperad& op, const RChain& top, const std::vector<SeqCell>& args, int max_level = -1);
SeqChain z_mu2(SOperad& op, const SeqChain& a, const SeqChain& b, int max_level = -1);

// Z'_n truncated at level max_level as an A-infinity algebra (mu_j = 0 for j >= 3 over RS).
AInftyAlgebra<SeqCell> z_algebra(SOperad& op, int max_level);

// Twisting cochain c_n: RS_n -> Z_n, stored on leader-one words and extended by c(g x) = g . c(x).
struct TwistingCochainCn {
    int n = 0;
    int max_dim = 0;
    int max_level = 0;
    std::map<BarWord, SeqChain> canonical;

    SeqChain operator()(const BarWord& x) const;
    SeqChain operator()(const RChain& x) const;
};

// dc(x) + c(dx) + sum (-1)^{|x'|} mu_2(c x', c x'') over Delta_R x = sum x' (x) x'', modulo levels > max_level.
SeqChain cn_residual(SOperad& op, const TwistingCochainCn& c, const BarWord& x);

// Solves the identity on leader-one words dimension by dimension and level by level with the contracting
// homotopy of RS_m, starting from c(1[]) = sum_k down 1 on alpha = e_k. The identity is imposed on dim-0
// words too. Throws MathError if a level cannot be solved.
TwistingCochainCn compute_cn(SOperad& op, int n, int max_dim, int max_level);

// B(c_n)(x) = eps(x) + sum_k (-up c)^{(x) k} Delta^{k-1} x, words of length <= max_len.
Lin<std::vector<SeqCell>> bar_cn(const TwistingCochainCn& c, const BarWord& x, int max_len);

// ---------------------------------------------------------------------------
// Compositions on B(Z_*) and Y_* * B(Z_*).

using ZWord = std::vector<SeqCell>;
using ZWordChain = Lin<ZWord>;

// [r_1|..|r_j] o_i [s_1|..|s_k]: zero unless j = sum_t beta_{t,i}; otherwise the letters of column i of
// each s_t are replaced, in order, by the next r's (outputs shuffled into column order). The sign is the
// Koszul sign of applying r (x) up to the desuspended letters of s_t, which contains the crossing term
// (-1)^{|alpha_v| sum_{z<i} beta_{t,z}}, times the sign of moving the letters of a to their rows.
// n is the width of a (needed when a is empty).
ZWordChain barz_compose(SOperad& op, int n, const ZWord& a, int i, const ZWord& b);

// (y_1 * [v_1|..|v_r]) o_i y_2 for y_1 in Y_j, v_t in Z_j, y_2 in Y_k: zero unless r = gamma_i. Otherwise
// y_1 is composed into the undesuspended slot of block i of y_2, v_t into its t-th letter, and the outputs
// are shuffled by Z{(1,alpha_1,..,1,alpha_j), (0,beta_{1,1},..,0,beta_{1,j}), ..}.
SeqChain y_star_compose(SOperad& op, const SeqCell& y1, const ZWord& z1, int i, const SeqCell& y2);

}  // namespace einf
