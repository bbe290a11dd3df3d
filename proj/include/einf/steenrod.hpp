#pragma once

#include "einf/mstruct.hpp"

#include <string>
#include <vector>

namespace einf {

// An integer cochain: values on the cells of one dimension.
struct Cochain {
    Chain values;
    int degree = 0;
    bool operator==(const Cochain& o) const = default;
};

// du = -(-1)^{|u|} u o d
Cochain coboundary(const GradedComplex& c, const Cochain& u);
Int evaluate(const Cochain& u, const Chain& x);
// (u_1 (x) ... (x) u_n)(w_1 (x) ... (x) w_n) with the Koszul sign of u_l passing w_i, i < l.
Int evaluate(const std::vector<Cochain>& us, const TChain& w, const GradedComplex& c);
Cochain reduce_mod(const Cochain& u, int p);

// 1[(12)|(12)|...|(12)] with i letters.
BarWord cup_i_word(int i);
Cochain cup_i(MCoalgebra& c, const Cochain& u, const Cochain& v, int i);
inline Cochain cup(MCoalgebra& c, const Cochain& u, const Cochain& v) { return cup_i(c, u, v, 0); }
// Sq^i(u) = u cup_{k-i} u mod 2; zero for i > k.
Cochain steenrod_square(MCoalgebra& c, int i, const Cochain& u);

// H^d(C; Z_p) with a deterministic cocycle basis and coordinates of cocycles in it.
class ModPCohomology {
public:
    ModPCohomology(const GradedComplex& c, int d, int p);
    int degree() const { return d_; }
    int prime() const { return p_; }
    const std::vector<Cochain>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }
    // Throws MathError if u is not a cocycle mod p.
    std::vector<int> coordinates(const Cochain& u) const;

private:
    struct Row {
        std::vector<int> v, h;
        std::size_t pivot;
    };
    std::vector<int> to_vec(const Cochain& u) const;
    const GradedComplex* c_;
    int d_, p_;
    std::vector<Cochain> basis_;
    std::vector<Row> rows_;
};

// Columns: Sq^i of each basis class of H^d, expressed in H^{d+i}(Z_2).
std::vector<std::vector<int>> steenrod_matrix(MCoalgebra& c, int i, int d);

struct RingEntry {
    int d1, i, d2, j;
    std::vector<int> product;
};
// All products of basis classes with d1 + d2 <= max_degree, d1, d2 >= 1, over Z_p.
std::vector<RingEntry> ring_table(MCoalgebra& c, int p, int max_degree);

// Integral cocycles spanning the free part of H^d.
std::vector<Cochain> free_cohomology_generators(const GradedComplex& c, int d);
// <a_i cup b_j, z> over free generators of H^{d1}, H^{d2} and the first free cycle z of dimension d1 + d2.
Matrix cup_pairing(MCoalgebra& c, int d1, int d2);
Int determinant(const Matrix& m);

}  // namespace einf
