#pragma once

#include "einf/lincomb.hpp"

#include <nlohmann/json_fwd.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace einf {

using Chain = Lin<std::string>;
using Word = std::vector<std::string>;
using TChain = Lin<Word>;

class GradedComplex {
public:
    void add_cell(const std::string& name, int dim, Chain boundary = {});
    void set_boundary(const std::string& name, Chain boundary);

    bool has(const std::string& name) const { return cells_.count(name) != 0; }
    int dim(const std::string& name) const;
    const Chain& boundary(const std::string& name) const;
    Chain d(const Chain& c) const;
    // Dimension of a homogeneous chain; throws on mixed degrees. Zero chain -> fallback.
    int dim_of(const Chain& c, int fallback = 0) const;

    const std::vector<std::string>& basis(int d) const;
    std::size_t index_of(const std::string& name) const;
    std::size_t rank(int d) const { return basis(d).size(); }
    int lo() const { return bases_.empty() ? 0 : bases_.begin()->first; }
    int hi() const { return bases_.empty() ? -1 : bases_.rbegin()->first; }
    std::size_t size() const { return cells_.size(); }
    std::vector<int> dims() const;

    // Basis elements whose boundary fails to square to zero.
    std::vector<std::string> check_d2() const;

    nlohmann::json to_json() const;
    static GradedComplex from_json(const nlohmann::json& j);

    bool operator==(const GradedComplex& o) const;

private:
    struct Cell {
        int dim;
        std::size_t index;
        Chain boundary;
    };
    std::map<int, std::vector<std::string>> bases_;
    std::unordered_map<std::string, Cell> cells_;
};

// Shift all dimensions by k. The boundary picks up the sign (-1)^k.
GradedComplex suspend(const GradedComplex& c, int k);

// Tensor words. Signs follow the Koszul convention: applying f1 x ... x fn
// to w1 x ... x wn costs (-1)^{sum_i deg f_i * sum_{j<i} |w_j|}.
using BasisMap = std::function<Chain(const std::string&)>;
struct GradedMap {
    int degree = 0;
    BasisMap f;
};

GradedMap identity_map();
TChain apply_tensor(const std::vector<GradedMap>& fs, const Word& w,
                    const std::vector<const GradedComplex*>& factors);
TChain apply_tensor(const std::vector<GradedMap>& fs, const TChain& c,
                    const std::vector<const GradedComplex*>& factors);
TChain tensor_d(const TChain& c, const std::vector<const GradedComplex*>& factors);
int word_dim(const Word& w, const std::vector<const GradedComplex*>& factors);
Chain apply_map(const GradedMap& f, const Chain& c, const GradedComplex& domain);

std::string join_word(const Word& w);

// Materialize the tensor product in dimensions [lo, hi]; names are join_word.
struct TensorComplex {
    std::vector<const GradedComplex*> factors;
    GradedComplex complex;
    std::map<std::string, Word> words;
};
TensorComplex tensor_complex(const std::vector<const GradedComplex*>& factors, int lo, int hi);

// Dense integer matrices and Smith normal form.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    static Matrix identity(std::size_t n);
    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    Matrix operator*(const Matrix& o) const;
    bool operator==(const Matrix& o) const = default;
};

struct Smith {
    Matrix D, U, Uinv, V, Vinv;  // D = U * A * V
    std::vector<Int> diag;        // nonzero diagonal entries
    std::size_t rank = 0;
};
Smith smith_normal_form(const Matrix& a, bool transforms = true);

// Matrix of the boundary from dimension d to d-1 (rows: basis(d-1)).
Matrix boundary_matrix(const GradedComplex& c, int d);
std::vector<Int> to_vector(const GradedComplex& c, int d, const Chain& x);
Chain from_vector(const GradedComplex& c, int d, const std::vector<Int>& v);

struct Homology {
    long betti = 0;
    std::vector<Int> torsion;
    bool operator==(const Homology& o) const = default;
};
Homology smith_homology(const GradedComplex& c, int d);

// Some x with dx = b, or nullopt if b is not a boundary. Throws if b is not a cycle.
std::optional<Chain> solve_boundary(const GradedComplex& c, const Chain& b, int dim_hint = 0);

// Cocycles spanning the integral homology of a complex in dimension d:
// free generators first, then torsion generators with their orders.
struct HomologyBasis {
    std::vector<Chain> free;
    std::vector<std::pair<Chain, Int>> torsion;
};
HomologyBasis homology_generators(const GradedComplex& c, int d);

// Dual complex: cell names kept, dims negated, boundary = transpose.
GradedComplex dual_complex(const GradedComplex& c);

}  // namespace einf
