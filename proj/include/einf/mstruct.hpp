#pragma once

#include "einf/exactchain.hpp"
#include "einf/soperad.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace einf {

// A simplex of X written as s^*(y): y nondegenerate, s a monotone surjection
// [dim] -> [dim y] given by its images (empty for the identity).
struct SimplexRef {
    std::string name;
    std::vector<int> surj;
    bool degenerate() const { return !surj.empty(); }
    bool operator==(const SimplexRef& o) const = default;
};

class SimplicialSet {
public:
    void add_simplex(const std::string& name, int dim, std::vector<SimplexRef> faces = {});
    void set_basepoint(const std::string& name) { basepoint_ = name; }

    bool has(const std::string& name) const { return index_.count(name) != 0; }
    int dim(const std::string& name) const;
    const std::vector<SimplexRef>& faces(const std::string& name) const;
    const std::vector<std::string>& simplices(int d) const;
    int top_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::string& basepoint() const { return basepoint_; }

    // theta^*(y) for nondegenerate y and a monotone map theta: [r] -> [dim y].
    SimplexRef restrict(const std::string& y, const std::vector<int>& theta) const;
    SimplexRef restrict(const SimplexRef& x, const std::vector<int>& theta) const;
    // The face of y spanned by an increasing vertex subset.
    SimplexRef face_of(const std::string& y, const std::vector<int>& vertices) const;

    // Violations of d_i d_j = d_{j-1} d_i for i < j.
    std::vector<std::string> check_identities() const;

    nlohmann::json to_json() const;
    static SimplicialSet from_json(const nlohmann::json& j);

private:
    struct Entry {
        int dim;
        std::vector<SimplexRef> faces;
    };
    std::unordered_map<std::string, Entry> index_;
    std::vector<std::vector<std::string>> by_dim_;
    std::string basepoint_;
};

// The standard k-simplex; faces are named by their vertex lists, e.g. "[0,2]".
SimplicialSet standard_simplex(int k);
std::string face_name(const std::vector<int>& vertices);
// Boundary of the standard simplex, and quotients of Delta^k by a set of faces.
SimplicialSet boundary_of_simplex(int k);
// X/K: the simplices in `collapse` (a subcomplex) become degeneracies of one vertex "*".
SimplicialSet collapse_subcomplex(const SimplicialSet& x, const std::vector<std::string>& collapse);

GradedComplex normalized_chains(const SimplicialSet& x);

// Contraction of the standard k-simplex on a face given by vertices.
Chain simplex_contraction(const std::vector<int>& face, int k);

// Koszul-signed action of sigma on a tensor word: factor k moves to position sigma(k).
TChain permute_factors(const Perm& sigma, const TChain& c, const std::function<int(const std::string&)>& dim);

// A coalgebra over the operad: structure maps f_n(A (x) x) in C^{(x) n}.
class MCoalgebra {
public:
    virtual ~MCoalgebra() = default;
    virtual const GradedComplex& complex() const = 0;
    virtual std::string basepoint() const = 0;

    // Any bar word A; reduced to leader 1 through equivariance.
    TChain structure(int n, const BarWord& A, const std::string& x);
    TChain structure(int n, const RChain& A, const Chain& x);

    // Contracting homotopy with phi^2 = 0, if the coalgebra is Cartan.
    virtual std::optional<Chain> contraction(const std::string&) const { return std::nullopt; }
    bool is_cartan() const;
    // Vertex the contraction retracts onto (the basepoint unless overridden); zero above dimension 0.
    virtual Chain eta_eps(const std::string& x) const;

    int cell_dim(const std::string& x) const { return complex().dim(x); }
    std::vector<const GradedComplex*> factors(int n) const
    {
        return std::vector<const GradedComplex*>(n, &complex());
    }

protected:
    virtual TChain structure_leader_one(int n, const BarWord& A, const std::string& x) = 0;

private:
    std::mutex mu_;
    std::unordered_map<std::string, TChain> memo_;
};

// Structure maps of normalized chains through the standard-simplex recursion.
class SimplexModels {
public:
    // f_n(A (x) iota_t) on the standard t-simplex, A leader 1; words of vertex lists.
    using VWord = std::vector<std::vector<int>>;
    using VChain = Lin<VWord>;
    const VChain& top(int n, const BarWord& A, int t);
    // f_n(A (x) face) for any A and any face of a standard simplex.
    VChain eval(int n, const BarWord& A, const std::vector<int>& face);

private:
    VChain phi_tensor(const VChain& c, int t) const;
    std::mutex mu_;
    std::unordered_map<std::string, VChain> memo_;
};

class SimplicialCoalgebra : public MCoalgebra {
public:
    explicit SimplicialCoalgebra(SimplicialSet x, std::shared_ptr<SimplexModels> models = nullptr);
    const GradedComplex& complex() const override { return chains_; }
    std::string basepoint() const override { return set_.basepoint(); }
    const SimplicialSet& simplicial_set() const { return set_; }
    // For standard simplices built by standard_simplex(k) the contraction is available.
    std::optional<Chain> contraction(const std::string& x) const override;
    Chain eta_eps(const std::string& x) const override;
    bool is_standard() const { return std_top_ >= 0; }

protected:
    TChain structure_leader_one(int n, const BarWord& A, const std::string& x) override;

private:
    SimplicialSet set_;
    GradedComplex chains_;
    std::shared_ptr<SimplexModels> models_;
    // Vertex lists when the set is a standard simplex.
    std::map<std::string, std::vector<int>> std_vertices_;
    std::map<std::vector<int>, std::string> std_names_;
    int std_top_ = -1;
};

// Complex concentrated in dimension 0 (basepoint) and above, with the structure
// f(s[] (x) *) = *^n, f(s[] (x) x) = sum of x in one slot, and zero in positive
// operad dimension. B^n is the case of one cell in dimension n.
class TrivialCoalgebra : public MCoalgebra {
public:
    TrivialCoalgebra(GradedComplex c, std::string basepoint);
    const GradedComplex& complex() const override { return c_; }
    std::string basepoint() const override { return base_; }

protected:
    TChain structure_leader_one(int n, const BarWord& A, const std::string& x) override;

private:
    GradedComplex c_;
    std::string base_;
};
std::shared_ptr<TrivialCoalgebra> sphere_coalgebra(int n);

// C1 (x) C2 pulled back over the operad diagonal and interleaved.
class TensorCoalgebra : public MCoalgebra {
public:
    TensorCoalgebra(std::shared_ptr<MCoalgebra> c1, std::shared_ptr<MCoalgebra> c2, SOperad* op, int max_dim);
    const GradedComplex& complex() const override { return t_.complex; }
    std::string basepoint() const override;
    const Word& split(const std::string& name) const { return t_.words.at(name); }

protected:
    TChain structure_leader_one(int n, const BarWord& A, const std::string& x) override;

private:
    std::shared_ptr<MCoalgebra> c1_, c2_;
    SOperad* op_;
    TensorComplex t_;
};

// Structure induced on a quotient: f(A (x) y) = p^{(x)n} f(A (x) lift(y)).
class QuotientCoalgebra : public MCoalgebra {
public:
    QuotientCoalgebra(std::shared_ptr<MCoalgebra> src, GradedComplex target, std::string basepoint,
                      std::function<Chain(const std::string&)> project,
                      std::function<std::string(const std::string&)> lift);
    const GradedComplex& complex() const override { return c_; }
    std::string basepoint() const override { return base_; }

protected:
    TChain structure_leader_one(int n, const BarWord& A, const std::string& x) override;

private:
    std::shared_ptr<MCoalgebra> src_;
    GradedComplex c_;
    std::string base_;
    std::function<Chain(const std::string&)> project_;
    std::function<std::string(const std::string&)> lift_;
};

// The unit interval: normalized chains of the 1-simplex with cells p0, p1, q.
std::shared_ptr<SimplicialCoalgebra> unit_interval();

// Sigma C = C (x) I modulo C+ (x) p0, C+ (x) p1, C0 (x) q and p0 ~ p1 on the basepoint.
std::shared_ptr<QuotientCoalgebra> suspension(std::shared_ptr<MCoalgebra> c, SOperad* op);

// One-point union, cells prefixed by "L:" and "R:" with a common basepoint "*".
class WedgeCoalgebra : public MCoalgebra {
public:
    WedgeCoalgebra(std::shared_ptr<MCoalgebra> c, std::shared_ptr<MCoalgebra> d);
    const GradedComplex& complex() const override { return w_; }
    std::string basepoint() const override { return "*"; }

protected:
    TChain structure_leader_one(int n, const BarWord& A, const std::string& x) override;

private:
    std::shared_ptr<MCoalgebra> c_, d_;
    GradedComplex w_;
};

// Algebraic mapping cylinder of a chain map g: C1 -> C2 with C2 Cartan.
// Cells: "0:x" (x in C1), "q:x" (x (x) q), "1:y" (y in C2);
// d(q:x) = (-1)^{|x|}(g(x) - x) + q:dx.
class CylinderCoalgebra : public MCoalgebra {
public:
    CylinderCoalgebra(std::shared_ptr<MCoalgebra> c1, std::shared_ptr<MCoalgebra> c2, BasisMap g);
    const GradedComplex& complex() const override { return m_; }
    std::string basepoint() const override { return "1:" + t2_; }
    std::optional<Chain> contraction(const std::string& x) const override;
    // psi applied to a chain, and the tensor homotopy Psi_n.
    Chain psi(const Chain& c) const;
    TChain psi_tensor(const TChain& c) const;

protected:
    TChain structure_leader_one(int n, const BarWord& A, const std::string& x) override;

private:
    TChain structure_z(int n, const BarWord& A, const std::string& x);
    TChain structure_on(int n, const BarWord& A, const Chain& c);
    std::shared_ptr<MCoalgebra> c1_, c2_;
    BasisMap g_;
    std::string t2_;
    GradedComplex m_;
    std::unordered_map<std::string, TChain> zmemo_;
};

// JSON coalgebra: either a simplicial set, or {"complex": ..., "basepoint": ..., "structure": "trivial"}.
std::shared_ptr<MCoalgebra> coalgebra_from_json(const nlohmann::json& j);

}  // namespace einf
