#pragma once

#include "einf/barres.hpp"

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace einf {

// Alpha with all entries 1 except n at position i (0-based), length m.
IntSeq slot_layout(int n, int i, int m);

// The operad with components RS_n. a o_i b inserts a into slot i (1-based) of b.
class SOperad {
public:
    RChain compose(const BarWord& a, int i, const BarWord& b);
    RChain compose(const RChain& a, int i, const RChain& b);

    // u_1 o_1 (u_2 o_2 (... (u_k o_k top))).
    RChain gamma(const std::vector<RChain>& us, const RChain& top);

    RRChain diagonal(const BarWord& w);
    RRChain diagonal(const RChain& c);

    // Images of the free A-infinity generators D_k, k = 2..kmax, solved through phi.
    std::vector<RChain> ainfty_images(int kmax);
    // Cached ainfty_images(kmax) for the largest kmax requested so far.
    const std::vector<RChain>& ainfty_cached(int kmax);
    // sum over 2<=k<=n-1, lambda of (-1)^{k+lambda+k lambda} f(D_k) o_{n-k-lambda+1} f(D_{n-k+1})
    RChain ainfty_quadratic(const std::vector<RChain>& f, int n);

    std::size_t cache_size() const { return comp_cache_.size(); }
    void clear();

private:
    RChain compose_leader_one(const BarWord& a, int i, const BarWord& b);
    RRChain diagonal_leader_one(const BarWord& w);

    std::mutex mu_;
    std::vector<RChain> ainfty_;
    std::unordered_map<std::string, RChain> comp_cache_;
    std::unordered_map<BarWord, RRChain, BarWordHash> diag_cache_;
};

// Dimension 0 composition rule: B_{(i_1..i_k)}(sigma) o (sigma_1 (+) ... (+) sigma_k).
Perm s0_compose(const std::vector<Perm>& sigmas, const Perm& sigma);

// Coassoc: b_i o_alpha b_j = b_{i+j-1}.
int coassoc_compose(int i, int j, int slot);

struct OperadReport {
    long checks = 0;
    std::vector<std::string> violations;
    std::map<std::string, long> per_identity;
    bool ok() const { return violations.empty(); }
};

// Associativity, commutativity, both equivariance rules, units and the Leibniz
// rule over all basis words with arity <= arity_bound and total dimension <= dim_bound.
OperadReport verify_operad(SOperad& s, int dim_bound, int arity_bound);
OperadReport verify_s0(int arity_bound);
OperadReport verify_coassoc(int bound);

}  // namespace einf
