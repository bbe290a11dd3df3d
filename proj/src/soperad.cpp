#include "einf/soperad.hpp"

#include <functional>
#include <sstream>

namespace einf {

IntSeq slot_layout(int n, int i, int m)
{
    IntSeq a(m, 1);
    a[i] = n;
    return a;
}

namespace {

std::string comp_key(const BarWord& a, int i, const BarWord& b)
{
    std::string k;
    k.reserve(a.bytes().size() + b.bytes().size() + 4);
    k.push_back(static_cast<char>(a.arity()));
    k.push_back(static_cast<char>(a.dim()));
    k.push_back(static_cast<char>(i));
    k.push_back(static_cast<char>(b.arity()));
    k += a.bytes();
    k += b.bytes();
    return k;
}

}  // namespace

void SOperad::clear()
{
    std::lock_guard<std::mutex> g(mu_);
    comp_cache_.clear();
    diag_cache_.clear();
}

RChain SOperad::compose_leader_one(const BarWord& a, int i, const BarWord& b)
{
    std::string key = comp_key(a, i, b);
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = comp_cache_.find(key);
        if (it != comp_cache_.end()) return it->second;
    }
    int N = a.arity() + b.arity() - 1;
    RChain r;
    if (a.dim() == 0 && b.dim() == 0) {
        r = RChain(BarWord::unit(N));
    } else {
        RChain inner;
        if (a.dim() > 0) inner.add(compose(differential(a), i, RChain(b)), 1);
        if (b.dim() > 0) inner.add(compose(RChain(a), i, differential(b)), sign_of(a.dim()));
        r = phi(inner);
    }
    std::lock_guard<std::mutex> g(mu_);
    comp_cache_.emplace(std::move(key), r);
    return r;
}

RChain SOperad::compose(const BarWord& a, int i, const BarWord& b)
{
    const int n = a.arity(), m = b.arity();
    if (i < 1 || i > m) throw RangeError("composition slot out of range");
    const int N = n + m - 1;
    Perm rho = a.leader(), sigma = b.leader();
    int i0 = i - 1;
    int j0 = sigma.inverse()[i0];
    RChain core = compose_leader_one(a.with_leader(Perm(n)), j0 + 1, b.with_leader(Perm(m)));
    if (rho.is_identity() && sigma.is_identity()) return core;
    Perm pi = einf::compose(embed(rho, i0, N), block_permute(slot_layout(n, j0, m), sigma));
    return act(pi, core);
}

RChain SOperad::compose(const RChain& a, int i, const RChain& b)
{
    RChain r;
    for (const auto& [x, u] : a)
        for (const auto& [y, v] : b) r.add(compose(x, i, y), u * v);
    return r;
}

RChain SOperad::gamma(const std::vector<RChain>& us, const RChain& top)
{
    if (top.empty()) return {};
    int k = top.begin()->first.arity();
    if (static_cast<int>(us.size()) != k) throw RangeError("gamma: arity mismatch");
    RChain acc = top;
    for (int i = k; i >= 1; --i) acc = compose(us[i - 1], i, acc);
    return acc;
}

RRChain SOperad::diagonal_leader_one(const BarWord& w)
{
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = diag_cache_.find(w);
        if (it != diag_cache_.end()) return it->second;
    }
    RRChain r;
    if (w.dim() == 0) {
        r.add(RPair(w, w), 1);
    } else {
        RRChain dd = diagonal(differential(w));
        BarWord unit = BarWord::unit(w.arity());
        for (const auto& [p, v] : dd) {
            for (const auto& [x, xv] : phi(p.first)) r.add(RPair(x, p.second), v * xv);
            if (p.first.dim() == 0)
                for (const auto& [y, yv] : phi(p.second)) r.add(RPair(unit, y), v * yv);
        }
    }
    std::lock_guard<std::mutex> g(mu_);
    diag_cache_.emplace(w, r);
    return r;
}

RRChain SOperad::diagonal(const BarWord& w)
{
    Perm g = w.leader();
    RRChain base = diagonal_leader_one(w.with_leader(Perm(w.arity())));
    if (g.is_identity()) return base;
    return act_diag(g, base);
}

RRChain SOperad::diagonal(const RChain& c)
{
    RRChain r;
    for (const auto& [w, v] : c) r.add(diagonal(w), v);
    return r;
}

RChain SOperad::ainfty_quadratic(const std::vector<RChain>& f, int n)
{
    // f[k] is the image of D_k.
    RChain r;
    for (int k = 2; k <= n - 1; ++k)
        for (int lambda = 0; lambda <= n - k; ++lambda) {
            int slot = n - k - lambda + 1;
            int s = sign_of(k + lambda + k * lambda);
            r.add(compose(f[k], slot, f[n - k + 1]), s);
        }
    return r;
}

const std::vector<RChain>& SOperad::ainfty_cached(int kmax)
{
    if (static_cast<int>(ainfty_.size()) <= kmax) ainfty_ = ainfty_images(kmax);
    return ainfty_;
}

std::vector<RChain> SOperad::ainfty_images(int kmax)
{
    std::vector<RChain> f(std::max(kmax, 2) + 1);
    f[2] = RChain(BarWord::unit(2));
    for (int n = 3; n <= kmax; ++n) {
        // d f(D_n) + quadratic terms = 0; the quadratic part is a cycle, so phi gives a preimage.
        RChain q = ainfty_quadratic(f, n);
        if (!differential(q).empty()) throw MathError("A-infinity obstruction is not a cycle");
        f[n] = -phi(q);
        if (differential(f[n]) != -q) throw MathError("A-infinity solver failed");
    }
    return f;
}

Perm s0_compose(const std::vector<Perm>& sigmas, const Perm& sigma)
{
    if (static_cast<int>(sigmas.size()) != sigma.size()) throw RangeError("s0_compose: arity mismatch");
    IntSeq ar;
    for (const auto& p : sigmas) ar.push_back(p.size());
    return einf::compose(block_sum(sigmas), block_tmap(ar, sigma));
}

int coassoc_compose(int i, int j, int /*slot*/) { return i + j - 1; }

namespace {

struct Reporter {
    OperadReport& rep;
    void check(bool ok, const std::string& what, const std::function<std::string()>& detail)
    {
        ++rep.checks;
        ++rep.per_identity[what];
        if (!ok && rep.violations.size() < 50) rep.violations.push_back(what + ": " + detail());
    }
};

}  // namespace

OperadReport verify_operad(SOperad& s, int dim_bound, int arity_bound)
{
    OperadReport rep;
    Reporter R{rep};
    std::vector<std::vector<BarWord>> words;  // indexed by arity
    std::vector<std::vector<Perm>> perms;
    words.resize(arity_bound + 1);
    perms.resize(arity_bound + 1);
    for (int n = 1; n <= arity_bound; ++n) {
        perms[n] = all_perms(n);
        for (int d = 0; d <= dim_bound; ++d)
            for (const auto& w : bar_basis(n, d, false)) words[n].push_back(w);
    }
    auto str = [](const BarWord& w) { return w.to_string(); };

    for (int n = 1; n <= arity_bound; ++n)
        for (const auto& a : words[n]) {
            // Units.
            BarWord u1 = BarWord::unit(1);
            for (int i = 1; i <= n; ++i)
                R.check(s.compose(u1, i, a) == RChain(a), "unit", [&] { return str(a); });
            R.check(s.compose(a, 1, u1) == RChain(a), "unit", [&] { return str(a); });
        }

    for (int n = 1; n <= arity_bound; ++n)
        for (int m = 1; m <= arity_bound; ++m)
            for (const auto& a : words[n])
                for (const auto& b : words[m]) {
                    if (a.dim() + b.dim() > dim_bound) continue;
                    for (int i = 1; i <= m; ++i) {
                        RChain ab = s.compose(a, i, b);
                        auto detail = [&] { return str(a) + " o_" + std::to_string(i) + " " + str(b); };
                        // Leibniz.
                        RChain lhs = differential(ab);
                        RChain rhs = s.compose(differential(RChain(a)), i, RChain(b));
                        rhs.add(s.compose(RChain(a), i, differential(RChain(b))), sign_of(a.dim()));
                        R.check(lhs == rhs, "leibniz", detail);
                        // Equivariance in the inserted argument.
                        for (const auto& tau : perms[n]) {
                            RChain l = s.compose(act(tau, a), i, b);
                            RChain r = act(embed(tau, i - 1, n + m - 1), ab);
                            R.check(l == r, "equivariance-left", detail);
                        }
                        // Equivariance in the receiving argument.
                        for (const auto& sg : perms[m]) {
                            RChain l = s.compose(a, sg[i - 1] + 1, act(sg, b));
                            RChain r = act(block_permute(slot_layout(n, i - 1, m), sg), ab);
                            R.check(l == r, "equivariance-right", detail);
                        }
                    }
                }

    for (int n = 1; n <= arity_bound; ++n)
        for (int m = 1; m <= arity_bound; ++m)
            for (int p = 1; p <= arity_bound; ++p)
                for (const auto& a : words[n])
                    for (const auto& b : words[m]) {
                        if (a.dim() + b.dim() > dim_bound) continue;
                        for (const auto& c : words[p]) {
                            if (a.dim() + b.dim() + c.dim() > dim_bound) continue;
                            auto detail = [&] { return str(a) + ", " + str(b) + ", " + str(c); };
                            // Associativity.
                            for (int j = 1; j <= p; ++j)
                                for (int i = 1; i <= m; ++i) {
                                    RChain l = s.compose(s.compose(RChain(a), i, RChain(b)), j, RChain(c));
                                    RChain r = s.compose(RChain(a), i + j - 1, s.compose(RChain(b), j, RChain(c)));
                                    R.check(l == r, "associativity", detail);
                                }
                            // Commutativity: a and b into distinct slots i > j of c.
                            for (int j = 1; j <= p; ++j)
                                for (int i = j + 1; i <= p; ++i) {
                                    RChain l = s.compose(RChain(a), i + m - 1, s.compose(RChain(b), j, RChain(c)));
                                    RChain r = s.compose(RChain(b), j, s.compose(RChain(a), i, RChain(c)));
                                    r *= sign_of(a.dim() * b.dim());
                                    R.check(l == r, "commutativity", detail);
                                }
                        }
                    }
    return rep;
}

OperadReport verify_s0(int arity_bound)
{
    OperadReport rep;
    Reporter R{rep};
    auto comp = [](const Perm& a, int i, const Perm& b) {
        std::vector<Perm> us;
        for (int k = 0; k < b.size(); ++k) us.push_back(k == i - 1 ? a : Perm(1));
        return s0_compose(us, b);
    };
    SOperad s;
    for (int n = 1; n <= arity_bound; ++n)
        for (int m = 1; m <= arity_bound; ++m)
            for (const auto& a : all_perms(n))
                for (const auto& b : all_perms(m))
                    for (int i = 1; i <= m; ++i) {
                        Perm ab = comp(a, i, b);
                        R.check(s.compose(BarWord(a, {}), i, BarWord(b, {})) == RChain(BarWord(ab, {})), "matches-S-dim0",
                                [&] { return a.to_cycles() + " o_" + std::to_string(i) + " " + b.to_cycles(); });
                        for (int p = 1; p + n + m <= arity_bound + 3 && p <= arity_bound; ++p)
                            for (const auto& c : all_perms(p))
                                for (int j = 1; j <= p; ++j) {
                                    Perm l = comp(ab, j, c);
                                    Perm r = comp(a, i + j - 1, comp(b, j, c));
                                    R.check(l == r, "associativity", [&] { return a.to_cycles(); });
                                }
                    }
    return rep;
}

OperadReport verify_coassoc(int bound)
{
    OperadReport rep;
    Reporter R{rep};
    for (int i = 1; i <= bound; ++i)
        for (int j = 1; j <= bound; ++j)
            for (int k = 1; k <= bound; ++k)
                for (int a = 1; a <= j; ++a)
                    for (int b = 1; b <= k; ++b)
                        R.check(coassoc_compose(coassoc_compose(i, j, a), k, b) == coassoc_compose(i, coassoc_compose(j, k, b), a + b - 1),
                                "associativity", [] { return std::string("coassoc"); });
    return rep;
}

}  // namespace einf
