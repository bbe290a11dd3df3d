#include "einf/telescope.hpp"

#include <algorithm>
#include <functional>
#include <memory>

namespace einf {

namespace {

// f(D_j) is taken through this arity; over S every image with j >= 3 vanishes.
constexpr int kAInftyMax = 5;

// All length-n sequences of nonnegative integers summing to m, lexicographic.
std::vector<IntSeq> compositions(int n, int m)
{
    std::vector<IntSeq> out;
    IntSeq cur(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    if (n > 0) rec(0, m);
    std::sort(out.begin(), out.end());
    return out;
}

int jmax_for(int level, int max_level)
{
    if (max_level < 0) return kAInftyMax;
    return std::min(kAInftyMax, max_level - level + 1);
}

// Shared body of the Z and Y boundaries; slot(i, block) gives the composition slot of letter i.
template <class Slot>
SeqChain perturbed_boundary(SOperad& op, const SeqCell& c, int max_level, Slot slot)
{
    const int m = cell_level(c);
    SeqChain r;
    for (const auto& [w2, v] : differential(c.w)) r.add(SeqCell{c.alpha, w2}, v * sign_of(m));
    const int jm = jmax_for(m, max_level);
    if (jm < 2) return r;
    const auto& f = op.ainfty_cached(kAInftyMax);
    for (int j = 2; j <= jm; ++j) {
        if (f[j].empty()) continue;
        for (int i = 1; i <= m; ++i) {
            int k = block_of(c.alpha, i);
            IntSeq beta = c.alpha;
            beta[k] += j - 1;
            int s = sign_of(i + m * j + i * j);
            for (const auto& [fw, fv] : f[j])
                for (const auto& [w2, v] : op.compose(fw, slot(i, k), c.w)) r.add(SeqCell{beta, w2}, s * fv * v);
        }
    }
    return r;
}

std::vector<SeqCell> basis_of(int n, int lo_level, int max_level, int max_rdim, int extra_arity)
{
    std::vector<SeqCell> out;
    for (int m = lo_level; m <= max_level; ++m)
        for (const auto& a : compositions(n, m))
            for (int d = 0; d <= max_rdim; ++d)
                for (auto& w : bar_basis(m + extra_arity, d, false)) out.push_back(SeqCell{a, std::move(w)});
    return out;
}

// Cells inserted in (dim, cell) order so equal complexes compare equal.
GradedComplex complex_on(std::vector<SeqCell> cells, const std::function<SeqChain(const SeqCell&)>& d)
{
    std::sort(cells.begin(), cells.end(), [](const SeqCell& a, const SeqCell& b) {
        int da = cell_dim(a), db = cell_dim(b);
        if (da != db) return da < db;
        return a < b;
    });
    GradedComplex g;
    for (const auto& c : cells) g.add_cell(seq_cell_name(c), cell_dim(c));
    for (const auto& c : cells) {
        Chain b;
        for (const auto& [y, v] : d(c)) {
            std::string ny = seq_cell_name(y);
            if (g.has(ny)) b.add(ny, v);
        }
        g.set_boundary(seq_cell_name(c), std::move(b));
    }
    return g;
}

using CellMap = std::map<std::string, SeqCell>;

RightMappingSequence build_z_sequence(SOperad& op, int n, int max_level, int max_rdim, std::shared_ptr<CellMap> cells)
{
    RightMappingSequence s;
    s.levels.resize(max_level + 1);
    for (int m = 1; m <= max_level; ++m) {
        GradedComplex& lv = s.levels[m];
        std::vector<SeqCell> here = basis_of(n, m, m, max_rdim, 0);
        for (const auto& c : here) {
            std::string nm = seq_cell_name(c);
            lv.add_cell(nm, c.w.dim());
            (*cells)[nm] = c;
        }
        for (const auto& c : here) {
            Chain b;
            for (const auto& [w2, v] : differential(c.w)) b.add(seq_cell_name(SeqCell{c.alpha, w2}), v);
            lv.set_boundary(seq_cell_name(c), std::move(b));
        }
    }
    s.max_j = kAInftyMax - 2;
    s.f = [&op, cells](int, int j, const std::string& x) {
        Chain r;
        const SeqCell& c = cells->at(x);
        const RChain& f = op.ainfty_cached(kAInftyMax)[j + 2];
        if (f.empty()) return r;
        int offset = 0;
        for (std::size_t k = 0; k < c.alpha.size(); ++k) {
            IntSeq beta = c.alpha;
            beta[k] += j + 1;
            for (int b = 1; b <= c.alpha[k]; ++b) {
                int s = sign_of(offset * (j + 1) + (2 * b + j) * (j + 1) / 2);
                for (const auto& [fw, fv] : f)
                    for (const auto& [w2, v] : op.compose(fw, offset + b, c.w))
                        r.add(seq_cell_name(SeqCell{beta, w2}), s * fv * v);
            }
            offset += c.alpha[k];
        }
        return r;
    };
    return s;
}

// Sign of permuting desuspended letters only; flags[p] marks source position p as a letter.
int letter_parity(const Perm& p, const std::vector<bool>& flags)
{
    int inv = 0;
    for (int a = 0; a < p.size(); ++a)
        for (int b = a + 1; b < p.size(); ++b)
            if (flags[a] && flags[b] && p[a] > p[b]) ++inv;
    return inv & 1;
}

}  // namespace

int cell_level(const SeqCell& c) { return seq_sum(c.alpha); }
int cell_dim(const SeqCell& c) { return c.w.dim() - cell_level(c); }

std::string seq_cell_name(const SeqCell& c)
{
    std::string s = "(";
    for (std::size_t i = 0; i < c.alpha.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c.alpha[i]);
    }
    return s + ")" + c.w.to_string();
}

std::string to_string(const SeqChain& c)
{
    if (c.empty()) return "0";
    std::string s;
    for (const auto& [x, v] : c) {
        if (!s.empty()) s += v < 0 ? " - " : " + ";
        else if (v < 0) s += "-";
        Int a = v < 0 ? Int(-v) : v;
        if (a != 1) s += a.str() + "*";
        s += seq_cell_name(x);
    }
    return s;
}

SeqChain level_part(const SeqChain& c, int level)
{
    SeqChain r;
    for (const auto& [x, v] : c)
        if (cell_level(x) == level) r.add(x, v);
    return r;
}

int block_of(const IntSeq& alpha, int i)
{
    int acc = 0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        acc += alpha[k];
        if (i >= 1 && i <= acc) return static_cast<int>(k);
    }
    throw InputError("letter " + std::to_string(i) + " lies outside the blocks");
}

SeqChain z_boundary(SOperad& op, const SeqCell& c, int max_level)
{
    if (c.w.arity() != cell_level(c)) throw InputError("Z cell arity must equal |alpha|: " + seq_cell_name(c));
    return perturbed_boundary(op, c, max_level, [](int i, int) { return i; });
}

SeqChain z_boundary(SOperad& op, const SeqChain& c, int max_level)
{
    SeqChain r;
    for (const auto& [x, v] : c) r.add(z_boundary(op, x, max_level), v);
    return r;
}

SeqChain y_boundary(SOperad& op, const SeqCell& c, int max_level)
{
    if (c.w.arity() != cell_level(c) + static_cast<int>(c.alpha.size()))
        throw InputError("Y cell arity must equal n + |alpha|: " + seq_cell_name(c));
    return perturbed_boundary(op, c, max_level, [](int i, int k) { return i + k + 1; });
}

SeqChain y_boundary(SOperad& op, const SeqChain& c, int max_level)
{
    SeqChain r;
    for (const auto& [x, v] : c) r.add(y_boundary(op, x, max_level), v);
    return r;
}

SeqChain act_z(const Perm& sigma, const SeqChain& c)
{
    SeqChain r;
    for (const auto& [x, v] : c) {
        Perm b = block_permute(x.alpha, sigma);
        r.add(SeqCell{act_seq(sigma, x.alpha), act(b, x.w)}, v * b.parity());
    }
    return r;
}

SeqChain act_y(const Perm& sigma, const SeqChain& c)
{
    SeqChain r;
    for (const auto& [x, v] : c) {
        IntSeq wide = x.alpha;
        for (int& a : wide) ++a;
        Perm b = block_permute(wide, sigma);
        int s = block_permute(x.alpha, sigma).parity();
        r.add(SeqCell{act_seq(sigma, x.alpha), act(b, x.w)}, v * s);
    }
    return r;
}

std::vector<SeqCell> z_basis(int n, int max_level, int max_rdim) { return basis_of(n, 1, max_level, max_rdim, 0); }
std::vector<SeqCell> y_basis(int n, int max_level, int max_rdim) { return basis_of(n, 0, max_level, max_rdim, n); }

GradedComplex z_complex(SOperad& op, int n, int max_level, int max_rdim)
{
    return complex_on(z_basis(n, max_level, max_rdim), [&](const SeqCell& c) { return z_boundary(op, c, max_level); });
}

GradedComplex y_complex(SOperad& op, int n, int max_level, int max_rdim)
{
    return complex_on(y_basis(n, max_level, max_rdim), [&](const SeqCell& c) { return y_boundary(op, c, max_level); });
}

RightMappingSequence z_sequence(SOperad& op, int n, int max_level, int max_rdim)
{
    return build_z_sequence(op, n, max_level, max_rdim, std::make_shared<CellMap>());
}

GradedComplex z_telescope_complex(SOperad& op, int n, int max_level, int max_rdim)
{
    auto cells = std::make_shared<CellMap>();
    RightMappingSequence s = build_z_sequence(op, n, max_level, max_rdim, cells);
    GradedComplex t = telescope_complex(s, -max_level, max_rdim);
    auto eps = [](int m) { return sign_of(m * (m - 1) / 2); };
    std::map<SeqCell, SeqChain> bd;
    for (int d : t.dims())
        for (const auto& nm : t.basis(d)) {
            auto [m, x] = split_telescope_name(nm);
            SeqChain b;
            for (const auto& [y, v] : t.boundary(nm)) {
                auto [m2, y2] = split_telescope_name(y);
                b.add(cells->at(y2), v * eps(m) * eps(m2));
            }
            bd[cells->at(x)] = std::move(b);
        }
    std::vector<SeqCell> all;
    for (const auto& kv : bd) all.push_back(kv.first);
    return complex_on(all, [&](const SeqCell& c) { return bd.at(c); });
}

SeqChain t_product(SOperad& op, const RChain& top, const std::vector<SeqCell>& args, int max_level)
{
    const int k = static_cast<int>(args.size());
    if (k == 0) throw InputError("t_product needs at least one argument");
    const std::size_t n = args[0].alpha.size();
    std::vector<IntSeq> alphas;
    IntSeq alpha(n, 0);
    std::vector<RChain> us;
    for (const auto& a : args) {
        if (a.alpha.size() != n) throw InputError("t_product: sequences of different widths");
        if (a.w.arity() != cell_level(a)) throw InputError("t_product: not a Z cell: " + seq_cell_name(a));
        alphas.push_back(a.alpha);
        for (std::size_t s = 0; s < n; ++s) alpha[s] += a.alpha[s];
        us.emplace_back(a.w);
    }
    SeqChain r;
    if (max_level >= 0 && seq_sum(alpha) > max_level) return r;
    SignedPerm z = shuffle_Z(alphas);
    long long e0 = 0;
    long long xdims = 0;
    for (int i = 0; i < k; ++i) {
        xdims += cell_dim(args[i]);
        for (int l = i + 1; l < k; ++l) e0 += static_cast<long long>(cell_level(args[l])) * args[i].w.dim();
    }
    for (const auto& [tw, tv] : top) {
        if (tw.arity() != k) throw InputError("t_product: top arity differs from the number of arguments");
        int s = z.sign * sign_of(e0 + tw.dim() * xdims);
        for (const auto& [g, gv] : op.gamma(us, RChain(tw))) r.add(SeqCell{alpha, act(z.perm, g)}, tv * gv * s);
    }
    return r;
}

SeqChain z_mu2(SOperad& op, const SeqChain& a, const SeqChain& b, int max_level)
{
    const RChain& f2 = op.ainfty_cached(kAInftyMax)[2];
    SeqChain r;
    for (const auto& [x, xv] : a)
        for (const auto& [y, yv] : b) r.add(t_product(op, f2, {x, y}, max_level), xv * yv);
    return r;
}

AInftyAlgebra<SeqCell> z_algebra(SOperad& op, int max_level)
{
    AInftyAlgebra<SeqCell> a;
    a.degree = [](const SeqCell& c) { return cell_dim(c); };
    a.d = [&op, max_level](const SeqCell& c) { return z_boundary(op, c, max_level); };
    a.mu = [&op, max_level](const std::vector<SeqCell>& xs) {
        if (xs.size() != 2) return SeqChain{};
        return z_mu2(op, SeqChain(xs[0]), SeqChain(xs[1]), max_level);
    };
    a.max_arity = 2;
    return a;
}

// ---------------------------------------------------------------------------
// Twisting cochains

SeqChain TwistingCochainCn::operator()(const BarWord& x) const
{
    if (x.arity() != n) throw InputError("c_n: word of arity " + std::to_string(x.arity()));
    if (x.dim() > max_dim) throw RangeError("c_n computed through dim " + std::to_string(max_dim));
    Perm g = x.leader();
    auto it = canonical.find(x.with_leader(Perm(n)));
    if (it == canonical.end()) return {};
    return g.is_identity() ? it->second : act_z(g, it->second);
}

SeqChain TwistingCochainCn::operator()(const RChain& x) const
{
    SeqChain r;
    for (const auto& [w, v] : x) r.add((*this)(w), v);
    return r;
}

SeqChain cn_residual(SOperad& op, const TwistingCochainCn& c, const BarWord& x)
{
    SeqChain r = z_boundary(op, c(x), c.max_level);
    r += c(differential(x));
    for (const auto& [pr, v] : coproduct_R(x))
        r.add(z_mu2(op, c(pr.first), c(pr.second), c.max_level), v * sign_of(pr.first.dim()));
    return r;
}

TwistingCochainCn compute_cn(SOperad& op, int n, int max_dim, int max_level)
{
    if (n < 1) throw InputError("c_n needs n >= 1");
    if (max_level < 1) throw InputError("c_n needs at least one level");
    TwistingCochainCn c;
    c.n = n;
    c.max_dim = max_dim;
    c.max_level = max_level;
    SeqChain base;
    for (int k = 0; k < n; ++k) {
        IntSeq e(n, 0);
        e[k] = 1;
        base.add(SeqCell{e, BarWord::unit(1)}, 1);
    }
    c.canonical[BarWord::unit(n)] = base;
    for (int d = 0; d <= max_dim; ++d)
        for (const auto& x : bar_basis(n, d, true)) {
            SeqChain& cx = c.canonical[x];
            for (int m = d == 0 ? 2 : 1; m <= max_level; ++m) {
                SeqChain res = cn_residual(op, c, x);
                for (const auto& [y, v] : res)
                    if (cell_level(y) < m)
                        throw MathError("c_n: unsolved level " + std::to_string(cell_level(y)) + " at " + x.to_string());
                for (const auto& [y, v] : level_part(res, m))
                    for (const auto& [w2, pv] : phi(y.w)) cx.add(SeqCell{y.alpha, w2}, -sign_of(m) * v * pv);
            }
            SeqChain res = cn_residual(op, c, x);
            if (!res.empty()) throw MathError("c_n: residual " + to_string(res) + " at " + x.to_string());
        }
    return c;
}

Lin<std::vector<SeqCell>> bar_cn(const TwistingCochainCn& c, const BarWord& x, int max_len)
{
    std::function<RRChain(const BarWord&)> delta = [](const BarWord& w) { return coproduct_R(w); };
    std::function<SeqChain(const BarWord&)> tw = [&c](const BarWord& w) { return c(w); };
    Int counit = x.dim() == 0 ? 1 : 0;
    return bar_twist<BarWord, SeqCell>(x, counit, delta, tw, max_len);
}

// ---------------------------------------------------------------------------
// Compositions

ZWordChain barz_compose(SOperad& op, int n, const ZWord& a, int i, const ZWord& b)
{
    for (const auto& r : a)
        if (static_cast<int>(r.alpha.size()) != n || r.w.arity() != cell_level(r))
            throw InputError("barz_compose: letter " + seq_cell_name(r) + " is not in Z_" + std::to_string(n));
    ZWordChain out;
    if (b.empty()) {
        if (a.empty()) out.add(ZWord{}, 1);
        return out;
    }
    const std::size_t m = b[0].alpha.size();
    for (const auto& s : b)
        if (s.alpha.size() != m || s.w.arity() != cell_level(s))
            throw InputError("barz_compose: malformed letter " + seq_cell_name(s));
    if (i < 1 || i > static_cast<int>(m)) throw InputError("barz_compose: slot out of range");
    int total = 0;
    for (const auto& s : b) total += s.alpha[i - 1];
    if (total != static_cast<int>(a.size())) return out;

    // Letters of a move past the letters of b that precede their row.
    long long reorder = 0;
    for (int u = 0, t = 0, used = 0; u < static_cast<int>(a.size()); ++u) {
        while (u >= used + b[t].alpha[i - 1]) used += b[t++].alpha[i - 1];
        for (int s = 0; s < t; ++s) reorder += static_cast<long long>(cell_dim(a[u]) + 1) * (cell_dim(b[s]) + 1);
    }
    ZWordChain acc;
    acc.add(ZWord{}, sign_of(reorder));
    int tilde = 0;
    for (const auto& s : b) {
        const int hat = [&] {
            int h = 0;
            for (int z = 0; z < i - 1; ++z) h += s.alpha[z];
            return h;
        }();
        const int cnt = s.alpha[i - 1];
        const int M = cell_level(s);
        std::vector<const SeqCell*> group;
        for (int u = 0; u < cnt; ++u) group.push_back(&a[tilde + u]);
        tilde += cnt;

        RChain cur(s.w);
        for (int u = cnt - 1; u >= 0; --u) cur = op.compose(RChain(group[u]->w), hat + u + 1, cur);
        long long e = 0;
        int after = M - hat - cnt;
        for (int u = cnt - 1; u >= 0; --u) {
            e += static_cast<long long>(cell_dim(*group[u]) + 1) * (hat + u);
            e += static_cast<long long>(group[u]->w.dim()) * after;
            after += cell_level(*group[u]);
        }
        IntSeq beta(s.alpha.begin(), s.alpha.begin() + (i - 1));
        IntSeq col(n, 0);
        for (const auto* g : group)
            for (int v = 0; v < n; ++v) col[v] += g->alpha[v];
        beta.insert(beta.end(), col.begin(), col.end());
        beta.insert(beta.end(), s.alpha.begin() + i, s.alpha.end());
        Perm p(seq_sum(beta));
        if (cnt > 0) {
            std::vector<IntSeq> lambda;
            for (const auto* g : group) lambda.push_back(g->alpha);
            SignedPerm z = shuffle_Z(lambda);
            if (z.sign < 0) ++e;
            p = embed(z.perm, hat, seq_sum(beta));
        }
        SeqChain row;
        for (const auto& [w, v] : cur) row.add(SeqCell{beta, act(p, w)}, v * sign_of(e));

        ZWordChain next;
        for (const auto& [pre, pv] : acc)
            for (const auto& [x, xv] : row) {
                ZWord w = pre;
                w.push_back(x);
                next.add(std::move(w), pv * xv);
            }
        acc = std::move(next);
        if (acc.empty()) break;
    }
    return acc;
}

SeqChain y_star_compose(SOperad& op, const SeqCell& y1, const ZWord& z1, int i, const SeqCell& y2)
{
    const int j = static_cast<int>(y1.alpha.size());
    const int k = static_cast<int>(y2.alpha.size());
    if (y1.w.arity() != j + cell_level(y1) || y2.w.arity() != k + cell_level(y2))
        throw InputError("y_star_compose: not a Y cell");
    for (const auto& v : z1)
        if (static_cast<int>(v.alpha.size()) != j || v.w.arity() != cell_level(v))
            throw InputError("y_star_compose: letter " + seq_cell_name(v) + " is not in Z_" + std::to_string(j));
    if (i < 1 || i > k) throw InputError("y_star_compose: slot out of range");
    SeqChain out;
    const int r = static_cast<int>(z1.size());
    if (r != y2.alpha[i - 1]) return out;

    int before = 0, after = 0;
    for (int l = 0; l < i - 1; ++l) before += y2.alpha[l];
    for (int l = i; l < k; ++l) after += y2.alpha[l];
    const int mu = i + before;

    RChain cur(y2.w);
    for (int t = r - 1; t >= 0; --t) cur = op.compose(RChain(z1[t].w), mu + 1 + t, cur);
    cur = op.compose(RChain(y1.w), mu, cur);

    long long e = static_cast<long long>(cell_dim(y1)) * before;
    int tail = after;
    for (int t = r - 1; t >= 0; --t) {
        e += static_cast<long long>(cell_dim(z1[t]) + 1) * (before + t);
        e += static_cast<long long>(z1[t].w.dim()) * tail;
        tail += cell_level(z1[t]);
    }
    e += static_cast<long long>(y1.w.dim()) * tail;

    std::vector<IntSeq> rows;
    std::vector<bool> flags;
    IntSeq first;
    for (int s = 0; s < j; ++s) {
        first.push_back(1);
        first.push_back(y1.alpha[s]);
        flags.push_back(false);
        flags.insert(flags.end(), y1.alpha[s], true);
    }
    rows.push_back(first);
    for (const auto& v : z1) {
        IntSeq row;
        for (int s = 0; s < j; ++s) {
            row.push_back(0);
            row.push_back(v.alpha[s]);
        }
        flags.insert(flags.end(), cell_level(v), true);
        rows.push_back(row);
    }
    SignedPerm z = shuffle_Z(rows);
    e += letter_parity(z.perm, flags);

    IntSeq gamma(y2.alpha.begin(), y2.alpha.begin() + (i - 1));
    for (int s = 0; s < j; ++s) {
        int g = y1.alpha[s];
        for (const auto& v : z1) g += v.alpha[s];
        gamma.push_back(g);
    }
    gamma.insert(gamma.end(), y2.alpha.begin() + i, y2.alpha.end());
    const int arity = static_cast<int>(gamma.size()) + seq_sum(gamma);
    Perm p = embed(z.perm, mu - 1, arity);
    for (const auto& [w, v] : cur) out.add(SeqCell{gamma, act(p, w)}, v * sign_of(e));
    return out;
}

}  // namespace einf
