#include "einf/barcobar.hpp"

#include <algorithm>

namespace einf {

// ---------------------------------------------------------------------------
// A-infinity coalgebras

AInftyCoalgebra ainfty_of_mcoalgebra(std::shared_ptr<MCoalgebra> c, SOperad& op, int max_arity)
{
    if (max_arity < 2) throw RangeError("A-infinity structure needs arity >= 2");
    auto f = std::make_shared<std::vector<RChain>>(op.ainfty_images(max_arity));
    AInftyCoalgebra a;
    a.complex = c->complex();
    a.basepoint = c->basepoint();
    a.max_arity = max_arity;
    a.delta = [c, f](int j, const std::string& x) {
        if (j < 2 || j >= static_cast<int>(f->size())) return TChain{};
        return c->structure(j, (*f)[j], Chain(x));
    };
    return a;
}

namespace {

TChain delta_on(const AInftyCoalgebra& c, int j, const Chain& x)
{
    TChain r;
    if (j > c.max_arity) return r;
    for (const auto& [y, v] : x) r.add(c.delta(j, y), v);
    return r;
}

int letters_dim(const GradedComplex& c, const Word& w, std::size_t upto)
{
    int d = 0;
    for (std::size_t i = 0; i < upto; ++i) d += c.dim(w[i]);
    return d;
}

// (1^{s-1} (x) Delta_k (x) 1) applied to w, Koszul signed (Delta_k has degree k - 2).
TChain delta_in_slot(const AInftyCoalgebra& c, int k, int s, const TChain& t)
{
    TChain r;
    for (const auto& [w, v] : t) {
        int sg = sign_of(static_cast<long long>(k - 2) * letters_dim(c.complex, w, s - 1));
        for (const auto& [u, uv] : c.delta(k, w[s - 1])) {
            Word out(w.begin(), w.begin() + (s - 1));
            out.insert(out.end(), u.begin(), u.end());
            out.insert(out.end(), w.begin() + s, w.end());
            r.add(std::move(out), v * uv * sg);
        }
    }
    return r;
}

}  // namespace

std::vector<std::string> check_ainfty_coalgebra(const AInftyCoalgebra& c, int max_n, int max_dim)
{
    std::vector<std::string> bad;
    for (int n = 2; n <= std::min(max_n, c.max_arity); ++n) {
        std::vector<const GradedComplex*> fac(n, &c.complex);
        for (int d = c.complex.lo(); d <= std::min(max_dim, c.complex.hi()); ++d)
            for (const auto& x : c.complex.basis(d)) {
                TChain r = tensor_d(c.delta(n, x), fac);
                r.add(delta_on(c, n, c.complex.boundary(x)), -sign_of(n));
                for (int k = 2; k <= n - 1; ++k)
                    for (int lambda = 0; lambda <= n - k; ++lambda) {
                        int s = n - k - lambda + 1;
                        r.add(delta_in_slot(c, k, s, c.delta(n - k + 1, x)), sign_of(k + lambda + k * lambda));
                    }
                if (!r.empty()) bad.push_back("n=" + std::to_string(n) + " at " + x);
            }
    }
    return bad;
}

GradedComplex reduced_complex(const GradedComplex& c, const std::string& basepoint)
{
    GradedComplex r;
    for (int d : c.dims())
        for (const auto& x : c.basis(d))
            if (x != basepoint) r.add_cell(x, d);
    for (int d : c.dims())
        for (const auto& x : c.basis(d)) {
            if (x == basepoint) continue;
            Chain b;
            for (const auto& [y, v] : c.boundary(x))
                if (y != basepoint) b.add(y, v);
            r.set_boundary(x, std::move(b));
        }
    return r;
}

bool is_reduced(const GradedComplex& c) { return c.rank(0) == 1 && c.lo() >= 0; }

// ---------------------------------------------------------------------------
// Cobar

std::string cobar_name(const Word& w)
{
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += w[i];
    }
    return s + "]";
}

int cobar_degree(const GradedComplex& reduced, const Word& w)
{
    int d = 0;
    for (const auto& x : w) d += reduced.dim(x) - 1;
    return d;
}

namespace {

bool has_basepoint(const Word& w, const std::string& b) { return std::find(w.begin(), w.end(), b) != w.end(); }

// D(dc) as a chain of words.
TChain cobar_d_letter(const AInftyCoalgebra& c, const GradedComplex& reduced, const std::string& x)
{
    TChain r;
    for (const auto& [y, v] : reduced.boundary(x)) r.add(Word{y}, -v);
    for (int i = 2; i <= c.max_arity; ++i)
        for (const auto& [w, v] : c.delta(i, x)) {
            if (has_basepoint(w, c.basepoint)) continue;
            long long e = 1;
            for (int l = 0; l < i; ++l) e += static_cast<long long>(i - 1 - l) * reduced.dim(w[l]);
            r.add(w, v * sign_of(e));
        }
    return r;
}

void enumerate_words(const GradedComplex& reduced, std::size_t max_len, int lo, int hi,
                     const std::function<void(const Word&, int)>& emit)
{
    std::vector<std::pair<std::string, int>> letters;
    int min_letter = 0;
    bool first = true;
    for (int d : reduced.dims())
        for (const auto& x : reduced.basis(d)) {
            letters.emplace_back(x, d - 1);
            min_letter = first ? d - 1 : std::min(min_letter, d - 1);
            first = false;
        }
    Word w;
    std::function<void(int)> rec = [&](int deg) {
        if (deg >= lo && deg <= hi) emit(w, deg);
        if (w.size() == max_len) return;
        std::size_t room = max_len - w.size();
        for (const auto& [x, dx] : letters) {
            // remaining letters can lower the degree by at most -min_letter each
            int best = deg + dx + static_cast<int>(room - 1) * std::min(0, min_letter);
            if (best > hi) continue;
            w.push_back(x);
            rec(deg + dx);
            w.pop_back();
        }
    };
    rec(0);
}

CobarComplex materialize(const AInftyCoalgebra& c, int max_dim, int max_len, std::size_t word_cap, int lo)
{
    CobarComplex r;
    r.reduced = reduced_complex(c.complex, c.basepoint);
    r.max_dim = max_dim;
    r.max_len = max_len;
    enumerate_words(r.reduced, word_cap, lo, max_dim + 1, [&](const Word& w, int d) {
        std::string n = cobar_name(w);
        r.complex.add_cell(n, d);
        r.words.emplace(n, w);
    });
    for (const auto& [n, w] : r.words) {
        Chain b;
        for (const auto& [u, v] : cobar_d(c, r.reduced, w, max_len)) {
            std::string un = cobar_name(u);
            if (!r.complex.has(un)) throw MathError("cobar boundary leaves the materialized range at " + n);
            b.add(un, v);
        }
        r.complex.set_boundary(n, std::move(b));
    }
    return r;
}

}  // namespace

TChain cobar_d(const AInftyCoalgebra& c, const GradedComplex& reduced, const Word& w, int max_len)
{
    TChain r;
    int before = 0;
    for (std::size_t p = 0; p < w.size(); ++p) {
        int sg = sign_of(before);
        for (const auto& [u, v] : cobar_d_letter(c, reduced, w[p])) {
            if (max_len >= 0 && static_cast<int>(w.size() - 1 + u.size()) > max_len) continue;
            Word out(w.begin(), w.begin() + p);
            out.insert(out.end(), u.begin(), u.end());
            out.insert(out.end(), w.begin() + p + 1, w.end());
            r.add(std::move(out), v * sg);
        }
        before += reduced.dim(w[p]) - 1;
    }
    return r;
}

CobarComplex cobar(const AInftyCoalgebra& c, int max_dim)
{
    if (!is_reduced(c.complex)) throw InputError("cobar needs a reduced coalgebra (one vertex); use truncation");
    if (c.complex.rank(1) != 0) throw InputError("cobar needs C_1 = 0; use truncation");
    // letters have degree >= 1, so words of degree <= max_dim + 1 have at most that many letters
    return materialize(c, max_dim, -1, static_cast<std::size_t>(std::max(0, max_dim + 1)), 0);
}

CobarComplex truncated_cobar(const AInftyCoalgebra& c, int max_len, int max_dim)
{
    if (max_len < 0) throw RangeError("truncation length must be >= 0");
    return materialize(c, max_dim, max_len, static_cast<std::size_t>(max_len), -max_len);
}

CobarComplex make_cobar(const AInftyCoalgebra& c, int max_dim, int max_len)
{
    return max_len < 0 ? cobar(c, max_dim) : truncated_cobar(c, max_len, max_dim);
}

CobarSequence cobar_sequence(const AInftyCoalgebra& c, int levels, int max_dim)
{
    auto reduced = std::make_shared<GradedComplex>(reduced_complex(c.complex, c.basepoint));
    CobarSequence out;
    out.seq.levels.resize(levels + 1);
    out.words.resize(levels + 1);
    out.seq.levels[0].add_cell("1", 0);
    out.words[0]["1"] = Word{};
    for (int i = 1; i <= levels; ++i) {
        std::vector<const GradedComplex*> fac(i, reduced.get());
        int lo = std::min(0, reduced->lo()) * i;
        TensorComplex t = tensor_complex(fac, lo, max_dim + 1 + i);
        out.seq.levels[i] = std::move(t.complex);
        out.words[i] = std::move(t.words);
    }
    auto words = std::make_shared<std::vector<std::map<std::string, Word>>>(out.words);
    AInftyCoalgebra ca = c;
    out.seq.max_j = c.max_arity - 2;
    out.seq.f = [ca, reduced, words](int i, int j, const std::string& x) {
        Chain r;
        if (i == 0) return r;
        const Word& w = words->at(i).at(x);
        int before = 0;
        for (int beta = 1; beta <= i; ++beta) {
            int sg = sign_of((2 * beta + j) * (j + 1) / 2 + static_cast<long long>(j) * before);
            for (const auto& [u, v] : ca.delta(j + 2, w[beta - 1])) {
                if (has_basepoint(u, ca.basepoint)) continue;
                Word o(w.begin(), w.begin() + (beta - 1));
                o.insert(o.end(), u.begin(), u.end());
                o.insert(o.end(), w.begin() + beta, w.end());
                r.add(join_word(o), v * sg);
            }
            before += reduced->dim(w[beta - 1]);
        }
        return r;
    };
    return out;
}

TChain telescope_to_cobar(const CobarSequence& s, const GradedComplex& reduced, const std::string& telescope_cell)
{
    auto [n, x] = split_telescope_name(telescope_cell);
    const Word& w = s.words.at(n).at(x);
    long long e = static_cast<long long>(n) * (n - 1) / 2;
    for (int l = 0; l < n; ++l) e += static_cast<long long>(n - 1 - l) * reduced.dim(w[l]);
    return TChain(w, sign_of(e));
}

// ---------------------------------------------------------------------------
// Twisted tensor products

CobarTwist canonical_twist(const AInftyCoalgebra& c)
{
    std::string b = c.basepoint;
    return [b](const std::string& x) { return x == b ? TChain{} : TChain(Word{x}); };
}

namespace {

// mu^{i-1} x^{(x) i} on one word of C, Koszul signed, truncated at max_len.
TChain twist_product(const GradedComplex& c, const CobarTwist& x, const Word& w, int max_len)
{
    TChain acc(Word{}, 1);
    int before = 0;
    for (const auto& ci : w) {
        TChain xi = x(ci);
        TChain next;
        int sg = sign_of(before);
        for (const auto& [pre, pv] : acc)
            for (const auto& [y, yv] : xi) {
                if (max_len >= 0 && static_cast<int>(pre.size() + y.size()) > max_len) continue;
                Word o = pre;
                o.insert(o.end(), y.begin(), y.end());
                next.add(std::move(o), pv * yv * sg);
            }
        acc = std::move(next);
        if (acc.empty()) break;
        before += c.dim(ci);
    }
    return acc;
}

TChain cobar_d_chain(const AInftyCoalgebra& c, const CobarComplex& a, const TChain& t)
{
    TChain r;
    for (const auto& [w, v] : t) r.add(cobar_d(c, a.reduced, w, a.max_len), v);
    return r;
}

}  // namespace

std::vector<std::string> check_twisting_cochain(const AInftyCoalgebra& c, const CobarComplex& a, const CobarTwist& x,
                                                int max_dim)
{
    std::vector<std::string> bad;
    for (int d = c.complex.lo(); d <= std::min(max_dim, c.complex.hi()); ++d)
        for (const auto& y : c.complex.basis(d)) {
            if (y == c.basepoint) continue;
            TChain r = cobar_d_chain(c, a, x(y));
            for (const auto& [z, v] : c.complex.boundary(y)) r.add(x(z), v);
            for (int i = 2; i <= c.max_arity; ++i)
                for (const auto& [w, v] : c.delta(i, y)) r.add(twist_product(c.complex, x, w, a.max_len), v);
            if (!r.empty()) bad.push_back(y);
        }
    return bad;
}

TwistedTensor twisted_tensor(const AInftyCoalgebra& c, const CobarComplex& a, const CobarTwist& x, int max_dim)
{
    auto bad = check_twisting_cochain(c, a, x, max_dim + 1);
    if (!bad.empty()) throw MathError("twisting cochain identity fails at " + bad.front());
    TwistedTensor t;
    auto name = [](const std::string& y, const Word& w) { return y + " (x) " + cobar_name(w); };
    for (int d = c.complex.lo(); d <= c.complex.hi(); ++d)
        for (const auto& y : c.complex.basis(d))
            for (const auto& [n, w] : a.words) {
                int td = d + a.complex.dim(n);
                if (td > max_dim + 1) continue;
                std::string tn = name(y, w);
                t.complex.add_cell(tn, td);
                t.cells.emplace(tn, std::make_pair(y, w));
            }
    for (const auto& [tn, cell] : t.cells) {
        const auto& [y, w] = cell;
        Lin<std::pair<std::string, Word>> b;
        for (const auto& [z, v] : c.complex.boundary(y)) b.add({z, w}, v);
        for (const auto& [u, v] : cobar_d(c, a.reduced, w, a.max_len)) b.add({y, u}, v * sign_of(c.complex.dim(y)));
        for (int i = 2; i <= c.max_arity; ++i)
            for (const auto& [dw, v] : c.delta(i, y)) {
                Word tail(dw.begin() + 1, dw.end());
                for (const auto& [p, pv] : twist_product(c.complex, x, tail, a.max_len)) {
                    if (a.max_len >= 0 && static_cast<int>(p.size() + w.size()) > a.max_len) continue;
                    Word o = p;
                    o.insert(o.end(), w.begin(), w.end());
                    // x^{(x) (i-1)} passes the first factor
                    int sg = sign_of(static_cast<long long>(i - 1) * c.complex.dim(dw[0]));
                    b.add({dw[0], o}, v * pv * sg);
                }
            }
        Chain bc;
        for (const auto& [k, v] : b) {
            std::string n = name(k.first, k.second);
            if (!t.complex.has(n)) throw MathError("twisted boundary leaves the materialized range at " + tn);
            bc.add(n, v);
        }
        t.complex.set_boundary(tn, std::move(bc));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Bar constructions

std::string bar_name(const std::vector<std::string>& w)
{
    std::string s = "<";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "|";
        s += w[i];
    }
    return s + ">";
}

BarComplex bar_complex(const AInftyAlgebra<std::string>& a, const std::vector<std::string>& reduced_basis, int max_len)
{
    BarComplex r;
    std::vector<std::vector<std::string>> level{{}};
    for (int len = 0; len <= max_len; ++len) {
        std::vector<std::vector<std::string>> next;
        for (const auto& w : level) {
            std::string n = bar_name(w);
            r.complex.add_cell(n, bar_degree(a, w));
            r.words.emplace(n, w);
            if (len < max_len)
                for (const auto& x : reduced_basis) {
                    auto w2 = w;
                    w2.push_back(x);
                    next.push_back(std::move(w2));
                }
        }
        level = std::move(next);
    }
    for (const auto& [n, w] : r.words) {
        Chain b;
        for (const auto& [u, v] : bar_d(a, w)) b.add(bar_name(u), v);
        r.complex.set_boundary(n, std::move(b));
    }
    return r;
}

AInftyAlgebra<std::string> cochain_ainfty_algebra(const AInftyCoalgebra& c)
{
    struct Index {
        GradedComplex complex;
        std::map<std::string, Chain> cob;
        std::map<Word, Chain> mu;  // word of cells -> sum of y with that coefficient in Delta_j y
    };
    auto idx = std::make_shared<Index>();
    idx->complex = c.complex;
    const std::string& b = c.basepoint;
    for (int d : c.complex.dims())
        for (const auto& y : c.complex.basis(d)) {
            for (const auto& [x, v] : c.complex.boundary(y))
                if (x != b) idx->cob[x].add(y, -sign_of(c.complex.dim(x)) * v);
            for (int j = 2; j <= c.max_arity; ++j)
                for (const auto& [w, v] : c.delta(j, y)) {
                    if (has_basepoint(w, b)) continue;
                    long long e = 0;
                    for (std::size_t i = 0; i < w.size(); ++i)
                        for (std::size_t l = i + 1; l < w.size(); ++l)
                            e += static_cast<long long>(c.complex.dim(w[i])) * c.complex.dim(w[l]);
                    if (y != b) idx->mu[w].add(y, v * sign_of(e));
                }
        }
    AInftyAlgebra<std::string> a;
    a.max_arity = c.max_arity;
    a.degree = [idx](const std::string& x) { return -idx->complex.dim(x); };
    a.d = [idx](const std::string& x) {
        auto it = idx->cob.find(x);
        return it == idx->cob.end() ? Chain{} : it->second;
    };
    a.mu = [idx](const std::vector<std::string>& w) {
        auto it = idx->mu.find(w);
        return it == idx->mu.end() ? Chain{} : it->second;
    };
    return a;
}

Int bar_cobar_pairing(const GradedComplex& c, const std::vector<std::string>& bar_word, const Word& cobar_word)
{
    if (bar_word != cobar_word) return 0;
    long long e = 0;
    for (std::size_t i = 0; i < bar_word.size(); ++i) {
        e += c.dim(bar_word[i]);
        for (std::size_t l = i + 1; l < bar_word.size(); ++l)
            e += static_cast<long long>(1 - c.dim(bar_word[l])) * (c.dim(bar_word[i]) - 1);
    }
    return sign_of(e);
}

std::vector<std::string> check_bar_dual_cobar(const AInftyCoalgebra& c, int max_len)
{
    std::vector<std::string> bad;
    auto a = cochain_ainfty_algebra(c);
    GradedComplex reduced = reduced_complex(c.complex, c.basepoint);
    std::vector<std::string> basis;
    for (int d : reduced.dims())
        for (const auto& x : reduced.basis(d)) basis.push_back(x);
    BarComplex bar = bar_complex(a, basis, max_len);
    for (const auto& [bn, bw] : bar.words) {
        const int bd = bar.complex.dim(bn);
        auto db = bar_d(a, bw);
        // cobar words of length <= max_len are the same letter sequences as bar words
        for (const auto& [wn, w] : bar.words) {
            if (cobar_degree(reduced, w) != 1 - bd) continue;
            Int lhs = 0, rhs = 0;
            for (const auto& [u, v] : db) lhs += v * bar_cobar_pairing(c.complex, u, w);
            for (const auto& [u, v] : cobar_d(c, reduced, w)) rhs += v * bar_cobar_pairing(c.complex, bw, u);
            rhs *= -sign_of(bd);
            if (lhs != rhs) bad.push_back(bn + " on " + cobar_name(w));
        }
    }
    return bad;
}

}  // namespace einf
