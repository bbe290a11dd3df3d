#include "einf/exactchain.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace einf {

using nlohmann::json;

void GradedComplex::add_cell(const std::string& name, int dim, Chain boundary)
{
    if (cells_.count(name)) throw InputError("duplicate cell name: " + name);
    auto& list = bases_[dim];
    cells_.emplace(name, Cell{dim, list.size(), std::move(boundary)});
    list.push_back(name);
}

void GradedComplex::set_boundary(const std::string& name, Chain boundary)
{
    auto it = cells_.find(name);
    if (it == cells_.end()) throw RangeError("unknown cell: " + name);
    it->second.boundary = std::move(boundary);
}

int GradedComplex::dim(const std::string& name) const
{
    auto it = cells_.find(name);
    if (it == cells_.end()) throw RangeError("unknown cell: " + name);
    return it->second.dim;
}

const Chain& GradedComplex::boundary(const std::string& name) const
{
    auto it = cells_.find(name);
    if (it == cells_.end()) throw RangeError("unknown cell: " + name);
    return it->second.boundary;
}

Chain GradedComplex::d(const Chain& c) const
{
    Chain r;
    for (const auto& [k, v] : c) r.add(boundary(k), v);
    return r;
}

int GradedComplex::dim_of(const Chain& c, int fallback) const
{
    if (c.empty()) return fallback;
    int d = dim(c.begin()->first);
    for (const auto& kv : c)
        if (dim(kv.first) != d) throw MathError("inhomogeneous chain");
    return d;
}

const std::vector<std::string>& GradedComplex::basis(int d) const
{
    static const std::vector<std::string> empty;
    auto it = bases_.find(d);
    return it == bases_.end() ? empty : it->second;
}

std::size_t GradedComplex::index_of(const std::string& name) const
{
    auto it = cells_.find(name);
    if (it == cells_.end()) throw RangeError("unknown cell: " + name);
    return it->second.index;
}

std::vector<int> GradedComplex::dims() const
{
    std::vector<int> r;
    for (const auto& kv : bases_) r.push_back(kv.first);
    return r;
}

std::vector<std::string> GradedComplex::check_d2() const
{
    std::vector<std::string> bad;
    for (const auto& [d, names] : bases_)
        for (const auto& n : names) {
            const Chain& b = boundary(n);
            for (const auto& kv : b)
                if (dim(kv.first) != d - 1) {
                    bad.push_back(n);
                    goto next;
                }
            if (!this->d(b).empty()) bad.push_back(n);
        next:;
        }
    return bad;
}

static json int_to_json(const Int& v)
{
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return json(static_cast<long long>(v));
    return json(v.str());
}

static Int int_from_json(const json& j)
{
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw InputError("coefficient must be an integer");
}

json GradedComplex::to_json() const
{
    json dims = json::object();
    json bd = json::object();
    for (const auto& [d, names] : bases_) {
        dims[std::to_string(d)] = names;
        for (const auto& n : names) {
            json terms = json::array();
            for (const auto& [k, v] : boundary(n)) terms.push_back(json::array({int_to_json(v), k}));
            bd[n] = terms;
        }
    }
    return json{{"dims", dims}, {"boundary", bd}};
}

GradedComplex GradedComplex::from_json(const json& j)
{
    GradedComplex c;
    if (!j.is_object() || !j.contains("dims")) throw InputError("complex JSON needs \"dims\"");
    std::vector<std::pair<int, json>> ordered;
    for (const auto& [key, names] : j.at("dims").items()) {
        int d = 0;
        try {
            d = std::stoi(key);
        } catch (...) {
            throw InputError("bad dimension key: " + key);
        }
        ordered.emplace_back(d, names);
    }
    std::sort(ordered.begin(), ordered.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (const auto& [d, names] : ordered)
        for (const auto& n : names) c.add_cell(n.get<std::string>(), d);
    if (j.contains("boundary"))
        for (const auto& [name, terms] : j.at("boundary").items()) {
            Chain b;
            for (const auto& t : terms) {
                if (!t.is_array() || t.size() != 2) throw InputError("boundary term of " + name + " must be [coef, name]");
                std::string target = t[1].get<std::string>();
                if (!c.has(target)) throw InputError("boundary of " + name + " refers to unknown " + target);
                b.add(target, int_from_json(t[0]));
            }
            c.set_boundary(name, std::move(b));
        }
    return c;
}

bool GradedComplex::operator==(const GradedComplex& o) const
{
    if (bases_ != o.bases_) return false;
    for (const auto& [n, cell] : cells_)
        if (o.boundary(n) != cell.boundary) return false;
    return true;
}

GradedComplex suspend(const GradedComplex& c, int k)
{
    GradedComplex r;
    for (int d : c.dims())
        for (const auto& n : c.basis(d)) r.add_cell(n, d + k);
    Int s = sign_of(k);
    for (int d : c.dims())
        for (const auto& n : c.basis(d)) r.set_boundary(n, s * c.boundary(n));
    return r;
}

GradedMap identity_map()
{
    return GradedMap{0, [](const std::string& s) { return Chain(s); }};
}

int word_dim(const Word& w, const std::vector<const GradedComplex*>& factors)
{
    int d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += factors[i]->dim(w[i]);
    return d;
}

TChain apply_tensor(const std::vector<GradedMap>& fs, const Word& w,
                    const std::vector<const GradedComplex*>& factors)
{
    if (fs.size() != w.size() || factors.size() != w.size())
        throw RangeError("tensor map arity mismatch");
    long long sign_exp = 0;
    int before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        sign_exp += static_cast<long long>(fs[i].degree) * before;
        before += factors[i]->dim(w[i]);
    }
    TChain acc(Word{}, sign_of(sign_exp));
    for (std::size_t i = 0; i < w.size(); ++i) {
        Chain img = fs[i].f(w[i]);
        TChain next;
        for (const auto& [pre, c] : acc)
            for (const auto& [k, v] : img) {
                Word nw = pre;
                nw.push_back(k);
                next.add(std::move(nw), c * v);
            }
        acc = std::move(next);
        if (acc.empty()) break;
    }
    return acc;
}

TChain apply_tensor(const std::vector<GradedMap>& fs, const TChain& c,
                    const std::vector<const GradedComplex*>& factors)
{
    TChain r;
    for (const auto& [w, v] : c) r.add(apply_tensor(fs, w, factors), v);
    return r;
}

TChain tensor_d(const TChain& c, const std::vector<const GradedComplex*>& factors)
{
    TChain r;
    for (const auto& [w, v] : c) {
        int before = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            Int s = v * sign_of(before);
            for (const auto& [k, bv] : factors[i]->boundary(w[i])) {
                Word nw = w;
                nw[i] = k;
                r.add(std::move(nw), s * bv);
            }
            before += factors[i]->dim(w[i]);
        }
    }
    return r;
}

Chain apply_map(const GradedMap& f, const Chain& c, const GradedComplex& domain)
{
    Chain r;
    for (const auto& [k, v] : c) {
        if (!domain.has(k)) throw RangeError("chain outside map domain: " + k);
        r.add(f.f(k), v);
    }
    return r;
}

std::string join_word(const Word& w)
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "⊗";
        s += w[i];
    }
    return s;
}

TensorComplex tensor_complex(const std::vector<const GradedComplex*>& factors, int lo, int hi)
{
    TensorComplex t;
    t.factors = factors;
    // Enumerate words by total dimension.
    std::map<int, std::vector<Word>> by_dim;
    std::vector<Word> partial{Word{}};
    std::vector<int> pdim{0};
    for (const auto* f : factors) {
        std::vector<Word> np;
        std::vector<int> nd;
        for (std::size_t i = 0; i < partial.size(); ++i)
            for (int d : f->dims())
                for (const auto& n : f->basis(d)) {
                    Word w = partial[i];
                    w.push_back(n);
                    np.push_back(std::move(w));
                    nd.push_back(pdim[i] + d);
                }
        partial = std::move(np);
        pdim = std::move(nd);
    }
    for (std::size_t i = 0; i < partial.size(); ++i)
        if (pdim[i] >= lo && pdim[i] <= hi) by_dim[pdim[i]].push_back(partial[i]);
    for (auto& [d, ws] : by_dim) {
        std::sort(ws.begin(), ws.end());
        for (const auto& w : ws) {
            std::string n = join_word(w);
            t.complex.add_cell(n, d);
            t.words.emplace(n, w);
        }
    }
    for (const auto& [n, w] : t.words) {
        if (t.complex.dim(n) - 1 < lo) continue;
        Chain b;
        for (const auto& [bw, v] : tensor_d(TChain(w), factors)) b.add(join_word(bw), v);
        t.complex.set_boundary(n, std::move(b));
    }
    return t;
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols != o.rows) throw RangeError("matrix shape mismatch");
    Matrix r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols; ++j)
                if (o(k, j) != 0) r(i, j) += x * o(k, j);
        }
    return r;
}

namespace {

struct SnfState {
    Matrix D, U, Uinv, V, Vinv;
    bool tr;

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < D.cols; ++c) std::swap(D(i, c), D(j, c));
        if (!tr) return;
        for (std::size_t c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
        for (std::size_t r = 0; r < Uinv.rows; ++r) std::swap(Uinv(r, i), Uinv(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t r = 0; r < D.rows; ++r) std::swap(D(r, i), D(r, j));
        if (!tr) return;
        for (std::size_t r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
        for (std::size_t c = 0; c < Vinv.cols; ++c) std::swap(Vinv(i, c), Vinv(j, c));
    }
    // row i -= q * row t
    void row_sub(std::size_t i, std::size_t t, const Int& q)
    {
        if (q == 0) return;
        for (std::size_t c = 0; c < D.cols; ++c)
            if (D(t, c) != 0) D(i, c) -= q * D(t, c);
        if (!tr) return;
        for (std::size_t c = 0; c < U.cols; ++c)
            if (U(t, c) != 0) U(i, c) -= q * U(t, c);
        for (std::size_t r = 0; r < Uinv.rows; ++r)
            if (Uinv(r, i) != 0) Uinv(r, t) += q * Uinv(r, i);
    }
    // col j -= q * col t
    void col_sub(std::size_t j, std::size_t t, const Int& q)
    {
        if (q == 0) return;
        for (std::size_t r = 0; r < D.rows; ++r)
            if (D(r, t) != 0) D(r, j) -= q * D(r, t);
        if (!tr) return;
        for (std::size_t r = 0; r < V.rows; ++r)
            if (V(r, t) != 0) V(r, j) -= q * V(r, t);
        for (std::size_t c = 0; c < Vinv.cols; ++c)
            if (Vinv(j, c) != 0) Vinv(t, c) += q * Vinv(j, c);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < D.cols; ++c) D(i, c) = -D(i, c);
        if (!tr) return;
        for (std::size_t c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
        for (std::size_t r = 0; r < Uinv.rows; ++r) Uinv(r, i) = -Uinv(r, i);
    }
};

}  // namespace

Smith smith_normal_form(const Matrix& a, bool transforms)
{
    SnfState s{a, {}, {}, {}, {}, transforms};
    if (transforms) {
        s.U = s.Uinv = Matrix::identity(a.rows);
        s.V = s.Vinv = Matrix::identity(a.cols);
    }
    const std::size_t m = a.rows, n = a.cols;
    std::size_t t = 0;
    while (t < m && t < n) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        std::size_t pi = m, pj = n;
        Int best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Int& v = s.D(i, j);
                if (v == 0) continue;
                Int av = abs(v);
                if (pi == m || av < best) {
                    best = av;
                    pi = i;
                    pj = j;
                    if (best == 1) goto found;
                }
            }
        if (pi == m) break;
    found:
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.D(i, t) == 0) continue;
                Int q = s.D(i, t) / s.D(t, t);
                s.row_sub(i, t, q);
                if (s.D(i, t) != 0) {
                    s.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.D(t, j) == 0) continue;
                Int q = s.D(t, j) / s.D(t, t);
                s.col_sub(j, t, q);
                if (s.D(t, j) != 0) {
                    s.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Divisibility of the trailing block.
            bool fixed = true;
            for (std::size_t i = t + 1; i < m && fixed; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (s.D(i, j) % s.D(t, t) != 0) {
                        s.row_sub(t, i, -1);
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (s.D(t, t) < 0) s.negate_row(t);
        ++t;
    }
    Smith r;
    r.rank = t;
    for (std::size_t i = 0; i < t; ++i) r.diag.push_back(s.D(i, i));
    r.D = std::move(s.D);
    r.U = std::move(s.U);
    r.Uinv = std::move(s.Uinv);
    r.V = std::move(s.V);
    r.Vinv = std::move(s.Vinv);
    return r;
}

Matrix boundary_matrix(const GradedComplex& c, int d)
{
    const auto& rows = c.basis(d - 1);
    const auto& cols = c.basis(d);
    Matrix m(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [k, v] : c.boundary(cols[j])) {
            if (c.dim(k) != d - 1) throw MathError("boundary of " + cols[j] + " has wrong dimension");
            m(c.index_of(k), j) = v;
        }
    return m;
}

std::vector<Int> to_vector(const GradedComplex& c, int d, const Chain& x)
{
    std::vector<Int> v(c.basis(d).size());
    for (const auto& [k, coef] : x) {
        if (c.dim(k) != d) throw MathError("chain not in dimension " + std::to_string(d));
        v[c.index_of(k)] = coef;
    }
    return v;
}

Chain from_vector(const GradedComplex& c, int d, const std::vector<Int>& v)
{
    Chain r;
    const auto& b = c.basis(d);
    for (std::size_t i = 0; i < v.size(); ++i) r.add(b[i], v[i]);
    return r;
}

Homology smith_homology(const GradedComplex& c, int d)
{
    Homology h;
    std::size_t nd = c.basis(d).size();
    std::size_t r_out = nd ? smith_normal_form(boundary_matrix(c, d), false).rank : 0;
    Smith in = smith_normal_form(boundary_matrix(c, d + 1), false);
    h.betti = static_cast<long>(nd) - static_cast<long>(r_out) - static_cast<long>(in.rank);
    for (const auto& e : in.diag)
        if (e > 1) h.torsion.push_back(e);
    return h;
}

std::optional<Chain> solve_boundary(const GradedComplex& c, const Chain& b, int dim_hint)
{
    if (b.empty()) return Chain{};
    if (!c.d(b).empty()) throw MathError("solve_boundary: right-hand side is not a cycle");
    int e = c.dim_of(b, dim_hint);
    Matrix a = boundary_matrix(c, e + 1);
    Smith s = smith_normal_form(a, true);
    std::vector<Int> bv = to_vector(c, e, b);
    std::vector<Int> y(a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.rows; ++k)
            if (s.U(i, k) != 0 && bv[k] != 0) y[i] += s.U(i, k) * bv[k];
    std::vector<Int> z(a.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        if (i < s.rank) {
            if (y[i] % s.diag[i] != 0) return std::nullopt;
            z[i] = y[i] / s.diag[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Int> x(a.cols);
    for (std::size_t i = 0; i < a.cols; ++i)
        for (std::size_t k = 0; k < s.rank; ++k)
            if (s.V(i, k) != 0 && z[k] != 0) x[i] += s.V(i, k) * z[k];
    return from_vector(c, e + 1, x);
}

HomologyBasis homology_generators(const GradedComplex& c, int d)
{
    HomologyBasis hb;
    std::size_t nd = c.basis(d).size();
    if (nd == 0) return hb;
    Smith out = smith_normal_form(boundary_matrix(c, d), true);
    std::size_t r = out.rank;
    std::size_t kdim = nd - r;
    if (kdim == 0) return hb;
    // Kernel basis Z = columns r.. of V; coordinates of a vector x are rows r.. of Vinv x.
    Matrix in = boundary_matrix(c, d + 1);
    Matrix coords(kdim, in.cols);
    for (std::size_t j = 0; j < in.cols; ++j)
        for (std::size_t i = 0; i < kdim; ++i) {
            Int acc = 0;
            for (std::size_t k = 0; k < nd; ++k)
                if (out.Vinv(r + i, k) != 0 && in(k, j) != 0) acc += out.Vinv(r + i, k) * in(k, j);
            coords(i, j) = acc;
        }
    Smith s = smith_normal_form(coords, true);
    // Generators: Z * Uinv columns.
    for (std::size_t g = 0; g < kdim; ++g) {
        Int order = g < s.rank ? s.diag[g] : Int(0);
        if (order == 1) continue;
        std::vector<Int> v(nd);
        for (std::size_t i = 0; i < kdim; ++i) {
            const Int& w = s.Uinv(i, g);
            if (w == 0) continue;
            for (std::size_t k = 0; k < nd; ++k)
                if (out.V(k, r + i) != 0) v[k] += out.V(k, r + i) * w;
        }
        Chain ch = from_vector(c, d, v);
        if (order == 0)
            hb.free.push_back(std::move(ch));
        else
            hb.torsion.emplace_back(std::move(ch), order);
    }
    return hb;
}

GradedComplex dual_complex(const GradedComplex& c)
{
    GradedComplex r;
    std::vector<int> ds = c.dims();
    for (auto it = ds.rbegin(); it != ds.rend(); ++it)
        for (const auto& n : c.basis(*it)) r.add_cell(n, -*it);
    std::map<std::string, Chain> cob;
    for (int d : ds)
        for (const auto& n : c.basis(d))
            for (const auto& [k, v] : c.boundary(n)) {
                // (du)(x) = -(-1)^{|u|} u(dx), |u| = -dim(k)
                cob[k].add(n, -sign_of(d - 1) * v);
            }
    for (auto& [k, ch] : cob) r.set_boundary(k, std::move(ch));
    return r;
}

}  // namespace einf
