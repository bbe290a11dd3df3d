#include "einf/steenrod.hpp"

namespace einf {

Cochain coboundary(const GradedComplex& c, const Cochain& u)
{
    Cochain r{{}, u.degree + 1};
    const int s = -sign_of(u.degree);
    for (const auto& y : c.basis(u.degree + 1)) {
        Int v = evaluate(u, c.boundary(y));
        if (v != 0) r.values.add(y, v * s);
    }
    return r;
}

Int evaluate(const Cochain& u, const Chain& x)
{
    Int r = 0;
    for (const auto& [n, v] : x) r += u.values.coeff(n) * v;
    return r;
}

Int evaluate(const std::vector<Cochain>& us, const TChain& w, const GradedComplex& c)
{
    long long e = 0;
    for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t l = i + 1; l < us.size(); ++l) e += static_cast<long long>(us[i].degree) * us[l].degree;
    Int r = 0;
    for (const auto& [word, v] : w) {
        if (word.size() != us.size()) throw RangeError("evaluate: arity mismatch");
        Int p = v;
        for (std::size_t i = 0; i < us.size() && p != 0; ++i) {
            if (c.dim(word[i]) != us[i].degree) p = 0;
            else p *= us[i].values.coeff(word[i]);
        }
        r += p;
    }
    return r * sign_of(e);
}

Cochain reduce_mod(const Cochain& u, int p)
{
    Cochain r{{}, u.degree};
    for (const auto& [n, v] : u.values) {
        Int m = v % p;
        if (m < 0) m += p;
        r.values.add(n, m);
    }
    return r;
}

BarWord cup_i_word(int i)
{
    if (i < 0) throw RangeError("cup_i: negative index");
    return BarWord(Perm(2), std::vector<Perm>(i, Perm::from_one_line({2, 1})));
}

Cochain cup_i(MCoalgebra& c, const Cochain& u, const Cochain& v, int i)
{
    const GradedComplex& k = c.complex();
    Cochain r{{}, u.degree + v.degree - i};
    BarWord e = cup_i_word(i);
    for (const auto& x : k.basis(r.degree)) {
        Int val = evaluate({u, v}, c.structure(2, e, x), k);
        if (val != 0) r.values.add(x, val);
    }
    return r;
}

Cochain steenrod_square(MCoalgebra& c, int i, const Cochain& u)
{
    if (i < 0) throw RangeError("Sq^i needs i >= 0");
    if (i > u.degree) return Cochain{{}, u.degree + i};
    return reduce_mod(cup_i(c, u, u, u.degree - i), 2);
}

// ---------------------------------------------------------------------------
// Linear algebra over Z_p

namespace {

int modp(const Int& x, int p)
{
    Int m = x % p;
    if (m < 0) m += p;
    return static_cast<int>(m);
}

int inv_mod(int a, int p)
{
    int r = 1, e = p - 2;
    long long b = a;
    while (e) {
        if (e & 1) r = static_cast<int>(r * b % p);
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Null space of m (rows x cols) over Z_p, as vectors of length cols.
std::vector<std::vector<int>> null_space(std::vector<std::vector<int>> m, std::size_t cols, int p)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < m.size(); ++col) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        int iv = inv_mod(m[r][col], p);
        for (auto& x : m[r]) x = static_cast<int>(1LL * x * iv % p);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][col] == 0) continue;
            long long f = m[i][col];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = static_cast<int>(((m[i][j] - f * m[r][j]) % p + p) % p);
        }
        pivots.push_back(col);
        ++r;
    }
    std::vector<std::vector<int>> basis;
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<int> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - m[i][free]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

ModPCohomology::ModPCohomology(const GradedComplex& c, int d, int p) : c_(&c), d_(d), p_(p)
{
    if (p < 2) throw RangeError("modulus must be at least 2");
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw RangeError("modulus must be prime");
    const auto& cells = c.basis(d);
    const std::size_t n = cells.size();
    // cocycles: u with u(dy) = 0 for every (d+1)-cell y
    std::vector<std::vector<int>> eqs;
    for (const auto& y : c.basis(d + 1)) {
        std::vector<int> row(n, 0);
        for (const auto& [x, v] : c.boundary(y)) row[c.index_of(x)] = modp(v, p);
        eqs.push_back(std::move(row));
    }
    auto cocycles = null_space(eqs, n, p);
    auto reduce = [&](std::vector<int>& v, std::vector<int>& h) {
        for (const auto& r : rows_) {
            int f = v[r.pivot];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) v[j] = static_cast<int>(((v[j] - 1LL * f * r.v[j]) % p + p) % p);
            for (std::size_t j = 0; j < h.size(); ++j) h[j] = static_cast<int>(((h[j] - 1LL * f * r.h[j]) % p + p) % p);
        }
    };
    auto insert = [&](std::vector<int> v, std::vector<int> h) {
        std::size_t piv = 0;
        while (piv < n && v[piv] == 0) ++piv;
        if (piv == n) return false;
        int iv = inv_mod(v[piv], p);
        for (auto& x : v) x = static_cast<int>(1LL * x * iv % p);
        for (auto& x : h) x = static_cast<int>(1LL * x * iv % p);
        // keep rows fully reduced at their pivots
        for (auto& r : rows_) {
            int f = r.v[piv];
            if (f == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r.v[j] = static_cast<int>(((r.v[j] - 1LL * f * v[j]) % p + p) % p);
            for (std::size_t j = 0; j < h.size(); ++j) r.h[j] = static_cast<int>(((r.h[j] - 1LL * f * h[j]) % p + p) % p);
        }
        rows_.push_back(Row{std::move(v), std::move(h), piv});
        return true;
    };
    // coboundaries first (rows of the boundary matrix into dimension d), then cocycles
    const std::size_t maxh = cocycles.size();
    for (const auto& x : c.basis(d - 1)) {
        std::vector<int> v(n, 0);
        for (const auto& y : cells)
            if (Int a = c.boundary(y).coeff(x); a != 0) v[c.index_of(y)] = modp(a, p);
        std::vector<int> h(maxh, 0);
        reduce(v, h);
        insert(std::move(v), std::move(h));
    }
    for (const auto& z : cocycles) {
        std::vector<int> v = z, h(maxh, 0);
        reduce(v, h);
        bool nonzero = false;
        for (int x : v) nonzero = nonzero || x != 0;
        if (!nonzero) continue;
        Cochain u{{}, d};
        for (std::size_t j = 0; j < n; ++j)
            if (z[j]) u.values.add(cells[j], z[j]);
        basis_.push_back(std::move(u));
        // v = z - sum f_r row_r, and each row_r stands for h_r; so v stands for e_new - sum f_r h_r
        std::vector<int> hv(maxh, 0);
        hv[basis_.size() - 1] = 1;
        for (std::size_t j = 0; j < maxh; ++j) hv[j] = static_cast<int>(((hv[j] + h[j]) % p + p) % p);
        insert(std::move(v), std::move(hv));
    }
    for (auto& r : rows_) r.h.resize(basis_.size());
}

std::vector<int> ModPCohomology::to_vec(const Cochain& u) const
{
    if (u.degree != d_) throw RangeError("cochain of the wrong degree");
    std::vector<int> v(c_->rank(d_), 0);
    for (const auto& [x, a] : u.values) v[c_->index_of(x)] = modp(a, p_);
    return v;
}

std::vector<int> ModPCohomology::coordinates(const Cochain& u) const
{
    std::vector<int> v = to_vec(u);
    std::vector<int> h(basis_.size(), 0);
    for (const auto& r : rows_) {
        int f = v[r.pivot];
        if (f == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = static_cast<int>(((v[j] - 1LL * f * r.v[j]) % p_ + p_) % p_);
        for (std::size_t j = 0; j < h.size(); ++j) h[j] = static_cast<int>((h[j] + 1LL * f * r.h[j]) % p_);
    }
    for (int x : v)
        if (x != 0) throw MathError("not a cocycle mod p");
    return h;
}

std::vector<std::vector<int>> steenrod_matrix(MCoalgebra& c, int i, int d)
{
    ModPCohomology src(c.complex(), d, 2), dst(c.complex(), d + i, 2);
    std::vector<std::vector<int>> cols;
    for (const auto& u : src.basis()) cols.push_back(dst.coordinates(steenrod_square(c, i, u)));
    return cols;
}

std::vector<RingEntry> ring_table(MCoalgebra& c, int p, int max_degree)
{
    std::vector<RingEntry> out;
    const GradedComplex& k = c.complex();
    std::vector<ModPCohomology> h;
    for (int d = 0; d <= max_degree; ++d) h.emplace_back(k, d, p);
    for (int d1 = 1; d1 <= max_degree; ++d1)
        for (int d2 = 1; d1 + d2 <= max_degree; ++d2)
            for (std::size_t i = 0; i < h[d1].rank(); ++i)
                for (std::size_t j = 0; j < h[d2].rank(); ++j) {
                    Cochain prod = reduce_mod(cup(c, h[d1].basis()[i], h[d2].basis()[j]), p);
                    out.push_back(RingEntry{d1, static_cast<int>(i), d2, static_cast<int>(j), h[d1 + d2].coordinates(prod)});
                }
    return out;
}

std::vector<Cochain> free_cohomology_generators(const GradedComplex& c, int d)
{
    GradedComplex dual = dual_complex(c);
    std::vector<Cochain> r;
    for (const auto& z : homology_generators(dual, -d).free) r.push_back(Cochain{z, d});
    return r;
}

Matrix cup_pairing(MCoalgebra& c, int d1, int d2)
{
    const GradedComplex& k = c.complex();
    auto a = free_cohomology_generators(k, d1);
    auto b = free_cohomology_generators(k, d2);
    auto cyc = homology_generators(k, d1 + d2).free;
    if (cyc.empty()) throw MathError("no free homology class in the top dimension");
    Matrix m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = evaluate(cup(c, a[i], b[j]), cyc.front());
    return m;
}

Int determinant(const Matrix& m)
{
    if (m.rows != m.cols) throw RangeError("determinant of a non-square matrix");
    if (m.rows == 0) return 1;
    // fraction-free elimination
    std::vector<std::vector<Int>> a(m.rows, std::vector<Int>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) a[i][j] = m(i, j);
    const std::size_t n = m.rows;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t s2 = k + 1;
            while (s2 < n && a[s2][k] == 0) ++s2;
            if (s2 == n) return 0;
            std::swap(a[k], a[s2]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return a[n - 1][n - 1] * sign;
}

}  // namespace einf
