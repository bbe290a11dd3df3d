#include "einf/perm.hpp"

#include "einf/lincomb.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace einf {

Perm::Perm(int n) : n_(n)
{
    if (n < 0 || n > kMax) throw RangeError("permutation degree out of range");
    img_.fill(0);
    for (int i = 0; i < n; ++i) img_[i] = static_cast<std::uint8_t>(i);
}

Perm Perm::from_one_line(const std::vector<int>& one_line)
{
    Perm p(static_cast<int>(one_line.size()));
    std::vector<bool> seen(one_line.size(), false);
    for (std::size_t i = 0; i < one_line.size(); ++i) {
        int v = one_line[i] - 1;
        if (v < 0 || v >= p.n_ || seen[v]) throw InputError("not a permutation in one-line notation");
        seen[v] = true;
        p.img_[i] = static_cast<std::uint8_t>(v);
    }
    return p;
}

Perm Perm::from_cycles(const std::string& s, int n)
{
    Perm p(n);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && (s[i] == ' ')) ++i;
    };
    skip();
    if (s == "e" || s == "1" || s.empty()) return p;
    std::vector<bool> used(n, false);
    while (i < s.size()) {
        skip();
        if (i >= s.size()) break;
        if (s[i] != '(') throw InputError("cycle notation: expected '(' in " + s);
        ++i;
        std::vector<int> cyc;
        bool commas = s.find(',', i) != std::string::npos && s.find(',', i) < s.find(')', i);
        while (i < s.size() && s[i] != ')') {
            skip();
            if (s[i] == ',') {
                ++i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw InputError("cycle notation: bad character in " + s);
            int v = 0;
            if (commas) {
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            } else {
                v = s[i++] - '0';
            }
            if (v < 1 || v > n || used[v - 1]) throw InputError("cycle notation: bad entry in " + s);
            used[v - 1] = true;
            cyc.push_back(v - 1);
        }
        if (i >= s.size()) throw InputError("cycle notation: unterminated cycle in " + s);
        ++i;
        for (std::size_t k = 0; k < cyc.size(); ++k)
            p.img_[cyc[k]] = static_cast<std::uint8_t>(cyc[(k + 1) % cyc.size()]);
    }
    return p;
}

Perm Perm::inverse() const
{
    Perm r(n_);
    for (int i = 0; i < n_; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return r;
}

bool Perm::is_identity() const
{
    for (int i = 0; i < n_; ++i)
        if (img_[i] != i) return false;
    return true;
}

int Perm::parity() const
{
    std::array<bool, kMax> seen{};
    int cycles = 0;
    for (int i = 0; i < n_; ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (int j = i; !seen[j]; j = img_[j]) seen[j] = true;
    }
    return ((n_ - cycles) & 1) ? -1 : 1;
}

std::vector<int> Perm::one_line() const
{
    std::vector<int> r(n_);
    for (int i = 0; i < n_; ++i) r[i] = img_[i] + 1;
    return r;
}

std::string Perm::to_cycles() const
{
    std::string s;
    std::array<bool, kMax> seen{};
    bool sep = n_ > 9;
    for (int i = 0; i < n_; ++i) {
        if (seen[i] || img_[i] == i) continue;
        s += '(';
        bool first = true;
        for (int j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            if (!first && sep) s += ',';
            s += std::to_string(j + 1);
            first = false;
        }
        s += ')';
    }
    return s.empty() ? "1" : s;
}

Perm compose(const Perm& p, const Perm& q)
{
    if (p.size() != q.size()) throw RangeError("compose: degree mismatch");
    Perm r(p.size());
    for (int i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
}

Perm block_sum(const Perm& p, const Perm& q)
{
    Perm r(p.size() + q.size());
    for (int i = 0; i < p.size(); ++i) r[i] = p[i];
    for (int i = 0; i < q.size(); ++i) r[p.size() + i] = p.size() + q[i];
    return r;
}

Perm block_sum(const std::vector<Perm>& ps)
{
    Perm r(0);
    for (const auto& p : ps) r = block_sum(r, p);
    return r;
}

Perm embed(const Perm& tau, int offset, int n)
{
    if (offset < 0 || offset + tau.size() > n) throw RangeError("embed: out of range");
    Perm r(n);
    for (int i = 0; i < tau.size(); ++i) r[offset + i] = offset + tau[i];
    return r;
}

static std::vector<int> starts(const IntSeq& a)
{
    std::vector<int> s(a.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) s[i + 1] = s[i] + a[i];
    return s;
}

IntSeq act_seq(const Perm& sigma, const IntSeq& alpha)
{
    if (static_cast<int>(alpha.size()) != sigma.size()) throw RangeError("act_seq: length mismatch");
    IntSeq r(alpha.size());
    for (int k = 0; k < sigma.size(); ++k) r[sigma[k]] = alpha[k];
    return r;
}

Perm block_permute(const IntSeq& alpha, const Perm& sigma)
{
    if (static_cast<int>(alpha.size()) != sigma.size()) throw RangeError("block map: length mismatch");
    IntSeq beta = act_seq(sigma, alpha);
    auto sa = starts(alpha), sb = starts(beta);
    Perm r(sa.back());
    for (int k = 0; k < sigma.size(); ++k)
        for (int o = 0; o < alpha[k]; ++o) r[sa[k] + o] = sb[sigma[k]] + o;
    return r;
}

Perm block_tmap(const IntSeq& alpha, const Perm& sigma)
{
    if (static_cast<int>(alpha.size()) != sigma.size()) throw RangeError("block map: length mismatch");
    IntSeq src(alpha.size());
    for (int j = 0; j < sigma.size(); ++j) src[j] = alpha[sigma[j]];
    return block_permute(src, sigma);
}

Perm transpose_perm(int n, int k)
{
    Perm r(n * k);
    for (int c = 0; c < n; ++c)
        for (int t = 0; t < k; ++t) r[c * k + t] = t * n + c;
    return r;
}

SignedPerm shuffle_Z(const std::vector<IntSeq>& betas)
{
    if (betas.empty()) throw InputError("shuffle_Z: no sequences");
    std::size_t n = betas[0].size();
    IntSeq concat;
    for (const auto& b : betas) {
        if (b.size() != n) throw InputError("shuffle_Z: ragged input");
        concat.insert(concat.end(), b.begin(), b.end());
    }
    int k = static_cast<int>(betas.size());
    Perm p = transpose_perm(static_cast<int>(n), k);
    Perm z = block_permute(concat, p.inverse());
    return {z.parity(), z};
}

std::vector<Perm> all_perms(int n)
{
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Perm> r;
    do {
        r.push_back(Perm::from_one_line(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return r;
}

}  // namespace einf
