#include "einf/barres.hpp"

#include <functional>

namespace einf {

BarWord::BarWord(const Perm& leader, const std::vector<Perm>& letters) : n_(leader.size())
{
    data_.reserve((letters.size() + 1) * n_);
    for (int i = 0; i < n_; ++i) data_.push_back(static_cast<char>(leader[i]));
    for (const auto& p : letters) {
        if (p.size() != n_) throw RangeError("bar word: letter arity mismatch");
        for (int i = 0; i < n_; ++i) data_.push_back(static_cast<char>(p[i]));
    }
}

Perm BarWord::perm_at(int slot) const
{
    Perm p(n_);
    for (int i = 0; i < n_; ++i) p[i] = static_cast<unsigned char>(data_[slot * n_ + i]);
    return p;
}

std::vector<Perm> BarWord::letters() const
{
    std::vector<Perm> r;
    for (int i = 0; i < dim(); ++i) r.push_back(letter(i));
    return r;
}

bool BarWord::leader_is_one() const
{
    for (int i = 0; i < n_; ++i)
        if (static_cast<unsigned char>(data_[i]) != i) return false;
    return true;
}

BarWord BarWord::with_leader(const Perm& g) const
{
    BarWord r = *this;
    for (int i = 0; i < n_; ++i) r.data_[i] = static_cast<char>(g[i]);
    return r;
}

bool BarWord::has_identity_letter() const
{
    for (int s = 1; s <= dim(); ++s) {
        bool id = true;
        for (int i = 0; i < n_ && id; ++i) id = static_cast<unsigned char>(data_[s * n_ + i]) == i;
        if (id) return true;
    }
    return false;
}

std::string BarWord::to_string() const
{
    std::string s;
    Perm g = leader();
    if (!g.is_identity() || n_ == 1) s += g.to_cycles();
    else
        s += "1";
    s += '[';
    for (int i = 0; i < dim(); ++i) {
        if (i) s += '|';
        s += letter(i).to_cycles();
    }
    s += ']';
    return s;
}

BarWord BarWord::parse(const std::string& s, int n)
{
    auto lb = s.find('[');
    auto rb = s.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb) throw InputError("bar word must look like g[g1|...]: " + s);
    std::string lead = s.substr(0, lb);
    Perm g = Perm::from_cycles(lead, n);
    std::vector<Perm> letters;
    std::string body = s.substr(lb + 1, rb - lb - 1);
    std::size_t pos = 0;
    while (pos <= body.size() && !body.empty()) {
        auto bar = body.find('|', pos);
        std::string tok = body.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
        Perm p = Perm::from_cycles(tok, n);
        if (p.is_identity()) throw InputError("normalized bar word cannot contain an identity letter: " + s);
        letters.push_back(p);
        if (bar == std::string::npos) break;
        pos = bar + 1;
    }
    return BarWord(g, letters);
}

RChain make_word(const Perm& leader, const std::vector<Perm>& letters)
{
    for (const auto& p : letters)
        if (p.is_identity()) return {};
    return RChain(BarWord(leader, letters));
}

RChain face(int i, const BarWord& w)
{
    int m = w.dim();
    if (i < 0 || i > m) throw RangeError("face index out of range");
    if (m == 0) throw RangeError("face of a dimension-0 word");
    std::vector<Perm> a = w.letters();
    Perm g = w.leader();
    if (i == 0) {
        Perm ng = compose(g, a[0]);
        a.erase(a.begin());
        return make_word(ng, a);
    }
    if (i == m) {
        a.pop_back();
        return make_word(g, a);
    }
    a[i - 1] = compose(a[i - 1], a[i]);
    a.erase(a.begin() + i);
    return make_word(g, a);
}

RChain differential(const BarWord& w)
{
    RChain r;
    int m = w.dim();
    for (int i = 0; i <= m && m > 0; ++i) r.add(face(i, w), sign_of(i));
    return r;
}

RChain differential(const RChain& c)
{
    RChain r;
    for (const auto& [w, v] : c) r.add(differential(w), v);
    return r;
}

RChain phi(const BarWord& w)
{
    Perm g = w.leader();
    if (g.is_identity()) return {};
    std::vector<Perm> a = w.letters();
    a.insert(a.begin(), g);
    return RChain(BarWord(Perm(w.arity()), a));
}

RChain phi(const RChain& c)
{
    RChain r;
    for (const auto& [w, v] : c) r.add(phi(w), v);
    return r;
}

Int augmentation(const RChain& c)
{
    Int s = 0;
    for (const auto& [w, v] : c)
        if (w.dim() == 0) s += v;
    return s;
}

BarWord act(const Perm& sigma, const BarWord& w) { return w.with_leader(compose(sigma, w.leader())); }

RChain act(const Perm& sigma, const RChain& c)
{
    RChain r;
    for (const auto& [w, v] : c) r.add(act(sigma, w), v);
    return r;
}

RRChain coproduct_R(const BarWord& w)
{
    RRChain r;
    std::vector<Perm> a = w.letters();
    Perm g = w.leader();
    Perm prod = g;
    for (std::size_t i = 0; i <= a.size(); ++i) {
        std::vector<Perm> left(a.begin(), a.begin() + i), right(a.begin() + i, a.end());
        if (i > 0) prod = compose(prod, a[i - 1]);
        r.add(RPair(BarWord(g, left), BarWord(prod, right)), 1);
    }
    return r;
}

RRChain coproduct_R(const RChain& c)
{
    RRChain r;
    for (const auto& [w, v] : c) r.add(coproduct_R(w), v);
    return r;
}

RRChain differential(const RRChain& c)
{
    RRChain r;
    for (const auto& [p, v] : c) {
        for (const auto& [x, xv] : differential(p.first)) r.add(RPair(x, p.second), v * xv);
        Int s = v * sign_of(p.first.dim());
        for (const auto& [y, yv] : differential(p.second)) r.add(RPair(p.first, y), s * yv);
    }
    return r;
}

RRChain act_diag(const Perm& sigma, const RRChain& c)
{
    RRChain r;
    for (const auto& [p, v] : c) r.add(RPair(act(sigma, p.first), act(sigma, p.second)), v);
    return r;
}

std::vector<BarWord> bar_basis(int n, int d, bool leader_one_only)
{
    std::vector<Perm> all = all_perms(n);
    std::vector<Perm> nonid;
    for (const auto& p : all)
        if (!p.is_identity()) nonid.push_back(p);
    std::vector<BarWord> out;
    std::vector<Perm> cur;
    std::function<void(const Perm&)> rec = [&](const Perm& g) {
        if (static_cast<int>(cur.size()) == d) {
            out.emplace_back(g, cur);
            return;
        }
        for (const auto& p : nonid) {
            cur.push_back(p);
            rec(g);
            cur.pop_back();
        }
    };
    if (leader_one_only)
        rec(Perm(n));
    else
        for (const auto& g : all) rec(g);
    return out;
}

std::string to_string(const RChain& c)
{
    if (c.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, v] : c) {
        if (v < 0) s += first ? "-" : " - ";
        else if (!first)
            s += " + ";
        Int a = abs(v);
        if (a != 1) s += a.str() + "*";
        s += w.to_string();
        first = false;
    }
    return s;
}

}  // namespace einf
