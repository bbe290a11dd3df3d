#include "einf/mstruct.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace einf {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Simplicial sets

void SimplicialSet::add_simplex(const std::string& name, int dim, std::vector<SimplexRef> faces)
{
    if (has(name)) throw InputError("duplicate simplex " + name);
    if (dim < 0) throw InputError("negative simplex dimension");
    if (dim == 0 && !faces.empty()) throw InputError("vertex " + name + " has faces");
    if (dim > 0 && static_cast<int>(faces.size()) != dim + 1) throw InputError("simplex " + name + " needs dim+1 faces");
    for (const auto& f : faces) {
        if (!has(f.name)) throw InputError("unknown face " + f.name + " of " + name);
        int fd = this->dim(f.name);
        if (f.surj.empty()) {
            if (fd != dim - 1) throw InputError("face " + f.name + " of " + name + " has wrong dimension");
        } else {
            if (static_cast<int>(f.surj.size()) != dim) throw InputError("degeneracy of wrong length in " + name);
            for (std::size_t i = 0; i < f.surj.size(); ++i) {
                int prev = i ? f.surj[i - 1] : 0;
                if (f.surj[i] < prev || f.surj[i] > prev + 1 || (i == 0 && f.surj[0] != 0))
                    throw InputError("degeneracy in " + name + " is not a monotone surjection");
            }
            if (f.surj.back() != fd) throw InputError("degeneracy in " + name + " does not hit the top vertex");
        }
    }
    index_.emplace(name, Entry{dim, std::move(faces)});
    if (static_cast<int>(by_dim_.size()) <= dim) by_dim_.resize(dim + 1);
    by_dim_[dim].push_back(name);
}

int SimplicialSet::dim(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end()) throw RangeError("unknown simplex " + name);
    return it->second.dim;
}

const std::vector<SimplexRef>& SimplicialSet::faces(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end()) throw RangeError("unknown simplex " + name);
    return it->second.faces;
}

const std::vector<std::string>& SimplicialSet::simplices(int d) const
{
    static const std::vector<std::string> none;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return none;
    return by_dim_[d];
}

SimplexRef SimplicialSet::restrict(const std::string& y, const std::vector<int>& theta) const
{
    return restrict(SimplexRef{y, {}}, theta);
}

SimplexRef SimplicialSet::restrict(const SimplexRef& x, const std::vector<int>& theta) const
{
    // theta' = s o theta, then split into its image (a face) and a surjection onto it.
    std::vector<int> t2(theta.size());
    for (std::size_t u = 0; u < theta.size(); ++u) t2[u] = x.surj.empty() ? theta[u] : x.surj[theta[u]];
    std::vector<int> image = t2;
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<int> pi(t2.size());
    for (std::size_t u = 0; u < t2.size(); ++u)
        pi[u] = static_cast<int>(std::lower_bound(image.begin(), image.end(), t2[u]) - image.begin());
    SimplexRef z = face_of(x.name, image);
    std::vector<int> s(pi.size());
    for (std::size_t u = 0; u < pi.size(); ++u) s[u] = z.surj.empty() ? pi[u] : z.surj[pi[u]];
    bool identity = true;
    for (std::size_t u = 0; u < s.size(); ++u) identity = identity && s[u] == static_cast<int>(u);
    if (identity && static_cast<int>(s.size()) == dim(z.name) + 1) s.clear();
    return SimplexRef{z.name, s};
}

SimplexRef SimplicialSet::face_of(const std::string& y, const std::vector<int>& vertices) const
{
    int p = dim(y);
    if (static_cast<int>(vertices.size()) == p + 1) return SimplexRef{y, {}};
    if (vertices.empty()) throw RangeError("empty face");
    int j = p;
    while (std::binary_search(vertices.begin(), vertices.end(), j)) --j;
    std::vector<int> theta;
    for (int v : vertices) theta.push_back(v < j ? v : v - 1);
    return restrict(faces(y)[j], theta);
}

std::vector<std::string> SimplicialSet::check_identities() const
{
    std::vector<std::string> bad;
    for (std::size_t d = 2; d < by_dim_.size(); ++d)
        for (const auto& y : by_dim_[d]) {
            const auto& f = faces(y);
            int p = static_cast<int>(d);
            for (int j = 1; j <= p; ++j)
                for (int i = 0; i < j; ++i) {
                    // d_i d_j y versus d_{j-1} d_i y
                    std::vector<int> skip_i, skip_j1;
                    for (int v = 0; v < p; ++v) {
                        if (v != i) skip_i.push_back(v);
                        if (v != j - 1) skip_j1.push_back(v);
                    }
                    if (restrict(f[j], skip_i) != restrict(f[i], skip_j1))
                        bad.push_back(y + ": d" + std::to_string(i) + "d" + std::to_string(j));
                }
        }
    return bad;
}

namespace {

json ref_json(const SimplexRef& r)
{
    if (r.surj.empty()) return r.name;
    return json::array({r.name, r.surj});
}

SimplexRef ref_from_json(const json& j)
{
    if (j.is_string()) return SimplexRef{j.get<std::string>(), {}};
    if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_array())
        return SimplexRef{j[0].get<std::string>(), j[1].get<std::vector<int>>()};
    throw InputError("bad face entry " + j.dump());
}

}  // namespace

json SimplicialSet::to_json() const
{
    json arr = json::array();
    for (std::size_t d = 0; d < by_dim_.size(); ++d)
        for (const auto& y : by_dim_[d]) {
            json e{{"name", y}, {"dim", d}};
            if (d > 0) {
                json fs = json::array();
                for (const auto& f : faces(y)) fs.push_back(ref_json(f));
                e["faces"] = fs;
            }
            arr.push_back(e);
        }
    json j{{"simplices", arr}};
    if (!basepoint_.empty()) j["basepoint"] = basepoint_;
    return j;
}

SimplicialSet SimplicialSet::from_json(const json& j)
{
    try {
        SimplicialSet s;
        if (j.contains("standard")) {
            s = standard_simplex(j.at("standard").get<int>());
        } else if (j.contains("boundary")) {
            s = boundary_of_simplex(j.at("boundary").get<int>());
        } else if (j.contains("facets")) {
            // an ordered simplicial complex; simplices are named by sorted vertex lists
            std::set<std::vector<int>> all;
            for (const auto& f : j.at("facets")) {
                std::vector<int> v = f.get<std::vector<int>>();
                std::sort(v.begin(), v.end());
                if (std::adjacent_find(v.begin(), v.end()) != v.end() || v.empty() || v.size() > 20)
                    throw InputError("bad facet " + f.dump());
                for (std::size_t m = 1; m < (std::size_t{1} << v.size()); ++m) {
                    std::vector<int> w;
                    for (std::size_t i = 0; i < v.size(); ++i)
                        if (m & (std::size_t{1} << i)) w.push_back(v[i]);
                    all.insert(w);
                }
            }
            std::vector<std::vector<int>> order(all.begin(), all.end());
            std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
            for (const auto& v : order) {
                std::vector<SimplexRef> fs;
                if (v.size() > 1)
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        std::vector<int> w = v;
                        w.erase(w.begin() + static_cast<long>(i));
                        fs.push_back(SimplexRef{face_name(w), {}});
                    }
                s.add_simplex(face_name(v), static_cast<int>(v.size()) - 1, std::move(fs));
            }
        } else {
            std::vector<json> items(j.at("simplices").begin(), j.at("simplices").end());
            std::stable_sort(items.begin(), items.end(),
                             [](const json& a, const json& b) { return a.at("dim").get<int>() < b.at("dim").get<int>(); });
            for (const auto& e : items) {
                std::vector<SimplexRef> fs;
                if (e.contains("faces"))
                    for (const auto& f : e.at("faces")) fs.push_back(ref_from_json(f));
                s.add_simplex(e.at("name").get<std::string>(), e.at("dim").get<int>(), std::move(fs));
            }
        }
        if (j.contains("collapse")) s = collapse_subcomplex(s, j.at("collapse").get<std::vector<std::string>>());
        if (j.contains("basepoint")) s.set_basepoint(j.at("basepoint").get<std::string>());
        if (s.basepoint().empty() && !s.simplices(0).empty()) s.set_basepoint(s.simplices(0).front());
        if (!s.basepoint().empty() && (!s.has(s.basepoint()) || s.dim(s.basepoint()) != 0))
            throw InputError("basepoint must be a vertex");
        auto bad = s.check_identities();
        if (!bad.empty()) throw InputError("simplicial identity fails at " + bad.front());
        return s;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed simplicial set: ") + e.what());
    }
}

std::string face_name(const std::vector<int>& vertices)
{
    std::string s = "[";
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(vertices[i]);
    }
    return s + "]";
}

namespace {

SimplicialSet simplex_faces(int k, bool include_top)
{
    SimplicialSet s;
    for (int d = 0; d <= k; ++d) {
        if (d == k && !include_top) break;
        // increasing subsets of {0..k} of size d+1, in lexicographic order
        std::vector<int> v(d + 1);
        for (int i = 0; i <= d; ++i) v[i] = i;
        while (true) {
            std::vector<SimplexRef> fs;
            if (d > 0)
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> w = v;
                    w.erase(w.begin() + i);
                    fs.push_back(SimplexRef{face_name(w), {}});
                }
            s.add_simplex(face_name(v), d, std::move(fs));
            int i = d;
            while (i >= 0 && v[i] == k - d + i) --i;
            if (i < 0) break;
            ++v[i];
            for (int l = i + 1; l <= d; ++l) v[l] = v[l - 1] + 1;
        }
    }
    s.set_basepoint(face_name({k}));
    return s;
}

}  // namespace

SimplicialSet standard_simplex(int k)
{
    if (k < 0) throw RangeError("negative simplex dimension");
    return simplex_faces(k, true);
}

SimplicialSet boundary_of_simplex(int k)
{
    if (k < 1) throw RangeError("boundary needs k >= 1");
    return simplex_faces(k, false);
}

SimplicialSet collapse_subcomplex(const SimplicialSet& x, const std::vector<std::string>& collapse)
{
    std::set<std::string> k(collapse.begin(), collapse.end());
    for (const auto& c : collapse) {
        if (!x.has(c)) throw InputError("collapse: unknown simplex " + c);
        for (const auto& f : x.faces(c))
            if (!k.count(f.name)) throw InputError("collapse: " + c + " has a face outside the subcomplex");
    }
    SimplicialSet r;
    r.add_simplex("*", 0);
    for (int d = 0; d <= x.top_dim(); ++d)
        for (const auto& y : x.simplices(d)) {
            if (k.count(y)) continue;
            std::vector<SimplexRef> fs;
            for (const auto& f : x.faces(y)) {
                if (!k.count(f.name)) {
                    fs.push_back(f);
                } else if (d - 1 == 0) {
                    fs.push_back(SimplexRef{"*", {}});
                } else {
                    fs.push_back(SimplexRef{"*", std::vector<int>(d, 0)});
                }
            }
            r.add_simplex(y, d, std::move(fs));
        }
    r.set_basepoint("*");
    return r;
}

GradedComplex normalized_chains(const SimplicialSet& x)
{
    GradedComplex c;
    for (int d = 0; d <= x.top_dim(); ++d)
        for (const auto& y : x.simplices(d)) {
            Chain b;
            if (d > 0) {
                const auto& fs = x.faces(y);
                for (int i = 0; i <= d; ++i)
                    if (!fs[i].degenerate()) b.add(fs[i].name, sign_of(i));
            }
            c.add_cell(y, d, std::move(b));
        }
    return c;
}

Chain simplex_contraction(const std::vector<int>& face, int k)
{
    if (face.empty() || face.back() == k) return {};
    std::vector<int> w = face;
    w.push_back(k);
    return Chain(face_name(w), sign_of(static_cast<long long>(face.size())));
}

namespace {

// Factor k moves to position sigma(k); the sign counts swapped pairs of odd factors.
template <class W, class DimF>
int permute_word(const Perm& sigma, const W& w, W& out, DimF&& dim)
{
    const int n = static_cast<int>(w.size());
    out.assign(n, typename W::value_type{});
    for (int k = 0; k < n; ++k) out[sigma[k]] = w[k];
    long long e = 0;
    for (int k = 0; k < n; ++k) {
        if (dim(w[k]) % 2 == 0) continue;
        for (int l = k + 1; l < n; ++l)
            if (sigma[k] > sigma[l] && dim(w[l]) % 2 != 0) ++e;
    }
    return sign_of(e);
}

}  // namespace

TChain permute_factors(const Perm& sigma, const TChain& c, const std::function<int(const std::string&)>& dim)
{
    if (sigma.is_identity()) return c;
    TChain r;
    Word out;
    for (const auto& [w, v] : c) {
        if (static_cast<int>(w.size()) != sigma.size()) throw RangeError("permute_factors: arity mismatch");
        int s = permute_word(sigma, w, out, dim);
        r.add(out, v * s);
    }
    return r;
}

// ---------------------------------------------------------------------------
// MCoalgebra

TChain MCoalgebra::structure(int n, const BarWord& A, const std::string& x)
{
    if (A.arity() != n) throw RangeError("structure: arity mismatch");
    if (!complex().has(x)) throw RangeError("structure: unknown cell " + x);
    Perm g = A.leader();
    BarWord a1 = g.is_identity() ? A : A.with_leader(Perm(n));
    std::string key;
    key.push_back(static_cast<char>(n));
    key += a1.bytes();
    key += '|';
    key += x;
    TChain base;
    bool found = false;
    {
        std::lock_guard<std::mutex> l(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            base = it->second;
            found = true;
        }
    }
    if (!found) {
        base = structure_leader_one(n, a1, x);
        std::lock_guard<std::mutex> l(mu_);
        memo_.emplace(key, base);
    }
    if (g.is_identity()) return base;
    const GradedComplex& c = complex();
    return permute_factors(g, base, [&](const std::string& s) { return c.dim(s); });
}

TChain MCoalgebra::structure(int n, const RChain& A, const Chain& x)
{
    TChain r;
    for (const auto& [a, u] : A)
        for (const auto& [y, v] : x) r.add(structure(n, a, y), u * v);
    return r;
}

Chain MCoalgebra::eta_eps(const std::string& x) const
{
    if (complex().dim(x) != 0) return {};
    return Chain(basepoint());
}

bool MCoalgebra::is_cartan() const
{
    const GradedComplex& c = complex();
    auto phi = [&](const Chain& ch) {
        Chain r;
        for (const auto& [y, v] : ch) r.add(*contraction(y), v);
        return r;
    };
    for (int d : c.dims())
        for (const auto& x : c.basis(d)) {
            auto p = contraction(x);
            if (!p) return false;
            Chain lhs = c.d(*p);
            lhs += phi(c.boundary(x));
            Chain rhs(x);
            rhs -= eta_eps(x);
            if (lhs != rhs) return false;
            if (!phi(*p).empty()) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Standard simplex models

namespace {

int vdim(const std::vector<int>& v) { return static_cast<int>(v.size()) - 1; }

std::string model_key(int n, const BarWord& A, int t)
{
    std::string k;
    k.push_back(static_cast<char>(n));
    k.push_back(static_cast<char>(t));
    k += A.bytes();
    return k;
}

}  // namespace

SimplexModels::VChain SimplexModels::phi_tensor(const VChain& c, int t) const
{
    VChain r;
    for (const auto& [w, v] : c) {
        const int n = static_cast<int>(w.size());
        long long before = 0;
        for (int k = 0; k < n; ++k) {
            bool tail_ok = true;
            for (int l = k + 1; l < n && tail_ok; ++l) tail_ok = w[l].size() == 1;
            if (tail_ok && w[k].back() != t) {
                VWord out;
                out.reserve(n);
                for (int l = 0; l < k; ++l) out.push_back(w[l]);
                std::vector<int> s = w[k];
                s.push_back(t);
                out.push_back(std::move(s));
                for (int l = k + 1; l < n; ++l) out.push_back({t});
                r.add(std::move(out), v * sign_of(before + static_cast<long long>(w[k].size())));
            }
            before += vdim(w[k]);
        }
    }
    return r;
}

const SimplexModels::VChain& SimplexModels::top(int n, const BarWord& A, int t)
{
    std::string key = model_key(n, A, t);
    {
        std::lock_guard<std::mutex> l(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    VChain r;
    if (t == 0) {
        if (A.dim() == 0) r.add(VWord(n, std::vector<int>{0}), 1);
    } else {
        std::vector<int> iota(t + 1);
        for (int i = 0; i <= t; ++i) iota[i] = i;
        VChain y;
        if (A.dim() > 0)
            for (const auto& [w, c] : differential(A)) y.add(eval(n, w, iota), c);
        for (int i = 0; i <= t; ++i) {
            std::vector<int> f = iota;
            f.erase(f.begin() + i);
            y.add(eval(n, A, f), sign_of(A.dim() + i));
        }
        r = phi_tensor(y, t);
    }
    std::lock_guard<std::mutex> l(mu_);
    return memo_.emplace(std::move(key), std::move(r)).first->second;
}

SimplexModels::VChain SimplexModels::eval(int n, const BarWord& A, const std::vector<int>& face)
{
    Perm g = A.leader();
    const VChain& base = top(n, g.is_identity() ? A : A.with_leader(Perm(n)), vdim(face));
    VChain r;
    VWord out;
    for (const auto& [w, v] : base) {
        VWord lab = w;
        for (auto& f : lab)
            for (auto& u : f) u = face[u];
        if (g.is_identity()) {
            r.add(std::move(lab), v);
        } else {
            int s = permute_word(g, lab, out, vdim);
            r.add(out, v * s);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Simplicial coalgebras

SimplicialCoalgebra::SimplicialCoalgebra(SimplicialSet x, std::shared_ptr<SimplexModels> models)
    : set_(std::move(x)), chains_(normalized_chains(set_)), models_(models ? std::move(models) : std::make_shared<SimplexModels>())
{
    if (set_.basepoint().empty()) throw InputError("simplicial set without a vertex");
    // Recognize a standard simplex: one top simplex whose faces exhaust the set.
    int k = set_.top_dim();
    if (k >= 0 && set_.simplices(k).size() == 1 && static_cast<int>(set_.simplices(0).size()) == k + 1) {
        const std::string& top = set_.simplices(k).front();
        std::size_t total = 0;
        for (int d = 0; d <= k; ++d) total += set_.simplices(d).size();
        bool ok = total == (std::size_t{1} << (k + 1)) - 1;
        std::map<std::string, std::vector<int>> verts;
        std::map<std::vector<int>, std::string> names;
        for (std::size_t m = 1; ok && m < (std::size_t{1} << (k + 1)); ++m) {
            std::vector<int> v;
            for (int i = 0; i <= k; ++i)
                if (m & (std::size_t{1} << i)) v.push_back(i);
            SimplexRef r = set_.face_of(top, v);
            if (r.degenerate() || verts.count(r.name)) ok = false;
            else {
                verts[r.name] = v;
                names[v] = r.name;
            }
        }
        if (ok) {
            std_vertices_ = std::move(verts);
            std_names_ = std::move(names);
            std_top_ = k;
        }
    }
}

std::optional<Chain> SimplicialCoalgebra::contraction(const std::string& x) const
{
    if (std_top_ < 0) return std::nullopt;
    std::vector<int> v = std_vertices_.at(x);
    if (v.back() == std_top_) return Chain{};
    int s = sign_of(static_cast<long long>(v.size()));
    v.push_back(std_top_);
    return Chain(std_names_.at(v), s);
}

Chain SimplicialCoalgebra::eta_eps(const std::string& x) const
{
    if (chains_.dim(x) != 0) return {};
    if (std_top_ >= 0) return Chain(std_names_.at({std_top_}));
    return Chain(set_.basepoint());
}

TChain SimplicialCoalgebra::structure_leader_one(int n, const BarWord& A, const std::string& x)
{
    int t = set_.dim(x);
    const auto& model = models_->top(n, A, t);
    std::map<std::vector<int>, std::optional<std::string>> faces;
    auto name_of = [&](const std::vector<int>& v) -> const std::optional<std::string>& {
        auto it = faces.find(v);
        if (it != faces.end()) return it->second;
        SimplexRef r = set_.face_of(x, v);
        std::optional<std::string> o;
        if (!r.degenerate()) o = r.name;
        return faces.emplace(v, o).first->second;
    };
    TChain r;
    for (const auto& [w, c] : model) {
        Word out;
        out.reserve(w.size());
        bool zero = false;
        for (const auto& f : w) {
            const auto& nm = name_of(f);
            if (!nm) {
                zero = true;
                break;
            }
            out.push_back(*nm);
        }
        if (!zero) r.add(std::move(out), c);
    }
    return r;
}

std::shared_ptr<SimplicialCoalgebra> unit_interval()
{
    SimplicialSet s;
    s.add_simplex("p0", 0);
    s.add_simplex("p1", 0);
    s.add_simplex("q", 1, {SimplexRef{"p1", {}}, SimplexRef{"p0", {}}});
    s.set_basepoint("p0");
    return std::make_shared<SimplicialCoalgebra>(std::move(s));
}

// ---------------------------------------------------------------------------
// Trivial coalgebras

TrivialCoalgebra::TrivialCoalgebra(GradedComplex c, std::string basepoint) : c_(std::move(c)), base_(std::move(basepoint))
{
    if (!c_.has(base_) || c_.dim(base_) != 0) throw InputError("trivial coalgebra: basepoint must be a 0-cell");
    if (c_.lo() < 0 || c_.rank(0) != 1) throw InputError("trivial coalgebra: complex must be reduced and non-negative");
    if (!c_.check_d2().empty()) throw InputError("trivial coalgebra: boundary does not square to zero");
}

TChain TrivialCoalgebra::structure_leader_one(int n, const BarWord& A, const std::string& x)
{
    if (A.dim() > 0) return {};
    TChain r;
    if (x == base_) {
        r.add(Word(n, base_), 1);
    } else {
        for (int i = 0; i < n; ++i) {
            Word w(n, base_);
            w[i] = x;
            r.add(std::move(w), 1);
        }
    }
    return r;
}

std::shared_ptr<TrivialCoalgebra> sphere_coalgebra(int n)
{
    if (n < 1) throw RangeError("sphere dimension must be positive");
    GradedComplex c;
    c.add_cell("*", 0);
    c.add_cell("e" + std::to_string(n), n);
    return std::make_shared<TrivialCoalgebra>(std::move(c), "*");
}

// ---------------------------------------------------------------------------
// Tensor products

TensorCoalgebra::TensorCoalgebra(std::shared_ptr<MCoalgebra> c1, std::shared_ptr<MCoalgebra> c2, SOperad* op, int max_dim)
    : c1_(std::move(c1)), c2_(std::move(c2)), op_(op)
{
    if (!op_) throw InputError("tensor coalgebra needs an operad");
    t_ = tensor_complex({&c1_->complex(), &c2_->complex()}, 0, max_dim);
}

std::string TensorCoalgebra::basepoint() const { return join_word({c1_->basepoint(), c2_->basepoint()}); }

TChain TensorCoalgebra::structure_leader_one(int n, const BarWord& A, const std::string& x)
{
    const Word& xy = split(x);
    const GradedComplex& k1 = c1_->complex();
    const GradedComplex& k2 = c2_->complex();
    int dx = k1.dim(xy[0]);
    TChain r;
    for (const auto& [p, c] : op_->diagonal(A)) {
        TChain f1 = c1_->structure(n, p.first, xy[0]);
        if (f1.empty()) continue;
        TChain f2 = c2_->structure(n, p.second, xy[1]);
        int s0 = sign_of(static_cast<long long>(p.second.dim()) * dx);
        for (const auto& [u, a] : f1)
            for (const auto& [v, b] : f2) {
                // u1..un v1..vn -> (u1 v1)..(un vn)
                long long e = 0, tail = 0;
                std::vector<int> du(n);
                for (int j = 0; j < n; ++j) du[j] = k1.dim(u[j]);
                for (int j = n - 1; j >= 0; --j) {
                    e += static_cast<long long>(k2.dim(v[j])) * tail;
                    tail += du[j];
                }
                Word out(n);
                for (int j = 0; j < n; ++j) out[j] = join_word({u[j], v[j]});
                r.add(std::move(out), c * a * b * s0 * sign_of(e));
            }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Quotients, suspension, wedges

QuotientCoalgebra::QuotientCoalgebra(std::shared_ptr<MCoalgebra> src, GradedComplex target, std::string basepoint,
                                     std::function<Chain(const std::string&)> project,
                                     std::function<std::string(const std::string&)> lift)
    : src_(std::move(src)), c_(std::move(target)), base_(std::move(basepoint)), project_(std::move(project)), lift_(std::move(lift))
{
}

TChain QuotientCoalgebra::structure_leader_one(int n, const BarWord& A, const std::string& x)
{
    TChain r;
    for (const auto& [w, c] : src_->structure(n, A, lift_(x))) {
        TChain acc(Word{}, c);
        for (const auto& f : w) {
            Chain p = project_(f);
            if (p.empty()) {
                acc.clear();
                break;
            }
            TChain next;
            for (const auto& [pw, pc] : acc)
                for (const auto& [y, yc] : p) {
                    Word w2 = pw;
                    w2.push_back(y);
                    next.add(std::move(w2), pc * yc);
                }
            acc = std::move(next);
        }
        r += acc;
    }
    return r;
}

std::shared_ptr<QuotientCoalgebra> suspension(std::shared_ptr<MCoalgebra> c, SOperad* op)
{
    const GradedComplex& cc = c->complex();
    if (cc.lo() < 0 || cc.rank(0) != 1) throw InputError("suspension needs a reduced coalgebra");
    const std::string b = c->basepoint();
    auto iv = unit_interval();
    int hi = cc.hi() + 1;
    auto src = std::make_shared<TensorCoalgebra>(c, iv, op, std::max(hi, 1));
    auto sname = [](const std::string& x) { return "s(" + x + ")"; };
    std::map<std::string, std::string> lifts{{"*", join_word({b, "p0"})}};
    GradedComplex target;
    target.add_cell("*", 0);
    for (int d : cc.dims())
        for (const auto& x : cc.basis(d))
            if (d > 0) {
                target.add_cell(sname(x), d + 1);
                lifts[sname(x)] = join_word({x, "q"});
            }
    auto proj = [b, sname](const std::string& cell) -> Chain {
        const std::string sep = "⊗";
        auto pos = cell.rfind(sep);
        std::string x = cell.substr(0, pos), i = cell.substr(pos + sep.size());
        if (x == b) return i == "q" ? Chain{} : Chain("*");
        if (i == "q") return Chain(sname(x));
        return {};
    };
    const GradedComplex& sc = src->complex();
    for (const auto& [y, l] : lifts) {
        if (y == "*") continue;
        Chain bd;
        for (const auto& [z, v] : sc.boundary(l)) bd.add(proj(z), v);
        target.set_boundary(y, std::move(bd));
    }
    return std::make_shared<QuotientCoalgebra>(src, std::move(target), "*", proj,
                                               [lifts](const std::string& y) { return lifts.at(y); });
}

WedgeCoalgebra::WedgeCoalgebra(std::shared_ptr<MCoalgebra> c, std::shared_ptr<MCoalgebra> d) : c_(std::move(c)), d_(std::move(d))
{
    w_.add_cell("*", 0);
    for (auto [src, tag] : {std::pair{c_.get(), std::string("L:")}, std::pair{d_.get(), std::string("R:")}}) {
        const GradedComplex& k = src->complex();
        const std::string b = src->basepoint();
        auto rename = [&](const std::string& x) { return x == b ? std::string("*") : tag + x; };
        for (int dd : k.dims())
            for (const auto& x : k.basis(dd))
                if (x != b) w_.add_cell(rename(x), dd);
        for (int dd : k.dims())
            for (const auto& x : k.basis(dd))
                if (x != b) w_.set_boundary(rename(x), k.boundary(x).map_keys(rename));
    }
}

TChain WedgeCoalgebra::structure_leader_one(int n, const BarWord& A, const std::string& x)
{
    MCoalgebra* src;
    std::string tag, y;
    if (x == "*") {
        src = c_.get();
        tag = "L:";
        y = src->basepoint();
    } else {
        tag = x.substr(0, 2);
        src = tag == "L:" ? c_.get() : d_.get();
        y = x.substr(2);
    }
    const std::string b = src->basepoint();
    return src->structure(n, A, y).map_keys([&](const Word& w) {
        Word o = w;
        for (auto& f : o) f = f == b ? std::string("*") : tag + f;
        return o;
    });
}

// ---------------------------------------------------------------------------
// Mapping cylinder

CylinderCoalgebra::CylinderCoalgebra(std::shared_ptr<MCoalgebra> c1, std::shared_ptr<MCoalgebra> c2, BasisMap g)
    : c1_(std::move(c1)), c2_(std::move(c2)), g_(std::move(g))
{
    const GradedComplex& k1 = c1_->complex();
    const GradedComplex& k2 = c2_->complex();
    for (int d : k2.dims())
        for (const auto& y : k2.basis(d))
            if (!c2_->contraction(y)) throw InputError("cylinder target must carry a contraction");
    Chain tgt = c2_->eta_eps(c2_->basepoint());
    if (tgt.size() != 1) throw InputError("cylinder target has no retraction vertex");
    t2_ = tgt.begin()->first;
    auto pre = [](const std::string& p) { return [p](const std::string& s) { return p + s; }; };
    for (int d : k1.dims())
        for (const auto& x : k1.basis(d)) {
            m_.add_cell("0:" + x, d);
            m_.add_cell("q:" + x, d + 1);
        }
    for (int d : k2.dims())
        for (const auto& y : k2.basis(d)) m_.add_cell("1:" + y, d, k2.boundary(y).map_keys(pre("1:")));
    for (int d : k1.dims())
        for (const auto& x : k1.basis(d)) {
            m_.set_boundary("0:" + x, k1.boundary(x).map_keys(pre("0:")));
            Chain b = k1.boundary(x).map_keys(pre("q:"));
            Chain gx = g_(x).map_keys(pre("1:"));
            gx -= Chain("0:" + x);
            b.add(gx, sign_of(d));
            m_.set_boundary("q:" + x, std::move(b));
        }
    if (!m_.check_d2().empty()) throw InputError("cylinder map is not a chain map");
}

Chain CylinderCoalgebra::psi(const Chain& c) const
{
    Chain r;
    for (const auto& [x, v] : c) {
        std::string tag = x.substr(0, 2), y = x.substr(2);
        if (tag == "q:") continue;
        Chain gx = tag == "0:" ? g_(y) : Chain(y);
        Chain part;
        for (const auto& [z, u] : gx) part.add(*c2_->contraction(z), u);
        r.add(part.map_keys([](const std::string& s) { return "1:" + s; }), v);
        if (tag == "0:") r.add("q:" + y, -v * sign_of(c1_->complex().dim(y)));
    }
    return r;
}

std::optional<Chain> CylinderCoalgebra::contraction(const std::string& x) const { return psi(Chain(x)); }

TChain CylinderCoalgebra::psi_tensor(const TChain& c) const
{
    TChain r;
    const std::string tv = "1:" + t2_;
    for (const auto& [w, v] : c) {
        const int n = static_cast<int>(w.size());
        long long before = 0;
        for (int k = 0; k < n; ++k) {
            bool tail_ok = true;
            for (int l = k + 1; l < n && tail_ok; ++l) tail_ok = m_.dim(w[l]) == 0;
            if (tail_ok) {
                for (const auto& [y, u] : psi(Chain(w[k]))) {
                    Word out(w.begin(), w.begin() + k);
                    out.push_back(y);
                    for (int l = k + 1; l < n; ++l) out.push_back(tv);
                    r.add(std::move(out), v * u * sign_of(before));
                }
            }
            before += m_.dim(w[k]);
        }
    }
    return r;
}

TChain CylinderCoalgebra::structure_on(int n, const BarWord& A, const Chain& c)
{
    TChain r;
    for (const auto& [x, v] : c) r.add(structure(n, A, x), v);
    return r;
}

TChain CylinderCoalgebra::structure_z(int n, const BarWord& A, const std::string& x)
{
    // F(A, z_x) for z_x = psi(0:x); A of any leader.
    Perm g = A.leader();
    BarWord a1 = g.is_identity() ? A : A.with_leader(Perm(n));
    std::string key;
    key.push_back(static_cast<char>(n));
    key += a1.bytes();
    key += '|';
    key += x;
    auto it = zmemo_.find(key);
    if (it == zmemo_.end()) {
        TChain y;
        if (a1.dim() > 0)
            for (const auto& [w, c] : differential(a1)) y.add(structure_z(n, w, x), c);
        // d z_x = 0:x - eta eps(0:x) - sum c_y z_y over dx = sum c_y y
        TChain dz = structure(n, a1, "0:" + x);
        if (c1_->complex().dim(x) == 0) dz -= structure(n, a1, "1:" + t2_);
        for (const auto& [yy, c] : c1_->complex().boundary(x)) dz.add(structure_z(n, a1, yy), -c);
        y.add(dz, sign_of(a1.dim()));
        it = zmemo_.emplace(key, psi_tensor(y)).first;
    }
    if (g.is_identity()) return it->second;
    return permute_factors(g, it->second, [&](const std::string& s) { return m_.dim(s); });
}

TChain CylinderCoalgebra::structure_leader_one(int n, const BarWord& A, const std::string& x)
{
    std::string tag = x.substr(0, 2), y = x.substr(2);
    auto pre = [&](const std::string& p) {
        return [p](const Word& w) {
            Word o = w;
            for (auto& f : o) f = p + f;
            return o;
        };
    };
    if (tag == "0:") return c1_->structure(n, A, y).map_keys(pre("0:"));
    if (tag == "1:") return c2_->structure(n, A, y).map_keys(pre("1:"));
    // q:x = eps_x (z_x - 1:phi2(g x)) with eps_x = -(-1)^{|x|}
    Chain p2;
    for (const auto& [z, u] : g_(y)) p2.add(*c2_->contraction(z), u);
    TChain r = structure_z(n, A, y);
    r -= structure_on(n, A, p2.map_keys([](const std::string& s) { return "1:" + s; }));
    r *= -sign_of(c1_->complex().dim(y));
    return r;
}

// ---------------------------------------------------------------------------

std::shared_ptr<MCoalgebra> coalgebra_from_json(const json& j)
{
    try {
        if (j.contains("structure")) {
            if (j.at("structure") != "trivial") throw InputError("unknown coalgebra structure " + j.at("structure").dump());
            return std::make_shared<TrivialCoalgebra>(GradedComplex::from_json(j.at("complex")), j.at("basepoint").get<std::string>());
        }
        return std::make_shared<SimplicialCoalgebra>(SimplicialSet::from_json(j));
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed coalgebra: ") + e.what());
    }
}

}  // namespace einf
