#include "einf/verify.hpp"

#include "einf/barcobar.hpp"
#include "einf/steenrod.hpp"
#include "einf/telescope.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace einf {

void SuiteResult::expect(bool cond, const std::string& what)
{
    ++checks;
    if (cond) return;
    ++failures;
    if (violations.size() < 5) violations.push_back(what);
}

VerifyLevel VerifyLevel::parse(const std::string& name)
{
    VerifyLevel l;
    if (name == "desk") return l;
    if (name == "quick") {
        l.operad_arity = 2;
        l.operad_dim = 2;
        l.resolution_arity = 3;
        l.resolution_dim = 3;
        l.resolution_cap = 500;
        l.structure_dim = 1;
        l.cobar_dim = 4;
        l.twist_dim = 4;
        l.twist_homology = 3;
        l.ainfty_k = 4;
        l.telescope_level = 2;
        l.telescope_dim = 2;
        l.cn_dim = 2;
        l.cn_bar_dim = 1;
        l.duality_len = 2;
        return l;
    }
    throw InputError("unknown level '" + name + "' (expected desk or quick)");
}

namespace {

using Clock = std::chrono::steady_clock;

std::shared_ptr<MCoalgebra> load_fixture(const std::string& dir, const std::string& name)
{
    std::ifstream in(dir + "/" + name);
    if (!in) throw InputError("cannot open fixture " + dir + "/" + name);
    return coalgebra_from_json(nlohmann::json::parse(in));
}

std::vector<BarWord> words_upto(int n, int dmax, bool leader_one)
{
    std::vector<BarWord> r;
    for (int d = 0; d <= dmax; ++d)
        for (const auto& w : bar_basis(n, d, leader_one)) r.push_back(w);
    return r;
}

long long ipow(long long b, int e)
{
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Every word of RS_n in dimension d, or a fixed pseudo-random sample of `cap` of them.
std::vector<BarWord> words_or_sample(int n, int d, long cap, bool& sampled)
{
    const auto perms = all_perms(n);
    const long long total = static_cast<long long>(perms.size()) * ipow(static_cast<long long>(perms.size()) - 1, d);
    sampled = total > cap;
    if (!sampled) return bar_basis(n, d, false);
    std::mt19937 rng(static_cast<unsigned>(1000 * n + d));
    std::vector<BarWord> r;
    for (long k = 0; k < cap; ++k) {
        std::vector<Perm> letters;
        for (int j = 0; j < d; ++j) letters.push_back(perms[1 + rng() % (perms.size() - 1)]);
        r.emplace_back(perms[rng() % perms.size()], letters);
    }
    return r;
}

std::vector<long> betti(const GradedComplex& c, int lo, int hi, SuiteResult& r, const std::string& tag)
{
    std::vector<long> b;
    for (int d = lo; d <= hi; ++d) {
        Homology h = smith_homology(c, d);
        r.expect(h.torsion.empty(), tag + ": torsion in dimension " + std::to_string(d));
        b.push_back(h.betti);
    }
    return b;
}

std::string join(const std::vector<long>& v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

// (1^{i-1} (x) f_a (x) 1^{m-i}) applied to f_b(x), Koszul signed.
TChain apply_in_slot(MCoalgebra& c, int n, const BarWord& a, int i, const TChain& fb)
{
    const GradedComplex& k = c.complex();
    TChain r;
    for (const auto& [w, v] : fb) {
        long long before = 0;
        for (int j = 0; j < i - 1; ++j) before += k.dim(w[j]);
        for (const auto& [u, c2] : c.structure(n, a, w[i - 1])) {
            Word out(w.begin(), w.begin() + (i - 1));
            out.insert(out.end(), u.begin(), u.end());
            out.insert(out.end(), w.begin() + i, w.end());
            r.add(std::move(out), v * c2 * sign_of(before * a.dim()));
        }
    }
    return r;
}

using Triple = std::tuple<BarWord, BarWord, BarWord>;

Lin<Triple> iterate_coproduct(const BarWord& w, bool left)
{
    Lin<Triple> r;
    for (const auto& [p, v] : coproduct_R(w)) {
        const BarWord& split = left ? p.first : p.second;
        for (const auto& [q, u] : coproduct_R(split))
            r.add(left ? Triple(q.first, q.second, p.second) : Triple(p.first, q.first, q.second), v * u);
    }
    return r;
}

}  // namespace

SuiteResult verify_operad_suite(SOperad& op, int arity, int dim)
{
    SuiteResult r;
    r.name = "operad";
    OperadReport rep = verify_operad(op, dim, arity);
    r.checks = rep.checks;
    r.failures = static_cast<long>(rep.violations.size());
    for (std::size_t i = 0; i < rep.violations.size() && i < 5; ++i) r.violations.push_back(rep.violations[i]);
    for (const auto& [k, v] : rep.per_identity) r.notes.push_back(k + ": " + std::to_string(v));
    return r;
}

SuiteResult verify_resolution_suite(int max_arity, int max_dim, long cap)
{
    SuiteResult r;
    r.name = "resolution";
    for (int n = 1; n <= max_arity; ++n) {
        const auto perms = all_perms(n);
        for (int d = 0; d <= max_dim; ++d) {
            bool sampled = false;
            auto words = words_or_sample(n, d, cap, sampled);
            if (sampled)
                r.notes.push_back("n=" + std::to_string(n) + " dim " + std::to_string(d) + ": " +
                                  std::to_string(words.size()) + " sampled words");
            for (std::size_t k = 0; k < words.size(); ++k) {
                const BarWord& w = words[k];
                const std::string tag = "n=" + std::to_string(n) + " " + w.to_string();
                r.expect(differential(differential(w)).empty(), tag + ": d^2 != 0");
                RChain id(w);
                if (d == 0) id.add(BarWord::unit(n), -1);
                r.expect(differential(phi(w)) + phi(differential(w)) == id, tag + ": d phi + phi d != 1 - eta eps");
                r.expect(phi(phi(w)).empty(), tag + ": phi^2 != 0");
                r.expect(differential(coproduct_R(w)) == coproduct_R(differential(w)), tag + ": coproduct not a chain map");
                r.expect(iterate_coproduct(w, true) == iterate_coproduct(w, false), tag + ": coproduct not coassociative");
                const Perm& g = perms[k % perms.size()];
                r.expect(coproduct_R(act(g, w)) == act_diag(g, coproduct_R(w)), tag + ": coproduct not equivariant");
            }
        }
    }
    return r;
}

SuiteResult verify_structure_suite(SOperad& op, int max_dim)
{
    SuiteResult r;
    r.name = "structure";
    SimplicialCoalgebra s(standard_simplex(2));
    const GradedComplex& k = s.complex();
    auto dimf = [&](const std::string& c) { return k.dim(c); };
    for (int n = 2; n <= 3; ++n) {
        for (const auto& A : words_upto(n, max_dim, false))
            for (int d = 0; d <= k.hi(); ++d)
                for (const auto& x : k.basis(d)) {
                    const std::string tag = "f_" + std::to_string(n) + "(" + A.to_string() + " x " + x + ")";
                    TChain lhs = tensor_d(s.structure(n, A, x), s.factors(n));
                    TChain rhs = s.structure(n, differential(A), Chain(x));
                    rhs.add(s.structure(n, RChain(A), k.boundary(x)), sign_of(A.dim()));
                    r.expect(lhs == rhs, tag + ": not a chain map");
                    for (const auto& g : all_perms(n))
                        r.expect(s.structure(n, act(g, A), x) == permute_factors(g, s.structure(n, A, x), dimf),
                                 tag + ": not equivariant");
                }
        // leftmost-factor invariant: the last factor other than the vertex [2] is a face ending in 2
        for (const auto& A : words_upto(n, max_dim, true)) {
            if (A.dim() == 0) continue;
            for (const auto& [w, c] : s.structure(n, A, "[0,1,2]")) {
                int j = n - 1;
                while (j >= 0 && w[j] == "[2]") --j;
                r.expect(j >= 0 && w[j].size() > 3 && w[j].substr(w[j].size() - 3) == ",2]",
                         A.to_string() + ": term " + join_word(w) + " outside the image of the homotopy");
            }
        }
    }
    // composition diagram on all pairs of small words and a fixed sample in higher dimension
    auto check_comp = [&](int n, const BarWord& a, int i, const BarWord& b, const std::string& x) {
        TChain lhs = apply_in_slot(s, n, a, i, s.structure(b.arity(), b, x));
        TChain rhs = s.structure(n + b.arity() - 1, op.compose(a, i, b), Chain(x));
        r.expect(lhs == rhs, a.to_string() + " o_" + std::to_string(i) + " " + b.to_string() + " on " + x);
    };
    for (int n = 1; n <= 2; ++n)
        for (int m = 1; m <= 2; ++m)
            for (const auto& a : words_upto(n, 1, false))
                for (const auto& b : words_upto(m, 1, false))
                    for (int i = 1; i <= m; ++i)
                        for (int d = 0; d <= k.hi(); ++d)
                            for (const auto& x : k.basis(d)) check_comp(n, a, i, b, x);
    std::mt19937 rng(5);
    auto w2 = words_upto(2, max_dim, false);
    auto w3 = words_upto(3, 1, false);
    for (int t = 0; t < 40; ++t) {
        const BarWord& a = w2[rng() % w2.size()];
        const BarWord& b = t % 2 ? w2[rng() % w2.size()] : w3[rng() % w3.size()];
        int i = 1 + static_cast<int>(rng() % b.arity());
        check_comp(2, a, i, b, "[0,1,2]");
    }
    // the unit interval
    auto iv = unit_interval();
    BarWord e = BarWord::unit(2), t = BarWord::parse("[(12)]", 2);
    TChain aw(Word{"p0", "q"});
    aw.add(Word{"q", "p1"}, 1);
    r.expect(iv->structure(2, e, "p0") == TChain(Word{"p0", "p0"}), "interval: 1[] on p0");
    r.expect(iv->structure(2, e, "p1") == TChain(Word{"p1", "p1"}), "interval: 1[] on p1");
    r.expect(iv->structure(2, e, "q") == aw, "interval: 1[] on q");
    r.expect(iv->structure(2, t, "q") == TChain(Word{"q", "q"}), "interval: 1[(12)] on q");
    for (const char* x : {"p0", "p1"}) r.expect(iv->structure(2, t, x).empty(), std::string("interval: 1[(12)] on ") + x);
    return r;
}

SuiteResult verify_steenrod_suite(const std::string& fixtures)
{
    SuiteResult r;
    r.name = "steenrod";
    auto rp2 = load_fixture(fixtures, "rp2.json");
    auto m = steenrod_matrix(*rp2, 1, 1);
    r.expect(m.size() == 1 && m[0] == std::vector<int>{1}, "Sq^1: H^1(RP^2) -> H^2(RP^2) does not have rank 1");
    for (const char* f : {"rp2.json", "torus.json", "rp3.json", "s2_collapsed.json"}) {
        auto c = load_fixture(fixtures, f);
        for (int d = 0; d <= c->complex().hi(); ++d) {
            ModPCohomology h(c->complex(), d, 2);
            for (std::size_t j = 0; j < h.rank(); ++j) {
                std::vector<int> e(h.rank(), 0);
                e[j] = 1;
                r.expect(h.coordinates(steenrod_square(*c, 0, h.basis()[j])) == e,
                         std::string(f) + ": Sq^0 != id in degree " + std::to_string(d));
            }
        }
    }
    auto torus = load_fixture(fixtures, "torus.json");
    Matrix p = cup_pairing(*torus, 1, 1);
    Int det = p.rows == 2 ? determinant(p) : Int(0);
    r.expect(det == 1 || det == -1, "torus cup pairing determinant is " + det.str());
    r.notes.push_back("torus pairing det " + det.str());
    return r;
}

SuiteResult verify_cobar_suite(SOperad& op, const std::string& fixtures, int max_dim)
{
    SuiteResult r;
    r.name = "cobar";
    auto b3 = cobar(ainfty_of_mcoalgebra(load_fixture(fixtures, "b3.json"), op, 4), max_dim);
    r.expect(b3.complex.check_d2().empty(), "cobar(B^3): d^2 != 0");
    std::vector<long> want3;
    for (int d = 0; d <= max_dim; ++d) want3.push_back(d % 2 == 0 ? 1 : 0);
    auto got3 = betti(b3.complex, 0, max_dim, r, "B^3");
    r.expect(got3 == want3, "H(cobar B^3) = " + join(got3));
    const int d2 = std::min(max_dim, 6);
    auto b2 = cobar(ainfty_of_mcoalgebra(load_fixture(fixtures, "b2.json"), op, 4), d2);
    auto got2 = betti(b2.complex, 0, d2, r, "B^2");
    r.expect(got2 == std::vector<long>(d2 + 1, 1), "H(cobar B^2) = " + join(got2));
    auto s3 = cobar(ainfty_of_mcoalgebra(load_fixture(fixtures, "s3_reduced.json"), op, 4), d2);
    r.expect(s3.complex.check_d2().empty(), "cobar(S^3): d^2 != 0");
    auto gots = betti(s3.complex, 0, d2, r, "S^3");
    r.expect(gots == std::vector<long>(got3.begin(), got3.begin() + d2 + 1), "H(cobar S^3) = " + join(gots));
    r.notes.push_back("B^3: " + join(got3));
    r.notes.push_back("B^2: " + join(got2));
    r.notes.push_back("S^3: " + join(gots));
    return r;
}

SuiteResult verify_twisted_suite(SOperad& op, const std::string& fixtures, int max_dim, int homology_dim)
{
    SuiteResult r;
    r.name = "twisted";
    auto c = ainfty_of_mcoalgebra(load_fixture(fixtures, "s2_collapsed.json"), op, 4);
    auto f = cobar(c, max_dim);
    auto x = canonical_twist(c);
    for (const auto& v : check_twisting_cochain(c, f, x, max_dim)) r.expect(false, "twisting identity: " + v);
    r.expect(true, "twisting identity");
    auto t = twisted_tensor(c, f, x, homology_dim);
    r.expect(t.complex.check_d2().empty(), "twisted tensor: d^2 != 0");
    auto b = betti(t.complex, 0, homology_dim, r, "C (x) F C");
    std::vector<long> want(homology_dim + 1, 0);
    want[0] = 1;
    r.expect(b == want, "H(C (x) F C) = " + join(b));
    r.notes.push_back("H(C (x) F C): " + join(b));
    return r;
}

SuiteResult verify_ainfty_suite(SOperad& op, int kmax)
{
    SuiteResult r;
    r.name = "ainfty";
    auto f = op.ainfty_images(kmax);
    r.expect(f[2] == RChain(BarWord::unit(2)), "f(D_2) != 1[]");
    for (int n = 3; n <= kmax; ++n) {
        RChain total = differential(f[n]) + op.ainfty_quadratic(f, n);
        r.expect(total.empty(), "A-infinity identity fails at k=" + std::to_string(n) + ": " + to_string(total));
        for (const auto& [w, v] : f[n]) r.expect(w.dim() == n - 2, "f(D_" + std::to_string(n) + ") has wrong degree");
        r.expect(f[n].empty(), "f(D_" + std::to_string(n) + ") is nonzero");
    }
    return r;
}

SuiteResult verify_telescope_suite(SOperad& op, int max_level, int max_dim)
{
    SuiteResult r;
    r.name = "telescope";
    for (const auto& c : z_basis(2, max_level, max_dim))
        r.expect(z_boundary(op, z_boundary(op, c)).empty(), "Z: d^2 != 0 on " + seq_cell_name(c));
    // Y: every cell below the top level; on the top level (arity n + max_level) leader-one words of
    // dimension < max_dim, since the full basis there runs into millions of cells.
    auto check_y = [&](const SeqCell& c) {
        r.expect(y_boundary(op, y_boundary(op, c)).empty(), "Y: d^2 != 0 on " + seq_cell_name(c));
    };
    for (const auto& c : y_basis(2, max_level - 1, max_dim)) check_y(c);
    long top = 0;
    for (int a = 0; a <= max_level; ++a)
        for (int d = 0; d < max_dim; ++d)
            for (const auto& w : bar_basis(2 + max_level, d, true)) {
                check_y(SeqCell{{a, max_level - a}, w});
                ++top;
            }
    r.notes.push_back(std::to_string(top) + " leader-one cells of Y'_2 at level " + std::to_string(max_level));
    GradedComplex a = z_complex(op, 2, max_level, max_dim);
    GradedComplex b = z_telescope_complex(op, 2, max_level, max_dim);
    r.expect(a == b, "telescope path and boundary formula differ");
    for (int d = a.lo(); d <= a.hi(); ++d)
        r.expect(boundary_matrix(a, d) == boundary_matrix(b, d), "boundary matrices differ in dimension " + std::to_string(d));
    r.expect(b.check_d2().empty(), "telescope: d^2 != 0");
    r.notes.push_back(std::to_string(a.size()) + " cells of Z'_2");
    return r;
}

SuiteResult verify_cn_suite(SOperad& op, int max_dim, int bar_dim)
{
    SuiteResult r;
    r.name = "cn";
    const Perm tau = Perm::from_one_line({2, 1});
    TwistingCochainCn c = compute_cn(op, 2, max_dim, max_dim);
    for (int d = 0; d <= max_dim; ++d)
        for (const auto& x : bar_basis(2, d, false)) {
            SeqChain res = cn_residual(op, c, x);
            r.expect(res.empty(), "residual on " + x.to_string() + ": " + to_string(res));
            r.expect(c(act(tau, x)) == act_z(tau, c(x)), "c_2 not equivariant on " + x.to_string());
        }
    // B(c_2) against the bar differential, modulo levels above M and words of length >= L
    const int M = bar_dim, L = bar_dim + 1;
    TwistingCochainCn cb = compute_cn(op, 2, bar_dim, M);
    AInftyAlgebra<SeqCell> alg = z_algebra(op, M);
    for (int d = 0; d <= bar_dim; ++d)
        for (const auto& x : bar_basis(2, d, true)) {
            Lin<std::vector<SeqCell>> lhs, rhs;
            for (const auto& [w, v] : bar_cn(cb, x, L))
                for (const auto& [y, yv] : bar_d(alg, w))
                    if (static_cast<int>(y.size()) < L) lhs.add(y, v * yv);
            for (const auto& [x2, v] : differential(x))
                for (const auto& [w, wv] : bar_cn(cb, x2, L))
                    if (static_cast<int>(w.size()) < L) rhs.add(w, v * wv);
            r.expect(lhs == rhs, "B(c_2) not a chain map on " + x.to_string());
        }
    r.notes.push_back(std::to_string(c.canonical.size()) + " leader-one values");
    return r;
}

SuiteResult verify_duality_suite(SOperad& op, const std::string& fixtures, int max_len)
{
    SuiteResult r;
    r.name = "duality";
    auto c = ainfty_of_mcoalgebra(load_fixture(fixtures, "interval.json"), op, 3);
    auto bad = check_bar_dual_cobar(c, max_len);
    for (const auto& v : bad) r.expect(false, v);
    r.expect(true, "pairing");
    r.expect(bar_cobar_pairing(c.complex, {}, {}) == 1, "empty words pair to 1");
    return r;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"operad", "resolution", "structure", "steenrod", "cobar",
                                                "twisted", "ainfty", "telescope", "cn", "duality"};
    return names;
}

SuiteResult run_suite(const std::string& name, SOperad& op, const std::string& fixtures, const VerifyLevel& l)
{
    const auto t0 = Clock::now();
    SuiteResult r;
    if (name == "operad") r = verify_operad_suite(op, l.operad_arity, l.operad_dim);
    else if (name == "resolution") r = verify_resolution_suite(l.resolution_arity, l.resolution_dim, l.resolution_cap);
    else if (name == "structure") r = verify_structure_suite(op, l.structure_dim);
    else if (name == "steenrod") r = verify_steenrod_suite(fixtures);
    else if (name == "cobar") r = verify_cobar_suite(op, fixtures, l.cobar_dim);
    else if (name == "twisted") r = verify_twisted_suite(op, fixtures, l.twist_dim, l.twist_homology);
    else if (name == "ainfty") r = verify_ainfty_suite(op, l.ainfty_k);
    else if (name == "telescope") r = verify_telescope_suite(op, l.telescope_level, l.telescope_dim);
    else if (name == "cn") r = verify_cn_suite(op, l.cn_dim, l.cn_bar_dim);
    else if (name == "duality") r = verify_duality_suite(op, fixtures, l.duality_len);
    else throw InputError("unknown suite '" + name + "'");
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

}  // namespace einf
