// Command-line front end. Exit codes: 0 ok, 1 mathematical violation, 2 input error.
#include "einf/barcobar.hpp"
#include "einf/steenrod.hpp"
#include "einf/telescope.hpp"
#include "einf/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace einf;
using nlohmann::json;

namespace {

constexpr int kMaxDim = 24;
constexpr int kMaxArity = 6;

#ifndef EINF_FIXTURES
#define EINF_FIXTURES "fixtures"
#endif

struct Options {
    std::string set, coalgebra, out, level = "desk", word = "1[]", cell, suite = "all";
    int max_dim = 6, mod = 2, arity = 2, dim = 2, max_i = 2, length = -1, max_level = -1;
    bool homology = false;
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

void check_bound(const char* flag, int v, int lo, int hi)
{
    if (v < lo) throw InputError(std::string(flag) + " must be >= " + std::to_string(lo));
    if (v > hi) throw RangeError(std::string(flag) + " = " + std::to_string(v) + " exceeds the capacity bound " + std::to_string(hi));
}

// --set takes a simplicial set, --coalgebra any coalgebra JSON; exactly one is required.
std::shared_ptr<MCoalgebra> input_coalgebra(const Options& o)
{
    if (o.set.empty() == o.coalgebra.empty()) throw InputError("give exactly one of --set or --coalgebra");
    if (!o.set.empty()) {
        json j = read_json(o.set);
        if (j.contains("structure")) throw InputError(o.set + " is not a simplicial set; use --coalgebra");
        return coalgebra_from_json(j);
    }
    return coalgebra_from_json(read_json(o.coalgebra));
}

std::string group_name(const Homology& h)
{
    std::vector<std::string> parts;
    if (h.betti == 1) parts.push_back("Z");
    if (h.betti > 1) parts.push_back("Z^" + std::to_string(h.betti));
    for (const auto& t : h.torsion) parts.push_back("Z/" + t.str());
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
}

void emit(const Options& o, const json& j)
{
    if (o.out.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write " + o.out);
    f << j.dump(2) << "\n";
    std::cout << "wrote " << o.out << "\n";
}

void print_homology(const GradedComplex& c, int lo, int hi)
{
    std::vector<long> b;
    for (int d = lo; d <= hi; ++d) {
        Homology h = smith_homology(c, d);
        std::cout << "H" << d << " = " << group_name(h) << "\n";
        b.push_back(h.betti);
    }
    std::cout << "betti:";
    for (long v : b) std::cout << " " << v;
    std::cout << "\n";
}

int cmd_homology(const Options& o)
{
    auto c = input_coalgebra(o);
    check_bound("--max-dim", o.max_dim, 0, kMaxDim);
    print_homology(c->complex(), 0, std::min(o.max_dim, c->complex().hi()));
    return 0;
}

int cmd_structure(const Options& o)
{
    auto c = input_coalgebra(o);
    check_bound("--arity", o.arity, 1, kMaxArity);
    BarWord a = BarWord::parse(o.word, o.arity);
    std::vector<std::string> cells;
    if (!o.cell.empty()) {
        if (!c->complex().has(o.cell)) throw InputError("no cell named " + o.cell);
        cells.push_back(o.cell);
    } else {
        for (int d = c->complex().lo(); d <= c->complex().hi(); ++d)
            for (const auto& x : c->complex().basis(d)) cells.push_back(x);
    }
    for (const auto& x : cells) {
        std::cout << "f_" << o.arity << "(" << a.to_string() << " x " << x << ") =";
        TChain r = c->structure(o.arity, a, x);
        if (r.empty()) std::cout << " 0";
        for (const auto& [w, v] : r) std::cout << " " << (v < 0 ? "- " : "+ ") << abs(v) << " " << join_word(w);
        std::cout << "\n";
    }
    return 0;
}

int cmd_cup(const Options& o)
{
    auto c = input_coalgebra(o);
    check_bound("--max-dim", o.max_dim, 0, kMaxDim);
    if (o.mod < 2) throw InputError("--mod must be a prime");
    for (int d = 0; d <= std::min(o.max_dim, c->complex().hi()); ++d)
        std::cout << "H^" << d << "(Z/" << o.mod << ") rank " << ModPCohomology(c->complex(), d, o.mod).rank() << "\n";
    for (const auto& e : ring_table(*c, o.mod, o.max_dim)) {
        if (e.product.empty()) continue;
        std::cout << "x" << e.d1 << "_" << e.i << " * x" << e.d2 << "_" << e.j << " =";
        for (int v : e.product) std::cout << " " << v;
        std::cout << "\n";
    }
    return 0;
}

int cmd_steenrod(const Options& o)
{
    auto c = input_coalgebra(o);
    if (o.mod != 2) throw InputError("only --mod 2 is supported (odd-primary powers are not implemented)");
    check_bound("--max-i", o.max_i, 0, kMaxDim);
    const int top = c->complex().hi();
    for (int i = 0; i <= o.max_i; ++i)
        for (int d = 0; d + i <= top; ++d) {
            auto m = steenrod_matrix(*c, i, d);
            if (m.empty()) continue;
            std::cout << "Sq^" << i << ": H^" << d << " -> H^" << d + i << "\n";
            const std::size_t rows = m[0].size();
            for (std::size_t r = 0; r < rows; ++r) {
                std::cout << " ";
                for (const auto& col : m) std::cout << " " << col[r];
                std::cout << "\n";
            }
        }
    return 0;
}

int cobar_report(const Options& o, std::shared_ptr<MCoalgebra> c, bool homology)
{
    check_bound("--max-dim", o.max_dim, 0, kMaxDim);
    SOperad op;
    auto a = ainfty_of_mcoalgebra(c, op, 4);
    CobarComplex f = make_cobar(a, o.max_dim, o.length);
    if (!f.complex.check_d2().empty()) throw MathError("cobar differential does not square to zero");
    for (int d = std::max(f.complex.lo(), o.length < 0 ? 0 : -o.length); d <= o.max_dim; ++d)
        std::cout << "rank C" << d << " = " << f.complex.rank(d) << "\n";
    if (homology) print_homology(f.complex, o.length < 0 ? 0 : f.complex.lo() + 1, o.max_dim);
    return 0;
}

int cmd_cobar(const Options& o)
{
    if (o.coalgebra.empty() && o.set.empty()) throw InputError("cobar needs --coalgebra");
    return cobar_report(o, input_coalgebra(o), o.homology);
}

int cmd_loopspace(const Options& o) { return cobar_report(o, input_coalgebra(o), true); }

int cmd_cn(const Options& o)
{
    check_bound("--arity", o.arity, 1, 3);
    check_bound("--max-dim", o.max_dim, 0, 6);
    const int level = o.max_level < 0 ? o.max_dim : o.max_level;
    check_bound("--level", level, 1, 6);
    SOperad op;
    TwistingCochainCn c = compute_cn(op, o.arity, o.max_dim, level);
    json values = json::object();
    for (const auto& [x, v] : c.canonical) {
        json terms = json::object();
        for (const auto& [cell, k] : v) terms[seq_cell_name(cell)] = k.str();
        values[x.to_string()] = terms;
    }
    emit(o, json{{"arity", o.arity}, {"max_dim", o.max_dim}, {"max_level", level}, {"values", values}});
    return 0;
}

int cmd_export(const Options& o)
{
    auto c = input_coalgebra(o);
    json j{{"basepoint", c->basepoint()}, {"complex", c->complex().to_json()}};
    if (o.dim >= 0 && o.arity >= 1) {
        check_bound("--arity", o.arity, 1, kMaxArity);
        check_bound("--dim", o.dim, 0, 4);
        json s = json::object();
        for (int d = 0; d <= o.dim; ++d)
            for (const auto& a : bar_basis(o.arity, d, true))
                for (int e = c->complex().lo(); e <= c->complex().hi(); ++e)
                    for (const auto& x : c->complex().basis(e)) {
                        TChain r = c->structure(o.arity, a, x);
                        if (r.empty()) continue;
                        json terms = json::array();
                        for (const auto& [w, v] : r) terms.push_back(json{{"word", w}, {"coeff", v.str()}});
                        s[a.to_string()][x] = terms;
                    }
        j["structure"] = json{{"arity", o.arity}, {"max_dim", o.dim}, {"values", s}};
    }
    emit(o, j);
    return 0;
}

int cmd_verify(const Options& o)
{
    VerifyLevel level = VerifyLevel::parse(o.level);
    if (o.suite == "operad") {
        check_bound("--arity", o.arity, 1, 4);
        check_bound("--dim", o.dim, 0, 3);
        level.operad_arity = o.arity;
        level.operad_dim = o.dim;
    }
    std::vector<std::string> names;
    if (o.suite == "all") names = suite_names();
    else names.push_back(o.suite);
    const char* fx = std::getenv("EINF_FIXTURES");
    const std::string fixtures = fx ? fx : EINF_FIXTURES;
    SOperad op;
    bool all_ok = true;
    for (const auto& n : names) {
        SuiteResult r = run_suite(n, op, fixtures, level);
        std::cout << (r.ok() ? "PASS " : "FAIL ") << n << " (" << r.checks << " checks";
        if (r.failures) std::cout << ", " << r.failures << " violations";
        std::cout << ")\n";
        for (const auto& note : r.notes) std::cout << "  " << note << "\n";
        for (const auto& v : r.violations) std::cout << "  violation: " << v << "\n";
        all_ok = all_ok && r.ok();
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact chain-level E-infinity computations"};
    app.require_subcommand(1);
    Options o;

    auto input = [&](CLI::App* s) {
        s->add_option("--set", o.set, "simplicial set JSON");
        s->add_option("--coalgebra", o.coalgebra, "coalgebra JSON");
    };
    auto* homology = app.add_subcommand("homology", "integral homology of the chains");
    input(homology);
    homology->add_option("--max-dim", o.max_dim, "top dimension");

    auto* structure = app.add_subcommand("structure", "structure map f_n(A x cell)");
    input(structure);
    structure->add_option("--arity", o.arity, "n");
    structure->add_option("--word", o.word, "bar word, e.g. 1[(12)]");
    structure->add_option("--cell", o.cell, "cell name (default: all cells)");

    auto* cup = app.add_subcommand("cup", "cup products of cohomology basis classes mod p");
    input(cup);
    cup->add_option("--mod", o.mod, "prime");
    cup->add_option("--max-dim", o.max_dim, "top total degree");

    auto* steenrod = app.add_subcommand("steenrod", "matrices of Sq^i between cohomology bases");
    input(steenrod);
    steenrod->add_option("--mod", o.mod, "must be 2");
    steenrod->add_option("--max-i", o.max_i, "largest i");

    auto* cobar_cmd = app.add_subcommand("cobar", "cobar construction of an A-infinity coalgebra");
    input(cobar_cmd);
    cobar_cmd->add_option("--max-dim", o.max_dim, "top dimension");
    cobar_cmd->add_option("--length", o.length, "truncate at this word length (for non-reduced inputs)");
    cobar_cmd->add_flag("--homology", o.homology, "also print homology");

    auto* loop = app.add_subcommand("loopspace", "homology of the cobar construction");
    input(loop);
    loop->add_option("--max-dim", o.max_dim, "top dimension");

    auto* cn = app.add_subcommand("cn", "twisting cochain c_n into Z_n");
    cn->add_option("--arity", o.arity, "n");
    cn->add_option("--max-dim", o.max_dim, "top dimension of RS_n");
    cn->add_option("--level", o.max_level, "truncation level (default: --max-dim)");
    cn->add_option("--out", o.out, "output JSON (default: stdout)");

    auto* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("suite", o.suite, "all or one of the suite names");
    verify->add_option("--level", o.level, "desk or quick");
    verify->add_option("--arity", o.arity, "operad suite arity bound");
    verify->add_option("--dim", o.dim, "operad suite dimension bound");

    auto* exp = app.add_subcommand("export", "write chains and structure maps as JSON");
    input(exp);
    exp->add_option("--arity", o.arity, "structure arity");
    exp->add_option("--dim", o.dim, "structure words up to this dimension (-1: none)");
    exp->add_option("--out", o.out, "output JSON (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*homology) return cmd_homology(o);
        if (*structure) return cmd_structure(o);
        if (*cup) return cmd_cup(o);
        if (*steenrod) return cmd_steenrod(o);
        if (*cobar_cmd) return cmd_cobar(o);
        if (*loop) return cmd_loopspace(o);
        if (*cn) return cmd_cn(o);
        if (*verify) return cmd_verify(o);
        if (*exp) return cmd_export(o);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const MathError& e) {
        std::cerr << "mathematical error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
