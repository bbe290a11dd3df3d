#include "einf/mapseq.hpp"

#include <map>
#include <memory>

namespace einf {

std::string telescope_name(int level, const std::string& x) { return "S" + std::to_string(level) + ":" + x; }

std::pair<int, std::string> split_telescope_name(const std::string& name)
{
    auto colon = name.find(':');
    if (name.empty() || name[0] != 'S' || colon == std::string::npos) throw InputError("not a telescope cell: " + name);
    return {std::stoi(name.substr(1, colon - 1)), name.substr(colon + 1)};
}

namespace {

Chain apply_f(const RightMappingSequence& s, int i, int j, const Chain& c)
{
    Chain r;
    if (j > s.max_j || i + j + 1 >= static_cast<int>(s.levels.size())) return r;
    for (const auto& [x, v] : c) r.add(s.f(i, j, x), v);
    return r;
}

}  // namespace

Chain telescope_d(const RightMappingSequence& s, int level, const std::string& x)
{
    const int sg = sign_of(level);
    Chain r;
    for (const auto& [y, v] : s.levels.at(level).boundary(x)) r.add(telescope_name(level, y), v * sg);
    for (int j = 0; j <= s.max_j && level + j + 1 < static_cast<int>(s.levels.size()); ++j)
        for (const auto& [y, v] : s.f(level, j, x)) r.add(telescope_name(level + j + 1, y), v * sg);
    return r;
}

GradedComplex telescope_complex(const RightMappingSequence& s, int lo, int hi)
{
    GradedComplex t;
    for (std::size_t a = 0; a < s.levels.size(); ++a)
        for (int d : s.levels[a].dims()) {
            int td = d - static_cast<int>(a);
            if (td < lo || td > hi) continue;
            for (const auto& x : s.levels[a].basis(d)) t.add_cell(telescope_name(a, x), td);
        }
    for (std::size_t a = 0; a < s.levels.size(); ++a)
        for (int d : s.levels[a].dims()) {
            int td = d - static_cast<int>(a);
            if (td < lo || td > hi) continue;
            for (const auto& x : s.levels[a].basis(d)) {
                Chain b;
                for (const auto& [y, v] : telescope_d(s, a, x))
                    if (t.has(y)) b.add(y, v);
                t.set_boundary(telescope_name(a, x), std::move(b));
            }
        }
    return t;
}

std::vector<std::string> check_coherence(const RightMappingSequence& s)
{
    std::vector<std::string> bad;
    const int L = static_cast<int>(s.levels.size());
    for (int i = 0; i < L; ++i)
        for (int d : s.levels[i].dims())
            for (const auto& x : s.levels[i].basis(d))
                for (int j = 0; j <= 2 * s.max_j + 1 && i + j + 1 < L; ++j) {
                    Chain r;
                    for (int a = 1; a <= j; ++a) r.add(apply_f(s, i + a, j - a, apply_f(s, i, a - 1, Chain(x))), sign_of(a));
                    r.add(s.levels[i + j + 1].d(apply_f(s, i, j, Chain(x))), sign_of(j + 1));
                    r.add(apply_f(s, i, j, s.levels[i].boundary(x)), 1);
                    if (!r.empty()) bad.push_back("level " + std::to_string(i) + " j=" + std::to_string(j) + " at " + x);
                }
    return bad;
}

namespace {

struct ProductCell {
    int a, b;
    std::string x, y;
};

std::string product_name(int a, const std::string& x, int b, const std::string& y)
{
    return "[" + std::to_string(a) + "]" + x + " (x) [" + std::to_string(b) + "]" + y;
}

}  // namespace

RightMappingSequence telescope_product(const RightMappingSequence& s1, const RightMappingSequence& s2)
{
    auto cells = std::make_shared<std::map<std::string, ProductCell>>();
    RightMappingSequence p;
    const int L1 = static_cast<int>(s1.levels.size()), L2 = static_cast<int>(s2.levels.size());
    p.levels.resize(L1 + L2 - 1);
    for (int k = 0; k < L1 + L2 - 1; ++k) {
        GradedComplex& lv = p.levels[k];
        for (int a = std::max(0, k - L2 + 1); a <= std::min(k, L1 - 1); ++a) {
            int b = k - a;
            for (int dx : s1.levels[a].dims())
                for (const auto& x : s1.levels[a].basis(dx))
                    for (int dy : s2.levels[b].dims())
                        for (const auto& y : s2.levels[b].basis(dy)) {
                            std::string n = product_name(a, x, b, y);
                            lv.add_cell(n, dx + dy);
                            (*cells)[n] = ProductCell{a, b, x, y};
                        }
        }
        for (int d : lv.dims())
            for (const auto& n : lv.basis(d)) {
                const ProductCell& c = cells->at(n);
                Chain bd;
                for (const auto& [x2, v] : s1.levels[c.a].boundary(c.x)) bd.add(product_name(c.a, x2, c.b, c.y), v);
                int sx = sign_of(s1.levels[c.a].dim(c.x));
                for (const auto& [y2, v] : s2.levels[c.b].boundary(c.y)) bd.add(product_name(c.a, c.x, c.b, y2), v * sx);
                lv.set_boundary(n, std::move(bd));
            }
    }
    p.max_j = std::max(s1.max_j, s2.max_j);
    p.f = [s1, s2, cells](int, int j, const std::string& n) {
        const ProductCell& c = cells->at(n);
        Chain r;
        if (j <= s1.max_j && c.a + j + 1 < static_cast<int>(s1.levels.size()))
            for (const auto& [x2, v] : s1.f(c.a, j, c.x)) r.add(product_name(c.a + j + 1, x2, c.b, c.y), v);
        if (j <= s2.max_j && c.b + j + 1 < static_cast<int>(s2.levels.size())) {
            int s = sign_of(c.a * (j + 1) + j * s1.levels[c.a].dim(c.x));
            for (const auto& [y2, v] : s2.f(c.b, j, c.y)) r.add(product_name(c.a, c.x, c.b + j + 1, y2), v * s);
        }
        return r;
    };
    return p;
}

Chain telescope_product_iso(const RightMappingSequence& s1, const RightMappingSequence&,
                            const std::string& cell1, const std::string& cell2)
{
    auto [a, x] = split_telescope_name(cell1);
    auto [b, y] = split_telescope_name(cell2);
    int s = sign_of(b * (s1.levels.at(a).dim(x) - a));
    return Chain(telescope_name(a + b, product_name(a, x, b, y)), s);
}

}  // namespace einf
