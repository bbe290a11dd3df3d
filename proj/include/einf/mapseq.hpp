#pragma once

#include "einf/exactchain.hpp"

#include <functional>
#include <string>
#include <vector>

namespace einf {

// Right mapping sequence C_0 -> C_1 -> ... with maps f_{i,j}: C_i -> C_{i+j+1} of degree j.
// Levels past the last one are dropped, which is the quotient F_{0,L}.
struct RightMappingSequence {
    std::vector<GradedComplex> levels;
    std::function<Chain(int i, int j, const std::string& x)> f;
    int max_j = 0;  // f_{i,j} = 0 for j > max_j
};

// Cell of the telescope for x in level a, of dimension |x| - a.
std::string telescope_name(int level, const std::string& x);
std::pair<int, std::string> split_telescope_name(const std::string& name);

// d(S^{-a}x) = (-1)^a S^{-a} dx + sum_j (-1)^a S^{-(a+j+1)} f_{a,j}(x)
Chain telescope_d(const RightMappingSequence& s, int level, const std::string& x);
GradedComplex telescope_complex(const RightMappingSequence& s, int lo, int hi);

// sum_{a=1}^{j} (-1)^a f_{i+a,j-a} f_{i,a-1} + (-1)^{j+1} d f_{i,j} + f_{i,j} d = 0 on every cell of level i.
std::vector<std::string> check_coherence(const RightMappingSequence& s);

// Levels C_k = sum_{a+b=k} C_a (x) D_b with h = f (x) 1 + (-1)^{a(j+1)} 1 (x) g (Koszul signed).
// Cells are join_word({x, y}); dimensions of the factors are taken from the levels.
RightMappingSequence telescope_product(const RightMappingSequence& s1, const RightMappingSequence& s2);
// S^{-a}x (x) S^{-b}y  ->  (-1)^{b(|x|-a)} S^{-(a+b)}(x (x) y)
Chain telescope_product_iso(const RightMappingSequence& s1, const RightMappingSequence& s2,
                            const std::string& cell1, const std::string& cell2);

}  // namespace einf
