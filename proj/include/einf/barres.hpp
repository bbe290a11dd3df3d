#pragma once

#include "einf/lincomb.hpp"
#include "einf/perm.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace einf {

// Basis element g[g1|...|gk] of the normalized bar resolution RS_n.
// Stored as the concatenated images of g, g1, ..., gk.
class BarWord {
public:
    BarWord() = default;
    BarWord(const Perm& leader, const std::vector<Perm>& letters);
    static BarWord unit(int n) { return BarWord(Perm(n), {}); }
    // Textual form g[g1|g2|...] with cycle notation; an empty leader means 1.
    static BarWord parse(const std::string& s, int n);

    int arity() const { return n_; }
    int dim() const { return n_ ? static_cast<int>(data_.size()) / n_ - 1 : 0; }
    Perm leader() const { return perm_at(0); }
    Perm letter(int i) const { return perm_at(i + 1); }  // 0-based
    std::vector<Perm> letters() const;
    bool leader_is_one() const;
    // The same word with leader 1.
    BarWord with_leader(const Perm& g) const;
    bool has_identity_letter() const;

    std::string to_string() const;
    const std::string& bytes() const { return data_; }

    friend bool operator==(const BarWord& a, const BarWord& b) { return a.n_ == b.n_ && a.data_ == b.data_; }
    friend bool operator<(const BarWord& a, const BarWord& b)
    {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        if (a.data_.size() != b.data_.size()) return a.data_.size() < b.data_.size();
        return a.data_ < b.data_;
    }

private:
    Perm perm_at(int slot) const;
    int n_ = 0;
    std::string data_;
};

struct BarWordHash {
    std::size_t operator()(const BarWord& w) const { return std::hash<std::string>()(w.bytes()) ^ w.arity(); }
};

using RChain = Lin<BarWord>;
using RPair = std::pair<BarWord, BarWord>;
using RRChain = Lin<RPair>;

// Normalized: a word with an identity letter is zero.
RChain make_word(const Perm& leader, const std::vector<Perm>& letters);

RChain face(int i, const BarWord& w);
RChain differential(const BarWord& w);
RChain differential(const RChain& c);
RChain phi(const BarWord& w);
RChain phi(const RChain& c);
Int augmentation(const RChain& c);
// Left action by sigma on the leader.
BarWord act(const Perm& sigma, const BarWord& w);
RChain act(const Perm& sigma, const RChain& c);

RRChain coproduct_R(const BarWord& w);
RRChain coproduct_R(const RChain& c);
// Koszul differential on RS_n (x) RS_n.
RRChain differential(const RRChain& c);
RRChain act_diag(const Perm& sigma, const RRChain& c);

// Bases of RS_n in dimension d (all leaders, or leader 1 only).
std::vector<BarWord> bar_basis(int n, int d, bool leader_one_only);

std::string to_string(const RChain& c);

}  // namespace einf
