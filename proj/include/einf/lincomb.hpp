#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace einf {

using Int = boost::multiprecision::cpp_int;

inline int sign_of(long long e) { return (e & 1) ? -1 : 1; }

// Sparse integer linear combination over an ordered basis type K.
// Zero coefficients are never stored.
template <class K>
class Lin {
public:
    using Map = std::map<K, Int>;
    using const_iterator = typename Map::const_iterator;

    Lin() = default;
    explicit Lin(const K& k, const Int& c = 1) { add(k, c); }

    void add(const K& k, const Int& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(K&& k, const Int& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(std::move(k), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    void add(const Lin& o, const Int& scale = 1)
    {
        if (scale == 0) return;
        for (const auto& [k, c] : o.terms_) add(k, c * scale);
    }

    Lin& operator+=(const Lin& o) { add(o, 1); return *this; }
    Lin& operator-=(const Lin& o) { add(o, -1); return *this; }
    Lin& operator*=(const Int& s)
    {
        if (s == 0) { terms_.clear(); return *this; }
        for (auto& kv : terms_) kv.second *= s;
        return *this;
    }
    friend Lin operator+(Lin a, const Lin& b) { a += b; return a; }
    friend Lin operator-(Lin a, const Lin& b) { a -= b; return a; }
    friend Lin operator*(const Int& s, Lin a) { a *= s; return a; }
    Lin operator-() const { Lin r = *this; r *= -1; return r; }

    Int coeff(const K& k) const
    {
        auto it = terms_.find(k);
        return it == terms_.end() ? Int(0) : it->second;
    }
    bool empty() const { return terms_.empty(); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const Map& terms() const { return terms_; }
    void clear() { terms_.clear(); }

    bool operator==(const Lin& o) const { return terms_ == o.terms_; }
    bool operator!=(const Lin& o) const { return !(*this == o); }

    template <class F>
    auto map_keys(F&& f) const
    {
        Lin<std::invoke_result_t<F, const K&>> r;
        for (const auto& [k, c] : terms_) r.add(f(k), c);
        return r;
    }

    // Apply a linear map given on basis elements.
    template <class F>
    auto apply(F&& f) const
    {
        using R = std::invoke_result_t<F, const K&>;
        R r;
        for (const auto& [k, c] : terms_) r.add(f(k), c);
        return r;
    }

private:
    Map terms_;
};

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace einf
