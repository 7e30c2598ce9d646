#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "kronecker/rational.hpp"

namespace kronecker {

/// Integer vector with finitely many nonzero entries, indexed from 1.
/// Only nonzero entries are stored.
class IntVecFin {
public:
    using Storage = std::map<std::size_t, Integer>;

    IntVecFin() = default;

    /// Dense constructor: values[0] goes to index 1.
    IntVecFin(std::initializer_list<long> values) {
        std::size_t i = 1;
        for (long v : values) set(i++, Integer(v));
    }

    static IntVecFin from_dense(const std::vector<Integer>& values) {
        IntVecFin v;
        for (std::size_t i = 0; i < values.size(); ++i) v.set(i + 1, values[i]);
        return v;
    }

    static IntVecFin unit(std::size_t index) {
        IntVecFin v;
        v.set(index, 1);
        return v;
    }

    Integer operator[](std::size_t index) const {
        auto it = entries_.find(index);
        return it == entries_.end() ? Integer(0) : it->second;
    }

    void set(std::size_t index, const Integer& value) {
        if (index == 0) throw DomainError("IntVecFin indices start at 1");
        if (value == 0)
            entries_.erase(index);
        else
            entries_[index] = value;
    }

    void add(std::size_t index, const Integer& value) { set(index, (*this)[index] + value); }

    bool is_zero() const { return entries_.empty(); }
    std::size_t support_size() const { return entries_.size(); }

    /// Largest index with a nonzero entry, 0 for the zero vector.
    std::size_t max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

    const Storage& entries() const { return entries_; }

    std::vector<Integer> to_dense(std::size_t n) const {
        std::vector<Integer> out(n, 0);
        for (const auto& [i, v] : entries_)
            if (i <= n) out[i - 1] = v;
        return out;
    }

    IntVecFin operator-() const {
        IntVecFin r;
        for (const auto& [i, v] : entries_) r.entries_[i] = -v;
        return r;
    }

    IntVecFin& operator+=(const IntVecFin& o) {
        for (const auto& [i, v] : o.entries_) add(i, v);
        return *this;
    }

    IntVecFin& operator-=(const IntVecFin& o) {
        for (const auto& [i, v] : o.entries_) add(i, -v);
        return *this;
    }

    friend IntVecFin operator+(IntVecFin a, const IntVecFin& b) { return a += b; }
    friend IntVecFin operator-(IntVecFin a, const IntVecFin& b) { return a -= b; }

    friend IntVecFin operator*(const Integer& s, const IntVecFin& v) {
        IntVecFin r;
        if (s == 0) return r;
        for (const auto& [i, x] : v.entries_) r.entries_[i] = s * x;
        return r;
    }

    friend bool operator==(const IntVecFin& a, const IntVecFin& b) { return a.entries_ == b.entries_; }
    friend bool operator<(const IntVecFin& a, const IntVecFin& b) { return a.entries_ < b.entries_; }

    /// Exact pairing with a rational vector (values[0] is index 1).
    Rational dot(const std::vector<Rational>& values) const {
        Rational s = 0;
        for (const auto& [i, v] : entries_)
            if (i <= values.size()) s += Rational(v) * values[i - 1];
        return s;
    }

    std::string to_string() const {
        std::string s = "(";
        std::size_t n = max_index();
        for (std::size_t i = 1; i <= n; ++i) {
            if (i > 1) s += ",";
            s += (*this)[i].get_str();
        }
        return s + ")";
    }

private:
    Storage entries_;
};

/// gcd of the entries; 0 exactly for the zero vector.
inline Integer gcd_of_vector(const IntVecFin& v) {
    Integer g = 0;
    for (const auto& [i, x] : v.entries()) g = gcd(g, x);
    return g;
}

} // namespace kronecker
