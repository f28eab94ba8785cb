#pragma once

#include "coindiff/scalar.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace coindiff {

/// Sparse linear combination of basis elements, sorted by index, no zeros.
class Vector {
public:
    using Entry = std::pair<std::uint32_t, Scalar>;

    Vector() = default;
    static Vector basis(std::uint32_t index, Scalar coeff = 1);

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    Scalar coeff(std::uint32_t index) const;

    void add(std::uint32_t index, const Scalar& coeff);
    void add_scaled(const Vector& other, const Scalar& factor);

    Vector& operator+=(const Vector& other) {
        add_scaled(other, Scalar(1));
        return *this;
    }
    Vector& operator-=(const Vector& other) {
        add_scaled(other, Scalar(-1));
        return *this;
    }
    Vector& operator*=(const Scalar& s);
    Vector operator-() const { return Vector(*this) *= Scalar(-1); }
    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(Vector a, const Scalar& s) { return a *= s; }
    friend Vector operator*(const Scalar& s, Vector a) { return a *= s; }
    friend bool operator==(const Vector&, const Vector&) = default;

    /// Keeps only the entries whose index satisfies pred.
    template <class Pred>
    Vector filtered(Pred&& pred) const {
        Vector r;
        for (const auto& e : entries_)
            if (pred(e.first)) r.entries_.push_back(e);
        return r;
    }

private:
    std::vector<Entry> entries_;
};

inline bool is_zero(const Vector& v) { return v.empty(); }

} // namespace coindiff
