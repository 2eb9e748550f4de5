#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace walras {

/// Thrown when two operands disagree on dimension.
class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : std::invalid_argument("dimension mismatch: expected " + std::to_string(expected) +
                                ", got " + std::to_string(got)) {}
};

/// A point in R^n of commodity prices. Always nonempty with finite entries.
class PriceVector {
public:
    PriceVector() = default;
    explicit PriceVector(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }
    PriceVector(std::initializer_list<double> coords) : coords_(coords) { validate(); }

    static PriceVector zeros(std::size_t n) { return PriceVector(std::vector<double>(n, 0.0)); }
    static PriceVector filled(std::size_t n, double v) { return PriceVector(std::vector<double>(n, v)); }

    std::size_t size() const noexcept { return coords_.size(); }
    bool empty() const noexcept { return coords_.empty(); }

    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }

    std::span<const double> view() const noexcept { return coords_; }
    const std::vector<double>& coords() const noexcept { return coords_; }

    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }
    auto begin() noexcept { return coords_.begin(); }
    auto end() noexcept { return coords_.end(); }

    friend bool operator==(const PriceVector&, const PriceVector&) = default;

    PriceVector& operator+=(const PriceVector& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    PriceVector& operator-=(const PriceVector& o) {
        check_same(o);
        for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    PriceVector& operator*=(double s) {
        for (double& c : coords_) c *= s;
        return *this;
    }

    void check_same(const PriceVector& o) const {
        if (o.size() != size()) throw DimensionMismatch(size(), o.size());
    }

private:
    void validate() const {
        if (coords_.empty()) throw std::invalid_argument("price vector must have at least one entry");
        for (double c : coords_)
            if (!std::isfinite(c)) throw std::invalid_argument("price vector entries must be finite");
    }

    std::vector<double> coords_;
};

inline PriceVector operator+(PriceVector a, const PriceVector& b) { return a += b; }
inline PriceVector operator-(PriceVector a, const PriceVector& b) { return a -= b; }
inline PriceVector operator*(double s, PriceVector a) { return a *= s; }
inline PriceVector operator*(PriceVector a, double s) { return a *= s; }

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline double dot(const PriceVector& a, const PriceVector& b) { return dot(a.view(), b.view()); }

inline double norm(const PriceVector& a) { return std::sqrt(dot(a, a)); }

inline double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}
inline double distance(const PriceVector& a, const PriceVector& b) { return distance(a.view(), b.view()); }

/// E(x)^T (y - x) without materializing y - x.
inline double directional(const PriceVector& field, const PriceVector& from, const PriceVector& to) {
    from.check_same(to);
    field.check_same(from);
    double s = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) s += field[i] * (to[i] - from[i]);
    return s;
}

}  // namespace walras
