#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace spectralgof {

/// Dense square matrix of doubles, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept {
        assert(i < n_ && j < n_);
        return data_[i * n_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        assert(i < n_ && j < n_);
        return data_[i * n_ + j];
    }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * n_, n_}; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * n_, n_};
    }

    std::span<const double> data() const noexcept { return data_; }

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Largest absolute entry (0 for an empty matrix).
inline double max_abs_entry(const Matrix& m) {
    double best = 0.0;
    for (double v : m.data()) best = std::max(best, v < 0 ? -v : v);
    return best;
}

inline bool is_symmetric(const Matrix& m, double tol = 0.0) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            double d = m(i, j) - m(j, i);
            if ((d < 0 ? -d : d) > tol) return false;
        }
    return true;
}

} // namespace spectralgof
