#pragma once

#include <optional>
#include <vector>

#include "rhmap/rational.hpp"

namespace rhmap {

// Dense matrix over Q. Desk-scale sizes; no performance heroics.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) {
        check_bounds(i, j);
        return data_[i * cols_ + j];
    }
    const Rational& at(std::size_t i, std::size_t j) const {
        check_bounds(i, j);
        return data_[i * cols_ + j];
    }

    bool operator==(const RationalMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

private:
    void check_bounds(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw InputError("matrix index out of range");
    }

    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

struct RrefResult {
    std::size_t rank;
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form with deterministic pivoting: leftmost nonzero
// column, first available row. Row space is preserved.
RrefResult rref(const RationalMatrix& m);

// Basis of the null space; vectors are the standard rref parametrization
// (one per free column, in column order), so output is deterministic.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m);

// One exact solution of m x = b, or nullopt if the system is inconsistent.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b);

}  // namespace rhmap
