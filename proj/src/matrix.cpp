#include "rhmap/matrix.hpp"

namespace rhmap {

Rational rational_from_string(std::string_view text) {
    if (text.empty()) throw InputError("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
        Integer num{std::string(text.substr(0, slash))};
        Integer den{std::string(text.substr(slash + 1))};
        if (den == 0) throw InputError("rational with zero denominator: " + std::string(text));
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw InputError("bad rational literal: " + std::string(text));
    }
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw InputError("matrix/vector dimension mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

RrefResult rref(const RationalMatrix& m) {
    RationalMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.rows() && a.at(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != row)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(row, j), a.at(pivot, j));
        Rational inv = Rational(1) / a.at(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col) == 0) continue;
            Rational f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return RrefResult{pivots.size(), std::move(a), std::move(pivots)};
}

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(m.cols());
        v[free_col] = 1;
        for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
            v[r.pivot_cols[k]] = -r.reduced.at(k, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
    if (b.size() != m.rows()) throw InputError("solve: right-hand side has wrong length");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    RrefResult r = rref(aug);
    for (std::size_t c : r.pivot_cols)
        if (c == m.cols()) return std::nullopt;  // pivot in the augmented column

    std::vector<Rational> x(m.cols());
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
        x[r.pivot_cols[k]] = r.reduced.at(k, m.cols());
    return x;
}

}  // namespace rhmap
