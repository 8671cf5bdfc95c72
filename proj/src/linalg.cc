#include "fairsim/linalg.hh"

#include <cassert>

namespace fairsim {

RMatrix RMatrix::identity(std::size_t n) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational::one();
    return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
    assert(cols_ == o.rows_);
    RMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& aik = at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

RVec RMatrix::row(std::size_t r) const {
    RVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

Rational RMatrix::row_sum(std::size_t r) const {
    Rational s;
    for (std::size_t j = 0; j < cols_; ++j) s += at(r, j);
    return s;
}

bool RMatrix::leq(const RMatrix& a, const RMatrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    for (std::size_t i = 0; i < a.a_.size(); ++i)
        if (!(a.a_[i] <= b.a_[i])) return false;
    return true;
}

RVec mat_vec(const RMatrix& m, const RVec& v) {
    assert(m.cols() == v.size());
    RVec r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) r[i] += m.at(i, j) * v[j];
    return r;
}

RVec vec_mat(const RVec& v, const RMatrix& m) {
    assert(m.rows() == v.size());
    RVec r(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) r[j] += v[i] * m.at(i, j);
    }
    return r;
}

Rational dot(const RVec& a, const RVec& b) {
    assert(a.size() == b.size());
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::optional<RVec> solve_linear(RMatrix a, RVec b) {
    const std::size_t n = a.rows();
    assert(a.cols() == n && b.size() == n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a.at(perm[pivot], col).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(perm[col], perm[pivot]);
        const std::size_t p = perm[col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const std::size_t row = perm[r];
            if (a.at(row, col).is_zero()) continue;
            Rational factor = a.at(row, col) / a.at(p, col);
            for (std::size_t j = col; j < n; ++j)
                a.at(row, j) -= factor * a.at(p, j);
            b[row] -= factor * b[p];
        }
    }

    RVec x(n);
    for (std::size_t col = n; col-- > 0;) {
        const std::size_t p = perm[col];
        Rational s = b[p];
        for (std::size_t j = col + 1; j < n; ++j) s -= a.at(p, j) * x[j];
        x[col] = s / a.at(p, col);
    }
    return x;
}

} // namespace fairsim
