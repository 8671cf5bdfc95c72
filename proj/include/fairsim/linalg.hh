#ifndef FAIRSIM_LINALG_HH
#define FAIRSIM_LINALG_HH

#include <cstddef>
#include <optional>
#include <vector>

#include "fairsim/rational.hh"

namespace fairsim {

using RVec = std::vector<Rational>;

// Dense rational matrix. Small sizes only; everything is exact.
class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RMatrix zero(std::size_t rows, std::size_t cols) { return RMatrix(rows, cols); }
    static RMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    RMatrix operator*(const RMatrix& o) const;
    RVec row(std::size_t r) const;
    Rational row_sum(std::size_t r) const;

    bool operator==(const RMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    // a <= b entrywise; dimensions must match.
    static bool leq(const RMatrix& a, const RMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

RVec mat_vec(const RMatrix& m, const RVec& v);   // m * v
RVec vec_mat(const RVec& v, const RMatrix& m);   // v^T * m
Rational dot(const RVec& a, const RVec& b);

// Solves a * x = b by Gaussian elimination with exact pivoting.
// Returns nullopt when a is singular.
std::optional<RVec> solve_linear(RMatrix a, RVec b);

} // namespace fairsim

#endif
