#pragma once

#include "legdet/rational.hpp"

#include <cstddef>
#include <vector>

namespace legdet {

/// Dense exact-rational matrix, row-major. Values are immutable in spirit:
/// algorithms copy rather than mutate shared state.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& o) const;
    bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> e_;
};

} // namespace legdet
