#pragma once

#include <string>

#include "bezred/ring.hpp"

namespace bezred {

/// Dense matrix over one ring; entries always initialized.
class Matrix {
  public:
    Matrix() = default;
    Matrix(RingPtr ring, int rows, int cols);  // zero matrix
    static Matrix identity(const RingPtr& ring, int n);

    const RingPtr& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Elem& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
    const Elem& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_square() const { return rows_ == cols_; }
    bool is_identity() const;

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    /// Determinant over any commutative ring (column-subset expansion).
    Elem det() const;

  private:
    RingPtr ring_;
    int rows_ = 0, cols_ = 0;
    std::vector<Elem> e_;
};

Matrix mul(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }

std::string to_string(const Matrix& m);

}  // namespace bezred
