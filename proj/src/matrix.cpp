#include "bezred/matrix.hpp"

namespace bezred {

Matrix::Matrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw precondition_error("negative matrix dimension");
    e_.assign(static_cast<size_t>(rows) * cols, ring_->zero());
}

Matrix Matrix::identity(const RingPtr& ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring->one();
    return m;
}

bool Matrix::is_identity() const {
    if (!is_square()) return false;
    return *this == identity(ring_, rows_);
}

bool operator==(const Matrix& a, const Matrix& b) {
    if (!a.ring_ || !b.ring_) throw internal_error("comparing uninitialized matrix");
    if (!a.ring_->same(*b.ring_)) return false;
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

Matrix mul(const Matrix& a, const Matrix& b) {
    const RingPtr& R = a.ring();
    if (!R || !b.ring() || !R->same(*b.ring()))
        throw precondition_error("matrix product: ring mismatch");
    if (a.cols() != b.rows()) throw precondition_error("matrix product: shape mismatch");
    Matrix c(R, a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Elem& aik = a.at(i, k);
            if (R->is_zero(aik)) continue;
            for (int j = 0; j < b.cols(); ++j)
                c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
        }
    return c;
}

Elem Matrix::det() const {
    if (!is_square()) throw precondition_error("determinant of non-square matrix");
    int n = rows_;
    if (n == 0) return ring_->one();
    // f[S] = determinant contribution of the first popcount(S) rows using the
    // column set S; signs come from the position of the chosen column in S.
    std::vector<Elem> f(static_cast<size_t>(1) << n);
    f[0] = ring_->one();
    for (size_t s = 1; s < f.size(); ++s) {
        int row = __builtin_popcountll(s) - 1;
        Elem acc = ring_->zero();
        int pos = 0;
        for (int j = 0; j < n; ++j) {
            if (!(s >> j & 1)) continue;
            Elem term = at(row, j) * f[s & ~(static_cast<size_t>(1) << j)];
            acc = (row + pos) % 2 == 0 ? acc + term : acc - term;
            ++pos;
        }
        f[s] = acc;
    }
    return f[f.size() - 1];
}

std::string to_string(const Matrix& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
        if (i) s += ",";
        s += "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j) s += ",";
            s += m.ring()->format(m.at(i, j));
        }
        s += "]";
    }
    s += "]";
    return s;
}

}  // namespace bezred
