#pragma once

#include <vector>

#include "bezred/matrix.hpp"
#include "bezred/stability.hpp"

namespace bezred {

enum class OpSide { left_row, right_col };

/// One transvection. left_row: row i += scalar * row j. right_col:
/// col i += scalar * col j. Indices are 0-based and i != j.
struct ElementaryOp {
    OpSide side = OpSide::left_row;
    int i = 0, j = 0;
    Elem scalar;
};

void apply_op(Matrix& m, const ElementaryOp& op);

/// Three transvections whose product maps row i to row j and row j to the
/// negation of row i; replayed on the identity this is the rotation with
/// -1 above the diagonal.
std::vector<ElementaryOp> swap_as_transvections(const RingPtr& ring, int i, int j);

/// Write a 2x2 matrix of determinant one as a product of transvections:
/// applying the returned left-row ops to the identity, in order, rebuilds m.
std::vector<ElementaryOp> sl2_to_elementary(const Matrix& m, const WitnessStrategy& strat);

/// (a, b) * q = (g, 0) with det q = 1 and g = gcdex(a, b).g.
struct HermitePair {
    Elem g;
    Matrix q, q_inv;
};
HermitePair hermite_pair(const Elem& a, const Elem& b);

/// m = h * primed entrywise, h the canonical generator of the ideal of all
/// entries; w satisfies h*w = 0 with 1 + w in the ideal of primed entries
/// (w = 0 whenever the ring is a domain; the zero matrix yields h = 0,
/// primed = m, w = 0 with no 1+w guarantee).
struct Content {
    Elem h;
    Matrix primed;
    Elem w;
};
Content content_extract(const Matrix& m);

/// Reduction certificate: replaying left_ops on the identity gives P with
/// det P = 1, and P * A * q = diag(diag).
struct Certificate {
    RingPtr ring;
    std::vector<ElementaryOp> left_ops;
    Matrix q, q_inv;
    std::vector<Elem> diag;
};

Matrix replay_left(const Certificate& cert, int rows);
Matrix diag_matrix(const RingPtr& ring, const std::vector<Elem>& diag, int rows, int cols);

/// Reduce [[a, 0], [b, c]] for a unimodular triple (a, b, c) to
/// diag(1, e) using the locally-stable shift and a stable-range-1 finish.
Certificate reduce_2x2_triangular(const Elem& a, const Elem& b, const Elem& c,
                                  const WitnessStrategy& strat);

/// 2x2 reduction through content extraction; the left factor is a product
/// of transvections.
Certificate ge2_reduce(const Matrix& m, const WitnessStrategy& strat);

/// General m x n diagonal reduction with divisibility chain and canonical
/// diagonal entries.
Certificate diagonal_reduce(const Matrix& m, const WitnessStrategy& strat);

struct Verdict {
    bool replay_equation = false;
    bool q_inverse = false;
    bool divisibility = false;
    bool canonical_diag = false;
    bool left_det_one = false;
    bool ok() const {
        return replay_equation && q_inverse && divisibility && canonical_diag &&
               left_det_one;
    }
};
Verdict verify_certificate(const Matrix& input, const Certificate& cert);

}  // namespace bezred
