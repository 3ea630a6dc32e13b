#pragma once

#include "semiample/matrix.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace semiample {

// Dense exact linear algebra over Q.
struct RowEchelon {
    RationalMatrix reduced;            // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;   // pivot column of each row
};
RowEchelon row_echelon(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);
Rational determinant(const RationalMatrix& a);
// Basis of {x : A x = 0}, one vector per free column.
std::vector<RationalVector> kernel(const RationalMatrix& a);
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);
std::size_t rank_of_vectors(const std::vector<LatticeVector>& vs);
std::size_t rank_of_vectors(const std::vector<RationalVector>& vs);

// Sparse vectors as (column, value) pairs sorted by column, no zero entries.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

// Incrementally built echelon basis of a subspace of Q^columns, stored as primitive
// integer rows with positive leading entry. Reducing a vector by the pivots in
// increasing column order yields a canonical representative of its coset, supported
// on the free columns. Elimination is fraction-free.
class EchelonSpace {
public:
    explicit EchelonSpace(std::size_t columns = 0) : columns_(columns), pivot_row_(columns, -1) {}

    std::size_t columns() const { return columns_; }
    std::size_t dim() const { return rows_.size(); }

    SparseVector reduce(const SparseVector& v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }
    // Adds v to the span; returns false if it was already contained.
    bool insert(const SparseVector& v);

    bool is_pivot(std::size_t column) const { return column < columns_ && pivot_row_[column] >= 0; }
    // Columns that are not pivots, increasing; they index a basis of the quotient.
    std::vector<std::size_t> free_columns() const;
    std::vector<std::size_t> pivots() const;
    // The stored basis rows, ordered by pivot column.
    std::vector<SparseVector> basis_rows() const;

private:
    using IntegerRow = std::vector<std::pair<std::size_t, Integer>>;
    // reduce(v) = factor * out
    Rational reduce_integral(const SparseVector& v, IntegerRow& out) const;

    std::size_t columns_;
    std::vector<long> pivot_row_;
    std::vector<IntegerRow> rows_;
};

// Kernel of the linear map sending e_i to images[i], as sparse vectors in Q^images.size().
std::vector<SparseVector> sparse_kernel(const std::vector<SparseVector>& images, std::size_t target_columns);

}  // namespace semiample
