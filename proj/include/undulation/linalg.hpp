#ifndef UNDULATION_LINALG_HPP
#define UNDULATION_LINALG_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "undulation/prime_field.hpp"
#include "undulation/rational.hpp"

namespace undulation {

/// Rows of sorted (column, value) pairs over GF(p); no stored zeros.
struct SparseMatrix {
    u64 prime = 0;
    std::uint32_t nrows = 0;
    std::uint32_t ncols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, u64>>> rows;

    void add_row(std::vector<std::pair<std::uint32_t, u64>> row);

    std::size_t nnz() const;

    // Triplet text: "nrows ncols nnz" header then "row col value" lines, 0-based.
    void dump_triplets(std::ostream& os) const;
    static SparseMatrix parse_triplets(std::istream& is, u64 prime);
};

struct NullspaceResult {
    std::uint32_t rank = 0;
    // Canonical reduced basis of the nullspace (unique given the column
    // order): rows of the reduced row-echelon form of any spanning set.
    std::vector<std::vector<u64>> basis;
};

/// Incremental row-echelon accumulator over GF(p). Rows are fed one at a
/// time; reduced copies of the independent ones are kept. Deterministic:
/// pivots are the first nonzero column of each reduced row.
class FpEchelon {
public:
    FpEchelon(u64 prime, std::uint32_t ncols);
    ~FpEchelon();
    FpEchelon(FpEchelon&&) noexcept;
    FpEchelon& operator=(FpEchelon&&) noexcept;

    // Row of plain residues, length ncols. Returns true if the rank grew.
    bool add_row(const std::vector<u64>& row);

    std::uint32_t rank() const;
    std::uint32_t ncols() const;

    // Pivot columns of the row space, ascending. Canonical: the set does not
    // depend on the order rows were added.
    std::vector<std::uint32_t> pivot_columns() const;

    // Canonical nullspace of everything added so far.
    NullspaceResult nullspace() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

NullspaceResult rank_nullspace(const SparseMatrix& m);

/// Exact determinant of an integer matrix by fraction-free elimination.
Integer det_bareiss(std::vector<std::vector<Integer>> m);

/// Exact determinant over the rationals: rows are scaled to integers by
/// their denominator lcm, the integer determinant is divided back.
Rational det_exact(const std::vector<std::vector<Rational>>& m);

/// Determinant over GF(p) by Gaussian elimination.
u64 det_mod(const PrimeField& field, std::vector<std::vector<u64>> m);

/// Canonical reduced basis of the kernel of a rational matrix.
std::vector<std::vector<Rational>> kernel_rational(std::vector<std::vector<Rational>> m);

} // namespace undulation

#endif
