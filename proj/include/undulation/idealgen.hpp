#ifndef UNDULATION_IDEALGEN_HPP
#define UNDULATION_IDEALGEN_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "undulation/curve.hpp"
#include "undulation/linalg.hpp"
#include "undulation/multipoly.hpp"

namespace undulation {

using Weight = std::array<int, 3>;

/// One graded component of the undulation ideal: polynomials of degree n in
/// the curve coefficients and m in v1..v3, cut out by vanishing on every
/// curve of the form u^4 h + v w with line v. The optional refined weight
/// restricts to a single weight-graded block.
struct ComponentSpec {
    int r = 4;
    int n = 0;
    int m = 0;
    std::optional<Weight> refined;
    u64 prime = 0;
    u64 seed = 0;
    double oversample = 1.25;

    void validate() const;
};

/// Column layout of the constraint systems: candidate monomials are
/// products of a degree-n monomial in the (r+1)(r+2)/2 curve coefficients
/// and a degree-m monomial in v1,v2,v3. Columns are ordered coefficient-
/// monomial major, both factors graded-lex descending.
class ColumnLayout {
public:
    ColumnLayout(int r, int n, int m);

    int r() const { return r_; }
    int deg_c() const { return n_; }
    int deg_v() const { return m_; }
    std::size_t ncols() const { return cmons_.size() * vmons_.size(); }

    const std::vector<Exponents3>& slots() const { return slots_; }
    const std::vector<std::vector<std::uint8_t>>& cmons() const { return cmons_; }
    const std::vector<std::vector<std::uint8_t>>& vmons() const { return vmons_; }

    std::size_t cmon_of(std::size_t col) const { return col / vmons_.size(); }
    std::size_t vmon_of(std::size_t col) const { return col % vmons_.size(); }

    Weight weight_of(std::size_t col) const;
    // weight -> ascending list of global column indices; keys ascending
    const std::map<Weight, std::vector<std::uint32_t>>& blocks() const { return blocks_; }

    Monomial column_monomial(std::size_t col) const;
    // Leading-term index of a polynomial supported on this layout, or npos.
    std::size_t column_of_monomial(const Monomial& m) const;

private:
    int r_, n_, m_;
    std::vector<Exponents3> slots_;
    std::vector<std::vector<std::uint8_t>> cmons_;
    std::vector<std::vector<std::uint8_t>> vmons_;
    std::vector<Weight> cweights_;
    std::map<Weight, std::vector<std::uint32_t>> blocks_;
};

/// A sampled evaluation point: the coefficient vector of u^4 h + v w over
/// GF(p) together with the v used, plus ready power tables.
struct SamplePoint {
    std::vector<u64> slot_values; // indexed like x_monomials(r)
    std::array<u64, 3> v_values;
};

SamplePoint sample_point(int r, const PrimeField& field, u64 seed);

/// Value of every column monomial of `layout` at the sample, restricted to
/// the given column subset (global indices); pass nullptr for all columns.
std::vector<u64> evaluate_columns(const ColumnLayout& layout, const PrimeField& field,
                                  const SamplePoint& sample,
                                  const std::vector<std::uint32_t>* subset = nullptr);

/// The full sampled linear system for a component; columns per ColumnLayout,
/// rows = max(ceil(oversample * ncols), ncols + 50) independent samples.
/// Intended for small components and interop dumps; the dimension and basis
/// routines below stream rows instead of materializing them.
SparseMatrix build_constraints(const ComponentSpec& spec);

struct ComponentDims {
    int total = 0;
    std::map<Weight, int> refined; // weight -> dimension, zero entries omitted
};

/// Dimension of the component, computed block-by-block over the weight
/// grading with rank saturation (rows are added until the rank is stable
/// across two consecutive batches). Deterministic per (prime, seed).
ComponentDims component_dims(const ComponentSpec& spec, int threads = 1);

inline int component_dim(const ComponentSpec& spec, int threads = 1) {
    return component_dims(spec, threads).total;
}

struct ComponentBasis {
    ComponentSpec spec;
    std::vector<Poly<PrimeField>> polys;        // canonical reduced basis
    std::vector<std::uint32_t> pivot_columns;   // leading column of each poly
};

/// Canonical basis of the component as polynomials over GF(p): the reduced
/// row-echelon basis of the nullspace, ordered by leading column. Every
/// element is re-verified against 100 fresh samples.
ComponentBasis component_basis(const ComponentSpec& spec, int threads = 1);

/// Representatives of the complement of span{ (degree n_big - n_small
/// coefficient monomial) * small_j } inside `big`: the canonical-basis
/// elements of `big` whose leading column is not a pivot of the product
/// span. The product span dimension must be the full #monomials * dim small
/// (processed block-by-block over the weight grading).
struct ComplementResult {
    std::vector<Poly<PrimeField>> polys;
    std::vector<std::uint32_t> pivot_columns;
    int product_span_dim = 0;
};

ComplementResult complement_basis(const ComponentBasis& big, const ComponentBasis& small);

/// All refined dimensions of I_{n, m1, m2, m3} with m1+m2+m3 = r*n + m.
/// The per-weight dims sum to the plain component dimension.
std::map<Weight, int> refined_dims_triangle(const ComponentSpec& spec, int threads = 1);

/// True when `poly` (in curve-coefficient and v variables) vanishes on
/// `count` fresh sampled decompositions; the workhorse membership check.
bool check_membership(const Poly<PrimeField>& poly, int r, const PrimeField& field, u64 seed,
                      int count);

} // namespace undulation

#endif
