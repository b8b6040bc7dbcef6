#include "undulation/linalg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace undulation {

// ---------------------------------------------------------------------------
// SparseMatrix
// ---------------------------------------------------------------------------

void SparseMatrix::add_row(std::vector<std::pair<std::uint32_t, u64>> row) {
    std::sort(row.begin(), row.end());
    for (std::size_t t = 0; t + 1 < row.size(); ++t)
        if (row[t].first == row[t + 1].first)
            throw MathError("SparseMatrix: duplicate column in row");
    for (const auto& [c, v] : row) {
        if (c >= ncols) throw MathError("SparseMatrix: column out of range");
        if (v == 0 || v >= prime) throw MathError("SparseMatrix: value not reduced or zero stored");
    }
    rows.push_back(std::move(row));
    ++nrows;
}

std::size_t SparseMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    return n;
}

void SparseMatrix::dump_triplets(std::ostream& os) const {
    os << nrows << " " << ncols << " " << nnz() << "\n";
    for (std::uint32_t r = 0; r < nrows; ++r)
        for (const auto& [c, v] : rows[r]) os << r << " " << c << " " << v << "\n";
}

SparseMatrix SparseMatrix::parse_triplets(std::istream& is, u64 prime) {
    SparseMatrix m;
    m.prime = prime;
    std::size_t nnz = 0;
    std::uint32_t nrows = 0;
    if (!(is >> nrows >> m.ncols >> nnz)) throw ParseError("triplet matrix: bad header");
    m.rows.resize(nrows);
    m.nrows = nrows;
    for (std::size_t t = 0; t < nnz; ++t) {
        std::uint32_t r, c;
        u64 v;
        if (!(is >> r >> c >> v)) throw ParseError("triplet matrix: truncated entries");
        if (r >= m.nrows || c >= m.ncols) throw ParseError("triplet matrix: index out of range");
        m.rows[r].emplace_back(c, v % prime);
    }
    for (auto& row : m.rows) {
        std::sort(row.begin(), row.end());
        row.erase(std::remove_if(row.begin(), row.end(),
                                 [](const auto& e) { return e.second == 0; }),
                  row.end());
    }
    return m;
}

// ---------------------------------------------------------------------------
// FpEchelon
// ---------------------------------------------------------------------------

struct FpEchelon::Impl {
    PrimeField field;
    Montgomery64 mont;
    std::uint32_t ncols;
    // reduced rows in Montgomery form; pivots[i] is the first nonzero column
    std::vector<std::vector<u64>> rows;
    std::vector<std::uint32_t> pivots;
    std::vector<std::int32_t> pivot_of_col; // column -> row index or -1

    Impl(u64 prime, std::uint32_t nc)
        : field(prime), mont(prime), ncols(nc), pivot_of_col(nc, -1) {}

    // dst -= f * src, over columns [from, ncols)
    void submul(std::vector<u64>& dst, u64 f, const std::vector<u64>& src, std::uint32_t from) {
        for (std::uint32_t c = from; c < ncols; ++c) {
            if (src[c]) dst[c] = mont.sub(dst[c], mont.mul(f, src[c]));
        }
    }

    bool add_row(const std::vector<u64>& plain) {
        std::vector<u64> row(ncols);
        for (std::uint32_t c = 0; c < ncols; ++c) row[c] = mont.to_mont(plain[c]);
        for (std::uint32_t c = 0; c < ncols; ++c) {
            if (!row[c]) continue;
            std::int32_t pr = pivot_of_col[c];
            if (pr >= 0) {
                submul(row, row[c], rows[static_cast<std::size_t>(pr)], c);
                row[c] = 0;
            } else {
                // normalize so the pivot is 1 (in Montgomery form)
                u64 inv = field.inv(mont.from_mont(row[c]));
                u64 minv = mont.to_mont(inv);
                for (std::uint32_t cc = c; cc < ncols; ++cc)
                    if (row[cc]) row[cc] = mont.mul(row[cc], minv);
                pivot_of_col[c] = static_cast<std::int32_t>(rows.size());
                pivots.push_back(c);
                rows.push_back(std::move(row));
                return true;
            }
        }
        return false;
    }

    // Fully reduce stored rows against each other (row echelon -> RREF).
    std::vector<std::vector<u64>> rref() const {
        std::vector<std::vector<u64>> out = rows;
        // order rows by pivot column
        std::vector<std::size_t> order(out.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return pivots[a] < pivots[b]; });
        for (std::size_t oi = out.size(); oi-- > 0;) {
            std::size_t i = order[oi];
            std::uint32_t pc = pivots[i];
            for (std::size_t oj = 0; oj < oi; ++oj) {
                std::size_t j = order[oj];
                if (out[j][pc]) {
                    u64 f = out[j][pc];
                    for (std::uint32_t c = pc; c < ncols; ++c)
                        if (out[i][c]) out[j][c] = mont.sub(out[j][c], mont.mul(f, out[i][c]));
                }
            }
        }
        std::vector<std::vector<u64>> sorted;
        sorted.reserve(out.size());
        for (std::size_t oi = 0; oi < out.size(); ++oi) sorted.push_back(std::move(out[order[oi]]));
        return sorted;
    }
};

FpEchelon::FpEchelon(u64 prime, std::uint32_t ncols) : impl_(new Impl(prime, ncols)) {}
FpEchelon::~FpEchelon() = default;
FpEchelon::FpEchelon(FpEchelon&&) noexcept = default;
FpEchelon& FpEchelon::operator=(FpEchelon&&) noexcept = default;

bool FpEchelon::add_row(const std::vector<u64>& row) {
    if (row.size() != impl_->ncols) throw MathError("FpEchelon: row length mismatch");
    return impl_->add_row(row);
}

std::uint32_t FpEchelon::rank() const { return static_cast<std::uint32_t>(impl_->rows.size()); }
std::uint32_t FpEchelon::ncols() const { return impl_->ncols; }

std::vector<std::uint32_t> FpEchelon::pivot_columns() const {
    std::vector<std::uint32_t> p = impl_->pivots;
    std::sort(p.begin(), p.end());
    return p;
}

NullspaceResult FpEchelon::nullspace() const {
    const auto& im = *impl_;
    NullspaceResult res;
    res.rank = rank();
    auto rref = im.rref();
    std::vector<std::uint32_t> piv_sorted = im.pivots;
    std::sort(piv_sorted.begin(), piv_sorted.end());
    std::vector<bool> is_pivot(im.ncols, false);
    for (auto c : piv_sorted) is_pivot[c] = true;

    // one kernel vector per free column: x[free] = 1, x[pivot] = -rref[pivot_row][free]
    for (std::uint32_t f = 0; f < im.ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<u64> vec(im.ncols, 0);
        vec[f] = im.field.one();
        for (std::size_t i = 0; i < piv_sorted.size(); ++i) {
            u64 v = rref[i][f];
            if (v) vec[piv_sorted[i]] = im.field.neg(im.mont.from_mont(v));
        }
        res.basis.push_back(std::move(vec));
    }

    // canonicalize: reduced row-echelon form of the kernel basis itself
    if (!res.basis.empty()) {
        FpEchelon canon(im.field.modulus(), im.ncols);
        for (const auto& v : res.basis) canon.add_row(v);
        auto rr = canon.impl_->rref();
        res.basis.clear();
        for (const auto& row : rr) {
            std::vector<u64> plain(im.ncols);
            for (std::uint32_t c = 0; c < im.ncols; ++c)
                plain[c] = canon.impl_->mont.from_mont(row[c]);
            res.basis.push_back(std::move(plain));
        }
    }
    return res;
}

NullspaceResult rank_nullspace(const SparseMatrix& m) {
    FpEchelon ech(m.prime, m.ncols);
    std::vector<u64> dense(m.ncols);
    for (const auto& row : m.rows) {
        std::fill(dense.begin(), dense.end(), 0);
        for (const auto& [c, v] : row) dense[c] = v;
        ech.add_row(dense);
    }
    return ech.nullspace();
}

// ---------------------------------------------------------------------------
// Exact determinants
// ---------------------------------------------------------------------------

Integer det_bareiss(std::vector<std::vector<Integer>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw MathError("det: matrix not square");
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

Rational det_exact(const std::vector<std::vector<Rational>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw MathError("det: matrix not square");
    if (n == 0) return Rational(1);
    std::vector<std::vector<Integer>> zm(n, std::vector<Integer>(n));
    Integer denom = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m[i][j].get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            Rational scaled = m[i][j] * Rational(l);
            zm[i][j] = scaled.get_num(); // denominator is 1 after scaling
        }
        denom *= l;
    }
    return make_rational(det_bareiss(std::move(zm)), denom);
}

u64 det_mod(const PrimeField& field, std::vector<std::vector<u64>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw MathError("det: matrix not square");
    if (n == 0) return field.one();
    u64 det = field.one();
    bool negate = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[k], m[piv]);
            negate = !negate;
        }
        det = field.mul(det, m[k][k]);
        u64 inv = field.inv(m[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            u64 f = field.mul(m[i][k], inv);
            for (std::size_t j = k; j < n; ++j)
                if (m[k][j]) m[i][j] = field.sub(m[i][j], field.mul(f, m[k][j]));
        }
    }
    return negate ? field.neg(det) : det;
}

// ---------------------------------------------------------------------------
// Rational kernel
// ---------------------------------------------------------------------------

namespace {

// RREF over Q in place; returns pivot columns.
std::vector<std::size_t> rref_rational(std::vector<std::vector<Rational>>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t nc = m[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < nc && rank < m.size(); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        Rational inv = 1 / m[rank][c];
        for (std::size_t j = c; j < nc; ++j) m[rank][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < nc; ++j) m[i][j] -= f * m[rank][j];
        }
        pivots.push_back(c);
        ++rank;
    }
    m.resize(rank, std::vector<Rational>(nc));
    return pivots;
}

} // namespace

std::vector<std::vector<Rational>> kernel_rational(std::vector<std::vector<Rational>> m) {
    if (m.empty()) return {};
    const std::size_t nc = m[0].size();
    auto pivots = rref_rational(m);
    std::vector<bool> is_pivot(nc, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < nc; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> vec(nc, Rational(0));
        vec[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) vec[pivots[i]] = -m[i][f];
        basis.push_back(std::move(vec));
    }
    rref_rational(basis);
    return basis;
}

} // namespace undulation
