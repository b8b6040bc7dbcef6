#ifndef UNDULATION_UNDULATION_HPP
#define UNDULATION_UNDULATION_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "undulation/curve.hpp"
#include "undulation/idealgen.hpp"
#include "undulation/linalg.hpp"
#include "undulation/multipoly.hpp"

namespace undulation {

// ---------------------------------------------------------------------------
// Letter convention: the 15 quartic coefficient slots, in precedence order
// a..o, carry fixed integer scales; the letter value of a curve is
// C[i,j,k] / scale. Everything letter-related stays inside this module.
// ---------------------------------------------------------------------------

struct LetterMap {
    // scales for slots a..o: 1,4,4,6,12,6,4,12,12,4,1,4,6,4,1
    static const std::array<int, 15>& scales();

    static std::map<VarId, Rational> assignment(const PlaneCurve<RationalRing>& curve);
    static std::map<VarId, u64> assignment_mod(const PlaneCurve<PrimeField>& curve,
                                               const PrimeField& field);
};

enum class MatrixSource { Tabulated, Pipeline };

/// The 21 x 21 matrix whose determinant is the quartic undulation
/// invariant: rows are the 3 alpha and 18 beta polynomials, columns the 21
/// degree-5 monomials in v1,v2,v3 (graded-lex descending). Entries are
/// polynomials in the curve coefficients; `letter_scaled` says whether they
/// are written in the scaled letters a..o or in the raw coefficients.
template <class R>
struct UndulationMatrix {
    MatrixSource source = MatrixSource::Tabulated;
    bool letter_scaled = false;
    u64 prime = 0; // pipeline provenance
    u64 seed = 0;
    std::vector<std::string> row_names;          // alpha1..alpha3, beta1..beta18
    std::vector<Poly<R>> row_polys;              // mixed coefficient/v variables
    std::vector<std::vector<Poly<R>>> entries;   // [row][column], coefficient vars only
    std::vector<std::vector<std::uint8_t>> vmons; // column exponent triples, degree 5

    std::size_t size() const { return row_polys.size(); }
};

struct LoadOptions {
    bool full_validation = true; // gradings, alpha = v*phi, sampled membership
    int membership_rows = 100;
    std::vector<u64> membership_primes; // defaults to two library primes
};

/// Load the tabulated quartic matrix from its data file, verify the
/// checksum, and (by default) re-validate every row: gradings, the alpha
/// rows being v_i * phi, and sampled vanishing on decomposable curves.
UndulationMatrix<RationalRing> load_tabulated_quartic(const std::string& path,
                                                      const LoadOptions& opts = {});

/// Path resolution for the data file: explicit argument, environment
/// variable UNDULATION_DATA, or the compiled-in default.
std::string default_data_path();

/// Substitute a quartic's coefficients into the matrix entries; exact.
std::vector<std::vector<Rational>> assemble(const UndulationMatrix<RationalRing>& mtx,
                                            const PlaneCurve<RationalRing>& curve);

/// Same, mod p (used by cross-validation; also accepts pipeline matrices).
template <class R>
std::vector<std::vector<u64>> assemble_mod(const UndulationMatrix<R>& mtx,
                                           const PlaneCurve<PrimeField>& curve,
                                           const PrimeField& field);

struct InvariantReport {
    Rational value;
    bool zero = false;
    std::vector<std::array<Rational, 3>> lines; // verified undulation lines (zero case)
    std::string diagnostic;                     // e.g. non-Veronese kernel note
};

/// The quartic undulation invariant of the curve: the exact determinant of
/// the assembled matrix. Zero verdicts trigger kernel line recovery. The
/// value equals the classical Cayley-Salmon invariant up to one global
/// nonzero constant fixed by the basis and ordering conventions here.
InvariantReport invariant_quartic(const UndulationMatrix<RationalRing>& mtx,
                                  const PlaneCurve<RationalRing>& curve);

/// Interpret kernel vectors of a singular assembled matrix as degree-5
/// Veronese images of lines; each candidate is verified against all 21
/// coordinates and by restricting the curve to the line (a root of
/// multiplicity >= 4 must appear). Throws if the matrix is nonsingular.
std::vector<std::array<Rational, 3>> undulation_lines_from_kernel(
    const std::vector<std::vector<Rational>>& assembled, const PlaneCurve<RationalRing>& curve,
    std::string* diagnostic = nullptr);

/// Rebuild the 21 x 21 matrix from scratch over GF(p): canonical basis of
/// the (2,5) component for the alpha rows, complement of the coefficient
/// multiples inside the (3,5) component for the beta rows.
UndulationMatrix<PrimeField> pipeline_matrix(u64 prime, u64 seed, int threads = 1);

// ---------------------------------------------------------------------------
// Cross-validation of the tabulated data against the from-scratch pipeline.
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::vector<u64> primes;  // defaults to two library primes
    u64 seed = 1;
    int ratio_points = 20;
    int membership_rows = 100;
    int threads = 1;
    std::string data_path; // empty: default
};

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

// ---------------------------------------------------------------------------
// Optional heavy mode: the 36 x 36 quintic matrix pipeline. The (6,7)
// component solve is far beyond interactive budgets; progress is
// checkpointed per weight block and the run stops cleanly when the budget
// is exhausted.
// ---------------------------------------------------------------------------

struct QuinticBudget {
    double seconds = 3600.0;
    std::string checkpoint_path = "quintic_checkpoint.txt";
    int threads = 1;
};

UndulationMatrix<PrimeField> build_quintic_matrix(u64 prime, u64 seed, const QuinticBudget& budget);

// FNV-1a 64-bit, used for the data file checksum.
u64 fnv1a64(const std::string& data);

} // namespace undulation

#endif
