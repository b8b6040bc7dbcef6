#include "undulation/idealgen.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

namespace undulation {

void ComponentSpec::validate() const {
    if (r < 4) throw MathError("ComponentSpec: curve degree must be at least 4");
    if (n < 0 || m < 0) throw MathError("ComponentSpec: gradings must be nonnegative");
    if (prime < 3) throw MathError("ComponentSpec: prime not set");
    if (oversample < 1.0) throw MathError("ComponentSpec: oversample factor below 1");
    if (refined) {
        const Weight& w = *refined;
        if (w[0] < 0 || w[1] < 0 || w[2] < 0 || w[0] + w[1] + w[2] != r * n + m)
            throw MathError("ComponentSpec: refined weight must be nonnegative and sum to r*n + m");
    }
}

// ---------------------------------------------------------------------------
// ColumnLayout
// ---------------------------------------------------------------------------

ColumnLayout::ColumnLayout(int r, int n, int m) : r_(r), n_(n), m_(m) {
    slots_ = x_monomials(r);
    cmons_ = enumerate_monomials(n, static_cast<int>(slots_.size()));
    vmons_ = enumerate_monomials(m, 3);
    cweights_.reserve(cmons_.size());
    for (const auto& ce : cmons_) {
        Weight w{0, 0, 0};
        for (std::size_t s = 0; s < slots_.size(); ++s)
            for (int ax = 0; ax < 3; ++ax)
                w[static_cast<std::size_t>(ax)] += ce[s] * slots_[s][static_cast<std::size_t>(ax)];
        cweights_.push_back(w);
    }
    for (std::uint32_t col = 0; col < ncols(); ++col) blocks_[weight_of(col)].push_back(col);
}

Weight ColumnLayout::weight_of(std::size_t col) const {
    Weight w = cweights_[cmon_of(col)];
    const auto& ve = vmons_[vmon_of(col)];
    for (int ax = 0; ax < 3; ++ax) w[static_cast<std::size_t>(ax)] += ve[static_cast<std::size_t>(ax)];
    return w;
}

Monomial ColumnLayout::column_monomial(std::size_t col) const {
    std::vector<Monomial::Factor> factors;
    const auto& ce = cmons_[cmon_of(col)];
    for (std::size_t s = 0; s < slots_.size(); ++s)
        if (ce[s])
            factors.emplace_back(VarId::coeffC(slots_[s][0], slots_[s][1], slots_[s][2]), ce[s]);
    const auto& ve = vmons_[vmon_of(col)];
    for (int ax = 0; ax < 3; ++ax)
        if (ve[static_cast<std::size_t>(ax)])
            factors.emplace_back(VarId::lineV(ax), ve[static_cast<std::size_t>(ax)]);
    return Monomial::from_factors(std::move(factors));
}

std::size_t ColumnLayout::column_of_monomial(const Monomial& mono) const {
    std::vector<std::uint8_t> ce(slots_.size(), 0);
    std::vector<std::uint8_t> ve(3, 0);
    for (const auto& [v, e] : mono.factors()) {
        if (v.kind() == VarKind::CoeffC) {
            int i = v.ci(), j = v.cj(), k = v.ck();
            if (i + j + k != r_) return static_cast<std::size_t>(-1);
            ce[static_cast<std::size_t>(x_monomial_index(r_, i, j))] = e;
        } else if (v.kind() == VarKind::LineV) {
            ve[static_cast<std::size_t>(v.axis())] = e;
        } else {
            return static_cast<std::size_t>(-1);
        }
    }
    auto ci = std::lower_bound(cmons_.begin(), cmons_.end(), ce,
                               [](const auto& a, const auto& b) { return a > b; });
    if (ci == cmons_.end() || *ci != ce) return static_cast<std::size_t>(-1);
    auto vi = std::lower_bound(vmons_.begin(), vmons_.end(), ve,
                               [](const auto& a, const auto& b) { return a > b; });
    if (vi == vmons_.end() || *vi != ve) return static_cast<std::size_t>(-1);
    return static_cast<std::size_t>(ci - cmons_.begin()) * vmons_.size() +
           static_cast<std::size_t>(vi - vmons_.begin());
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

SamplePoint sample_point(int r, const PrimeField& field, u64 seed) {
    SplitMix64 rng(seed);
    DecompositionWitness<PrimeField> wit{{}, TrivForm<PrimeField>(field, r - 4), {},
                                         TrivForm<PrimeField>(field, r - 1)};
    for (auto& x : wit.u) x = rng.below(field.modulus());
    for (auto& x : wit.v) x = rng.below(field.modulus());
    for (auto& x : wit.h.coeffs()) x = rng.below(field.modulus());
    for (auto& x : wit.w.coeffs()) x = rng.below(field.modulus());
    SamplePoint pt;
    pt.slot_values = compose_curve(wit).form().coeffs();
    pt.v_values = {wit.v[0], wit.v[1], wit.v[2]};
    return pt;
}

std::vector<u64> evaluate_columns(const ColumnLayout& layout, const PrimeField& field,
                                  const SamplePoint& sample,
                                  const std::vector<std::uint32_t>* subset) {
    const int n = layout.deg_c();
    const int m = layout.deg_v();
    const auto& slots = layout.slots();
    // power tables
    std::vector<std::vector<u64>> cpow(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        cpow[s].resize(static_cast<std::size_t>(n) + 1);
        cpow[s][0] = 1;
        for (int e = 1; e <= n; ++e)
            cpow[s][static_cast<std::size_t>(e)] =
                field.mul(cpow[s][static_cast<std::size_t>(e - 1)], sample.slot_values[s]);
    }
    std::array<std::vector<u64>, 3> vpow;
    for (int ax = 0; ax < 3; ++ax) {
        auto& t = vpow[static_cast<std::size_t>(ax)];
        t.resize(static_cast<std::size_t>(m) + 1);
        t[0] = 1;
        for (int e = 1; e <= m; ++e)
            t[static_cast<std::size_t>(e)] =
                field.mul(t[static_cast<std::size_t>(e - 1)], sample.v_values[static_cast<std::size_t>(ax)]);
    }
    // cache per-cmon products
    std::vector<u64> cvals(layout.cmons().size());
    for (std::size_t ci = 0; ci < layout.cmons().size(); ++ci) {
        const auto& ce = layout.cmons()[ci];
        u64 acc = 1;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (ce[s]) acc = field.mul(acc, cpow[s][ce[s]]);
        cvals[ci] = acc;
    }
    std::vector<u64> vvals(layout.vmons().size());
    for (std::size_t vi = 0; vi < layout.vmons().size(); ++vi) {
        const auto& ve = layout.vmons()[vi];
        u64 acc = 1;
        for (int ax = 0; ax < 3; ++ax)
            if (ve[static_cast<std::size_t>(ax)])
                acc = field.mul(acc, vpow[static_cast<std::size_t>(ax)][ve[static_cast<std::size_t>(ax)]]);
        vvals[vi] = acc;
    }
    if (subset) {
        std::vector<u64> out(subset->size());
        for (std::size_t t = 0; t < subset->size(); ++t) {
            std::uint32_t col = (*subset)[t];
            out[t] = field.mul(cvals[layout.cmon_of(col)], vvals[layout.vmon_of(col)]);
        }
        return out;
    }
    std::vector<u64> out(layout.ncols());
    for (std::size_t col = 0; col < out.size(); ++col)
        out[col] = field.mul(cvals[layout.cmon_of(col)], vvals[layout.vmon_of(col)]);
    return out;
}

namespace {

u64 row_seed(const ComponentSpec& spec, const char* tag, u64 block_id, u64 index) {
    u64 t = 0;
    for (const char* c = tag; *c; ++c) t = t * 131 + static_cast<u64>(*c);
    return mix_seed({spec.seed, spec.prime, static_cast<u64>(spec.r), static_cast<u64>(spec.n),
                     static_cast<u64>(spec.m), t, block_id, index});
}

std::size_t initial_row_count(const ComponentSpec& spec, std::size_t ncols) {
    auto scaled = static_cast<std::size_t>(std::ceil(spec.oversample * static_cast<double>(ncols)));
    return std::max(scaled, ncols + 50);
}

u64 block_id_of(const Weight& w) {
    return (static_cast<u64>(w[0]) << 32) | (static_cast<u64>(w[1]) << 16) |
           static_cast<u64>(w[2]);
}

struct BlockSolve {
    Weight weight{};
    std::vector<std::uint32_t> cols;
    FpEchelon echelon;
    int dim = 0;
};

// Saturated elimination of one weight block: feed the initial batch, then
// keep adding batches until the rank is unchanged for two consecutive ones.
FpEchelon solve_block(const ComponentSpec& spec, const ColumnLayout& layout,
                      const PrimeField& field, const Weight& weight,
                      const std::vector<std::uint32_t>& cols) {
    const std::size_t nc = cols.size();
    FpEchelon ech(spec.prime, static_cast<std::uint32_t>(nc));
    const u64 bid = block_id_of(weight);
    std::size_t fed = 0;
    auto feed = [&](std::size_t count) {
        for (std::size_t t = 0; t < count; ++t, ++fed) {
            SamplePoint pt = sample_point(spec.r, field, row_seed(spec, "rows", bid, fed));
            ech.add_row(evaluate_columns(layout, field, pt, &cols));
        }
    };
    feed(initial_row_count(spec, nc));
    const std::size_t batch = std::max<std::size_t>(32, nc / 16);
    const std::size_t budget = 8 * nc + 512;
    int stable = 0;
    while (stable < 2) {
        if (ech.rank() == nc) break; // full rank cannot grow further
        std::uint32_t before = ech.rank();
        if (fed + batch > budget)
            throw UnsaturatedError("component rank did not stabilize within the row budget");
        feed(batch);
        stable = ech.rank() == before ? stable + 1 : 0;
    }
    return ech;
}

} // namespace

SparseMatrix build_constraints(const ComponentSpec& spec) {
    spec.validate();
    PrimeField field(spec.prime);
    ColumnLayout layout(spec.r, spec.n, spec.m);
    if (spec.refined && !layout.blocks().count(*spec.refined))
        throw MathError("ComponentSpec: refined weight has no monomials");
    const std::vector<std::uint32_t>* subset =
        spec.refined ? &layout.blocks().at(*spec.refined) : nullptr;
    std::size_t nc = subset ? subset->size() : layout.ncols();
    SparseMatrix m;
    m.prime = spec.prime;
    m.ncols = static_cast<std::uint32_t>(nc);
    const std::size_t nrows = initial_row_count(spec, nc);
    const u64 bid = spec.refined ? block_id_of(*spec.refined) : 0;
    for (std::size_t rix = 0; rix < nrows; ++rix) {
        SamplePoint pt = sample_point(spec.r, field, row_seed(spec, "rows", bid, rix));
        auto vals = evaluate_columns(layout, field, pt, subset);
        std::vector<std::pair<std::uint32_t, u64>> row;
        for (std::uint32_t c = 0; c < vals.size(); ++c)
            if (vals[c]) row.emplace_back(c, vals[c]);
        if (row.empty())
            throw MathError("build_constraints: sampled a zero row, evaluation is broken");
        m.add_row(std::move(row));
    }
    return m;
}

ComponentDims component_dims(const ComponentSpec& spec, int threads) {
    spec.validate();
    PrimeField field(spec.prime);
    ColumnLayout layout(spec.r, spec.n, spec.m);
    std::vector<std::pair<Weight, const std::vector<std::uint32_t>*>> work;
    if (spec.refined) {
        auto it = layout.blocks().find(*spec.refined);
        if (it == layout.blocks().end())
            throw MathError("ComponentSpec: refined weight has no monomials");
        work.emplace_back(it->first, &it->second);
    } else {
        for (const auto& [w, cols] : layout.blocks()) work.emplace_back(w, &cols);
    }

    std::vector<int> dims(work.size(), 0);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&](std::size_t begin, std::size_t step) {
        for (std::size_t t = begin; t < work.size(); t += step) {
            try {
                FpEchelon ech = solve_block(spec, layout, field, work[t].first, *work[t].second);
                dims[t] = static_cast<int>(work[t].second->size()) - static_cast<int>(ech.rank());
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    int nthreads = std::max(1, threads);
    if (nthreads == 1 || work.size() <= 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(run, static_cast<std::size_t>(t), static_cast<std::size_t>(nthreads));
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ComponentDims out;
    for (std::size_t t = 0; t < work.size(); ++t) {
        out.total += dims[t];
        if (dims[t] > 0) out.refined[work[t].first] = dims[t];
    }
    return out;
}

ComponentBasis component_basis(const ComponentSpec& spec, int threads) {
    spec.validate();
    PrimeField field(spec.prime);
    ColumnLayout layout(spec.r, spec.n, spec.m);
    std::vector<std::pair<Weight, const std::vector<std::uint32_t>*>> work;
    if (spec.refined) {
        auto it = layout.blocks().find(*spec.refined);
        if (it == layout.blocks().end())
            throw MathError("ComponentSpec: refined weight has no monomials");
        work.emplace_back(it->first, &it->second);
    } else {
        for (const auto& [w, cols] : layout.blocks()) work.emplace_back(w, &cols);
    }

    struct Found {
        std::uint32_t pivot;
        Poly<PrimeField> poly;
    };
    std::vector<std::vector<Found>> found(work.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&](std::size_t begin, std::size_t step) {
        for (std::size_t t = begin; t < work.size(); t += step) {
            try {
                const auto& cols = *work[t].second;
                FpEchelon ech = solve_block(spec, layout, field, work[t].first, cols);
                NullspaceResult ns = ech.nullspace();
                for (const auto& vec : ns.basis) {
                    Poly<PrimeField> poly(field);
                    std::uint32_t pivot = 0;
                    bool pivot_set = false;
                    for (std::size_t c = 0; c < vec.size(); ++c) {
                        if (!vec[c]) continue;
                        if (!pivot_set) {
                            pivot = cols[c];
                            pivot_set = true;
                        }
                        poly.add_term(layout.column_monomial(cols[c]), vec[c]);
                    }
                    found[t].push_back({pivot, std::move(poly)});
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    int nthreads = std::max(1, threads);
    if (nthreads == 1 || work.size() <= 1) {
        run(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(run, static_cast<std::size_t>(t), static_cast<std::size_t>(nthreads));
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    ComponentBasis out;
    out.spec = spec;
    std::vector<Found> all;
    for (auto& f : found)
        for (auto& e : f) all.push_back(std::move(e));
    std::sort(all.begin(), all.end(), [](const Found& a, const Found& b) { return a.pivot < b.pivot; });
    for (auto& e : all) {
        out.pivot_columns.push_back(e.pivot);
        out.polys.push_back(std::move(e.poly));
    }

    // re-verify every basis element against fresh samples
    for (std::size_t i = 0; i < out.polys.size(); ++i) {
        if (!check_membership(out.polys[i], spec.r, field,
                              row_seed(spec, "fresh", 0, static_cast<u64>(i)), 100))
            throw UnsaturatedError(
                "component_basis: sampling artifact, a basis element fails fresh constraints "
                "(increase rows or change prime)");
    }
    return out;
}

bool check_membership(const Poly<PrimeField>& poly, int r, const PrimeField& field, u64 seed,
                      int count) {
    auto slots = x_monomials(r);
    for (int t = 0; t < count; ++t) {
        SamplePoint pt = sample_point(r, field, mix_seed({seed, static_cast<u64>(t)}));
        std::map<VarId, u64> assignment;
        for (std::size_t s = 0; s < slots.size(); ++s)
            assignment[VarId::coeffC(slots[s][0], slots[s][1], slots[s][2])] = pt.slot_values[s];
        for (int ax = 0; ax < 3; ++ax)
            assignment[VarId::lineV(ax)] = pt.v_values[static_cast<std::size_t>(ax)];
        if (poly.evaluate(assignment) != 0) return false;
    }
    return true;
}

ComplementResult complement_basis(const ComponentBasis& big, const ComponentBasis& small) {
    const ComponentSpec& bs = big.spec;
    const ComponentSpec& ss = small.spec;
    if (bs.r != ss.r || bs.prime != ss.prime || bs.n <= ss.n || bs.m != ss.m)
        throw MathError("complement_basis: big component must be (n + d, m) of the small one");
    const int mult_deg = bs.n - ss.n;
    PrimeField field(bs.prime);
    ColumnLayout layout(bs.r, bs.n, bs.m);
    auto slots = x_monomials(bs.r);
    auto mult_mons = enumerate_monomials(mult_deg, static_cast<int>(slots.size()));

    // Products are weight-homogeneous, so the span is echelonized one
    // weight block at a time; the pivot set is the union over blocks.
    std::map<Weight, FpEchelon> echelons;
    std::vector<bool> covered(layout.ncols(), false);
    int span_dim = 0;
    for (const auto& alpha : small.polys) {
        for (const auto& me : mult_mons) {
            Poly<PrimeField> mono = Poly<PrimeField>::constant(field, field.one());
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (me[s])
                    mono = mono * Poly<PrimeField>::variable(
                                      field, VarId::coeffC(slots[s][0], slots[s][1], slots[s][2]),
                                      me[s]);
            Poly<PrimeField> prod = mono * alpha;
            GradeReport grade = grade_of(prod);
            if (grade.status != Homogeneity::Homogeneous)
                throw MathError("complement_basis: product is not weight-homogeneous");
            Weight w = grade.grading.weight;
            auto bit = layout.blocks().find(w);
            if (bit == layout.blocks().end())
                throw MathError("complement_basis: product weight outside the layout");
            const auto& cols = bit->second;
            auto eit = echelons.find(w);
            if (eit == echelons.end())
                eit = echelons
                          .emplace(w, FpEchelon(bs.prime, static_cast<std::uint32_t>(cols.size())))
                          .first;
            std::vector<u64> dense(cols.size(), 0);
            for (const auto& [m, coeff] : prod.terms()) {
                std::size_t col = layout.column_of_monomial(m);
                auto pos = std::lower_bound(cols.begin(), cols.end(), col);
                if (pos == cols.end() || *pos != col)
                    throw MathError("complement_basis: product term outside its weight block");
                dense[static_cast<std::size_t>(pos - cols.begin())] = coeff;
            }
            std::uint32_t before = eit->second.rank();
            eit->second.add_row(dense);
            span_dim += static_cast<int>(eit->second.rank() - before);
        }
    }
    for (const auto& [w, ech] : echelons) {
        const auto& cols = layout.blocks().at(w);
        for (std::uint32_t local : ech.pivot_columns()) covered[cols[local]] = true;
    }

    ComplementResult out;
    out.product_span_dim = span_dim;
    const int expected =
        static_cast<int>(mult_mons.size()) * static_cast<int>(small.polys.size());
    if (out.product_span_dim != expected)
        throw MathError("complement_basis: product span has dimension " +
                        std::to_string(out.product_span_dim) + ", expected " +
                        std::to_string(expected) + " (bad basis or unlucky prime)");

    // The complement representatives are the big-basis elements whose
    // leading column is not a pivot of the product span.
    for (std::size_t i = 0; i < big.polys.size(); ++i) {
        std::uint32_t pivot = big.pivot_columns[i];
        if (!covered[pivot]) {
            out.polys.push_back(big.polys[i]);
            out.pivot_columns.push_back(pivot);
        }
    }
    const int want = static_cast<int>(big.polys.size()) - expected;
    if (static_cast<int>(out.polys.size()) != want)
        throw MathError("complement_basis: complement has dimension " +
                        std::to_string(out.polys.size()) + ", expected " + std::to_string(want));
    return out;
}

std::map<Weight, int> refined_dims_triangle(const ComponentSpec& spec, int threads) {
    ComponentSpec plain = spec;
    plain.refined.reset();
    ComponentDims dims = component_dims(plain, threads);
    return dims.refined;
}

} // namespace undulation
