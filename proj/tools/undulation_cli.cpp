// Command-line interface: invariant evaluation, ideal component dimensions,
// pipeline verification, and test-curve generation.
//
// Exit codes: 0 success, 1 usage/input error, 2 undulation found (only with
// --fail-on-undulation), 3 computation unsaturated or unstable across
// primes/seeds.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "undulation/curve_io.hpp"
#include "undulation/idealgen.hpp"
#include "undulation/undulation.hpp"

using namespace undulation;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUndulation = 2;
constexpr int kExitUnsaturated = 3;

std::vector<u64> resolve_primes(std::vector<u64> primes, std::size_t want) {
    if (primes.empty()) return PrimeField::default_primes(want);
    for (u64 p : primes) PrimeField check(p); // validates primality
    return primes;
}

nlohmann::json report_to_json(const InvariantReport& rep) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& l : rep.lines)
        lines.push_back({rational_to_string(l[0]), rational_to_string(l[1]),
                         rational_to_string(l[2])});
    nlohmann::json j{{"format", 1},
                     {"value", rational_to_string(rep.value)},
                     {"verdict", rep.zero ? "zero" : "nonzero"},
                     {"lines", lines}};
    if (!rep.diagnostic.empty()) j["diagnostic"] = rep.diagnostic;
    return j;
}

int cmd_invariant(const std::string& path, const std::string& data_path, bool fail_on_undulation,
                  const std::string& format) {
    nlohmann::json j;
    if (path == "-") {
        try {
            std::cin >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("invalid JSON on stdin: ") + e.what());
        }
    } else {
        j = load_json_file(path);
    }
    PlaneCurve<RationalRing> curve = curve_from_json(j);
    if (curve.degree() != 4) throw ParseError("invariant: the curve must be a quartic (r = 4)");
    auto mtx = load_tabulated_quartic(data_path.empty() ? default_data_path() : data_path);
    InvariantReport rep = invariant_quartic(mtx, curve);
    if (format == "json") {
        std::cout << report_to_json(rep).dump(2) << "\n";
    } else {
        std::cout << "value   = " << rational_to_string(rep.value) << "\n";
        std::cout << "verdict = " << (rep.zero ? "zero" : "nonzero") << "\n";
        for (const auto& l : rep.lines)
            std::cout << "line    : (" << rational_to_string(l[0]) << " : "
                      << rational_to_string(l[1]) << " : " << rational_to_string(l[2]) << ")\n";
        if (!rep.diagnostic.empty()) std::cout << "note    : " << rep.diagnostic << "\n";
    }
    if (rep.zero && fail_on_undulation) return kExitUndulation;
    return kExitOk;
}

int cmd_dims(int r, int n, int m, std::vector<u64> primes, std::vector<u64> seeds,
             double oversample, int threads, bool heavy, long long expect, bool has_expect,
             const std::string& dump_path) {
    primes = resolve_primes(std::move(primes), 2);
    if (seeds.empty()) seeds = {1};
    ColumnLayout layout(r, n, m);
    if (layout.ncols() > 200000 && !heavy) {
        std::cerr << "this component has " << layout.ncols()
                  << " columns; pass --heavy to acknowledge a long runtime\n";
        return kExitInput;
    }
    std::optional<int> agreed;
    for (u64 p : primes) {
        for (u64 seed : seeds) {
            ComponentSpec spec{r, n, m, std::nullopt, p, seed, oversample};
            int dim = component_dim(spec, threads);
            std::cout << "dim I_(" << n << "," << m << ") [r=" << r << ", p=" << p
                      << ", seed=" << seed << "] = " << dim << "\n";
            if (agreed && *agreed != dim) {
                std::cerr << "disagreement across primes/seeds: " << *agreed << " vs " << dim
                          << "\n";
                return kExitUnsaturated;
            }
            agreed = dim;
        }
    }
    if (!dump_path.empty()) {
        ComponentSpec spec{r, n, m, std::nullopt, primes[0], seeds[0], oversample};
        SparseMatrix mtx = build_constraints(spec);
        std::ofstream out(dump_path);
        if (!out) throw Error("cannot write " + dump_path);
        mtx.dump_triplets(out);
        std::cout << "constraint matrix written to " << dump_path << " (" << mtx.nrows << "x"
                  << mtx.ncols << ")\n";
    }
    if (has_expect && agreed && *agreed != expect) {
        std::cerr << "expected dimension " << expect << ", computed " << *agreed << "\n";
        return kExitUnsaturated;
    }
    return kExitOk;
}

int cmd_triangle(int r, int n, int m, std::vector<u64> primes, std::vector<u64> seeds,
                 double oversample, int threads, bool heavy) {
    primes = resolve_primes(std::move(primes), 1);
    if (seeds.empty()) seeds = {1};
    ColumnLayout layout(r, n, m);
    if (layout.ncols() > 200000 && !heavy) {
        std::cerr << "this component has " << layout.ncols()
                  << " columns; pass --heavy to acknowledge a long runtime\n";
        return kExitInput;
    }
    ComponentSpec spec{r, n, m, std::nullopt, primes[0], seeds[0], oversample};
    auto triangle = refined_dims_triangle(spec, threads);
    int total = 0;
    for (const auto& [w, d] : triangle) {
        std::cout << "dim I_(" << n << "; " << w[0] << "," << w[1] << "," << w[2] << ") = " << d
                  << "\n";
        total += d;
    }
    std::cout << "total = " << total << "  (prime " << primes[0] << ", seed " << seeds[0] << ")\n";
    return kExitOk;
}

int cmd_basis(int r, int n, int m, std::vector<u64> primes, std::vector<u64> seeds,
              double oversample, int threads, bool heavy, bool letters) {
    primes = resolve_primes(std::move(primes), 1);
    if (seeds.empty()) seeds = {1};
    ColumnLayout layout(r, n, m);
    if (layout.ncols() > 200000 && !heavy) {
        std::cerr << "this component has " << layout.ncols()
                  << " columns; pass --heavy to acknowledge a long runtime\n";
        return kExitInput;
    }
    ComponentSpec spec{r, n, m, std::nullopt, primes[0], seeds[0], oversample};
    ComponentBasis basis = component_basis(spec, threads);
    std::cout << "# basis of I_(" << n << "," << m << "), r=" << r << ", mod " << primes[0]
              << ", " << basis.polys.size() << " polynomials\n";
    PolyFormat fmt;
    fmt.quartic_letters = letters && r == 4;
    for (std::size_t i = 0; i < basis.polys.size(); ++i)
        std::cout << i + 1 << " : " << poly_to_string(basis.polys[i], fmt) << "\n";
    return kExitOk;
}

int cmd_verify(std::vector<u64> primes, u64 seed, int points, int rows, int threads,
               const std::string& data_path) {
    VerifyOptions opts;
    opts.primes = resolve_primes(std::move(primes), 2);
    opts.seed = seed;
    opts.ratio_points = points;
    opts.membership_rows = rows;
    opts.threads = threads;
    opts.data_path = data_path;
    auto results = run_verification(opts);
    bool all = true;
    for (const auto& res : results) {
        std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << res.name;
        if (!res.detail.empty()) std::cout << " -- " << res.detail;
        std::cout << "\n";
        all = all && res.pass;
    }
    return all ? kExitOk : kExitUnsaturated;
}

int cmd_gen(const std::string& kind, int r, u64 seed, long long bound, const std::string& out,
            std::string witness_path) {
    RationalRing ring;
    if (kind == "random") {
        auto curve = random_curve(ring, r, seed, bound);
        save_json_file(out, curve_to_json(curve));
        std::cout << "wrote " << out << "\n";
        return kExitOk;
    }
    if (kind == "undulation") {
        if (r < 4) throw ParseError("gen undulation: degree must be at least 4");
        auto [curve, wit] = random_undulation_curve(ring, r, seed, bound);
        save_json_file(out, curve_to_json(curve));
        if (witness_path.empty()) witness_path = out + ".witness.json";
        save_json_file(witness_path, witness_to_json(wit));
        std::cout << "wrote " << out << " and " << witness_path << "\n";
        return kExitOk;
    }
    throw ParseError("gen: kind must be 'random' or 'undulation'");
}

int cmd_quintic(u64 prime, u64 seed, double budget_seconds, const std::string& checkpoint,
                int threads) {
    QuinticBudget budget;
    budget.seconds = budget_seconds;
    budget.checkpoint_path = checkpoint;
    budget.threads = threads;
    auto mtx = build_quintic_matrix(prime, seed, budget);
    std::cout << "quintic matrix built: " << mtx.size() << " rows\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact undulation invariant of plane quartics and the graded components "
                 "of the undulation ideal"};
    app.require_subcommand(1);
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    // invariant
    std::string curve_path, data_path, format = "json";
    bool fail_on_undulation = false;
    auto* inv = app.add_subcommand("invariant", "evaluate the invariant of a quartic curve file");
    inv->add_option("curve", curve_path, "curve JSON file ('-' for stdin)")->required();
    inv->add_option("--data", data_path, "matrix data file (default: built-in)");
    inv->add_option("--format", format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    inv->add_flag("--fail-on-undulation", fail_on_undulation,
                  "exit with code 2 when the verdict is zero");

    // dims / triangle / basis
    int r = 4, n = 2, m = 4;
    std::vector<u64> primes, seeds;
    double oversample = 1.25;
    bool heavy = false, letters = false;
    long long expect = 0;
    std::string dump_path;
    auto add_common = [&](CLI::App* sub, bool with_rnm) {
        if (with_rnm) {
            sub->add_option("-r,--degree", r, "curve degree")->required();
            sub->add_option("-n,--deg-c", n, "degree in the curve coefficients")->required();
            sub->add_option("-m,--deg-v", m, "degree in v1,v2,v3")->required();
        }
        sub->add_option("--prime", primes, "working prime(s); default: two built-in 61-bit primes");
        sub->add_option("--seed", seeds, "sampling seed(s); default: 1");
        sub->add_option("--oversample", oversample, "initial rows per column (default 1.25)");
        sub->add_option("--threads", threads, "worker thread cap");
        sub->add_flag("--heavy", heavy, "acknowledge very long runtimes");
    };
    auto* dims = app.add_subcommand("dims", "dimension of a graded ideal component");
    add_common(dims, true);
    auto* expect_opt = dims->add_option("--expect", expect, "assert the dimension equals this");
    dims->add_option("--dump", dump_path, "write the sampled constraint system (triplet text)");

    auto* tri = app.add_subcommand("triangle", "refined dimensions over all weights");
    add_common(tri, true);

    auto* basis = app.add_subcommand("basis", "canonical basis polynomials of a component");
    add_common(basis, true);
    basis->add_flag("--letters", letters, "print quartic coefficients as letters a..o");

    // verify
    u64 seed = 1;
    int points = 20, rows = 100;
    auto* verify = app.add_subcommand("verify", "cross-validate the tabulated matrix against the "
                                                "from-scratch pipeline");
    verify->add_option("--prime", primes, "working prime(s)");
    verify->add_option("--seed", seed, "pipeline seed");
    verify->add_option("--points", points, "determinant ratio evaluation points");
    verify->add_option("--rows", rows, "sampled membership rows per matrix row");
    verify->add_option("--threads", threads, "worker thread cap");
    verify->add_option("--data", data_path, "matrix data file (default: built-in)");

    // gen
    std::string kind, out_path = "curve.json", witness_path;
    long long bound = 50;
    auto* gen = app.add_subcommand("gen", "generate a test curve file");
    gen->add_option("kind", kind, "'random' or 'undulation'")->required();
    gen->add_option("-r,--degree", r, "curve degree (default 4)");
    gen->add_option("--seed", seed, "generation seed");
    gen->add_option("--bound", bound, "coefficient bound (integers in [-bound, bound])");
    gen->add_option("-o,--out", out_path, "output curve file");
    gen->add_option("--witness", witness_path, "output witness file (undulation kind)");

    // quintic matrix (heavy)
    u64 qprime = PrimeField::kLegacyPrime;
    double budget_seconds = 3600;
    std::string checkpoint = "quintic_checkpoint.txt";
    auto* quintic = app.add_subcommand(
        "quintic-matrix", "attempt the 36 x 36 quintic matrix pipeline (very long; checkpointed)");
    quintic->add_option("--prime", qprime, "working prime (default 6361)");
    quintic->add_option("--seed", seed, "pipeline seed");
    quintic->add_option("--budget", budget_seconds, "time budget in seconds");
    quintic->add_option("--checkpoint", checkpoint, "progress file");
    quintic->add_option("--threads", threads, "worker thread cap");
    quintic->add_flag("--heavy", heavy, "required acknowledgement");

    CLI11_PARSE(app, argc, argv);

    try {
        if (inv->parsed())
            return cmd_invariant(curve_path, data_path, fail_on_undulation, format);
        if (dims->parsed())
            return cmd_dims(r, n, m, primes, seeds, oversample, threads, heavy, expect,
                            expect_opt->count() > 0, dump_path);
        if (tri->parsed()) return cmd_triangle(r, n, m, primes, seeds, oversample, threads, heavy);
        if (basis->parsed())
            return cmd_basis(r, n, m, primes, seeds, oversample, threads, heavy, letters);
        if (verify->parsed()) return cmd_verify(primes, seed, points, rows, threads, data_path);
        if (gen->parsed()) return cmd_gen(kind, r, seed, bound, out_path, witness_path);
        if (quintic->parsed()) {
            if (!heavy) {
                std::cerr << "quintic-matrix needs --heavy: the full run is cluster-scale\n";
                return kExitInput;
            }
            return cmd_quintic(qprime, seed, budget_seconds, checkpoint, threads);
        }
    } catch (const UnsaturatedError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsaturated;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
