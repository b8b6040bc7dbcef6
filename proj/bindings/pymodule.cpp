#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "undulation/curve_io.hpp"
#include "undulation/idealgen.hpp"
#include "undulation/undulation.hpp"

namespace py = pybind11;
using namespace undulation;

namespace {

std::string g_data_path;

std::string data_path() { return g_data_path.empty() ? default_data_path() : g_data_path; }

py::dict report_dict(const InvariantReport& rep) {
    py::dict d;
    d["value"] = rational_to_string(rep.value);
    d["verdict"] = rep.zero ? "zero" : "nonzero";
    py::list lines;
    for (const auto& l : rep.lines) {
        py::list line;
        for (const auto& c : l) line.append(rational_to_string(c));
        lines.append(line);
    }
    d["lines"] = lines;
    if (!rep.diagnostic.empty()) d["diagnostic"] = rep.diagnostic;
    return d;
}

py::dict invariant_from_json(const std::string& curve_json) {
    auto curve = curve_from_json(nlohmann::json::parse(curve_json));
    auto mtx = load_tabulated_quartic(data_path());
    return report_dict(invariant_quartic(mtx, curve));
}

std::pair<std::string, std::string> gen_undulation(int r, u64 seed, long long bound) {
    auto [curve, wit] = random_undulation_curve(RationalRing{}, r, seed, bound);
    return {curve_to_json(curve).dump(), witness_to_json(wit).dump()};
}

std::string gen_random(int r, u64 seed, long long bound) {
    return curve_to_json(random_curve(RationalRing{}, r, seed, bound)).dump();
}

int dim_py(int r, int n, int m, u64 prime, u64 seed, int threads) {
    if (prime == 0) prime = PrimeField::default_primes(1)[0];
    ComponentSpec spec{r, n, m, std::nullopt, prime, seed};
    return component_dim(spec, threads);
}

std::map<std::tuple<int, int, int>, int> triangle_py(int r, int n, int m, u64 prime, u64 seed,
                                                     int threads) {
    if (prime == 0) prime = PrimeField::default_primes(1)[0];
    ComponentSpec spec{r, n, m, std::nullopt, prime, seed};
    std::map<std::tuple<int, int, int>, int> out;
    for (const auto& [w, d] : refined_dims_triangle(spec, threads))
        out[{w[0], w[1], w[2]}] = d;
    return out;
}

std::vector<py::dict> verify_py(std::vector<u64> primes, u64 seed, int points, int rows,
                                int threads) {
    VerifyOptions opts;
    opts.primes = std::move(primes);
    opts.seed = seed;
    opts.ratio_points = points;
    opts.membership_rows = rows;
    opts.threads = threads;
    opts.data_path = data_path();
    std::vector<py::dict> out;
    for (const auto& res : run_verification(opts)) {
        py::dict d;
        d["name"] = res.name;
        d["pass"] = res.pass;
        d["detail"] = res.detail;
        out.push_back(std::move(d));
    }
    return out;
}

bool tangency_py(const std::string& witness_json) {
    auto wit = witness_from_json(nlohmann::json::parse(witness_json));
    return tangency_oracle(wit).pass;
}

} // namespace

PYBIND11_MODULE(_undulation, mod) {
    mod.doc() = "Exact undulation invariant of plane quartics";

    mod.def("set_data_path", [](const std::string& p) { g_data_path = p; },
            "Override the matrix data file location");
    mod.def("get_data_path", &data_path);

    mod.def("invariant", &invariant_from_json, py::arg("curve_json"),
            "Evaluate the invariant of a quartic; returns a report dict");
    mod.def("gen_undulation_curve", &gen_undulation, py::arg("r") = 4, py::arg("seed") = 1,
            py::arg("bound") = 50,
            "Seeded curve with a certified undulation line; returns (curve_json, witness_json)");
    mod.def("gen_random_curve", &gen_random, py::arg("r") = 4, py::arg("seed") = 1,
            py::arg("bound") = 50);
    mod.def("component_dim", &dim_py, py::arg("r"), py::arg("n"), py::arg("m"),
            py::arg("prime") = 0, py::arg("seed") = 1, py::arg("threads") = 1,
            "Dimension of the (n, m) graded component of the undulation ideal");
    mod.def("refined_triangle", &triangle_py, py::arg("r"), py::arg("n"), py::arg("m"),
            py::arg("prime") = 0, py::arg("seed") = 1, py::arg("threads") = 1);
    mod.def("verify", &verify_py, py::arg("primes") = std::vector<u64>{}, py::arg("seed") = 1,
            py::arg("points") = 20, py::arg("rows") = 100, py::arg("threads") = 1,
            "Cross-validate the tabulated matrix against the from-scratch pipeline");
    mod.def("tangency_check", &tangency_py, py::arg("witness_json"));
    mod.def("default_primes",
            [](std::size_t count) { return PrimeField::default_primes(count); },
            py::arg("count") = 2);

    py::register_exception<Error>(mod, "UndulationError");
}
