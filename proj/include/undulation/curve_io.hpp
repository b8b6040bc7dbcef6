#ifndef UNDULATION_CURVE_IO_HPP
#define UNDULATION_CURVE_IO_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "undulation/curve.hpp"

namespace undulation {

// Curve file schema: {"format":1, "r":4, "coeffs":{"i,j,k":"num/den", ...}};
// omitted slots are zero, values are exact decimal strings.

inline nlohmann::json curve_to_json(const PlaneCurve<RationalRing>& c) {
    nlohmann::json coeffs = nlohmann::json::object();
    auto mons = x_monomials(c.degree());
    for (std::size_t t = 0; t < mons.size(); ++t) {
        const Rational& v = c.form().coeffs()[t];
        if (sgn(v) == 0) continue;
        std::string key = std::to_string(mons[t][0]) + "," + std::to_string(mons[t][1]) + "," +
                          std::to_string(mons[t][2]);
        coeffs[key] = rational_to_string(v);
    }
    return nlohmann::json{{"format", 1}, {"r", c.degree()}, {"coeffs", coeffs}};
}

inline PlaneCurve<RationalRing> curve_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("curve file: not a JSON object");
    if (j.contains("format") && j["format"] != 1)
        throw ParseError("curve file: unsupported format version");
    if (!j.contains("r") || !j["r"].is_number_integer())
        throw ParseError("curve file: missing integer field 'r'");
    int r = j["r"].get<int>();
    if (r < 1 || r > 16) throw ParseError("curve file: degree out of range");
    PlaneCurve<RationalRing> c(RationalRing{}, r);
    if (j.contains("coeffs")) {
        if (!j["coeffs"].is_object()) throw ParseError("curve file: 'coeffs' must be an object");
        for (const auto& [key, val] : j["coeffs"].items()) {
            int i, jj, k;
            if (std::sscanf(key.c_str(), "%d,%d,%d", &i, &jj, &k) != 3)
                throw ParseError("curve file: bad coefficient key '" + key + "'");
            if (i < 0 || jj < 0 || k < 0 || i + jj + k != r)
                throw ParseError("curve file: exponents '" + key + "' do not sum to r");
            if (!val.is_string())
                throw ParseError("curve file: coefficient values must be strings");
            c.coefficient(i, jj, k) = parse_rational(val.get<std::string>());
        }
    }
    return c;
}

inline nlohmann::json triv_to_json(const TrivForm<RationalRing>& f) {
    nlohmann::json out = nlohmann::json::object();
    auto mons = x_monomials(f.degree());
    for (std::size_t t = 0; t < mons.size(); ++t) {
        if (sgn(f.coeffs()[t]) == 0) continue;
        std::string key = std::to_string(mons[t][0]) + "," + std::to_string(mons[t][1]) + "," +
                          std::to_string(mons[t][2]);
        out[key] = rational_to_string(f.coeffs()[t]);
    }
    return out;
}

inline TrivForm<RationalRing> triv_from_json(const nlohmann::json& j, int degree) {
    TrivForm<RationalRing> f(RationalRing{}, degree);
    for (const auto& [key, val] : j.items()) {
        int i, jj, k;
        if (std::sscanf(key.c_str(), "%d,%d,%d", &i, &jj, &k) != 3 || i < 0 || jj < 0 || k < 0 ||
            i + jj + k != degree)
            throw ParseError("witness file: bad exponent key '" + key + "'");
        f.at(i, jj, k) = parse_rational(val.get<std::string>());
    }
    return f;
}

inline nlohmann::json witness_to_json(const DecompositionWitness<RationalRing>& wit) {
    auto lin = [](const LinearForm<RationalRing>& v) {
        return nlohmann::json{rational_to_string(v[0]), rational_to_string(v[1]),
                              rational_to_string(v[2])};
    };
    return nlohmann::json{{"format", 1},
                          {"r", wit.w.degree() + 1},
                          {"u", lin(wit.u)},
                          {"h", triv_to_json(wit.h)},
                          {"v", lin(wit.v)},
                          {"w", triv_to_json(wit.w)}};
}

inline DecompositionWitness<RationalRing> witness_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("r")) throw ParseError("witness file: malformed");
    int r = j["r"].get<int>();
    if (r < 4) throw ParseError("witness file: degree must be at least 4");
    auto lin = [&](const char* name) {
        LinearForm<RationalRing> v;
        const auto& arr = j.at(name);
        if (!arr.is_array() || arr.size() != 3)
            throw ParseError(std::string("witness file: '") + name + "' must have 3 entries");
        for (int ax = 0; ax < 3; ++ax)
            v[static_cast<std::size_t>(ax)] =
                parse_rational(arr[static_cast<std::size_t>(ax)].get<std::string>());
        return v;
    };
    DecompositionWitness<RationalRing> wit{lin("u"), triv_from_json(j.at("h"), r - 4), lin("v"),
                                           triv_from_json(j.at("w"), r - 1)};
    return wit;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace undulation

#endif
