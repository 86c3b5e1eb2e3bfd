/*
 * io.hpp -- JSON serialisation of tensors, wedges, series and artifacts.
 *
 * Rationals are canonical "p/q" strings ("p" when the denominator is 1).
 * Tensor monomials are arrays of dense per-slot exponent vectors over the
 * global basis order; wedge terms are strictly increasing index lists.  All
 * term containers iterate in their canonical orders, so writing the same
 * data twice gives byte-identical output.
 *
 * Artifact layouts:
 *   twist       {"format":"reltwist-twist","version":1,"cartan_type",
 *                "big","D","form_scaling","flags","series"}
 *   associator  {"format":"reltwist-associator","version":1,"cartan_type",
 *                "form_scaling","flags","series"}
 *   witness     {"format":"reltwist-witness","version":1,"cartan_type",
 *                "big","D","flags","u","lam"}
 * with "big"/"D" as 1-based node lists and series as {"k","N","coeffs"}.
 */
#pragma once

#include "gauge.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace reltwist {

using json = nlohmann::ordered_json;

inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline Rational rational_parse(const std::string& s) {
    try {
        Rational r(s, 10);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

namespace detail {

inline const json& expect(const json& j, const char* key, const char* where) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string(where) + ": missing key '" + key + "'");
    return *it;
}

inline int expect_int(const json& j, const char* key, const char* where) {
    const json& v = expect(j, key, where);
    if (!v.is_number_integer())
        throw std::invalid_argument(std::string(where) + ": '" + key + "' is not an integer");
    return v.get<int>();
}

inline std::string expect_str(const json& j, const char* key, const char* where) {
    const json& v = expect(j, key, where);
    if (!v.is_string())
        throw std::invalid_argument(std::string(where) + ": '" + key + "' is not a string");
    return v.get<std::string>();
}

inline bool expect_bool(const json& j, const char* key, const char* where) {
    const json& v = expect(j, key, where);
    if (!v.is_boolean())
        throw std::invalid_argument(std::string(where) + ": '" + key + "' is not a boolean");
    return v.get<bool>();
}

} // namespace detail

inline json tensor_to_json(const TensorElement& a) {
    json terms = json::array();
    for (const auto& [m, c] : a.terms()) {
        json mono = json::array();
        for (const auto& slot : m.slots) {
            std::vector<int> dense(a.algebra().dim, 0);
            for (const auto& [idx, e] : slot) dense[idx] = e;
            mono.push_back(dense);
        }
        terms.push_back(json{{"mono", std::move(mono)}, {"coef", rational_str(c)}});
    }
    return json{{"k", a.k()}, {"terms", std::move(terms)}};
}

inline TensorElement tensor_from_json(const LieAlgebra& L, const json& j) {
    const char* where = "tensor json";
    const int k = detail::expect_int(j, "k", where);
    if (k < 1 || k > 8) throw std::invalid_argument("tensor json: bad slot count");
    TensorElement out(L, k);
    const json& terms = detail::expect(j, "terms", where);
    if (!terms.is_array()) throw std::invalid_argument("tensor json: 'terms' is not an array");
    for (const json& t : terms) {
        const json& mono = detail::expect(t, "mono", where);
        if (!mono.is_array() || (int)mono.size() != k)
            throw std::invalid_argument("tensor json: monomial has the wrong slot count");
        Mono m;
        m.slots.resize(k);
        for (int s = 0; s < k; ++s) {
            const json& dense = mono[s];
            if (!dense.is_array() || (int)dense.size() != L.dim)
                throw std::invalid_argument("tensor json: slot vector length is not dim g");
            for (int i = 0; i < L.dim; ++i) {
                if (!dense[i].is_number_integer())
                    throw std::invalid_argument("tensor json: exponent is not an integer");
                int e = dense[i].get<int>();
                if (e < 0 || e > 0xffff)
                    throw std::invalid_argument("tensor json: exponent out of range");
                if (e) m.slots[s].push_back({(uint16_t)i, (uint16_t)e});
            }
        }
        out.add_term(m, rational_parse(detail::expect_str(t, "coef", where)));
    }
    return out;
}

inline json ext_to_json(const ExtElement& a) {
    json terms = json::array();
    for (const auto& [idx, c] : a.terms()) {
        json ix = json::array();
        for (uint16_t i : idx) ix.push_back((int)i);
        terms.push_back(json{{"idx", std::move(ix)}, {"coef", rational_str(c)}});
    }
    return json{{"deg", a.deg()}, {"terms", std::move(terms)}};
}

inline ExtElement ext_from_json(const LieAlgebra& L, const json& j) {
    const char* where = "wedge json";
    const int deg = detail::expect_int(j, "deg", where);
    if (deg < 0 || deg > L.dim) throw std::invalid_argument("wedge json: bad degree");
    ExtElement out(L, deg);
    const json& terms = detail::expect(j, "terms", where);
    if (!terms.is_array()) throw std::invalid_argument("wedge json: 'terms' is not an array");
    for (const json& t : terms) {
        const json& ix = detail::expect(t, "idx", where);
        if (!ix.is_array() || (int)ix.size() != deg)
            throw std::invalid_argument("wedge json: index list has the wrong length");
        ExtIdx idx;
        for (const json& v : ix) {
            if (!v.is_number_integer())
                throw std::invalid_argument("wedge json: index is not an integer");
            int i = v.get<int>();
            if (i < 0 || i >= L.dim)
                throw std::invalid_argument("wedge json: index out of range");
            if (!idx.empty() && (uint16_t)i <= idx.back())
                throw std::invalid_argument("wedge json: indices must strictly increase");
            idx.push_back((uint16_t)i);
        }
        out.add_term(idx, rational_parse(detail::expect_str(t, "coef", where)));
    }
    return out;
}

inline json series_to_json(const HbarSeries& s) {
    json coeffs = json::array();
    for (int n = 0; n <= s.cap(); ++n) coeffs.push_back(tensor_to_json(s.at(n)));
    return json{{"k", s.k()}, {"N", s.cap()}, {"coeffs", std::move(coeffs)}};
}

inline HbarSeries series_from_json(const LieAlgebra& L, const json& j) {
    const char* where = "series json";
    const int k = detail::expect_int(j, "k", where);
    const int N = detail::expect_int(j, "N", where);
    if (k < 1 || k > 8) throw std::invalid_argument("series json: bad slot count");
    if (N < 0) throw std::invalid_argument("series json: negative order");
    const json& coeffs = detail::expect(j, "coeffs", where);
    if (!coeffs.is_array() || (int)coeffs.size() != N + 1)
        throw std::invalid_argument("series json: 'coeffs' must hold N+1 entries");
    HbarSeries out(L, k, N);
    for (int n = 0; n <= N; ++n) {
        TensorElement c = tensor_from_json(L, coeffs[n]);
        if (c.k() != k)
            throw std::invalid_argument("series json: coefficient slot count differs from k");
        out.set(n, std::move(c));
    }
    return out;
}

inline json subdiagram_to_json(const Subdiagram& D) {
    json a = json::array();
    for (int n : D.nodes) a.push_back(n + 1);
    return a;
}

inline Subdiagram subdiagram_from_json(const json& j, int rank, const char* where) {
    if (!j.is_array())
        throw std::invalid_argument(std::string(where) + ": subdiagram is not an array");
    Subdiagram D{};
    for (const json& v : j) {
        if (!v.is_number_integer())
            throw std::invalid_argument(std::string(where) + ": subdiagram node is not an integer");
        int n = v.get<int>();
        if (n < 1 || n > rank)
            throw std::invalid_argument(std::string(where) + ": subdiagram node out of range");
        D.nodes.push_back(n - 1);
    }
    std::sort(D.nodes.begin(), D.nodes.end());
    if (std::adjacent_find(D.nodes.begin(), D.nodes.end()) != D.nodes.end())
        throw std::invalid_argument(std::string(where) + ": duplicate subdiagram node");
    return D;
}

inline json form_scaling_to_json(const std::vector<Rational>& scale) {
    json a = json::array();
    for (const Rational& r : scale) a.push_back(rational_str(r));
    return a;
}

inline std::vector<Rational> form_scaling_from_json(const json& j, size_t factors,
                                                    const char* where) {
    if (!j.is_array() || j.size() != factors)
        throw std::invalid_argument(std::string(where) +
                                    ": form_scaling must list one rational per simple factor");
    std::vector<Rational> out;
    for (const json& v : j) {
        if (!v.is_string())
            throw std::invalid_argument(std::string(where) + ": form_scaling entry is not a string");
        out.push_back(rational_parse(v.get<std::string>()));
    }
    return out;
}

inline json twist_to_json(const std::string& cartan_type, const LeviData& lev,
                          const std::vector<Rational>& form_scaling, const Twist& t) {
    return json{{"format", "reltwist-twist"},
                {"version", 1},
                {"cartan_type", cartan_type},
                {"big", subdiagram_to_json(lev.big)},
                {"D", subdiagram_to_json(lev.small)},
                {"form_scaling", form_scaling_to_json(form_scaling)},
                {"flags", json{{"theta", t.theta_symmetric},
                               {"hc_normalized", t.hc_normalized},
                               {"secondary_corrections", t.secondary_corrections}}},
                {"series", series_to_json(t.s)}};
}

inline json associator_to_json(const std::string& cartan_type, const Associator& A) {
    return json{{"format", "reltwist-associator"},
                {"version", 1},
                {"cartan_type", cartan_type},
                {"form_scaling", form_scaling_to_json(A.scale)},
                {"flags", json{{"counital", A.counital},
                               {"mirror_inverse", A.mirror_inverse},
                               {"theta_fixed", A.theta_fixed}}},
                {"series", series_to_json(A.s)}};
}

inline json witness_to_json(const std::string& cartan_type, const LeviData& lev,
                            const GaugeWitness& w, bool theta, bool hc_normalized) {
    return json{{"format", "reltwist-witness"},
                {"version", 1},
                {"cartan_type", cartan_type},
                {"big", subdiagram_to_json(lev.big)},
                {"D", subdiagram_to_json(lev.small)},
                {"flags", json{{"theta", theta}, {"hc_normalized", hc_normalized}}},
                {"u", series_to_json(w.u)},
                {"lam", series_to_json(w.lam)}};
}

// checks the "format" tag and returns the embedded cartan type, so callers
// can build the algebra before loading the payload
inline std::string artifact_type(const json& j, const char* format) {
    const char* where = "artifact json";
    if (detail::expect_str(j, "format", where) != format)
        throw std::invalid_argument(std::string(where) + ": expected format '" + format + "'");
    return detail::expect_str(j, "cartan_type", where);
}

struct TwistFile {
    Subdiagram big, small;
    std::vector<Rational> form_scaling;
    bool theta = false;
    bool hc_normalized = false;
    int secondary_corrections = 0;
    HbarSeries s;
};

inline TwistFile twist_from_json(const LieAlgebra& L, const json& j) {
    const char* where = "twist json";
    artifact_type(j, "reltwist-twist");
    const json& flags = detail::expect(j, "flags", where);
    return TwistFile{
        subdiagram_from_json(detail::expect(j, "big", where), L.rs.rank, where),
        subdiagram_from_json(detail::expect(j, "D", where), L.rs.rank, where),
        form_scaling_from_json(detail::expect(j, "form_scaling", where), L.rs.factors.size(),
                               where),
        detail::expect_bool(flags, "theta", where),
        detail::expect_bool(flags, "hc_normalized", where),
        detail::expect_int(flags, "secondary_corrections", where),
        series_from_json(L, detail::expect(j, "series", where))};
}

struct WitnessFile {
    Subdiagram big, small;
    bool theta = false;
    bool hc_normalized = false;
    GaugeWitness w;
};

inline WitnessFile witness_from_json(const LieAlgebra& L, const json& j) {
    const char* where = "witness json";
    artifact_type(j, "reltwist-witness");
    const json& flags = detail::expect(j, "flags", where);
    return WitnessFile{
        subdiagram_from_json(detail::expect(j, "big", where), L.rs.rank, where),
        subdiagram_from_json(detail::expect(j, "D", where), L.rs.rank, where),
        detail::expect_bool(flags, "theta", where),
        detail::expect_bool(flags, "hc_normalized", where),
        GaugeWitness{series_from_json(L, detail::expect(j, "u", where)),
                     series_from_json(L, detail::expect(j, "lam", where))}};
}

// associator files carry no mandatory flags: everything the builder needs is
// re-validated from the series itself
inline HbarSeries associator_series_from_json(const LieAlgebra& L, const json& j) {
    artifact_type(j, "reltwist-associator");
    return series_from_json(L, detail::expect(j, "series", "associator json"));
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("short write to '" + path + "'");
}

} // namespace reltwist
