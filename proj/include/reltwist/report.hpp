/*
 * report.hpp -- deterministic run reports for the command line front end.
 *
 * A report is a named list of pass/fail check lines plus a free-form JSON
 * payload.  Rendering is stable: identical inputs give identical bytes once
 * timings are switched off.
 */
#pragma once

#include "io.hpp"

#include <iomanip>
#include <sstream>

namespace reltwist {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string note;
};

struct Report {
    std::string command;
    json config = json::object();
    std::vector<CheckLine> checks;
    json payload = json::object();
    bool with_timings = true;
    double seconds = 0.0;

    void check(const std::string& name, bool pass, const std::string& note = "") {
        checks.push_back({name, pass, note});
    }

    bool ok() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    json to_json() const {
        json cs = json::array();
        for (const auto& c : checks)
            cs.push_back(json{{"name", c.name}, {"pass", c.pass}, {"note", c.note}});
        json out{{"command", command},
                 {"config", config},
                 {"checks", std::move(cs)},
                 {"payload", payload},
                 {"ok", ok()}};
        if (with_timings) out["seconds"] = seconds;
        return out;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "reltwist " << command << "\n";
        for (auto it = config.begin(); it != config.end(); ++it)
            os << "  " << it.key() << ": "
               << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
               << "\n";
        for (const auto& c : checks) {
            os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
            if (!c.note.empty()) os << "  (" << c.note << ")";
            os << "\n";
        }
        if (!payload.empty()) os << "payload: " << payload.dump() << "\n";
        os << (ok() ? "ok" : "FAILED") << " (" << checks.size() << " checks)\n";
        if (with_timings)
            os << "time: " << std::fixed << std::setprecision(3) << seconds << "s\n";
        return os.str();
    }
};

inline std::string mono_str(const LieAlgebra& L, const Mono& m) {
    std::string s;
    for (size_t i = 0; i < m.slots.size(); ++i) {
        if (i) s += " (x) ";
        if (m.slots[i].empty()) {
            s += "1";
            continue;
        }
        bool first = true;
        for (const auto& [idx, e] : m.slots[i]) {
            if (!first) s += " ";
            first = false;
            s += L.basis_name(idx);
            if (e > 1) s += "^" + std::to_string(e);
        }
    }
    return s;
}

// names one monomial that puts a outside the projection domain, or ""
inline std::string offending_monomial(const LeviData& lev, const TensorElement& a) {
    const LieAlgebra& L = a.algebra();
    for (const auto& [m, c] : a.terms()) {
        for (const auto& s : m.slots)
            for (const auto& [idx, e] : s)
                if (lev.zone[idx] == LeviData::Zone::OutsideBig) return mono_str(L, m);
        if (!lev.crel_weight_zero(mono_weight(L, m))) return mono_str(L, m);
    }
    return "";
}

// json rows for the per-order solver statistics of a build
inline json stats_to_json(const std::vector<OrderStats>& stats) {
    json rows = json::array();
    for (const auto& s : stats)
        rows.push_back(json{{"order", s.order},
                            {"residual_terms", s.residual_terms},
                            {"secondary", s.secondary},
                            {"candidates", s.candidates},
                            {"escalations", s.escalations},
                            {"degree_used", s.degree_used}});
    return rows;
}

} // namespace reltwist
