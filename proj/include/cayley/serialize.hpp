#pragma once

// JSON and CSV formats shared by the CLI and external tooling.
//
//   spec      {"k":2,"s":1,"A1":[1],"A2":[2]}
//   system    {"k":2,"s":1,"A1":[1],"A2":[2],"states":[[0,0],...],
//              "counts":{"0,0":{"1,0":1,"2,0":1},...}}
//   solutions {"theta":0.8,"system_ref":"...","solutions":[{"h":{"0,0":..},
//              "residual":..,"class":"translation-invariant","invariant_sets":["I0",..]}]}
//   partition {"e":0,"a1":1,...}
//   sweep CSV theta,n_ti,n_wp_I1,n_wp_I2,agreement

#include <cstddef>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/errors.hpp"
#include "cayley/invariance.hpp"
#include "cayley/solver.hpp"
#include "cayley/subgroup.hpp"
#include "cayley/sweep.hpp"
#include "cayley/system.hpp"

namespace cayley {

using Json = nlohmann::ordered_json;

inline Json to_json(const SubgroupSpec& spec) {
    return Json{{"k", spec.k}, {"s", spec.s}, {"A1", spec.A1}, {"A2", spec.A2}};
}

inline SubgroupSpec spec_from_json(const Json& j) {
    try {
        return validate_spec(j.at("k").get<int>(), j.at("s").get<int>(), j.at("A1").get<std::vector<int>>(),
                             j.at("A2").get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed spec: ") + e.what());
    }
}

/// Parses JSON, also accepting bare object keys ({k:2,s:1,A1:[1],A2:[2]}).
inline Json parse_lenient_json(const std::string& text) {
    static const std::regex bare_key(R"(([\{,]\s*)([A-Za-z_][A-Za-z0-9_]*)\s*:)");
    const std::string quoted = std::regex_replace(text, bare_key, "$1\"$2\":");
    try {
        return Json::parse(quoted);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON when the text starts with '{', otherwise a file path.
inline SubgroupSpec parse_spec_argument(const std::string& arg) {
    std::size_t p = arg.find_first_not_of(" \t\n");
    if (p != std::string::npos && arg[p] == '{') return spec_from_json(parse_lenient_json(arg));
    return spec_from_json(parse_lenient_json(read_file(arg)));
}

inline Json to_json(const WeaklyPeriodicSystem& sys) {
    Json j = to_json(sys.spec);
    Json states = Json::array();
    Json counts = Json::object();
    for (std::size_t r = 0; r < sys.size(); ++r) {
        states.push_back({sys.states[r].cls, sys.states[r].parent});
        Json row = Json::object();
        for (std::size_t c = 0; c < sys.size(); ++c) {
            if (sys.counts[r][c] != 0) row[to_string(sys.states[c])] = sys.counts[r][c];
        }
        counts[to_string(sys.states[r])] = std::move(row);
    }
    j["states"] = std::move(states);
    j["counts"] = std::move(counts);
    j["certificate"] = {{"radius", sys.certificate.radius},
                        {"min_representatives", sys.certificate.min_representatives},
                        {"total_representatives", sys.certificate.total_representatives}};
    return j;
}

inline StatePair parse_state_key(const std::string& key) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw InvalidArgument("state key '" + key + "' is not of the form i,j");
    try {
        return {std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InvalidArgument("state key '" + key + "' is not of the form i,j");
    }
}

inline WeaklyPeriodicSystem system_from_json(const Json& j) {
    WeaklyPeriodicSystem sys;
    try {
        sys.spec = spec_from_json(j);
        sys.k = sys.spec.k;
        for (const auto& st : j.at("states")) sys.states.push_back({st.at(0).get<int>(), st.at(1).get<int>()});
        if (!std::is_sorted(sys.states.begin(), sys.states.end()) ||
            std::adjacent_find(sys.states.begin(), sys.states.end()) != sys.states.end()) {
            throw InvalidArgument("system states must be sorted and distinct");
        }
        sys.counts.assign(sys.states.size(), std::vector<int>(sys.states.size(), 0));
        for (const auto& [from, row] : j.at("counts").items()) {
            const std::size_t r = sys.index_of(parse_state_key(from));
            for (const auto& [to, n] : row.items()) sys.counts[r][sys.index_of(parse_state_key(to))] = n.get<int>();
        }
        if (j.contains("certificate")) {
            const Json& c = j.at("certificate");
            sys.certificate.radius = c.value("radius", 0);
            sys.certificate.min_representatives = c.value("min_representatives", std::size_t{0});
            sys.certificate.total_representatives = c.value("total_representatives", std::size_t{0});
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed system JSON: ") + e.what());
    }
    return sys;
}

inline Json to_json(const Solution& s, const std::vector<StatePair>& states) {
    Json h = Json::object();
    for (std::size_t i = 0; i < s.h.size(); ++i) h[to_string(states[i])] = s.h[i];
    Json sets = Json::array();
    for (InvariantSetId id : s.invariant_sets) sets.push_back(std::string(name(id)));
    return Json{{"h", std::move(h)},
                {"residual", s.residual},
                {"class", s.translation_invariant ? "translation-invariant" : "weakly-periodic"},
                {"invariant_sets", std::move(sets)}};
}

inline Json to_json(const SolutionSet& set, double theta, const std::string& system_ref,
                    const std::vector<StatePair>& states) {
    Json sols = Json::array();
    for (const Solution& s : set.solutions) sols.push_back(to_json(s, states));
    return Json{{"theta", theta}, {"system_ref", system_ref}, {"solutions", std::move(sols)}};
}

inline Json to_json(const CosetPartition& part) {
    Json j = Json::object();
    std::vector<std::pair<Word, int>> all;
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
        for (const Word& w : part.classes[c]) all.emplace_back(w, static_cast<int>(c));
    }
    std::sort(all.begin(), all.end());
    for (const auto& [w, c] : all) j[to_string(w)] = c;
    return j;
}

inline Json to_json(const InvarianceReport& rep, const SubgroupSpec& spec) {
    Json viol = Json::array();
    for (const auto& v : rep.violations) {
        viol.push_back({{"x", to_string(v.x)},
                        {"y", to_string(v.y)},
                        {"profile_x", profile_string(v.profile_x, spec)},
                        {"profile_y", profile_string(v.profile_y, spec)},
                        {"positional_agree", v.positional_agree}});
    }
    return Json{{"spec", to_json(spec)},
                {"holds", rep.holds},
                {"radius", rep.radius},
                {"equivalent_pairs", rep.equivalent_pairs},
                {"violation_count", rep.violation_count},
                {"violations", std::move(viol)}};
}

inline std::string format_sig(double v, int digits) {
    std::ostringstream ss;
    ss << std::setprecision(digits) << v;
    return ss.str();
}

inline std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::string out = "theta,n_ti,n_wp_I1,n_wp_I2,agreement\n";
    for (const SweepRow& r : rows) {
        out += format_sig(r.theta, 12) + "," + std::to_string(r.n_ti) + "," + std::to_string(r.n_wp_I1) + "," +
               std::to_string(r.n_wp_I2) + "," + (r.agreement ? "true" : "false") + "\n";
    }
    return out;
}

} // namespace cayley
