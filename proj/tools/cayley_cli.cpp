// cayley_cli: command-line front end for the odd-index subgroup library.
//
// Exit status: 0 success, 1 usage error, 2 failed verification.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cayley/cayley.hpp"

namespace {

using namespace cayley;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct Options {
    std::string spec;
    std::string system;
    std::string word;
    std::string out;
    std::string format;
    std::string thetas;
    int k = 2;
    int radius = -1;
    int n = 2;
    double theta = 0.8;
    double tol = 1e-12;
    double perturb = 0.0;
    std::uint64_t seed = SolverConfig{}.rng_seed;
    bool expect_holds = false;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f) throw UsageError("cannot write '" + opt.out + "'");
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

SubgroupSpec require_spec(const Options& opt) {
    if (opt.spec.empty()) throw UsageError("--spec is required");
    return parse_spec_argument(opt.spec);
}

int require_radius(const Options& opt) {
    if (opt.radius < 0) throw UsageError("--radius is required");
    return opt.radius;
}

std::string format_or(const Options& opt, const std::string& fallback, std::initializer_list<const char*> allowed) {
    std::string f = opt.format.empty() ? fallback : opt.format;
    for (const char* a : allowed) {
        if (f == a) return f;
    }
    throw UsageError("format '" + f + "' is not available for this command");
}

SolverConfig solver_config(const Options& opt) {
    SolverConfig cfg;
    cfg.rng_seed = opt.seed;
    cfg.tol = opt.tol;
    return cfg;
}

std::string system_ref(const SubgroupSpec& spec) {
    return to_json(spec).dump();
}

WeaklyPeriodicSystem load_system(const Options& opt) {
    if (!opt.system.empty()) return system_from_json(parse_lenient_json(read_file(opt.system)));
    return derive_system(require_spec(opt));
}

std::vector<double> theta_grid(const Options& opt) {
    std::vector<double> out;
    if (opt.thetas.empty()) {
        for (int i = 2; i <= 19; ++i) out.push_back(i * 0.05);
        return out;
    }
    std::stringstream ss(opt.thetas);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw UsageError("bad theta value '" + tok + "'");
        }
    }
    return out;
}

int cmd_ball(const Options& opt) {
    Ball ball = enumerate_ball(opt.k, require_radius(opt));
    if (format_or(opt, "json", {"json", "text"}) == "text") {
        std::string s;
        for (std::size_t m = 0; m < ball.spheres.size(); ++m) {
            s += "W" + std::to_string(m) + " (" + std::to_string(ball.spheres[m].size()) + "):";
            for (const Word& w : ball.spheres[m]) s += " " + to_string(w);
            s += "\n";
        }
        emit(opt, s);
        return kExitOk;
    }
    Json sizes = Json::array(), spheres = Json::array();
    for (const auto& sphere : ball.spheres) {
        sizes.push_back(sphere.size());
        Json words = Json::array();
        for (const Word& w : sphere) words.push_back(to_string(w));
        spheres.push_back(std::move(words));
    }
    emit(opt, dump({{"k", ball.k}, {"radius", ball.radius}, {"size", ball.size()},
                    {"sphere_sizes", std::move(sizes)}, {"spheres", std::move(spheres)}}));
    return kExitOk;
}

int cmd_label(const Options& opt) {
    SubgroupSpec spec = require_spec(opt);
    if (opt.word.empty()) throw UsageError("--word is required");
    Word x = parse_word(opt.word, spec.k);
    CosetLabel l = label(x, spec);
    AlternatingWord u = project_u(x, spec);
    CosetLabel rec = gamma_recursive(u, spec.s);
    Json j{{"word", to_string(x)},   {"u_image", to_string(u.word())}, {"class", l.residue},
           {"rep", to_string(l)},    {"member", is_member(x, spec)},   {"recursive_rep", to_string(rec)},
           {"recursive_agrees", rec.residue == l.residue}};
    if (format_or(opt, "json", {"json", "text"}) == "text") {
        emit(opt, to_string(x) + " -> K" + std::to_string(l.residue) + " (rep " + to_string(l) + ")\n");
    } else {
        emit(opt, dump(j));
    }
    return kExitOk;
}

int cmd_classes(const Options& opt) {
    SubgroupSpec spec = require_spec(opt);
    format_or(opt, "json", {"json"});
    CosetPartition part = coset_classes(spec, require_radius(opt));
    Json counts = Json::array(), reps = Json::array();
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
        counts.push_back(part.classes[c].size());
        reps.push_back(to_string(canonical_rep(static_cast<int>(c), spec).word()));
    }
    emit(opt, dump({{"spec", to_json(spec)},
                    {"radius", part.radius},
                    {"index", spec.index()},
                    {"nonempty_classes", part.nonempty_count()},
                    {"class_counts", std::move(counts)},
                    {"representatives", std::move(reps)},
                    {"partition", to_json(part)}}));
    return kExitOk;
}

int cmd_oracle(const Options& opt) {
    SubgroupSpec spec = require_spec(opt);
    format_or(opt, "json", {"json"});
    const int radius = require_radius(opt);
    CosetCheckReport rep = oracle_coset_check(spec, radius);
    auto witness = non_normality_witness(spec, radius);
    Json w = nullptr;
    if (witness) w = {{"x", to_string(witness->first)}, {"g", to_string(witness->second)}};
    emit(opt, dump({{"spec", to_json(spec)},
                    {"radius", radius},
                    {"passed", rep.passed},
                    {"pairs_checked", rep.pairs_checked},
                    {"first_violation", rep.first_violation},
                    {"non_normality_witness", std::move(w)}}));
    return rep.passed ? kExitOk : kExitVerification;
}

int cmd_invariance(const Options& opt) {
    SubgroupSpec spec = require_spec(opt);
    InvarianceReport rep = check_invariance(spec, require_radius(opt));
    if (format_or(opt, "json", {"json", "text"}) == "text") {
        std::string s = std::string("invariance ") + (rep.holds ? "holds" : "fails") + " at radius " +
                        std::to_string(rep.radius) + " (" + std::to_string(rep.violation_count) + " violations)\n";
        for (const auto& v : rep.violations) {
            s += "  x=" + to_string(v.x) + " " + profile_string(v.profile_x, spec) + "  y=" + to_string(v.y) + " " +
                 profile_string(v.profile_y, spec) + "\n";
        }
        emit(opt, s);
    } else {
        emit(opt, dump(to_json(rep, spec)));
    }
    return (opt.expect_holds && !rep.holds) ? kExitVerification : kExitOk;
}

int cmd_qvec(const Options& opt) {
    SubgroupSpec spec = require_spec(opt);
    format_or(opt, "json", {"json"});
    QVector root = q_vector(Word{}, spec);
    Json j{{"spec", to_json(spec)}, {"q_root", root.counts}};
    if (!opt.word.empty()) {
        Word x = parse_word(opt.word, spec.k);
        QVector q = q_vector(x, spec);
        auto pi = find_permutation(root, q);
        j["word"] = to_string(x);
        j["q"] = q.counts;
        j["permutation"] = pi ? Json(*pi) : Json(nullptr);
    }
    bool ok = true;
    if (opt.radius >= 0) {
        QEqualityReport rep = check_q_equality(spec, opt.radius);
        ok = rep.passed();
        j["radius"] = opt.radius;
        j["q_equal_within_classes"] = rep.q_equal;
        j["permutation_everywhere"] = rep.permutation_everywhere;
    }
    emit(opt, dump(j));
    return ok ? kExitOk : kExitVerification;
}

int cmd_derive(const Options& opt) {
    format_or(opt, "json", {"json"});
    SubgroupSpec spec = require_spec(opt);
    WeaklyPeriodicSystem sys = derive_system(spec);
    emit(opt, dump(to_json(sys)));
    return kExitOk;
}

int cmd_solve(const Options& opt) {
    format_or(opt, "json", {"json"});
    WeaklyPeriodicSystem sys = load_system(opt);
    ThetaParam t(opt.theta);
    SolutionSet set = solve_fixed_points(sys, t, solver_config(opt));
    emit(opt, dump(to_json(set, opt.theta, system_ref(sys.spec), sys.states)));
    return kExitOk;
}

int cmd_sweep(const Options& opt) {
    auto rows = classify_theta_sweep(theta_grid(opt), solver_config(opt));
    if (format_or(opt, "csv", {"csv", "json"}) == "csv") {
        emit(opt, sweep_to_csv(rows));
        return kExitOk;
    }
    Json arr = Json::array();
    for (const SweepRow& r : rows) {
        arr.push_back({{"theta", r.theta}, {"n_ti", r.n_ti}, {"n_wp_I1", r.n_wp_I1}, {"n_wp_I2", r.n_wp_I2},
                       {"n_wp_total", r.n_wp_total}, {"agreement", r.agreement}, {"max_residual", r.max_residual}});
    }
    emit(opt, dump(arr));
    return kExitOk;
}

int cmd_poly(const Options& opt) {
    format_or(opt, "json", {"json"});
    ThetaParam t(opt.theta);
    I1PolynomialResult res = solve_I1_polynomial(t);
    const auto states = derive_system(standard_spec(2)).states;
    Json j{{"theta", opt.theta},
           {"a", res.a},
           {"discriminant", res.discriminant},
           {"quadratic_roots", res.quadratic_roots},
           {"boundary_degenerate", res.boundary_degenerate}};
    if (res.quadratic_roots.size() == 2) j["root_product"] = res.quadratic_roots[0] * res.quadratic_roots[1];
    j["solutions"] = to_json(res.solutions, opt.theta, "I1 closed form, k=2", states)["solutions"];
    emit(opt, dump(j));
    return kExitOk;
}

int cmd_compat(const Options& opt) {
    format_or(opt, "json", {"json"});
    WeaklyPeriodicSystem sys = load_system(opt);
    ThetaParam t(opt.theta);
    SolutionSet set = solve_fixed_points(sys, t, solver_config(opt));
    Json arr = Json::array();
    bool all = true;
    for (const Solution& s : set.solutions) {
        FieldVector h = s.h;
        if (opt.perturb != 0.0) h[0] += opt.perturb;
        CompatibilityReport rep = verify_compatibility(h, sys, t, opt.n);
        all = all && rep.passed;
        Json entry = to_json(s, sys.states);
        entry["compatible"] = rep.passed;
        entry["max_deviation"] = rep.max_deviation;
        entry["configurations"] = rep.configurations;
        arr.push_back(std::move(entry));
    }
    emit(opt, dump({{"theta", opt.theta}, {"n", opt.n}, {"perturb", opt.perturb}, {"all_compatible", all},
                    {"results", std::move(arr)}}));
    return all ? kExitOk : kExitVerification;
}

int cmd_draw(const Options& opt) {
    format_or(opt, "dot", {"dot"});
    SubgroupSpec spec = require_spec(opt);
    emit(opt, to_dot(spec, require_radius(opt)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Odd-index subgroups of G_k, invariance checks and weakly periodic Ising systems"};
    app.require_subcommand(1, 1);
    Options opt;

    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--spec", opt.spec, "subgroup spec: inline JSON {k,s,A1,A2} or a file");
        sub->add_option("--radius", opt.radius, "ball radius");
        sub->add_option("--theta", opt.theta, "theta = tanh(beta), in (0,1)");
        sub->add_option("--n", opt.n, "finite volume radius");
        sub->add_option("--seed", opt.seed, "solver RNG seed");
        sub->add_option("--out", opt.out, "output file (default stdout)");
        sub->add_option("--format", opt.format, "json, csv, dot or text");
        sub->add_flag("--expect-holds", opt.expect_holds, "exit 2 when the invariance property fails");
        sub->add_option("--tol", opt.tol, "solver residual tolerance");
    };

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Options&);
    };
    const std::vector<Sub> subs{
        {"ball", "enumerate the ball V_n", cmd_ball},
        {"label", "coset label of a word", cmd_label},
        {"classes", "partition of V_n into cosets", cmd_classes},
        {"oracle", "exhaustive left-coset and closure check", cmd_oracle},
        {"invariance", "invariance property report", cmd_invariance},
        {"qvec", "Q-vectors and coordinate permutations", cmd_qvec},
        {"derive", "weakly periodic equation system", cmd_derive},
        {"solve", "fixed points of the weakly periodic system", cmd_solve},
        {"sweep", "theta sweep of the nine-state system (k=2)", cmd_sweep},
        {"poly", "closed-form I1 path (k=2)", cmd_poly},
        {"compat", "finite-volume compatibility of the fixed points", cmd_compat},
        {"draw", "Graphviz DOT of V_n coloured by coset", cmd_draw},
    };
    std::vector<std::pair<CLI::App*, const Sub*>> registered;
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        registered.emplace_back(sub, &s);
    }
    for (auto& [sub, s] : registered) {
        std::string n = s->name;
        if (n == "ball") sub->add_option("--k", opt.k, "tree order");
        if (n == "label" || n == "qvec") sub->add_option("--word", opt.word, "word such as a1.a2");
        if (n == "solve" || n == "compat") sub->add_option("--system", opt.system, "system JSON from `derive`");
        if (n == "sweep") sub->add_option("--thetas", opt.thetas, "comma-separated theta values");
        if (n == "compat") sub->add_option("--perturb", opt.perturb, "add this to h_(0,0) before checking");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        for (auto& [sub, s] : registered) {
            if (sub->parsed()) return s->run(opt);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ComputationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
