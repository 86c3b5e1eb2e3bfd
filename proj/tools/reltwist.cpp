/*
 * reltwist -- command line front end for the relative twist engine.
 *
 * One command per process.  Exit status is 0 when every reported check
 * passed, 1 when a check or the mathematics failed, 2 on usage errors.
 */
#include <reltwist/report.hpp>

#include <chrono>
#include <iostream>
#include <map>

using namespace reltwist;

namespace {

const char* kUsage =
    R"(usage: reltwist <verb> [inputs] [flags]

verbs
  verify       run the identity suite for --type / --subdiagram
  cohomology   cohomology table of the perturbed complex, computed vs predicted
  build        construct a relative twist and write the artifact to --out
  gauge-check  decide gauge equivalence of two twist artifacts (two input files)
  project      bar projection of a TensorElement JSON file (one input file)

flags
  --type <S>        Cartan datum, e.g. A2, B3, A1xA1
  --subdiagram <S>  1-based comma separated node list, empty string for the
                    empty subdiagram (default: empty)
  --order <N>       hbar truncation order (build: default 2; cohomology: top
                    wedge degree, default 3; gauge-check: default from inputs)
  --degree-cap <D>  pin the PBW degree of primitive searches
                    (default: automatic with escalation)
  --theta           theta symmetric mode
  --ladder          build through a nested chain of subdiagrams
  --phi <file>      associator artifact (default: built-in, valid to hbar^3)
  --out <file>      artifact output path (required for build)
  --format <F>      report format: text | json (default text)
  --jobs <J>        worker cap; the engine currently runs single threaded
  --no-timings      omit timing from the report
  --help            show this text

exit status: 0 all checks passed, 1 check or mathematics failed, 2 usage error
)";

struct Cli {
    std::string verb;
    std::vector<std::string> inputs;
    std::string type;
    std::string subdiagram;
    std::string phi, out;
    std::string format = "text";
    int order = 0; // 0 = per-verb default
    int degree_cap = 0;
    int jobs = 1;
    bool theta = false, ladder = false, no_timings = false, help = false;
    bool type_given = false;
};

int parse_int(const std::string& v, const char* flag) {
    try {
        size_t used = 0;
        int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw std::invalid_argument(std::string(flag) + " needs an integer, got '" + v + "'");
    }
}

Cli parse_cli(int argc, char** argv) {
    Cli c;
    if (argc < 2) throw std::invalid_argument("missing verb");
    c.verb = argv[1];
    if (c.verb == "--help" || c.verb == "-h" || c.verb == "help") {
        c.help = true;
        return c;
    }
    std::vector<std::string> args(argv + 2, argv + argc);
    for (size_t i = 0; i < args.size(); ++i) {
        std::string a = args[i];
        std::string inline_val;
        bool has_inline = false;
        if (a.rfind("--", 0) == 0) {
            auto eq = a.find('=');
            if (eq != std::string::npos) {
                inline_val = a.substr(eq + 1);
                a = a.substr(0, eq);
                has_inline = true;
            }
        }
        auto need = [&](const char* flag) -> std::string {
            if (has_inline) return inline_val;
            if (i + 1 >= args.size())
                throw std::invalid_argument(std::string(flag) + " needs a value");
            return args[++i];
        };
        if (a == "--type") {
            c.type = need("--type");
            c.type_given = true;
        } else if (a == "--subdiagram")
            c.subdiagram = need("--subdiagram");
        else if (a == "--order")
            c.order = parse_int(need("--order"), "--order");
        else if (a == "--degree-cap")
            c.degree_cap = parse_int(need("--degree-cap"), "--degree-cap");
        else if (a == "--phi")
            c.phi = need("--phi");
        else if (a == "--out")
            c.out = need("--out");
        else if (a == "--format")
            c.format = need("--format");
        else if (a == "--jobs")
            c.jobs = parse_int(need("--jobs"), "--jobs");
        else if (a == "--theta")
            c.theta = true;
        else if (a == "--ladder")
            c.ladder = true;
        else if (a == "--no-timings")
            c.no_timings = true;
        else if (a == "--help" || a == "-h")
            c.help = true;
        else if (a.rfind("--", 0) == 0)
            throw std::invalid_argument("unknown flag '" + a + "'");
        else
            c.inputs.push_back(a);
    }
    if (c.format != "text" && c.format != "json")
        throw std::invalid_argument("--format must be text or json");
    if (c.jobs < 1) throw std::invalid_argument("--jobs must be positive");
    if (c.order < 0) throw std::invalid_argument("--order must be nonnegative");
    return c;
}

json base_config(const Cli& c) {
    json cfg{{"type", c.type}, {"subdiagram", c.subdiagram}};
    if (c.jobs != 1) cfg["jobs"] = c.jobs;
    return cfg;
}

// sparse vector accumulation over basis indices, for the structure checks
using GVecMap = std::map<int, Rational>;

void acc(GVecMap& m, int i, const Rational& c) {
    auto [it, fresh] = m.try_emplace(i, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

Report cmd_verify(const Cli& c) {
    Report rep;
    rep.command = "verify";
    rep.config = base_config(c);
    auto L = LieAlgebra::build(c.type);
    auto D = Subdiagram::parse(c.subdiagram, L.rs.rank);
    auto lev = LeviData::make(L, D);
    auto glev = LeviData::make(L, Subdiagram{});

    // antisymmetry and the Jacobi identity over all basis triples
    {
        bool pass = true;
        long triples = 0;
        for (int i = 0; i < L.dim && pass; ++i) {
            GVecMap self;
            for (const auto& [a, x] : L.bracket(i, i)) acc(self, a, x);
            pass = self.empty();
            for (int j = i + 1; j < L.dim && pass; ++j) {
                GVecMap sym;
                for (const auto& [a, x] : L.bracket(i, j)) acc(sym, a, x);
                for (const auto& [a, x] : L.bracket(j, i)) acc(sym, a, x);
                if (!sym.empty()) {
                    pass = false;
                    break;
                }
                for (int k = j + 1; k < L.dim && pass; ++k) {
                    GVecMap jac;
                    for (const auto& [a, x] : L.bracket(i, j))
                        for (const auto& [b, y] : L.bracket(a, k)) acc(jac, b, x * y);
                    for (const auto& [a, x] : L.bracket(j, k))
                        for (const auto& [b, y] : L.bracket(a, i)) acc(jac, b, x * y);
                    for (const auto& [a, x] : L.bracket(k, i))
                        for (const auto& [b, y] : L.bracket(a, j)) acc(jac, b, x * y);
                    pass = jac.empty();
                    ++triples;
                }
            }
        }
        rep.check("bracket antisymmetry and jacobi", pass,
                  std::to_string(triples) + " triples");
    }

    // invariance of the bilinear form
    {
        bool pass = true;
        for (int i = 0; i < L.dim && pass; ++i)
            for (int j = 0; j < L.dim && pass; ++j)
                for (int k = 0; k < L.dim && pass; ++k) {
                    Rational s(0);
                    for (const auto& [a, x] : L.bracket(i, j)) s += x * L.form(a, k);
                    for (const auto& [a, x] : L.bracket(i, k)) s += x * L.form(j, a);
                    pass = (s == 0);
                }
        rep.check("invariant bilinear form", pass);
    }

    // the full r-matrix solves the Yang-Baxter identity against the Casimir
    {
        TensorElement r = embed_ext(relative_r(glev));
        TensorElement om = casimir_tensor(glev);
        TensorElement a = place_slots(om, {0, 1}, 3), b = place_slots(om, {1, 2}, 3);
        TensorElement rhs = (multiply(a, b) - multiply(b, a)) * Rational(1, 2);
        rep.check("yang-baxter for the full r-matrix", yb_map(r, r) == rhs);
    }

    // the relative r-matrix squares to its Schouten bracket through yb
    {
        ExtElement f = relative_r(lev);
        TensorElement fe = embed_ext(f);
        rep.check("relative r-matrix schouten square",
                  yb_map(fe, fe) == embed_ext(schouten(f, f)) * Rational(3, 2));
    }

    // perturbed differential agrees with its derivation expansion and the
    // homotopy factors the casimir operator, on low wedge degrees
    {
        StarComplex sc(lev);
        bool dpass = true, hpass = true;
        long count = 0;
        for (int k = 1; k <= 2; ++k)
            for (const ExtIdx& m : ext_subsets(big_generators(lev), k)) {
                ExtElement x = ext_monomial(L, m);
                if (!(sc.d(x) == sc.ce_rhs(x))) dpass = false;
                if (!(sc.d(sc.homotopy(x)) + sc.homotopy(sc.d(x)) ==
                      sc.casimir_op(x) * Rational(2)))
                    hpass = false;
                ++count;
            }
        rep.check("perturbed differential expansion", dpass,
                  std::to_string(count) + " monomials");
        rep.check("homotopy factors twice the casimir", hpass);
    }

    // cohomology of the perturbed complex against the predicted table
    {
        CohomologyTable t = cohomology_dims(lev, 3);
        rep.check("cohomology table matches prediction", t.dims == t.predicted);
    }

    // bar projected associator: pentagon survives, projection idempotent
    {
        HbarSeries Phi = builtin_phi(L, 2);
        HbarSeries PhiD = hc_associator(Phi, lev);
        rep.check("bar projected associator pentagon",
                  pentagon_residual(PhiD, 2).is_zero());
        rep.check("bar projection idempotent", hc_associator(PhiD, lev) == PhiD);

        // order-one twist: 1 + hbar f solves the relative equation mod hbar^2
        HbarSeries F = HbarSeries::unit(L, 2, 1);
        F.set(1, embed_ext(relative_r(lev)));
        rep.check("order one twist solves the relative equation",
                  deviation_series(Phi, PhiD, F, 1).is_zero());
    }

    rep.payload = json{{"dim", L.dim},
                       {"positive_roots", L.P},
                       {"corank", (int)lev.drop.size()}};
    return rep;
}

Report cmd_cohomology(const Cli& c) {
    Report rep;
    rep.command = "cohomology";
    rep.config = base_config(c);
    const int kmax = c.order ? c.order : 3;
    rep.config["kmax"] = kmax;
    auto L = LieAlgebra::build(c.type);
    auto lev = LeviData::make(L, Subdiagram::parse(c.subdiagram, L.rs.rank));
    CohomologyTable t = cohomology_dims(lev, kmax);
    json rows = json::array();
    for (size_t k = 0; k < t.dims.size(); ++k)
        rows.push_back(json{{"k", (int)k}, {"computed", t.dims[k]}, {"predicted", t.predicted[k]}});
    rep.payload = json{{"table", std::move(rows)}};
    rep.check("cohomology table matches prediction", t.dims == t.predicted);
    return rep;
}

Associator load_associator(const Cli& c, const LieAlgebra& L, int N) {
    if (!c.phi.empty()) {
        json j = read_json_file(c.phi);
        std::string t = artifact_type(j, "reltwist-associator");
        if (t != c.type)
            throw std::invalid_argument("associator file is for Cartan type " + t +
                                        ", not " + c.type);
        return validate_associator(associator_series_from_json(L, j));
    }
    return validate_associator(builtin_phi(L, std::max(N, 2)));
}

Report cmd_build(const Cli& c) {
    Report rep;
    rep.command = "build";
    rep.config = base_config(c);
    const int N = c.order ? c.order : 2;
    rep.config["order"] = N;
    rep.config["theta"] = c.theta;
    rep.config["ladder"] = c.ladder;
    if (c.out.empty()) throw std::invalid_argument("build needs --out");
    auto L = LieAlgebra::build(c.type);
    auto lev = LeviData::make(L, Subdiagram::parse(c.subdiagram, L.rs.rank));

    Associator A = load_associator(c, L, N);
    BuildOptions opts;
    opts.theta_mode = c.theta;
    opts.degree_cap = c.degree_cap;
    opts.degree_cap_max = c.degree_cap;
    Twist T = c.ladder ? ladder_chain(A, lev, N, opts) : build_relative_twist(A, lev, N, opts);

    json art = twist_to_json(c.type, lev, A.scale, T);
    write_json_file(c.out, art);

    // re-read the artifact and re-verify everything from the loaded series
    json back = read_json_file(c.out);
    TwistFile tf = twist_from_json(L, back);
    rep.check("artifact round trip", back.dump() == art.dump() && tf.s == T.s);
    HbarSeries Phi = A.s.with_cap(N);
    HbarSeries PhiD = hc_associator(Phi, lev);
    rep.check("relative equation residual from reloaded artifact",
              deviation_series(Phi, PhiD, tf.s, N).is_zero());
    rep.check("bar normalised", series_hc_bar(lev, tf.s) == HbarSeries::unit(L, 2, N));
    if (c.theta)
        rep.check("theta symmetric",
                  series_theta(tf.s) == series_permute(tf.s, {1, 0}));

    rep.payload = json{{"out", c.out},
                       {"secondary_corrections", T.secondary_corrections},
                       {"solver", stats_to_json(T.stats)}};
    return rep;
}

Report cmd_gauge_check(const Cli& c) {
    Report rep;
    rep.command = "gauge-check";
    if (c.inputs.size() != 2)
        throw std::invalid_argument("gauge-check needs exactly two twist artifacts");
    json j1 = read_json_file(c.inputs[0]);
    json j2 = read_json_file(c.inputs[1]);
    std::string t1 = artifact_type(j1, "reltwist-twist");
    std::string t2 = artifact_type(j2, "reltwist-twist");
    if (t1 != t2)
        throw std::invalid_argument("artifacts carry different Cartan types");
    if (c.type_given && c.type != t1)
        throw std::invalid_argument("--type disagrees with the artifacts");
    auto L = LieAlgebra::build(t1);
    TwistFile f1 = twist_from_json(L, j1);
    TwistFile f2 = twist_from_json(L, j2);
    if (f1.big.nodes != f2.big.nodes || f1.small.nodes != f2.small.nodes)
        throw std::invalid_argument("artifacts describe different diagram pairs");
    if (f1.form_scaling != f2.form_scaling)
        throw std::invalid_argument("artifacts carry different form scalings");
    auto lev = LeviData::make(L, f1.big, f1.small);
    const int N = c.order ? c.order : std::min(f1.s.cap(), f2.s.cap());
    rep.config = json{{"type", t1},
                      {"subdiagram", subdiagram_to_json(f1.small)},
                      {"order", N},
                      {"first", c.inputs[0]},
                      {"second", c.inputs[1]}};

    GaugeOptions go;
    go.theta_mode = c.theta || (f1.theta && f2.theta);
    go.hc_normalized = f1.hc_normalized && f2.hc_normalized;
    go.degree_cap = c.degree_cap;
    go.degree_cap_max = c.degree_cap;
    GaugeCheck gc = gauge_witness(f1.s, f2.s, lev, N, go);

    rep.check("gauge equivalent", gc.ok(),
              gc.ok() ? "" : "order " + std::to_string(gc.failed_order) + ": " + gc.reason);
    if (gc.ok()) {
        rep.check("witness carries the first twist onto the second",
                  gauge_transform(f1.s.with_cap(N), *gc.witness, N) == f2.s.with_cap(N));
        if (!c.out.empty()) {
            json wj = witness_to_json(t1, lev, *gc.witness, go.theta_mode, go.hc_normalized);
            write_json_file(c.out, wj);
            WitnessFile wf = witness_from_json(L, read_json_file(c.out));
            rep.check("witness artifact round trip",
                      gauge_transform(f1.s.with_cap(N), wf.w, N) == f2.s.with_cap(N));
            rep.payload["out"] = c.out;
        }
    }
    rep.payload["failed_order"] = gc.failed_order;
    rep.payload["reason"] = gc.reason;
    return rep;
}

Report cmd_project(const Cli& c) {
    Report rep;
    rep.command = "project";
    rep.config = base_config(c);
    if (c.inputs.size() != 1)
        throw std::invalid_argument("project needs exactly one TensorElement file");
    auto L = LieAlgebra::build(c.type);
    auto lev = LeviData::make(L, Subdiagram::parse(c.subdiagram, L.rs.rank));
    TensorElement a = tensor_from_json(L, read_json_file(c.inputs[0]));

    try {
        TensorElement img = hc_project_bar(lev, a);
        rep.check("projection domain", true);
        rep.check("idempotent on the image", hc_project_bar(lev, img) == img);
        rep.payload = json{{"input_terms", (int)a.terms().size()},
                           {"image_terms", (int)img.terms().size()}};
        if (!c.out.empty()) {
            json ij = tensor_to_json(img);
            write_json_file(c.out, ij);
            rep.check("image artifact round trip",
                      tensor_from_json(L, read_json_file(c.out)) == img);
            rep.payload["out"] = c.out;
        }
    } catch (const std::domain_error& e) {
        rep.check("projection domain", false,
                  std::string(e.what()) + "; offending monomial: " +
                      offending_monomial(lev, a));
    } catch (const std::invalid_argument& e) {
        rep.check("projection domain", false,
                  std::string(e.what()) + "; offending monomial: " +
                      offending_monomial(lev, a));
    }
    return rep;
}

} // namespace

int main(int argc, char** argv) {
    Cli c;
    try {
        c = parse_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "reltwist: " << e.what() << "\n\n" << kUsage;
        return 2;
    }
    if (c.help) {
        std::cout << kUsage;
        return 0;
    }

    Report rep;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (c.verb == "verify")
            rep = cmd_verify(c);
        else if (c.verb == "cohomology")
            rep = cmd_cohomology(c);
        else if (c.verb == "build")
            rep = cmd_build(c);
        else if (c.verb == "gauge-check")
            rep = cmd_gauge_check(c);
        else if (c.verb == "project")
            rep = cmd_project(c);
        else
            throw std::invalid_argument("unknown verb '" + c.verb + "'");
    } catch (const std::invalid_argument& e) {
        std::cerr << "reltwist: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "reltwist: " << e.what() << "\n";
        return 1;
    }
    rep.with_timings = !c.no_timings;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (c.format == "json")
        std::cout << rep.to_json().dump(2) << "\n";
    else
        std::cout << rep.to_text();
    return rep.ok() ? 0 : 1;
}
