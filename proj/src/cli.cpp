#include "renorm/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "renorm/diagnostics.hpp"
#include "renorm/io.hpp"
#include "renorm/lie_structure.hpp"
#include "renorm/random_fields.hpp"

namespace renorm::cli {

namespace {

using io::json;

json load_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) throw io::parse_error("cannot open input file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw io::parse_error(std::string("malformed JSON: ") + e.what());
    }
}

void emit(const json& out, const std::string& mode) {
    if (mode == "pretty")
        std::cout << out.dump(2) << "\n";
    else
        std::cout << out.dump() << "\n";
}

NormalFormResult run_flavor(const PolyVectorField& field, const Eigenvalues& lambda, int N,
                            const std::string& flavor) {
    if (flavor == "pd") return poincare_dulac(field, lambda, N);
    if (flavor == "prf") return prf(field, lambda, N);
    if (flavor == "lrf") return lrf(field, lambda, N);
    throw io::parse_error("unknown flavor: " + flavor);
}

json normalize_output(const io::SystemSpec& spec, const NormalFormResult& res, int N) {
    json out = io::result_to_json(res);
    out["check"] = io::check_report_to_json(check_form(res, spec.lambda, N));
    if (spec.real_pairs && check_reality(res.normal_form, *spec.real_pairs))
        out["real_form"] = io::field_to_json(realify_planar(res.normal_form, *spec.real_pairs));
    return out;
}

CVec parse_point(const std::string& text, const io::SystemSpec& spec) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
    if (spec.real_pairs) {
        if (static_cast<int>(vals.size()) != spec.n)
            throw io::parse_error("x0: expected " + std::to_string(spec.n) + " real components");
        CVec z(spec.n);
        std::vector<bool> placed(spec.n, false);
        for (auto [i, j] : spec.real_pairs->pairs) {
            z[i] = {vals[i], vals[j]};
            z[j] = {vals[i], -vals[j]};
            placed[i] = placed[j] = true;
        }
        for (int i = 0; i < spec.n; ++i)
            if (!placed[i]) z[i] = {vals[i], 0.0};
        return z;
    }
    if (static_cast<int>(vals.size()) != spec.n)
        throw io::parse_error("x0: expected " + std::to_string(spec.n) + " components");
    CVec z(spec.n);
    for (int i = 0; i < spec.n; ++i) z[i] = {vals[i], 0.0};
    return z;
}

int selftest(unsigned long long seed, int cases, const std::string& output) {
    std::mt19937_64 rng(seed);
    int checked = 0;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) throw internal_error(std::string("selftest failed: ") + what);
        ++checked;
    };
    for (int c = 0; c < cases; ++c) {
        RandomFieldOptions opts;
        opts.gaussian = true;
        PolyVectorField a = random_field(rng, opts);
        PolyVectorField b = random_field(rng, opts);
        PolyVectorField c3 = random_field(rng, opts);
        expect((bracket(a, b) + bracket(b, a)).is_zero(), "bracket antisymmetry");
        PolyVectorField jac =
            bracket(a, bracket(b, c3)) + bracket(b, bracket(c3, a)) + bracket(c3, bracket(a, b));
        expect(jac.is_zero(), "Jacobi identity");
        // oracle agreement on a grade-1 generator
        PolyVectorField hf(2, 5);
        hf.add_term(MonomialIndex({2, 0}, 0), Scalar::exact(Rational(1, 2)));
        hf.add_term(MonomialIndex({1, 1}, 1), Scalar::exact(Rational(-1, 3)));
        Generator h(hf, 1, 0);
        Eigenvalues lam{Scalar(1), Scalar(2)};
        PolyVectorField f = PolyVectorField::linear(lam, 5) + a;
        expect(push_forward(f, h, 5) == push_forward_substitution_oracle(f, h, 5),
               "pushforward oracle equivalence");
        // nonresonant eigenvalues linearize
        Eigenvalues nonres{Scalar(2), Scalar(3)};
        PolyVectorField g = PolyVectorField::linear(nonres, 4) + random_field(rng, opts).truncated(4);
        NormalFormResult nf = poincare_dulac(g, nonres, 4);
        expect(nf.normal_form == PolyVectorField::linear(nonres, 4), "nonresonant linearization");
    }
    emit(json{{"schema_version", io::kSchemaVersion},
              {"cases", cases},
              {"checks", checked},
              {"passed", true}},
         output);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Poincare-Dulac normal forms, renormalized forms, and diagnostics for polynomial vector fields"};
    app.require_subcommand(1);

    std::string spec_path, output = "json", flavor = "pd", x0_text = "0.1,0";
    int order = -1, cap = -1, steps = 2048, halvings = 2, flow_steps = 64, cases = 25, mu = 1;
    double C = 1.0, M = 1.0, eps = 0.1, delta = 0.1, T = 1.0;
    unsigned long long seed = 12345;
    std::string backend_override;

    std::function<int()> action;

    auto add_common = [&](CLI::App* sub, bool with_spec) {
        if (with_spec)
            sub->add_option("spec", spec_path, "system spec JSON file, or - for stdin")
                ->required();
        sub->add_option("--output", output, "json|pretty")->check(CLI::IsMember({"json", "pretty"}));
        sub->add_option("--backend", backend_override, "override spec backend")
            ->check(CLI::IsMember({"exact", "float"}));
    };

    auto load_spec = [&]() {
        io::SystemSpec spec = io::system_spec_from_json(load_json(spec_path));
        if (backend_override == "float") {
            for (auto& l : spec.lambda) l = l.to_floating();
            spec.nonlinear = spec.nonlinear.to_floating();
            spec.backend = "float";
        }
        return spec;
    };

    // resonances
    {
        auto* sub = app.add_subcommand("resonances", "list exact resonance relations");
        add_common(sub, true);
        sub->add_option("--cap", cap, "maximum grade scanned (default: spec N)");
        sub->callback([&]() {
            action = [&]() {
                io::SystemSpec spec = load_spec();
                int kmax = cap > 0 ? cap : spec.N;
                json rels = json::array();
                for (const auto& r : resonances(spec.lambda, kmax)) {
                    json e = io::monomial_to_json(r.mono);
                    e["order"] = r.order();
                    rels.push_back(e);
                }
                emit(json{{"schema_version", io::kSchemaVersion},
                          {"kmax", kmax},
                          {"resonances", rels},
                          {"count", rels.size()}},
                     output);
                return 0;
            };
        });
    }

    // normalize + aliases
    auto add_normalize = [&](const std::string& name, const std::string& fixed_flavor,
                             const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        add_common(sub, true);
        sub->add_option("--order", order, "truncation order (default: spec N)");
        if (fixed_flavor.empty())
            sub->add_option("--flavor", flavor, "pd|prf|lrf")
                ->check(CLI::IsMember({"pd", "prf", "lrf"}));
        sub->callback([&, fixed_flavor]() {
            action = [&, fixed_flavor]() {
                io::SystemSpec spec = load_spec();
                int N = order > 0 ? order : spec.N;
                std::string fl = fixed_flavor.empty() ? flavor : fixed_flavor;
                NormalFormResult res = run_flavor(spec.full_field().truncated(N), spec.lambda, N, fl);
                emit(normalize_output(spec, res, N), output);
                return 0;
            };
        });
    };
    add_normalize("normalize", "", "compute a normal form (--flavor pd|prf|lrf)");
    add_normalize("prf", "prf", "compute the renormalized form (alias)");
    add_normalize("lrf", "lrf", "compute the Lie renormalized form (alias)");

    // diagnose
    {
        auto* sub = app.add_subcommand("diagnose", "convergence-criterion diagnostics");
        add_common(sub, true);
        sub->add_option("--cap", cap, "small-denominator scan cap (default: 2N)");
        sub->callback([&]() {
            action = [&]() {
                io::SystemSpec spec = load_spec();
                int scancap = cap > 0 ? cap : std::max(4, 2 * spec.N);
                json out{{"schema_version", io::kSchemaVersion}};
                out["poincare"] = poincare_criterion(spec.lambda);
                json scan = io::scan_to_json(small_denominator_scan(spec.lambda, scancap));
                out["scan"] = scan["scan"];
                out["siegel"] = scan["siegel"];
                out["bruno"] = scan["bruno"];
                NormalFormResult pd = poincare_dulac(spec.full_field(), spec.lambda, spec.N);
                out["condition_a"] =
                    io::condition_a_to_json(condition_a_check(pd.normal_form, spec.lambda, spec.N));
                emit(out, output);
                return 0;
            };
        });
    }

    // bound
    {
        auto* sub = app.add_subcommand("bound", "growth bound and guaranteed time");
        add_common(sub, false);
        sub->add_option("--C", C, "operator norm of the linear part")->required();
        sub->add_option("--M", M, "bound on |g| over the region")->required();
        sub->add_option("--eps", eps, "epsilon")->required();
        sub->add_option("--mu", mu, "leading order");
        sub->add_option("--delta", delta, "error tolerance")->required();
        sub->callback([&]() {
            action = [&]() {
                ErrorBound eb = error_bound({C, M, eps, mu, delta});
                emit(json{{"schema_version", io::kSchemaVersion},
                          {"a", eb.a},
                          {"b", eb.b},
                          {"t0", eb.t0}},
                     output);
                return 0;
            };
        });
    }

    // verify
    {
        auto* sub = app.add_subcommand("verify", "numeric conjugacy check with defect scaling");
        add_common(sub, true);
        sub->add_option("--flavor", flavor, "pd|prf|lrf")
            ->check(CLI::IsMember({"pd", "prf", "lrf"}));
        sub->add_option("--order", order, "truncation order (default: spec N)");
        sub->add_option("--x0", x0_text, "initial point, comma-separated");
        sub->add_option("--t", T, "time horizon");
        sub->add_option("--steps", steps, "trajectory RK4 steps");
        sub->add_option("--halvings", halvings, "number of |x0| halvings");
        sub->add_option("--flow-steps", flow_steps, "RK4 steps per generator flow");
        sub->callback([&]() {
            action = [&]() {
                io::SystemSpec spec = load_spec();
                int N = order > 0 ? order : spec.N;
                std::string fl = flavor.empty() ? "prf" : flavor;
                PolyVectorField field = spec.full_field().truncated(N);
                NormalFormResult res = run_flavor(field, spec.lambda, N, fl);
                CVec x0 = parse_point(x0_text, spec);
                FlowOptions fo{flow_steps};
                json defects = json::array(), exponents = json::array();
                double prev = 0.0;
                for (int i = 0; i <= halvings; ++i) {
                    CVec xs = x0;
                    double scale = std::ldexp(1.0, -i);
                    for (auto& z : xs) z *= scale;
                    double d = conjugacy_defect(field, res, xs, T, steps, fo);
                    defects.push_back(d);
                    if (i > 0 && d > 0.0) exponents.push_back(std::log2(prev / d));
                    prev = d;
                }
                emit(json{{"schema_version", io::kSchemaVersion},
                          {"flavor", fl},
                          {"order", N},
                          {"defects", defects},
                          {"exponents", exponents}},
                     output);
                return 0;
            };
        });
    }

    // selftest
    {
        auto* sub = app.add_subcommand("selftest", "randomized property checks");
        add_common(sub, false);
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--cases", cases, "number of randomized cases");
        sub->callback([&]() {
            action = [&]() { return selftest(seed, cases, output); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const io::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const method_inapplicable& e) {
        json out{{"error", e.what()}};
        if (e.failing_grade >= 0) out["failing_grade"] = e.failing_grade;
        std::cerr << out.dump() << "\n";
        return 3;
    } catch (const internal_error& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace renorm::cli
