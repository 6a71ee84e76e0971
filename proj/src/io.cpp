#include "renorm/io.hpp"

namespace renorm::io {

json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) {
        const auto& g = s.exact_value();
        return json::array({g.re.str(), g.im.str()});
    }
    auto z = s.to_complex();
    return json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw parse_error("scalar: expected [re, im]");
    if (j[0].is_string() != j[1].is_string())
        throw parse_error("scalar: mixed exact/float components");
    if (j[0].is_string()) {
        try {
            return Scalar::exact(Rational(j[0].get<std::string>()),
                                 Rational(j[1].get<std::string>()));
        } catch (const std::exception&) {
            throw parse_error("scalar: bad rational literal");
        }
    }
    if (!j[0].is_number() || !j[1].is_number()) throw parse_error("scalar: expected numbers");
    return Scalar::floating(j[0].get<double>(), j[1].get<double>());
}

json field_to_json(const PolyVectorField& f) {
    json terms = json::array();
    for (const auto& [mi, c] : f.terms()) {
        terms.push_back(
            json{{"m", mi.m}, {"r", mi.dir + 1}, {"c", scalar_to_json(c)}});
    }
    return json{{"n", f.dimension()}, {"N", f.truncation()}, {"terms", terms}};
}

PolyVectorField field_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("N") || !j.contains("terms"))
        throw parse_error("field: missing n, N, or terms");
    int n = j.at("n").get<int>();
    int N = j.at("N").get<int>();
    if (n < 1) throw parse_error("field: n must be >= 1");
    PolyVectorField f(n, N);
    for (const auto& t : j.at("terms")) {
        auto m = t.at("m").get<std::vector<int>>();
        int r = t.at("r").get<int>();
        if (r < 1 || r > n) throw parse_error("field: direction out of range");
        f.add_term(MonomialIndex(m, r - 1), scalar_from_json(t.at("c")));
    }
    return f;
}

json generator_sequence_to_json(const GeneratorSequence& seq) {
    json out = json::array();
    for (const auto& g : seq.items)
        out.push_back(json{{"stage", {{"k", g.order()}, {"p", g.stage()}}},
                           {"field", field_to_json(g.field())}});
    return out;
}

GeneratorSequence generator_sequence_from_json(const json& j) {
    GeneratorSequence seq;
    for (const auto& e : j) {
        int k = e.at("stage").at("k").get<int>();
        int p = e.at("stage").at("p").get<int>();
        seq.items.emplace_back(field_from_json(e.at("field")), k, p);
    }
    return seq;
}

json monomial_to_json(const MonomialIndex& mi) {
    return json{{"m", mi.m}, {"r", mi.dir + 1}};
}

json result_to_json(const NormalFormResult& r) {
    json report = json::array();
    for (const auto& sr : r.report) {
        json removed = json::array(), kept = json::array();
        for (const auto& mi : sr.removed) removed.push_back(monomial_to_json(mi));
        for (const auto& mi : sr.kept) kept.push_back(monomial_to_json(mi));
        report.push_back(json{{"k", sr.k}, {"stage", sr.p}, {"removed", removed}, {"kept", kept}});
    }
    return json{{"schema_version", kSchemaVersion},
                {"flavor", flavor_name(r.flavor)},
                {"normal_form", field_to_json(r.normal_form)},
                {"generators", generator_sequence_to_json(r.generators)},
                {"report", report}};
}

json check_report_to_json(const CheckReport& r) {
    json grades = json::array();
    for (const auto& g : r.grades) {
        json off = json::array();
        for (const auto& mi : g.offending) off.push_back(monomial_to_json(mi));
        grades.push_back(json{{"k", g.k}, {"ok", g.ok}, {"offending", off}});
    }
    return json{{"ok", r.ok}, {"grades", grades}};
}

json scan_to_json(const SmallDenominatorScan& s) {
    json scan = json::array();
    for (const auto& os : s.per_order) {
        json e{{"order", os.order}};
        if (os.min_abs) {
            e["min"] = *os.min_abs;
            e["witness"] = monomial_to_json(*os.witness);
        } else {
            e["min"] = nullptr;
            e["note"] = "no nonresonant pair";
        }
        scan.push_back(e);
    }
    json siegel;
    if (s.siegel.valid)
        siegel = json{{"C", s.siegel.C}, {"nu", s.siegel.nu}, {"label", "empirical"}};
    json bruno{{"omegas", s.bruno.omegas}, {"partial_sums", s.bruno.partial_sums}};
    bruno["partial_sum"] =
        s.bruno.partial_sums.empty() ? json(nullptr) : json(s.bruno.partial_sums.back());
    return json{{"scan", scan}, {"siegel", siegel}, {"bruno", bruno}};
}

json poly_to_json(const ScalarPoly& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(json{{"m", e}, {"c", scalar_to_json(c)}});
    return terms;
}

json condition_a_to_json(const ConditionAResult& c) {
    json out{{"holds", c.holds}};
    if (c.holds)
        out["alpha"] = poly_to_json(c.alpha);
    else
        out["failing_grade"] = c.failing_grade;
    return out;
}

json module_decomposition_to_json(const ModuleDecomposition& d) {
    json grades = json::array();
    for (const auto& gd : d.per_grade) {
        json coeffs = json::object();
        if (gd.ok)
            for (std::size_t a = 0; a < gd.coeff.size(); ++a)
                coeffs[std::to_string(a + 1)] = poly_to_json(gd.coeff[a]);
        grades.push_back(json{{"k", gd.k}, {"ok", gd.ok}, {"coeffs", coeffs}});
    }
    return json{{"quasi_linear", d.quasi_linear}, {"per_grade", grades}};
}

PolyVectorField SystemSpec::full_field() const {
    return PolyVectorField::linear(lambda, N) + nonlinear;
}

SystemSpec system_spec_from_json(const json& j) {
    SystemSpec s;
    try {
        if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
            throw parse_error("system spec: unsupported schema_version");
        s.n = j.at("n").get<int>();
        s.N = j.at("N").get<int>();
        if (s.n < 1 || s.N < 1) throw parse_error("system spec: need n >= 1 and N >= 1");
        if (j.contains("backend")) s.backend = j.at("backend").get<std::string>();
        if (s.backend != "exact" && s.backend != "float")
            throw parse_error("system spec: backend must be exact or float");
        const auto& ev = j.at("eigenvalues");
        if (static_cast<int>(ev.size()) != s.n)
            throw parse_error("system spec: eigenvalue count does not match n");
        for (const auto& e : ev) s.lambda.push_back(scalar_from_json(e));
        s.nonlinear = PolyVectorField(s.n, s.N);
        if (j.contains("terms"))
            for (const auto& t : j.at("terms")) {
                auto m = t.at("m").get<std::vector<int>>();
                int r = t.at("r").get<int>();
                if (static_cast<int>(m.size()) != s.n)
                    throw parse_error("system spec: exponent vector length mismatch");
                if (r < 1 || r > s.n) throw parse_error("system spec: direction out of range");
                MonomialIndex mi(m, r - 1);
                if (mi.grade() < 1)
                    throw parse_error("system spec: terms must be nonlinear (|m| >= 2)");
                s.nonlinear.add_term(mi, scalar_from_json(t.at("c")));
            }
        if (j.contains("real_pairs") && !j.at("real_pairs").is_null()) {
            RealPairStructure ps;
            for (const auto& pr : j.at("real_pairs")) {
                if (!pr.is_array() || pr.size() != 2)
                    throw parse_error("system spec: real_pairs entries are [i, j]");
                ps.pairs.emplace_back(pr[0].get<int>() - 1, pr[1].get<int>() - 1);
            }
            s.real_pairs = ps;
        }
        if (s.backend == "float") {
            for (auto& l : s.lambda) l = l.to_floating();
            s.nonlinear = s.nonlinear.to_floating();
        }
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception& e) {
        throw parse_error(std::string("system spec: ") + e.what());
    }
    return s;
}

json system_spec_to_json(const SystemSpec& s) {
    json ev = json::array();
    for (const auto& l : s.lambda) ev.push_back(scalar_to_json(l));
    json terms = json::array();
    for (const auto& [mi, c] : s.nonlinear.terms())
        terms.push_back(json{{"m", mi.m}, {"r", mi.dir + 1}, {"c", scalar_to_json(c)}});
    json out{{"schema_version", kSchemaVersion},
             {"n", s.n},
             {"N", s.N},
             {"backend", s.backend},
             {"eigenvalues", ev},
             {"terms", terms}};
    if (s.real_pairs) {
        json ps = json::array();
        for (auto [i, j2] : s.real_pairs->pairs) ps.push_back(json::array({i + 1, j2 + 1}));
        out["real_pairs"] = ps;
    }
    return out;
}

}  // namespace renorm::io
