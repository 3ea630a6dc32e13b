#include "semiample/cli.hpp"

#include "semiample/certificate.hpp"
#include "semiample/hodge.hpp"
#include "semiample/threefold.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace semiample {

namespace {

using Handler = std::function<Json(const Json&, const RunOptions&)>;

struct Command {
    std::string name;
    std::string anchor;
    Handler run;
};

std::shared_ptr<const ClassGroup> group_of(const Json& in) {
    return ClassGroup::create(read_valid_fan(member(in, "fan", ""), "/fan"));
}

TorusInvariantDivisor divisor_of(const Json& in) {
    auto fan = read_valid_fan(member(in, "fan", ""), "/fan");
    return read_divisor(fan, member(in, "divisor", ""), "/divisor");
}

Json bool_or_null(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

Json certificate_json(const NondegeneracyReport& r) {
    Json idx = Json::array();
    for (auto i : r.index_set) idx.push_back(i);
    return Json{{"certified", r.certified()},
                {"index_set", idx},
                {"codimension", count_json(r.codimension)},
                {"jacobian_outside_span", r.jacobian_outside},
                {"reason", r.reason}};
}

// ---- fan -------------------------------------------------------------------------

Json fan_check(const Json& in, const RunOptions&) {
    Fan f = read_fan(member(in, "fan", ""), "/fan");
    FanDiagnostics diag = validate(f);
    Json by_dim = Json::array();
    Json violations = Json::array();
    for (const auto& v : diag.violations) violations.push_back(v);
    Json out{{"valid", diag.valid}, {"complete", diag.complete}, {"simplicial", diag.simplicial},
             {"violations", violations}, {"ambient", count_json(f.ambient())}, {"num_rays", count_json(f.num_rays())}};
    if (!diag.valid) return out;
    for (int k = 0; k <= static_cast<int>(f.ambient()); ++k) by_dim.push_back(count_json(f.cones(k).size()));
    out["cones_by_dimension"] = by_dim;
    std::optional<bool> projective;
    if (diag.complete) {
        try {
            ample_divisor(f);
            projective = true;
        } catch (const PreconditionError&) {
            projective = false;
        }
    }
    out["projective"] = bool_or_null(projective);
    return out;
}

// ---- divisor ---------------------------------------------------------------------

Json divisor_analyze(const Json& in, const RunOptions& opt) {
    TorusInvariantDivisor D = divisor_of(in);
    const bool cartier = is_cartier(D);
    std::optional<bool> gg, ample, semiample;
    if (cartier) {
        gg = is_globally_generated(D);
        ample = is_ample(D);
        semiample = is_semiample(D);
    }
    LatticePolytope P = divisor_polytope(D);
    Json out{{"cartier", cartier},
             {"globally_generated", bool_or_null(gg)},
             {"ample", bool_or_null(ample)},
             {"semiample", bool_or_null(semiample)},
             {"section_polytope", to_json(P)},
             {"lattice_points", count_json(P.is_empty() ? 0 : count_lattice_points(P))}};
    if (opt.verify && cartier) {
        bool agree = nakai_globally_generated(D) == *gg && nakai_ample(D) == *ample;
        if (!agree) throw InconsistencyError("convexity and intersection numbers disagree");
        out["verify"] = Json{{"nakai_agrees", agree}};
    }
    return out;
}

Json divisor_sigma_d(const Json& in, const RunOptions& opt) {
    TorusInvariantDivisor D = divisor_of(in);
    SigmaD s = sigma_d(D);
    Json origin = Json::array();
    for (auto i : s.ray_origin) origin.push_back(i);
    Json out{{"fan", to_json(s.fan)}, {"ray_origin", origin}};
    if (opt.verify) {
        auto coarse = std::make_shared<const Fan>(s.fan);
        TorusInvariantDivisor back = pullback(pushforward(D, coarse), D.fan);
        if (back.coeffs != D.coeffs) throw InconsistencyError("pullback of the pushforward differs from the divisor");
        out["verify"] = Json{{"pullback_of_pushforward_matches", true}};
    }
    return out;
}

Json divisor_nakai(const Json& in, const RunOptions&) {
    TorusInvariantDivisor D = divisor_of(in);
    support_function(D);  // NotCartierError before anything else
    Json curves = Json::array();
    const Fan& f = *D.fan;
    for (const auto& w : f.cones(static_cast<int>(f.ambient()) - 1))
        curves.push_back(Json{{"wall", to_json(w)}, {"intersection", to_json(curve_intersection(D, w))}});
    const bool ngg = nakai_globally_generated(D), namp = nakai_ample(D);
    const bool cvx = is_globally_generated(D), strict = is_strictly_convex(D);
    return Json{{"nakai_globally_generated", ngg}, {"nakai_ample", namp},
                {"convex", cvx},                  {"strictly_convex", strict},
                {"agree", ngg == cvx && namp == strict}, {"curve_intersections", curves}};
}

Json divisor_stratify(const Json& in, const RunOptions&) {
    TorusInvariantDivisor D = divisor_of(in);
    Json strata = Json::array();
    for (const auto& r : stratify(D)) {
        Json rays = Json::array();
        for (auto i : r.sigma0_rays) rays.push_back(i);
        strata.push_back(Json{{"cone", to_json(r.sigma)},
                              {"coarse_cone", to_json(r.sigma0)},
                              {"coarse_cone_rays", rays},
                              {"torus_dimension", std::to_string(r.torus_dim)}});
    }
    return Json{{"strata", strata}};
}

// ---- ring, residue, cup ----------------------------------------------------------

Json ring_dims(const Json& in, const RunOptions& opt) {
    auto g = group_of(in);
    GradedPolynomial f = read_polynomial(g, member(in, "polynomial", ""), "/polynomial");
    const int d = static_cast<int>(g->fan().ambient());
    std::vector<DegreeClass> degrees;
    std::vector<std::string> labels;
    if (in.contains("degrees")) {
        const Json& ds = in["degrees"];
        if (!ds.is_array()) throw InputError("/degrees", "expected an array of divisor coefficient vectors");
        for (std::size_t i = 0; i < ds.size(); ++i) {
            degrees.push_back(g->of(read_lattice_vector(ds[i], child("/degrees", i), g->num_vars())));
            labels.push_back("");
        }
    } else {
        for (int a = 0; a < d; ++a) {
            degrees.push_back(static_cast<long>(a + 1) * f.degree() - g->anticanonical());
            labels.push_back((a == 0 ? std::string() : std::to_string(a + 1)) + "beta - beta_0");
        }
    }
    Json rows = Json::array();
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        Json row{{"degree", to_json(degrees[i].rep)}};
        if (!labels[i].empty()) row["level"] = labels[i];
        row["R"] = count_json(r_dim(f, degrees[i]));
        row["R0"] = count_json(r0_dim(f, degrees[i]));
        row["R1"] = count_json(r1_dim(f, degrees[i]));
        rows.push_back(row);
    }
    Json out{{"beta", to_json(f.degree().rep)}, {"certificate", certificate_json(nondegeneracy_certificate(f))},
             {"dimensions", rows}};
    if (opt.verify) {
        TorusInvariantDivisor D(g->fan_ptr(), f.degree().rep);
        if (is_cartier(D) && is_semiample(D)) {
            std::size_t lstar = count_interior_points(divisor_polytope(D));
            std::size_t r1 = r1_dim(f, f.degree() - g->anticanonical());
            if (lstar != r1) throw InconsistencyError("R1 at beta - beta_0 differs from the interior point count");
            out["verify"] = Json{{"r1_at_beta_minus_beta0", count_json(r1)}, {"interior_points", count_json(lstar)}};
        } else {
            out["verify"] = Json{{"skipped", "beta is not semiample"}};
        }
    }
    return out;
}

Json residue_eval(const Json& in, const RunOptions& opt) {
    auto g = group_of(in);
    const Json& sys = member(in, "system", "");
    if (!sys.is_array()) throw InputError("/system", "expected an array of polynomials");
    std::vector<GradedPolynomial> F;
    for (std::size_t i = 0; i < sys.size(); ++i) F.push_back(read_polynomial(g, sys[i], child("/system", i)));
    if (F.size() != g->fan().ambient() + 1)
        throw InputError("/system", "expected " + std::to_string(g->fan().ambient() + 1) + " polynomials");
    ToricResidue R(F);
    Json out{{"rho", to_json(R.rho().rep)}, {"jacobian", to_json(R.jacobian())}, {"section_degree", to_json(R.degree())}};
    if (in.contains("H")) out["value"] = to_json(R(read_polynomial(g, in["H"], "/H")));
    if (opt.verify) {
        Rational at_j = R(R.jacobian());
        if (at_j != R.degree()) throw InconsistencyError("residue of the Jacobian differs from the section degree");
        out["verify"] = Json{{"residue_of_jacobian", to_json(at_j)}};
    }
    return out;
}

Json cup_pair_cmd(const Json& in, const RunOptions& opt) {
    auto g = group_of(in);
    GradedPolynomial f = read_polynomial(g, member(in, "polynomial", ""), "/polynomial");
    GradedPolynomial A = read_polynomial(g, member(in, "A", ""), "/A");
    GradedPolynomial B = read_polynomial(g, member(in, "B", ""), "/B");
    int a = static_cast<int>(read_small_integer(member(in, "a", ""), "/a"));
    int b = static_cast<int>(read_small_integer(member(in, "b", ""), "/b"));
    CupProduct cp(f);
    PairingValue v = cp.pair(A, B, a, b);
    Json out{{"pairing", to_json(v)}, {"index_set", Json::array()}};
    for (auto i : cp.index_set()) out["index_set"].push_back(i);
    if (opt.verify) {
        PairingValue w = cp.pair(B, A, b, a);
        const int d = cp.dim();
        if (v.rational * c_ab(b, a, d) != w.rational * c_ab(a, b, d))
            throw InconsistencyError("pairing is not compatible with swapping its arguments");
        out["verify"] = Json{{"swapped", to_json(w)}};
    }
    return out;
}

// ---- threefold -------------------------------------------------------------------

Json threefold_h3(const Json& in, const RunOptions& opt) {
    auto g = group_of(in);
    auto coarse = read_valid_fan(member(in, "coarse_fan", ""), "/coarse_fan");
    GradedPolynomial f = read_polynomial(g, member(in, "polynomial", ""), "/polynomial");
    ThreefoldH3 h(f, coarse);
    Json hodge = Json::array();
    for (int a = 0; a < 4; ++a) hodge.push_back(count_json(h.hodge_number(a)));
    Json charts = Json::array();
    for (std::size_t c = 0; c < h.charts().size(); ++c) {
        const auto& ch = h.charts()[c];
        if (ch.n() == 0) continue;
        Json rays = Json::array();
        for (const auto& r : ch.interior)
            rays.push_back(Json{{"ray", r.ray},
                                {"mult_left", to_json(r.mult_left)},
                                {"mult_right", to_json(r.mult_right)},
                                {"mult_span", to_json(r.mult_span)}});
        charts.push_back(Json{{"chart", c}, {"coarse_cone", to_json(ch.sigma)}, {"interior_rays", rays}});
    }
    Json levels = Json::array();
    for (int a = 0; a < 4; ++a) {
        Json blocks = Json::array();
        for (const auto& b : h.blocks(a)) {
            Json bj{{"kind", b.kind == H3Block::Kind::jacobian ? "jacobian" : "face"}, {"dim", count_json(b.dim())}};
            if (b.kind == H3Block::Kind::face) {
                bj["chart"] = b.chart;
                bj["interior"] = b.interior;
            }
            blocks.push_back(bj);
        }
        levels.push_back(Json{{"level", std::to_string(a)}, {"blocks", blocks}});
    }
    Json out{{"hodge_numbers", hodge}, {"charts", charts}, {"levels", levels}};
    bool want_gram = opt.verify || (in.contains("gram") && in["gram"].is_boolean() && in["gram"].get<bool>());
    if (want_gram) {
        Json grams = Json::array();
        for (int a : {1, 2}) {
            GramMatrix G = h.gram(a, opt.threads);
            std::size_t rank = G.rank();
            grams.push_back(Json{{"level", std::to_string(a)},
                                 {"rows", count_json(G.rows())},
                                 {"cols", count_json(G.cols())},
                                 {"rank", count_json(rank)}});
            if (opt.verify && (rank != G.rows() || G.rows() != G.cols()))
                throw InconsistencyError("Gram matrix at level " + std::to_string(a) + " is degenerate");
        }
        out["gram"] = grams;
    }
    return out;
}

// ---- hodge -----------------------------------------------------------------------

Json hp2_json(const LatticePolytope& P, const HP2Result& r) {
    Json terms = Json::array();
    for (const auto& t : r.terms) {
        Json face = Json::array();
        for (auto v : t.face.vertices) face.push_back(to_json(P.vertices()[v]));
        terms.push_back(Json{{"cone", to_json(t.gamma)},
                             {"face", face},
                             {"coefficient", to_json(t.coefficient)},
                             {"value", to_json(t.value)}});
    }
    return Json{{"value", to_json(r.value)}, {"terms", terms}};
}

Json hodge_hp2(const Json& in, const RunOptions& opt) {
    LatticePolytope P = read_polytope(member(in, "polytope", ""), "/polytope");
    int p = static_cast<int>(read_small_integer(member(in, "p", ""), "/p"));
    if (in.contains("fine_fan")) {
        auto fine = read_valid_fan(in["fine_fan"], "/fine_fan");
        Json out = hp2_json(P, h_p2(P, *fine, p));
        out["subdivision"] = "given fan";
        return out;
    }
    if (P.is_empty() || !P.is_full_dimensional() || !is_reflexive(P))
        throw PreconditionError("without a fine_fan the polytope must be reflexive",
                                "h^{d-1-p,2} lattice-point formula");
    ReflexiveCounts rc = reflexive_counts(P, p, PullingOrder::lexicographic);
    HP2Result r = h_p2(P, rc.counts, p);
    Json out = hp2_json(P, r);
    out["subdivision"] = rc.triangulated ? "pulling triangulation of the dual polytope"
                                         : "lattice points of the dual polytope as rays";
    if (opt.verify && rc.triangulated) {
        HP2Result s = h_p2(P, reflexive_counts(P, p, PullingOrder::reverse_lexicographic).counts, p);
        if (s.value != r.value) throw InconsistencyError("h_p2 depends on the pulling order");
        out["verify"] = Json{{"reverse_order_value", to_json(s.value)}};
    } else if (opt.verify) {
        out["verify"] = Json{{"skipped", "only rays enter, so no triangulation choice is made"}};
    }
    return out;
}

Json hodge_h21(const Json& in, const RunOptions&) {
    LatticePolytope P = read_polytope(member(in, "polytope", ""), "/polytope");
    return Json{{"h21", to_json(h21_batyrev(P))}, {"lattice_points", count_json(count_lattice_points(P))}};
}

Json mirror_check_cmd(const Json& in, const RunOptions&) {
    LatticePolytope P = read_polytope(member(in, "polytope", ""), "/polytope");
    MirrorReport r = mirror_check(P);
    auto value = [](const HodgeReport& h) {
        const auto& v = h.values.at(0);
        return Json{{"name", v.name}, {"value", to_json(v.value)}, {"provenance", v.provenance}};
    };
    auto points = [](const std::vector<LatticeVector>& pts) {
        Json a = Json::array();
        for (const auto& x : pts) a.push_back(to_json(x));
        return a;
    };
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back(Json{{"face", points(w.face)},
                                 {"double_interior", points(w.double_interior)},
                                 {"dual_face", points(w.dual_face)},
                                 {"dual_face_interior", points(w.dual_face_interior)}});
    return Json{{"primal", value(r.primal)},
                {"dual", value(r.dual)},
                {"differ", r.differ()},
                {"dual_lattice_points", count_json(r.dual_points.size())},
                {"dual_points_are_vertices_and_origin", r.dual_points_are_vertices_and_origin},
                {"mpcp_identity", r.mpcp_identity},
                {"simplified_dual_sum", to_json(r.simplified_dual_sum)},
                {"witnesses", witnesses}};
}

// ---- corpus ----------------------------------------------------------------------

Json read_json_file(const std::string& path, const std::string& where) {
    std::ifstream is(path);
    if (!is) throw InputError(where, "cannot open " + path);
    try {
        return Json::parse(is);
    } catch (const Json::parse_error& e) {
        throw InputError(where, std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

bool as_rational(const Json& j, Rational& out) {
    try {
        if (j.is_number_integer() || j.is_number_unsigned() || j.is_string()) {
            out = read_rational(j, "");
            return true;
        }
    } catch (const ValidationError&) {
    }
    return false;
}

// Every field of expect must match; numbers compare by value, {"at_least": x} by order.
void match(const Json& expect, const Json& actual, const std::string& path, std::vector<std::string>& bad) {
    if (expect.is_object() && expect.size() == 1 && expect.contains("at_least")) {
        Rational lo, v;
        if (!as_rational(expect["at_least"], lo) || !as_rational(actual, v) || v < lo)
            bad.push_back(path + ": expected at least " + expect["at_least"].dump() + ", got " + actual.dump());
        return;
    }
    if (expect.is_object()) {
        if (!actual.is_object()) {
            bad.push_back(path + ": expected an object");
            return;
        }
        for (const auto& [k, v] : expect.items()) {
            if (!actual.contains(k)) bad.push_back(child(path, k) + ": missing");
            else match(v, actual[k], child(path, k), bad);
        }
        return;
    }
    if (expect.is_array()) {
        if (!actual.is_array() || actual.size() != expect.size()) {
            bad.push_back(path + ": expected an array of length " + std::to_string(expect.size()));
            return;
        }
        for (std::size_t i = 0; i < expect.size(); ++i) match(expect[i], actual[i], child(path, i), bad);
        return;
    }
    Rational a, b;
    if (expect.is_number() && as_rational(expect, a) && as_rational(actual, b)) {
        if (a != b) bad.push_back(path + ": expected " + expect.dump() + ", got " + actual.dump());
        return;
    }
    if (expect != actual) bad.push_back(path + ": expected " + expect.dump() + ", got " + actual.dump());
}

Json corpus_run(const Json& in, const RunOptions& opt) {
    const Json& cases = member(in, "cases", "");
    if (!cases.is_array()) throw InputError("/cases", "expected an array of cases");
    Json results = Json::array();
    std::size_t passed = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string p = child("/cases", i);
        const Json& c = cases[i];
        std::string command = member(c, "command", p).is_string() ? c["command"].get<std::string>() : "";
        if (command.empty() || command == "corpus run")
            throw InputError(child(p, "command"), "expected the name of a subcommand other than corpus run");
        Json input;
        if (c.contains("input")) input = c["input"];
        else if (c.contains("input_path") && c["input_path"].is_string())
            input = read_json_file((std::filesystem::path(opt.base_dir) / c["input_path"].get<std::string>()).string(),
                                   child(p, "input_path"));
        else throw InputError(p, "a case needs \"input\" or \"input_path\"");
        RunOptions sub = opt;
        if (c.contains("verify")) sub.verify = c["verify"].is_boolean() && c["verify"].get<bool>();
        int want_exit = c.contains("expect_exit") ? static_cast<int>(read_small_integer(c["expect_exit"], child(p, "expect_exit"))) : 0;
        CommandOutcome got = dispatch(command, input, sub);
        std::vector<std::string> bad;
        if (got.exit_code != want_exit)
            bad.push_back("exit code " + std::to_string(got.exit_code) + ", expected " + std::to_string(want_exit));
        if (c.contains("expect")) {
            const Json& body = got.exit_code == 0 ? got.report["result"] : got.report["error"];
            match(c["expect"], body, "", bad);
        }
        Json mismatches = Json::array();
        for (auto& b : bad) mismatches.push_back(b);
        if (bad.empty()) ++passed;
        results.push_back(Json{{"name", c.contains("name") ? c["name"] : Json(command)},
                               {"command", command},
                               {"exit_code", std::to_string(got.exit_code)},
                               {"passed", bad.empty()},
                               {"mismatches", mismatches}});
    }
    return Json{{"cases", results},
                {"passed", count_json(passed)},
                {"failed", count_json(cases.size() - passed)},
                {"all_passed", passed == cases.size()}};
}

const std::vector<Command>& commands() {
    static const std::vector<Command> table = {
        {"fan check", "fan axioms: rational pointed cones closed under faces and meeting in common faces", fan_check},
        {"divisor analyze", "support function of a Cartier divisor, its convexity and the section polytope",
         divisor_analyze},
        {"divisor sigma-d", "fan of a semiample divisor by gluing, wall merging and the normal fan of the section polytope",
         divisor_sigma_d},
        {"divisor nakai", "toric Nakai criterion on torus-invariant curves", divisor_nakai},
        {"divisor stratify", "orbit stratification by smallest containing cone of the semiample fan", divisor_stratify},
        {"ring dims", "graded pieces of S/J(f), S/J0(f) and S/J1(f)", ring_dims},
        {"residue eval", "toric residue normalized by Res_F(J_F) = d! vol of the section polytope", residue_eval},
        {"cup pair", "residue pairing on R1(f) with the c_ab sign and 2 pi i factor", cup_pair_cmd},
        {"threefold h3", "H^3 of a semiample threefold: R1(f) plus face contributions of subdivided 2-cones",
         threefold_h3},
        {"hodge h-p2", "h^{d-1-p,2} lattice-point formula", hodge_hp2},
        {"hodge h21", "Batyrev h^{2,1} formula for reflexive 4-polytopes", hodge_h21},
        {"mirror check", "h^{3,2} mirror comparison for a reflexive 7-polytope", mirror_check_cmd},
        {"corpus run", "regression corpus", corpus_run},
    };
    return table;
}

std::string anchor_for(const std::string& name) {
    for (const auto& c : commands())
        if (c.name == name) return c.anchor;
    return "";
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& c : commands()) n.push_back(c.name);
        return n;
    }();
    return names;
}

CommandOutcome dispatch(const std::string& command, const Json& input, const RunOptions& options) {
    const Command* cmd = nullptr;
    for (const auto& c : commands())
        if (c.name == command) cmd = &c;
    CommandOutcome out;
    out.report = Json{{"command", command}, {"paper_anchor", anchor_for(command)}};
    if (!cmd) {
        out.exit_code = 1;
        out.report["error"] = Json{{"kind", "validation"}, {"message", "unknown subcommand " + command}};
        return out;
    }
    try {
        out.report["result"] = cmd->run(input, options);
    } catch (const InputError& e) {
        out.exit_code = 1;
        out.report["error"] = Json{{"kind", "validation"}, {"path", e.path()}, {"message", e.detail()}};
    } catch (const ValidationError& e) {
        out.exit_code = 1;
        out.report["error"] = Json{{"kind", "validation"}, {"message", e.what()}};
    } catch (const PreconditionError& e) {
        out.exit_code = 2;
        out.report["error"] = Json{{"kind", "precondition"},
                                   {"message", e.what()},
                                   {"paper_anchor", e.anchor().empty() ? cmd->anchor : e.anchor()}};
    } catch (const std::exception& e) {
        out.exit_code = 3;
        out.report["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
    }
    return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations on toric fans, divisors, Jacobian rings, residues and Hodge numbers"};
    app.require_subcommand(1);
    std::string input_path, output_path = "stdout";
    unsigned threads = 1;
    bool verify = false;
    std::string chosen;

    std::map<std::string, CLI::App*> groups;
    for (const auto& name : command_names()) {
        auto space = name.find(' ');
        std::string group = name.substr(0, space), leaf = name.substr(space + 1);
        if (!groups.count(group)) {
            groups[group] = app.add_subcommand(group, "");
            groups[group]->require_subcommand(1);
        }
        CLI::App* sub = groups[group]->add_subcommand(leaf, name);
        sub->add_option("--input", input_path, "input JSON document, - for standard input")->required();
        sub->add_option("--output", output_path, "report path or stdout");
        sub->add_option("--threads", threads, "worker threads, 0 for all cores");
        sub->add_flag("--verify", verify, "run redundant cross-checks");
        sub->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    RunOptions opt;
    opt.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    opt.verify = verify;
    CommandOutcome result;
    try {
        Json input;
        if (input_path == "-") {
            try {
                input = Json::parse(std::cin);
            } catch (const Json::parse_error& e) {
                throw InputError("/", std::string("invalid JSON: ") + e.what());
            }
        } else {
            input = read_json_file(input_path, "--input");
            opt.base_dir = std::filesystem::path(input_path).parent_path().string();
            if (opt.base_dir.empty()) opt.base_dir = ".";
        }
        result = dispatch(chosen, input, opt);
    } catch (const InputError& e) {
        result.exit_code = 1;
        result.report = Json{{"command", chosen}, {"paper_anchor", anchor_for(chosen)},
                             {"error", Json{{"kind", "validation"}, {"path", e.path()}, {"message", e.detail()}}}};
    }
    if (chosen == "corpus run" && result.exit_code == 0 && !result.report["result"]["all_passed"].get<bool>())
        result.exit_code = 1;

    const std::string text = result.report.dump(2) + "\n";
    if (output_path == "stdout" || output_path == "-") {
        out << text;
    } else {
        std::ofstream os(output_path);
        if (!os) {
            err << "cannot write " << output_path << "\n";
            return 1;
        }
        os << text;
    }
    if (result.exit_code != 0 && result.report.contains("error"))
        err << result.report["error"]["message"].get<std::string>() << "\n";
    return result.exit_code;
}

}  // namespace semiample
