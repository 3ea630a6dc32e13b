#include "semiample/io.hpp"

#include "semiample/arith.hpp"

#include <algorithm>

namespace semiample {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& member(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) throw InputError(path.empty() ? "/" : path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(child(path, key), "required field is missing");
    return *it;
}

Integer read_integer(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) {
        Rational r;
        try {
            r = parse_rational(j.get<std::string>());
        } catch (const ValidationError& e) {
            throw InputError(path, e.what());
        }
        if (r.get_den() != 1) throw InputError(path, "expected an integer, got " + j.get<std::string>());
        return r.get_num();
    }
    throw InputError(path, "expected an integer");
}

long read_small_integer(const Json& j, const std::string& path) {
    Integer x = read_integer(j, path);
    if (!x.fits_slong_p()) throw InputError(path, "integer out of range");
    return x.get_si();
}

Rational read_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer() || j.is_number_unsigned()) return Rational(read_integer(j, path));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ValidationError& e) {
            throw InputError(path, e.what());
        }
    }
    throw InputError(path, "expected a rational number as an integer or a \"p/q\" string");
}

LatticeVector read_lattice_vector(const Json& j, const std::string& path, std::size_t length) {
    if (!j.is_array()) throw InputError(path, "expected an array of integers");
    if (length != 0 && j.size() != length)
        throw InputError(path, "expected length " + std::to_string(length) + ", got " + std::to_string(j.size()));
    if (length == 0 && j.empty()) throw InputError(path, "expected a nonempty array");
    LatticeVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_integer(j[i], child(path, i)));
    return v;
}

Fan read_fan(const Json& j, const std::string& path) {
    const std::string rp = child(path, "rays"), cp = child(path, "cones");
    const Json& rays = member(j, "rays", path);
    const Json& cones = member(j, "cones", path);
    if (!rays.is_array() || rays.empty()) throw InputError(rp, "expected a nonempty array of rays");
    if (!cones.is_array() || cones.empty()) throw InputError(cp, "expected a nonempty array of cones");
    std::vector<LatticeVector> rv;
    for (std::size_t i = 0; i < rays.size(); ++i)
        rv.push_back(read_lattice_vector(rays[i], child(rp, i), i == 0 ? 0 : rv[0].size()));
    std::vector<std::vector<std::size_t>> cv;
    for (std::size_t c = 0; c < cones.size(); ++c) {
        const std::string p = child(cp, c);
        if (!cones[c].is_array()) throw InputError(p, "expected an array of ray indices");
        std::vector<std::size_t> idx;
        for (std::size_t k = 0; k < cones[c].size(); ++k) {
            long x = read_small_integer(cones[c][k], child(p, k));
            if (x < 0 || static_cast<std::size_t>(x) >= rv.size())
                throw InputError(child(p, k), "ray index " + std::to_string(x) + " out of range");
            idx.push_back(static_cast<std::size_t>(x));
        }
        cv.push_back(idx);
    }
    const std::size_t d = rv[0].size();
    try {
        return Fan(rv, cv, d);
    } catch (const ValidationError& e) {
        throw InputError(path, e.what());
    }
}

void validate_fan(const Fan& f, const std::string& path) {
    FanDiagnostics diag = validate(f);
    if (diag.valid) return;
    std::string msg = "not a fan";
    for (const auto& v : diag.violations) msg += "; " + v;
    throw InputError(path, msg);
}

std::shared_ptr<const Fan> read_valid_fan(const Json& j, const std::string& path) {
    Fan f = read_fan(j, path);
    validate_fan(f, path);
    return std::make_shared<const Fan>(std::move(f));
}

TorusInvariantDivisor read_divisor(std::shared_ptr<const Fan> fan, const Json& j, const std::string& path) {
    LatticeVector a = read_lattice_vector(j, path, fan->num_rays());
    return TorusInvariantDivisor(std::move(fan), std::move(a));
}

GradedPolynomial read_polynomial(const std::shared_ptr<const ClassGroup>& g, const Json& j, const std::string& path) {
    const std::string tp = child(path, "terms");
    const Json& terms = member(j, "terms", path);
    if (!terms.is_array()) throw InputError(tp, "expected an array of terms");
    const std::size_t n = g->num_vars();
    std::map<Monomial, Rational> parsed;
    std::optional<DegreeClass> degree;
    if (j.contains("degree")) degree = g->of(read_lattice_vector(j["degree"], child(path, "degree"), n));
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string p = child(tp, t);
        LatticeVector e = read_lattice_vector(member(terms[t], "exponents", p), child(p, "exponents"), n);
        Monomial a;
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] < 0 || !e[i].fits_slong_p()) throw InputError(child(child(p, "exponents"), i), "exponent must be a nonnegative integer");
            a.push_back(e[i].get_si());
        }
        Rational c = read_rational(member(terms[t], "coefficient", p), child(p, "coefficient"));
        DegreeClass da = g->of_monomial(a);
        if (!degree) degree = da;
        else if (da != *degree) throw InputError(p, "term has a different degree from the rest of the polynomial");
        parsed[a] += c;
    }
    if (!degree) throw InputError(path, "the zero polynomial needs an explicit degree");
    std::map<Monomial, Rational> nonzero;
    for (auto& [a, c] : parsed)
        if (c != 0) nonzero.emplace(a, c);
    return GradedPolynomial(*degree, nonzero);
}

LatticePolytope read_polytope(const Json& j, const std::string& path) {
    if (j.is_object() && j.contains("vertices")) {
        const std::string vp = child(path, "vertices");
        const Json& vs = j["vertices"];
        if (!vs.is_array() || vs.empty()) throw InputError(vp, "expected a nonempty array of points");
        std::vector<LatticeVector> pts;
        for (std::size_t i = 0; i < vs.size(); ++i)
            pts.push_back(read_lattice_vector(vs[i], child(vp, i), i == 0 ? 0 : pts[0].size()));
        return LatticePolytope::from_points(pts, pts[0].size());
    }
    if (j.is_object() && j.contains("inequalities")) {
        const std::string ip = child(path, "inequalities");
        const Json& qs = j["inequalities"];
        if (!qs.is_array() || qs.empty()) throw InputError(ip, "expected a nonempty array of inequalities");
        HPolytope h;
        for (std::size_t i = 0; i < qs.size(); ++i) {
            const std::string p = child(ip, i);
            LatticeVector u = read_lattice_vector(member(qs[i], "normal", p), child(p, "normal"), i == 0 ? 0 : h.ambient);
            if (i == 0) h.ambient = u.size();
            h.inequalities.push_back({u, read_integer(member(qs[i], "rhs", p), child(p, "rhs"))});
        }
        try {
            return vertices_from_inequalities(h);
        } catch (const ValidationError& e) {
            throw InputError(ip, e.what());
        }
    }
    throw InputError(path, "a polytope needs \"vertices\" or \"inequalities\"");
}

Json to_json(const Integer& x) { return to_string(x); }
Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const LatticeVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json to_json(const RationalVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

Json to_json(const ConeRef& c) {
    Json a = Json::array();
    for (auto i : c.rays) a.push_back(i);
    return a;
}

Json to_json(const Fan& f) {
    Json rays = Json::array(), cones = Json::array();
    for (const auto& r : f.rays()) rays.push_back(to_json(r));
    for (const auto& c : f.max_cones()) cones.push_back(to_json(c));
    return Json{{"rays", rays}, {"cones", cones}};
}

Json to_json(const LatticePolytope& p) {
    Json vs = Json::array();
    for (const auto& v : p.vertices()) vs.push_back(to_json(v));
    return Json{{"dim", std::to_string(p.dim())}, {"vertices", vs}};
}

Json to_json(const PairingValue& v) {
    return Json{{"rational", to_string(v.rational)}, {"two_pi_i_exponent", std::to_string(v.two_pi_i_exponent)}};
}

Json to_json(const GradedPolynomial& f) {
    Json terms = Json::array();
    for (const auto& [a, c] : f.terms()) {
        Json e = Json::array();
        for (long x : a) e.push_back(std::to_string(x));
        terms.push_back(Json{{"exponents", e}, {"coefficient", to_string(c)}});
    }
    return Json{{"degree", to_json(f.degree().rep)}, {"terms", terms}};
}

Json count_json(std::size_t n) { return std::to_string(n); }

}  // namespace semiample
