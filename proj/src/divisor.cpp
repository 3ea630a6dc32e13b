#include "semiample/divisor.hpp"

#include "semiample/combinatorics.hpp"
#include "semiample/errors.hpp"
#include "semiample/linalg.hpp"
#include "semiample/lp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace semiample {

TorusInvariantDivisor::TorusInvariantDivisor(std::shared_ptr<const Fan> f, LatticeVector a)
    : fan(std::move(f)), coeffs(std::move(a)) {
    if (!fan) throw ValidationError("divisor without a fan");
    if (coeffs.size() != fan->num_rays())
        throw ValidationError("coeffs has length " + std::to_string(coeffs.size()) + ", expected " +
                              std::to_string(fan->num_rays()));
}

std::optional<SupportFunction> rational_support_function(const TorusInvariantDivisor& D) {
    const Fan& f = *D.fan;
    const std::size_t d = f.ambient();
    SupportFunction s;
    for (const auto& c : f.max_cones()) {
        RationalMatrix A(c.rays.size(), d);
        RationalVector b(c.rays.size());
        for (std::size_t r = 0; r < c.rays.size(); ++r) {
            for (std::size_t j = 0; j < d; ++j) A(r, j) = f.ray(c.rays[r])[j];
            b[r] = -D.coeffs[c.rays[r]];
        }
        auto m = solve(A, b);
        if (!m) return std::nullopt;
        if (c.dim != static_cast<int>(d))
            throw PreconditionError("support function needs full-dimensional maximal cones", "complete fan");
        if (!is_integral(*m)) s.integral = false;
        s.m.push_back(*m);
    }
    return s;
}

SupportFunction support_function(const TorusInvariantDivisor& D) {
    auto s = rational_support_function(D);
    if (!s) throw NotCartierError("the ray equations are inconsistent on some maximal cone");
    if (!s->integral) throw NotCartierError("no integral solution m_sigma on some maximal cone");
    return *s;
}

bool is_cartier(const TorusInvariantDivisor& D) {
    auto s = rational_support_function(D);
    return s && s->integral;
}

namespace {

// slack_{sigma,j} = <m_sigma, e_j> + a_j
Rational slack(const TorusInvariantDivisor& D, const RationalVector& m, std::size_t j) {
    return pairing(m, D.fan->ray(j)) + D.coeffs[j];
}

bool convex_with(const TorusInvariantDivisor& D, const SupportFunction& s, bool strict) {
    const Fan& f = *D.fan;
    for (std::size_t c = 0; c < f.max_cones().size(); ++c)
        for (std::size_t j = 0; j < f.num_rays(); ++j) {
            Rational v = slack(D, s.m[c], j);
            if (v < 0) return false;
            if (strict && v == 0 && !std::binary_search(f.max_cones()[c].rays.begin(), f.max_cones()[c].rays.end(), j))
                return false;
        }
    return true;
}

}  // namespace

bool is_globally_generated(const TorusInvariantDivisor& D) { return convex_with(D, support_function(D), false); }

bool is_strictly_convex(const TorusInvariantDivisor& D) { return convex_with(D, support_function(D), true); }

HPolytope polytope_of_divisor(const TorusInvariantDivisor& D) {
    HPolytope h;
    h.ambient = D.fan->ambient();
    for (std::size_t i = 0; i < D.fan->num_rays(); ++i) h.inequalities.push_back({D.fan->ray(i), -D.coeffs[i]});
    return h;
}

LatticePolytope divisor_polytope(const TorusInvariantDivisor& D) {
    return vertices_from_inequalities(polytope_of_divisor(D));
}

bool is_semiample(const TorusInvariantDivisor& D) {
    if (!is_globally_generated(D)) return false;
    return divisor_polytope(D).is_full_dimensional();
}

namespace {

Rational face_volume(const TorusInvariantDivisor& D, const LatticePolytope& delta, int k, const ConeRef& sigma) {
    // vertices of the section polytope on which every ray of sigma is tight
    std::vector<std::size_t> verts;
    for (std::size_t v = 0; v < delta.vertices().size(); ++v) {
        bool tight = true;
        for (auto i : sigma.rays)
            if (pairing(delta.vertices()[v], D.fan->ray(i)) != -D.coeffs[i]) {
                tight = false;
                break;
            }
        if (tight) verts.push_back(v);
    }
    if (verts.empty()) return 0;
    LatticePolytope face = face_polytope(delta, Face{verts, -1});
    if (face.dim() < k) return 0;
    if (face.dim() > k) throw InconsistencyError("face of the section polytope is too large");
    return normalized_volume(face);
}

void check_cone(const Fan& f, int k, const ConeRef& sigma) {
    auto c = f.find_cone(sigma.rays);
    if (!c) throw ValidationError("cone is not in the fan");
    if (c->dim != static_cast<int>(f.ambient()) - k)
        throw ValidationError("cone has dimension " + std::to_string(c->dim) + ", expected " +
                              std::to_string(static_cast<int>(f.ambient()) - k));
}

}  // namespace

Rational intersection_number(const TorusInvariantDivisor& D, int k, const ConeRef& sigma) {
    check_cone(*D.fan, k, sigma);
    if (!is_globally_generated(D))
        throw PreconditionError("intersection numbers by volumes need a globally generated divisor",
                                "intersection numbers as face volumes");
    return face_volume(D, divisor_polytope(D), k, sigma);
}

LatticeVector ample_divisor(const Fan& f) {
    const std::size_t d = f.ambient(), n = f.num_rays(), nc = f.max_cones().size();
    const std::size_t vars = n + d * nc;
    std::vector<std::vector<Rational>> ineq, eq;
    for (std::size_t c = 0; c < nc; ++c) {
        const auto& rays = f.max_cones()[c].rays;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> row(vars);
            row[j] = 1;
            for (std::size_t t = 0; t < d; ++t) row[n + d * c + t] = f.ray(j)[t];
            (std::binary_search(rays.begin(), rays.end(), j) ? eq : ineq).push_back(row);
        }
    }
    RationalMatrix A = RationalMatrix::from_rows(ineq, vars), E = RationalMatrix::from_rows(eq, vars);
    auto x = find_feasible_point(A, RationalVector(ineq.size(), Rational(1)), E, RationalVector(eq.size()));
    if (!x) throw PreconditionError("requires projective fan: no strictly convex support function exists",
                                    "intersection numbers on a projective toric variety");
    Integer l = common_denominator(*x);
    LatticeVector a(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rational t = (*x)[j] * l;
        a[j] = t.get_num();
    }
    return a;
}

namespace {

// (D . V(tau)) for every wall, in the order of cones(d-1). The values come from
// D = (D + tA) - tA with A ample and t >= 1, even when D is already globally
// generated, so the Nakai tests never reduce to reading off convexity.
std::vector<Rational> all_curve_intersections(const TorusInvariantDivisor& D) {
    const Fan& f = *D.fan;
    const int d = static_cast<int>(f.ambient());
    support_function(D);
    const auto& walls = f.cones(d - 1);
    std::vector<Rational> out;
    std::optional<LatticeVector> ample;
    try {
        ample = ample_divisor(f);
    } catch (const PreconditionError&) {
        if (!is_globally_generated(D)) throw;
    }
    if (!ample) {
        LatticePolytope delta = divisor_polytope(D);
        for (const auto& w : walls) out.push_back(face_volume(D, delta, 1, w));
        return out;
    }
    TorusInvariantDivisor A(D.fan, *ample);
    auto shifted = [&](const Integer& s) {
        LatticeVector c(D.coeffs.size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = D.coeffs[i] + s * A.coeffs[i];
        return TorusInvariantDivisor(D.fan, c);
    };
    Integer t = 1;
    while (!is_globally_generated(shifted(t))) t *= 2;
    TorusInvariantDivisor plus = shifted(t);
    LatticePolytope dp = divisor_polytope(plus), da = divisor_polytope(A);
    for (const auto& w : walls) out.push_back(face_volume(plus, dp, 1, w) - t * face_volume(A, da, 1, w));
    return out;
}

}  // namespace

Rational curve_intersection(const TorusInvariantDivisor& D, const ConeRef& tau) {
    const Fan& f = *D.fan;
    check_cone(f, 1, tau);
    const auto& walls = f.cones(static_cast<int>(f.ambient()) - 1);
    auto values = all_curve_intersections(D);
    for (std::size_t i = 0; i < walls.size(); ++i)
        if (walls[i].rays == tau.rays) return values[i];
    throw InconsistencyError("wall not found");
}

bool nakai_globally_generated(const TorusInvariantDivisor& D) {
    for (const auto& v : all_curve_intersections(D))
        if (v < 0) return false;
    return true;
}

bool nakai_ample(const TorusInvariantDivisor& D) {
    for (const auto& v : all_curve_intersections(D))
        if (v <= 0) return false;
    return true;
}

namespace {

using ConeSet = std::set<std::vector<std::size_t>>;

// Extreme rays (original indices) of the cone generated by a set of rays.
std::vector<std::size_t> extreme_rays(const Fan& f, const std::vector<std::size_t>& rays) {
    std::vector<LatticeVector> gens;
    for (auto i : rays) gens.push_back(f.ray(i));
    ConeGeometry g = cone_geometry(gens, f.ambient());
    std::vector<std::size_t> out;
    for (std::size_t pos = 0; pos < rays.size(); ++pos) {
        if (g.dim == 1) {
            out.push_back(rays[pos]);
            continue;
        }
        std::vector<std::size_t> meet;
        bool first = true;
        for (const auto& fg : g.facet_generators)
            if (std::binary_search(fg.begin(), fg.end(), pos)) {
                meet = first ? fg : sorted_intersection(meet, fg);
                first = false;
            }
        if (!first && meet == std::vector<std::size_t>{pos}) out.push_back(rays[pos]);
    }
    return out;
}

ConeSet glue(const Fan& f, const std::vector<std::size_t>& group_of) {
    std::map<std::size_t, std::set<std::size_t>> groups;
    for (std::size_t c = 0; c < group_of.size(); ++c)
        for (auto r : f.max_cones()[c].rays) groups[group_of[c]].insert(r);
    ConeSet out;
    for (const auto& [g, rays] : groups) out.insert(extreme_rays(f, std::vector<std::size_t>(rays.begin(), rays.end())));
    return out;
}

}  // namespace

SigmaDConstructions sigma_d_constructions(const TorusInvariantDivisor& D) {
    const Fan& f = *D.fan;
    const int d = static_cast<int>(f.ambient());
    SupportFunction s = support_function(D);
    LatticePolytope delta = divisor_polytope(D);
    if (!convex_with(D, s, false) || !delta.is_full_dimensional())
        throw PreconditionError("divisor is not semiample", "semiample divisor and its fan");
    const std::size_t nc = f.max_cones().size();

    // (a) glue maximal cones with equal m_sigma
    std::map<RationalVector, std::size_t> key;
    std::vector<std::size_t> by_m(nc);
    for (std::size_t c = 0; c < nc; ++c) by_m[c] = key.emplace(s.m[c], key.size()).first->second;
    ConeSet a = glue(f, by_m);

    // (b) merge across walls with (D . V(tau)) = 0
    std::vector<std::size_t> parent(nc);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    if (d > 0)
        for (const auto& w : f.cones(d - 1)) {
            auto around = f.max_cones_containing(w);
            if (around.size() != 2) continue;
            if (face_volume(D, delta, 1, w) == 0) parent[find(around[1])] = find(around[0]);
        }
    std::vector<std::size_t> by_wall(nc);
    for (std::size_t c = 0; c < nc; ++c) by_wall[c] = find(c);
    ConeSet b = glue(f, by_wall);

    // (c) normal fan of the section polytope
    Fan nf = normal_fan(delta);
    ConeSet c;
    for (const auto& cone : nf.max_cones()) {
        std::vector<std::size_t> rays;
        for (auto r : cone.rays) {
            auto idx = f.find_ray(nf.ray(r));
            if (!idx) throw InconsistencyError("normal fan ray is not a ray of the fan");
            rays.push_back(*idx);
        }
        std::sort(rays.begin(), rays.end());
        c.insert(rays);
    }
    return {a, b, c};
}

SigmaD sigma_d(const TorusInvariantDivisor& D) {
    const Fan& f = *D.fan;
    SigmaDConstructions k = sigma_d_constructions(D);
    if (k.by_m_sigma != k.by_zero_walls) throw InconsistencyError("gluing by m_sigma and merging across zero walls disagree");
    if (k.by_m_sigma != k.by_normal_fan) throw InconsistencyError("gluing by m_sigma and the normal fan disagree");
    const ConeSet& a = k.by_m_sigma;

    std::set<std::size_t> used;
    for (const auto& cone : a) used.insert(cone.begin(), cone.end());
    SigmaD out;
    out.ray_origin.assign(used.begin(), used.end());
    std::map<std::size_t, std::size_t> new_index;
    std::vector<LatticeVector> rays;
    for (auto r : out.ray_origin) {
        new_index[r] = rays.size();
        rays.push_back(f.ray(r));
    }
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& cone : a) {
        std::vector<std::size_t> mapped;
        for (auto r : cone) mapped.push_back(new_index[r]);
        cones.push_back(mapped);
    }
    out.fan = Fan(rays, cones, f.ambient());
    return out;
}

TorusInvariantDivisor pushforward(const TorusInvariantDivisor& D, std::shared_ptr<const Fan> coarse) {
    if (!is_refinement(*D.fan, *coarse))
        throw PreconditionError("pushforward: the fan does not refine the target fan", "proper birational morphism of fans");
    LatticeVector c;
    for (const auto& r : coarse->rays()) {
        auto i = D.fan->find_ray(r);
        if (!i) throw PreconditionError("pushforward: a ray of the target fan is missing", "proper birational morphism of fans");
        c.push_back(D.coeffs[*i]);
    }
    return TorusInvariantDivisor(coarse, c);
}

TorusInvariantDivisor pullback(const TorusInvariantDivisor& D, std::shared_ptr<const Fan> fine) {
    if (!is_refinement(*fine, *D.fan))
        throw PreconditionError("pullback: the target fan does not refine the fan", "proper birational morphism of fans");
    SupportFunction s = support_function(D);
    LatticeVector c;
    for (const auto& r : fine->rays()) {
        auto where = D.fan->locate(to_rational(r));
        if (!where) throw InconsistencyError("pullback: ray outside the support");
        Rational v = -pairing(s.m[*where], r);
        c.push_back(v.get_num());
    }
    return TorusInvariantDivisor(fine, c);
}

std::vector<StratumRecord> stratify(const TorusInvariantDivisor& D) {
    SigmaD sd = sigma_d(D);
    const Fan& f = *D.fan;
    std::vector<StratumRecord> out;
    for (int k = 0; k <= static_cast<int>(f.ambient()); ++k)
        for (const auto& sigma : f.cones(k)) {
            StratumRecord r;
            r.sigma = sigma;
            r.sigma0 = smallest_containing_cone(sd.fan, f.generators(sigma));
            for (auto i : r.sigma0.rays) r.sigma0_rays.push_back(sd.ray_origin[i]);
            r.torus_dim = r.sigma0.dim - sigma.dim;
            out.push_back(r);
        }
    return out;
}

}  // namespace semiample
