#include "semiample/fan.hpp"

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

bool ConeGeometry::contains(const RationalVector& x) const {
    for (const auto& e : equations)
        if (pairing(x, e) != 0) return false;
    for (const auto& u : facet_normals)
        if (pairing(x, u) < 0) return false;
    return true;
}

bool ConeGeometry::contains(const LatticeVector& x) const { return contains(to_rational(x)); }

bool ConeGeometry::contains_in_relative_interior(const RationalVector& x) const {
    if (!contains(x)) return false;
    for (const auto& u : facet_normals)
        if (pairing(x, u) == 0) return false;
    return true;
}

bool ConeGeometry::is_pointed() const {
    std::vector<LatticeVector> all = equations;
    all.insert(all.end(), facet_normals.begin(), facet_normals.end());
    if (all.empty()) return dim == 0;
    return rank_of_vectors(all) == all[0].size();
}

ConeGeometry cone_geometry(const std::vector<LatticeVector>& gens, std::size_t d) {
    ConeGeometry g;
    std::vector<LatticeVector> nonzero;
    for (const auto& v : gens)
        if (!is_zero(v)) nonzero.push_back(v);
    if (nonzero.empty()) {
        for (std::size_t j = 0; j < d; ++j) {
            LatticeVector e(d);
            e[j] = 1;
            g.equations.push_back(e);
        }
        return g;
    }
    g.equations = integer_kernel(IntegerMatrix::from_rows(nonzero, d));
    const std::size_t k = d - g.equations.size();
    g.dim = static_cast<int>(k);
    std::map<std::vector<std::size_t>, LatticeVector> found;
    for_each_combination(gens.size(), k - 1, [&](const std::vector<std::size_t>& S) {
        RationalMatrix m(k - 1 + g.equations.size(), d);
        for (std::size_t r = 0; r + 1 < k; ++r)
            for (std::size_t j = 0; j < d; ++j) m(r, j) = gens[S[r]][j];
        for (std::size_t r = 0; r < g.equations.size(); ++r)
            for (std::size_t j = 0; j < d; ++j) m(k - 1 + r, j) = g.equations[r][j];
        auto ker = kernel(m);
        if (ker.size() != 1) return true;
        LatticeVector u = primitive_direction(ker[0]);
        bool pos = false, neg = false;
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Integer v = pairing(u, gens[i]);
            if (v > 0) pos = true;
            else if (v < 0) neg = true;
            else tight.push_back(i);
        }
        if (pos && neg) return true;
        if (!pos && !neg) return true;
        if (neg)
            for (auto& x : u) x = -x;
        found.emplace(tight, u);
        return true;
    });
    for (auto& [tight, u] : found) {
        g.facet_generators.push_back(tight);
        g.facet_normals.push_back(u);
    }
    return g;
}

std::vector<std::vector<std::size_t>> cone_faces(const ConeGeometry& g, std::size_t n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::set<std::vector<std::size_t>> seen{all};
    std::vector<std::vector<std::size_t>> queue{all};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const auto cur = queue[q];
        for (const auto& f : g.facet_generators) {
            auto meet = sorted_intersection(cur, f);
            if (seen.insert(meet).second) queue.push_back(meet);
        }
    }
    if (g.dim == 0) seen.insert({});
    return {seen.begin(), seen.end()};
}

Fan::Fan(std::vector<LatticeVector> rays, std::vector<std::vector<std::size_t>> max_cones, std::size_t ambient)
    : ambient_(ambient), rays_(std::move(rays)) {
    for (std::size_t i = 0; i < rays_.size(); ++i)
        if (rays_[i].size() != ambient_)
            throw ValidationError("rays[" + std::to_string(i) + "] has length " + std::to_string(rays_[i].size()) +
                                  ", expected " + std::to_string(ambient_));
    if (max_cones.empty()) throw ValidationError("max_cones is empty");
    std::set<std::vector<std::size_t>> unique;
    for (std::size_t c = 0; c < max_cones.size(); ++c) {
        auto cone = max_cones[c];
        for (auto i : cone)
            if (i >= rays_.size())
                throw ValidationError("max_cones[" + std::to_string(c) + "] references missing ray " + std::to_string(i));
        std::sort(cone.begin(), cone.end());
        if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            throw ValidationError("max_cones[" + std::to_string(c) + "] repeats a ray");
        unique.insert(cone);
    }
    by_dim_.assign(ambient_ + 1, {});
    std::set<ConeRef> all;
    for (const auto& cone : unique) {
        std::vector<LatticeVector> gens;
        for (auto i : cone) gens.push_back(rays_[i]);
        ConeGeometry geo = cone_geometry(gens, ambient_);
        if (rank_of_vectors(gens) != cone.size()) simplicial_ = false;
        max_cones_.push_back({cone, geo.dim});
        for (const auto& face : cone_faces(geo, gens.size())) {
            ConeRef r;
            for (auto pos : face) r.rays.push_back(cone[pos]);
            std::vector<LatticeVector> fg;
            for (auto i : r.rays) fg.push_back(rays_[i]);
            r.dim = static_cast<int>(rank_of_vectors(fg));
            all.insert(r);
        }
        geometry_.push_back(std::move(geo));
    }
    for (const auto& c : all) by_dim_[c.dim].push_back(c);
    for (auto& v : by_dim_)
        std::sort(v.begin(), v.end(), [](const ConeRef& a, const ConeRef& b) { return a.rays < b.rays; });
}

std::optional<std::size_t> Fan::find_ray(const LatticeVector& v) const {
    for (std::size_t i = 0; i < rays_.size(); ++i)
        if (rays_[i] == v) return i;
    return std::nullopt;
}

const std::vector<ConeRef>& Fan::cones(int k) const {
    if (k < 0 || k > static_cast<int>(ambient_)) throw ValidationError("cones: dimension out of range");
    return by_dim_[k];
}

std::optional<ConeRef> Fan::find_cone(const std::vector<std::size_t>& rays) const {
    std::vector<std::size_t> r = rays;
    std::sort(r.begin(), r.end());
    for (const auto& level : by_dim_)
        for (const auto& c : level)
            if (c.rays == r) return c;
    return std::nullopt;
}

std::vector<LatticeVector> Fan::generators(const ConeRef& c) const {
    std::vector<LatticeVector> g;
    for (auto i : c.rays) g.push_back(rays_.at(i));
    return g;
}

std::vector<std::size_t> Fan::max_cones_containing(const ConeRef& c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < max_cones_.size(); ++i)
        if (is_subset(c.rays, max_cones_[i].rays)) out.push_back(i);
    return out;
}

std::optional<std::size_t> Fan::locate(const RationalVector& x) const {
    for (std::size_t i = 0; i < geometry_.size(); ++i)
        if (geometry_[i].contains(x)) return i;
    return std::nullopt;
}

namespace {

// Is sigma cap tau = cone(shared), a face of both? Decided by a separating functional.
bool compatible(const Fan& f, const ConeRef& a, const ConeRef& b) {
    auto shared = sorted_intersection(a.rays, b.rays);
    std::vector<LatticeVector> pos, neg, zero;
    for (auto i : a.rays)
        if (!std::binary_search(shared.begin(), shared.end(), i)) pos.push_back(f.ray(i));
    for (auto i : b.rays)
        if (!std::binary_search(shared.begin(), shared.end(), i)) neg.push_back(f.ray(i));
    for (auto i : shared) zero.push_back(f.ray(i));
    const std::size_t d = f.ambient();
    RationalMatrix A(pos.size() + neg.size(), d), E(zero.size(), d);
    RationalVector b1(pos.size() + neg.size(), Rational(1)), e(zero.size());
    for (std::size_t r = 0; r < pos.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) A(r, j) = pos[r][j];
    for (std::size_t r = 0; r < neg.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) A(pos.size() + r, j) = -neg[r][j];
    for (std::size_t r = 0; r < zero.size(); ++r)
        for (std::size_t j = 0; j < d; ++j) E(r, j) = zero[r][j];
    return find_feasible_point(A, b1, E, e).has_value();
}

}  // namespace

FanDiagnostics validate(const Fan& f) {
    FanDiagnostics out;
    auto fail = [&](std::string msg) {
        out.valid = false;
        out.violations.push_back(std::move(msg));
    };
    const std::size_t d = f.ambient();
    for (std::size_t i = 0; i < f.num_rays(); ++i) {
        if (is_zero(f.ray(i))) fail("ray " + std::to_string(i) + " is zero");
        else if (content(f.ray(i)) != 1) fail("ray " + std::to_string(i) + " is not primitive");
        for (std::size_t j = i + 1; j < f.num_rays(); ++j)
            if (f.ray(i) == f.ray(j)) fail("rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
    const auto& mc = f.max_cones();
    for (std::size_t c = 0; c < mc.size(); ++c) {
        const ConeGeometry& g = f.max_cone_geometry(c);
        if (!g.is_pointed()) fail("max cone " + std::to_string(c) + " is not strongly convex");
        // every listed ray must span a one-dimensional face
        for (std::size_t pos = 0; pos < mc[c].rays.size(); ++pos) {
            std::size_t tight_facets = 0;
            std::vector<std::size_t> meet;
            bool first = true;
            for (const auto& fg : g.facet_generators)
                if (std::binary_search(fg.begin(), fg.end(), pos)) {
                    meet = first ? fg : sorted_intersection(meet, fg);
                    first = false;
                    ++tight_facets;
                }
            bool extreme = g.dim == 1 ? mc[c].rays.size() == 1 : (!first && meet == std::vector<std::size_t>{pos});
            if (!extreme)
                fail("ray " + std::to_string(mc[c].rays[pos]) + " is not an extreme ray of max cone " + std::to_string(c));
        }
        for (std::size_t r = 0; r < f.num_rays(); ++r)
            if (!std::binary_search(mc[c].rays.begin(), mc[c].rays.end(), r) && g.contains(f.ray(r)))
                fail("ray " + std::to_string(r) + " lies in max cone " + std::to_string(c) + " without being one of its rays");
    }
    for (std::size_t a = 0; a < mc.size(); ++a)
        for (std::size_t b = a + 1; b < mc.size(); ++b) {
            if (is_subset(mc[a].rays, mc[b].rays) || is_subset(mc[b].rays, mc[a].rays)) {
                fail("max cones " + std::to_string(a) + " and " + std::to_string(b) + " are nested");
                continue;
            }
            if (!compatible(f, mc[a], mc[b]))
                fail("max cones " + std::to_string(a) + " and " + std::to_string(b) + " do not meet in a common face");
        }
    out.simplicial = f.is_simplicial();

    // completeness: pure, every wall in exactly two max cones, connected, orthant directions covered
    bool complete = out.valid;
    for (const auto& c : mc)
        if (c.dim != static_cast<int>(d)) complete = false;
    if (complete && d > 0) {
        for (const auto& w : f.cones(static_cast<int>(d) - 1))
            if (f.max_cones_containing(w).size() != 2) complete = false;
        std::vector<std::size_t> parent(mc.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (const auto& w : f.cones(static_cast<int>(d) - 1)) {
            auto m = f.max_cones_containing(w);
            for (std::size_t i = 1; i < m.size(); ++i) parent[find(m[i])] = find(m[0]);
        }
        for (std::size_t i = 0; i < mc.size(); ++i)
            if (find(i) != find(0)) complete = false;
        if (complete && d <= 10) {
            for (std::size_t mask = 0; mask < (std::size_t{1} << d) && complete; ++mask) {
                RationalVector x(d);
                for (std::size_t j = 0; j < d; ++j) x[j] = (mask >> j) & 1 ? Rational(1) : Rational(-1);
                if (!f.locate(x)) complete = false;
            }
        }
    }
    out.complete = complete;
    if (!complete) out.violations.push_back("fan is not complete");
    return out;
}

void require_complete(const Fan& f, bool simplicial) {
    FanDiagnostics d = validate(f);
    if (!d.valid || !d.complete)
        throw PreconditionError("fan is not a complete fan" +
                                    (d.violations.empty() ? std::string() : ": " + d.violations.front()),
                                "complete toric variety");
    if (simplicial && !d.simplicial)
        throw PreconditionError("fan is not simplicial", "complete simplicial toric variety");
}

bool is_refinement(const Fan& f, const Fan& g) {
    if (f.ambient() != g.ambient()) return false;
    const std::size_t d = f.ambient();
    // containment of every max cone of f in a max cone of g
    std::vector<std::vector<std::size_t>> inside(g.max_cones().size());
    for (std::size_t a = 0; a < f.max_cones().size(); ++a) {
        auto gens = f.generators(f.max_cones()[a]);
        bool placed = false;
        for (std::size_t b = 0; b < g.max_cones().size(); ++b) {
            const auto& geo = g.max_cone_geometry(b);
            if (std::all_of(gens.begin(), gens.end(), [&](const LatticeVector& v) { return geo.contains(v); })) {
                placed = true;
                if (f.max_cones()[a].dim == g.max_cones()[b].dim) inside[b].push_back(a);
            }
        }
        if (!placed) return false;
    }
    // each max cone of g is covered by the full-dimensional pieces of f inside it:
    // every wall of those pieces is either on the boundary of the g-cone or shared by two pieces
    for (std::size_t b = 0; b < g.max_cones().size(); ++b) {
        if (inside[b].empty()) return false;
        const auto& geo = g.max_cone_geometry(b);
        const int k = g.max_cones()[b].dim;
        if (k == 0) continue;
        std::map<std::vector<std::size_t>, int> wall_count;
        for (auto a : inside[b])
            for (const auto& w : f.cones(k - 1))
                if (is_subset(w.rays, f.max_cones()[a].rays)) ++wall_count[w.rays];
        for (const auto& [w, count] : wall_count) {
            RationalVector x(d);
            for (auto i : w)
                for (std::size_t j = 0; j < d; ++j) x[j] += f.ray(i)[j];
            bool boundary = !geo.contains_in_relative_interior(x);
            if (boundary ? count != 1 : count != 2) return false;
        }
    }
    return true;
}

bool same_cones(const Fan& a, const Fan& b) {
    if (a.ambient() != b.ambient()) return false;
    auto canon = [](const Fan& f) {
        std::set<std::vector<LatticeVector>> s;
        for (const auto& c : f.max_cones()) {
            auto g = f.generators(c);
            std::sort(g.begin(), g.end());
            s.insert(g);
        }
        return s;
    };
    return canon(a) == canon(b);
}

ConeRef smallest_containing_cone(const Fan& coarse, const std::vector<LatticeVector>& gens) {
    const std::size_t d = coarse.ambient();
    RationalVector p(d);
    for (const auto& v : gens)
        for (std::size_t j = 0; j < d; ++j) p[j] += v[j];
    if (std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0; })) {
        if (std::all_of(gens.begin(), gens.end(), [](const LatticeVector& v) { return is_zero(v); }))
            return ConeRef{{}, 0};
        throw InconsistencyError("cone is not strongly convex");
    }
    auto where = coarse.locate(p);
    if (!where) throw InconsistencyError("no cone of the coarser fan contains the given cone");
    const ConeRef& sigma = coarse.max_cones()[*where];
    const ConeGeometry& geo = coarse.max_cone_geometry(*where);
    std::vector<std::size_t> pos(sigma.rays.size());
    std::iota(pos.begin(), pos.end(), 0);
    for (std::size_t f = 0; f < geo.facet_normals.size(); ++f)
        if (pairing(p, geo.facet_normals[f]) == 0) pos = sorted_intersection(pos, geo.facet_generators[f]);
    std::vector<std::size_t> rays;
    for (auto i : pos) rays.push_back(sigma.rays[i]);
    auto c = coarse.find_cone(rays);
    if (!c) throw InconsistencyError("minimal face is not a cone of the fan");
    ConeGeometry cg = cone_geometry(coarse.generators(*c), d);
    for (const auto& v : gens)
        if (!cg.contains(v)) throw InconsistencyError("cone is not contained in a single cone of the coarser fan");
    return *c;
}

ConeRef smallest_containing_cone(const Fan& coarse, const Fan& fine, const ConeRef& c) {
    return smallest_containing_cone(coarse, fine.generators(c));
}

StarFan star_fan(const Fan& f, const ConeRef& sigma) {
    auto found = f.find_cone(sigma.rays);
    if (!found || found->dim != sigma.dim) throw ValidationError("star_fan: cone is not in the fan");
    const std::size_t d = f.ambient();
    QuotientLattice q(f.generators(sigma), d);
    std::vector<ConeRef> ray_cones;
    std::vector<LatticeVector> rays;
    if (sigma.dim < static_cast<int>(d)) {
        for (const auto& g : f.cones(sigma.dim + 1)) {
            if (!is_subset(sigma.rays, g.rays)) continue;
            LatticeVector image;
            for (auto i : g.rays) {
                if (std::binary_search(sigma.rays.begin(), sigma.rays.end(), i)) continue;
                LatticeVector v = primitivize(q.project(f.ray(i)));
                if (!image.empty() && image != v) throw InconsistencyError("star_fan: images of one cone disagree");
                image = v;
            }
            ray_cones.push_back(g);
            rays.push_back(image);
        }
    }
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& m : f.max_cones()) {
        if (!is_subset(sigma.rays, m.rays)) continue;
        std::vector<std::size_t> c;
        for (std::size_t r = 0; r < ray_cones.size(); ++r)
            if (is_subset(ray_cones[r].rays, m.rays)) c.push_back(r);
        cones.push_back(c);
    }
    return StarFan{Fan(rays, cones, q.rank()), q, *found, ray_cones};
}

}  // namespace semiample
