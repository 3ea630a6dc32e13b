#include "semiample/hodge.hpp"

#include "semiample/combinatorics.hpp"
#include "semiample/errors.hpp"
#include "semiample/lattice.hpp"

#include <algorithm>
#include <set>

namespace semiample {

namespace {

const char* kHp2Anchor = "h^{d-1-p,2} lattice-point formula, valid for p > 2 and p != d - 3";
const char* kBatyrevAnchor = "Batyrev h^{2,1} formula for reflexive 4-polytopes";
const char* kMirrorAnchor = "h^{3,2} mirror comparison for a reflexive 7-polytope";

Integer lstar(const LatticePolytope& p) { return Integer(static_cast<unsigned long>(count_interior_points(p))); }

Integer sum_facet_lstar(const LatticePolytope& p) {
    Integer s = 0;
    if (p.dim() <= 0) return s;
    for (const auto& f : faces(p, p.dim() - 1)) s += lstar(face_polytope(p, f));
    return s;
}

std::vector<LatticeVector> lattice_vertices(const LatticePolytope& p, const Face& f) {
    std::vector<LatticeVector> out;
    for (auto v : f.vertices) out.push_back(to_lattice(p.vertices()[v]));
    return out;
}

void require_full_dimensional(const LatticePolytope& p) {
    if (p.is_empty() || !p.is_full_dimensional()) throw PreconditionError("polytope must be full dimensional", kHp2Anchor);
}

}  // namespace

std::size_t SubdivisionCounts::a(int k, const ConeRef& gamma) const {
    if (k != 1 && k != 2) throw ValidationError("only a_1 and a_2 are tracked");
    if (k == 2 && !has_a2) throw PreconditionError("a_2 requested but only the rays of the subdivision are known", kHp2Anchor);
    const auto& m = k == 1 ? a1 : a2;
    auto it = m.find(gamma);
    return it == m.end() ? 0 : it->second;
}

SubdivisionCounts subdivision_counts(const Fan& fine, const Fan& coarse) {
    if (!is_refinement(fine, coarse)) throw PreconditionError("fan does not refine the coarse fan", kHp2Anchor);
    SubdivisionCounts out;
    for (int k : {1, 2}) {
        if (k > static_cast<int>(fine.ambient())) break;
        auto& m = k == 1 ? out.a1 : out.a2;
        for (const auto& c : fine.cones(k)) ++m[smallest_containing_cone(coarse, fine, c)];
    }
    return out;
}

SubdivisionCounts ray_counts(const std::vector<LatticeVector>& rays, const Fan& coarse) {
    SubdivisionCounts out;
    out.has_a2 = false;
    for (const auto& r : rays) ++out.a1[smallest_containing_cone(coarse, {r})];
    return out;
}

ConeRef cone_of_face(const LatticePolytope& p, const Face& f) {
    ConeRef c;
    for (std::size_t i = 0; i < p.facets().size(); ++i)
        if (is_subset(f.vertices, p.facets()[i].vertices)) c.rays.push_back(i);
    c.dim = p.dim() - f.dim;
    return c;
}

Face face_of_cone(const LatticePolytope& p, const ConeRef& gamma) {
    Face f;
    for (std::size_t v = 0; v < p.vertices().size(); ++v) f.vertices.push_back(v);
    for (auto i : gamma.rays) f.vertices = sorted_intersection(f.vertices, p.facets().at(i).vertices);
    f.dim = p.dim() - gamma.dim;
    return f;
}

FaceEValues e_face_values(const LatticePolytope& face, int d, int p) {
    const int k = face.dim();
    auto sign = [](int e) { return e % 2 == 0 ? Integer(1) : Integer(-1); };
    FaceEValues out;
    if (k == d - p) {
        out.e_middle = sign(d - p - 1) *
                       (lstar(dilate(face, 2)) - Integer(d - p + 1) * lstar(face) - sum_facet_lstar(face));
    } else if (k == d - p - 1) {
        out.e_bottom = sign(d - p - 2) * sum_facet_lstar(face);
    } else if (k == d - p - 2) {
        out.e_bottom = sign(d - p - 3) * lstar(face);
    } else {
        throw ValidationError("face dimension does not match any closed form for this p");
    }
    return out;
}

HP2Result h_p2(const LatticePolytope& P, const SubdivisionCounts& counts, int p) {
    require_full_dimensional(P);
    const int d = P.dim();
    if (p <= 2 || p == d - 3) throw PreconditionError("h_p2 needs p > 2 and p != d - 3", kHp2Anchor);
    HP2Result out;
    out.value = 0;
    if (p > d) return out;
    const auto all = all_faces(P);
    for (const auto& face : all) {
        if (face.dim != d - p) continue;
        ConeRef gamma = cone_of_face(P, face);
        Integer a1 = Integer(static_cast<unsigned long>(counts.a(1, gamma)));
        if (a1 == 0) continue;
        LatticePolytope G = face_polytope(P, face);
        Integer bracket = lstar(dilate(G, 2)) - Integer(d - p + 1) * lstar(G) - sum_facet_lstar(G);
        if (bracket == 0) continue;
        out.terms.push_back({gamma, face, a1, a1 * bracket});
        out.value += a1 * bracket;
    }
    if (p + 2 <= d) {
        for (const auto& face : all) {
            if (face.dim != d - p - 2) continue;
            Integer l = lstar(face_polytope(P, face));
            if (l == 0) continue;
            ConeRef gamma = cone_of_face(P, face);
            Integer coef = Integer(static_cast<unsigned long>(counts.a(2, gamma))) -
                           Integer(p + 1) * Integer(static_cast<unsigned long>(counts.a(1, gamma)));
            for (const auto& up : all) {
                if (up.dim != face.dim + 1 || !is_subset(face.vertices, up.vertices)) continue;
                coef -= Integer(static_cast<unsigned long>(counts.a(1, cone_of_face(P, up))));
            }
            if (coef == 0) continue;
            out.terms.push_back({gamma, face, coef, coef * l});
            out.value += coef * l;
        }
    }
    if (out.value < 0) throw InconsistencyError("h_p2 evaluated to a negative number");
    return out;
}

HP2Result h_p2(const LatticePolytope& P, const Fan& fine, int p) {
    require_full_dimensional(P);
    return h_p2(P, subdivision_counts(fine, normal_fan(P)), p);
}

Integer h21_batyrev(const LatticePolytope& delta) {
    if (delta.ambient() != 4 || !delta.is_full_dimensional())
        throw PreconditionError("Batyrev's formula needs a 4-dimensional polytope", kBatyrevAnchor);
    if (!is_reflexive(delta)) throw PreconditionError("Batyrev's formula needs a reflexive polytope", kBatyrevAnchor);
    LatticePolytope dual = dual_polytope(delta);
    Integer h = Integer(static_cast<unsigned long>(count_lattice_points(delta))) - 5;
    for (const auto& f : faces(delta, 3)) h -= lstar(face_polytope(delta, f));
    for (const auto& f : faces(delta, 2)) {
        Integer l = lstar(face_polytope(delta, f));
        if (l == 0) continue;
        h += l * lstar(face_polytope(dual, dual_face(delta, f)));
    }
    return h;
}

Fan triangulation_helper(const LatticePolytope& dual, PullingOrder order) {
    if (!is_reflexive(dual)) throw PreconditionError("triangulation helper needs a reflexive polytope", kMirrorAnchor);
    const std::size_t d = dual.ambient();
    std::vector<LatticeVector> rays;
    for (auto& x : lattice_points(dual))
        if (!is_zero(x)) rays.push_back(x);
    std::sort(rays.begin(), rays.end());
    if (order == PullingOrder::reverse_lexicographic) std::reverse(rays.begin(), rays.end());
    std::set<std::vector<std::size_t>> cones;
    for (const auto& facet : dual.facets()) {
        std::vector<std::size_t> local;
        std::vector<LatticeVector> pts;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (pairing(to_rational(rays[i]), facet.normal) == facet.rhs) {
                local.push_back(i);
                pts.push_back(rays[i]);
            }
        std::vector<std::size_t> pull(pts.size());
        for (std::size_t i = 0; i < pull.size(); ++i) pull[i] = i;
        // facets sit at lattice distance 1, so the cones over the cells tile the cone over
        // the facet exactly when their determinants add up to its normalized volume
        Integer dets = 0;
        for (const auto& simplex : pulling_triangulation(pts, pull)) {
            std::vector<std::size_t> c;
            for (auto i : simplex) c.push_back(local[i]);
            std::sort(c.begin(), c.end());
            std::vector<LatticeVector> gens;
            for (auto i : c) gens.push_back(rays[i]);
            Integer det = determinant(IntegerMatrix::from_rows(gens, d));
            if (det == 0) throw InconsistencyError("triangulation helper produced a degenerate cone");
            dets += abs(det);
            cones.insert(c);
        }
        LatticePolytope fp = face_polytope(dual, Face{facet.vertices, dual.dim() - 1});
        if (Rational(dets) != normalized_volume(fp))
            throw InconsistencyError("triangulation helper: cells do not tile a facet");
    }
    Fan out(rays, std::vector<std::vector<std::size_t>>(cones.begin(), cones.end()), d);
    std::vector<bool> used(rays.size(), false);
    for (const auto& c : out.max_cones())
        for (auto i : c.rays) used[i] = true;
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw InconsistencyError("a lattice point of the polytope is not a ray of its triangulation");
    return out;
}

ReflexiveCounts reflexive_counts(const LatticePolytope& P, int p, PullingOrder order) {
    require_full_dimensional(P);
    if (!is_reflexive(P)) throw PreconditionError("polytope is not reflexive", kHp2Anchor);
    const int d = P.dim();
    LatticePolytope Q = dual_polytope(P);
    ReflexiveCounts out;
    if (d - p - 2 >= 0)
        for (const auto& f : faces(P, d - p - 2))
            if (lstar(face_polytope(P, f)) != 0) out.triangulated = true;
    Fan coarse = normal_fan(P);
    if (out.triangulated) {
        out.counts = subdivision_counts(triangulation_helper(Q, order), coarse);
    } else {
        std::vector<LatticeVector> rays;
        for (auto& x : lattice_points(Q))
            if (!is_zero(x)) rays.push_back(x);
        out.counts = ray_counts(rays, coarse);
    }
    return out;
}

const HodgeValue& HodgeReport::get(const std::string& name) const {
    for (const auto& v : values)
        if (v.name == name) return v;
    throw ValidationError("no Hodge value named " + name);
}

bool MirrorReport::differ() const { return primal.values.at(0).value != dual.values.at(0).value; }

namespace {

// One side of the comparison: the hypersurface with polytope P, whose subdivision uses
// the lattice points of Q = P* as rays.
HodgeReport mirror_side(const LatticePolytope& P, const LatticePolytope& Q, int p, bool& mpcp_ok) {
    const int d = P.dim();
    ReflexiveCounts rc = reflexive_counts(P, p);
    const SubdivisionCounts& counts = rc.counts;
    std::string how = rc.triangulated ? "pulling triangulation of the dual polytope" : "ray counts; no a_2 term survives";
    // a_1(gamma) against interior points of the dual face, on the cones the formula reads
    for (int k : {d - p, d - p - 1, d - p - 2}) {
        if (k < 0) continue;
        for (const auto& f : faces(P, k)) {
            ConeRef gamma = cone_of_face(P, f);
            Face df = dual_face(P, f);
            if (Integer(static_cast<unsigned long>(counts.a(1, gamma))) != lstar(face_polytope(Q, df))) mpcp_ok = false;
        }
    }
    HP2Result r = h_p2(P, counts, p);
    HodgeReport rep;
    rep.values.push_back({"h^{" + std::to_string(d - 1 - p) + ",2}", r.value, "h_p2 with p = " + std::to_string(p) + ", " + how});
    return rep;
}

}  // namespace

MirrorReport mirror_check(const LatticePolytope& delta) {
    if (delta.is_empty() || !delta.is_full_dimensional() || delta.dim() < 7)
        throw PreconditionError("mirror check needs a full-dimensional polytope of dimension at least 7", kMirrorAnchor);
    if (!is_reflexive(delta)) throw PreconditionError("mirror check needs a reflexive polytope", kMirrorAnchor);
    const int p = 3;
    LatticePolytope dual = dual_polytope(delta);
    // dual_polytope sorts vertices, so the re-dualized polytope has the same vertex order
    MirrorReport out;
    out.dual_points = lattice_points(dual);
    std::sort(out.dual_points.begin(), out.dual_points.end());
    std::size_t vertices_and_origin = dual.vertices().size() + 1;
    out.dual_points_are_vertices_and_origin = out.dual_points.size() == vertices_and_origin;
    out.mpcp_identity = true;
    out.primal = mirror_side(delta, dual, p, out.mpcp_identity);
    out.dual = mirror_side(dual, delta, p, out.mpcp_identity);

    out.simplified_dual_sum = 0;
    const int d = delta.dim();
    for (const auto& f : faces(dual, d - p)) {
        LatticePolytope G = face_polytope(dual, f);
        Face df = dual_face(dual, f);
        LatticePolytope H = face_polytope(delta, df);
        Integer a = lstar(H), b = lstar(dilate(G, 2));
        out.simplified_dual_sum += a * b;
        if (a == 0 || b == 0) continue;
        MirrorWitness w;
        w.face = lattice_vertices(dual, f);
        w.double_interior = relative_interior_points(dilate(G, 2));
        w.dual_face = lattice_vertices(delta, df);
        w.dual_face_interior = relative_interior_points(H);
        std::sort(w.double_interior.begin(), w.double_interior.end());
        std::sort(w.dual_face_interior.begin(), w.dual_face_interior.end());
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

}  // namespace semiample
