#pragma once

#include "semiample/fan.hpp"
#include "semiample/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace semiample {

// a_k(gamma): cones of the fine fan of dimension k whose smallest containing cone in
// the coarse fan is gamma. Only k = 1, 2 are kept. Cones with a zero count are absent.
struct SubdivisionCounts {
    std::map<ConeRef, std::size_t> a1, a2;
    bool has_a2 = true;  // false when only the rays of the fine fan were known
    std::size_t a(int k, const ConeRef& gamma) const;
};

// Throws PreconditionError unless fine refines coarse.
SubdivisionCounts subdivision_counts(const Fan& fine, const Fan& coarse);
// a_1 only, from the list of rays of a fan refining coarse that is not built.
SubdivisionCounts ray_counts(const std::vector<LatticeVector>& rays, const Fan& coarse);

// The cone of normal_fan(p) attached to a face, and back.
ConeRef cone_of_face(const LatticePolytope& p, const Face& f);
Face face_of_cone(const LatticePolytope& p, const ConeRef& gamma);

// Closed forms of the face contributions for a face of dimension d - p (first value,
// e^{d-2-p,1}), d - p - 1 or d - p - 2 (second value, e^{d-3-p,0}).
struct FaceEValues {
    std::optional<Integer> e_middle;  // e^{d-2-p,1}
    std::optional<Integer> e_bottom;  // e^{d-3-p,0}
};
// Throws ValidationError when dim face is not one of d-p, d-p-1, d-p-2.
FaceEValues e_face_values(const LatticePolytope& face, int d, int p);

struct HP2Term {
    ConeRef gamma;
    Face face;
    Integer coefficient;  // the a-count combination
    Integer value;        // its product with the lattice-point factor
};
struct HP2Result {
    Integer value;
    std::vector<HP2Term> terms;  // nonzero contributions only
};

// h^{d-1-p,2} of the hypersurface with polytope p_delta, for p > 2 and p != d - 3.
// counts refer to normal_fan(p_delta).
HP2Result h_p2(const LatticePolytope& p_delta, const SubdivisionCounts& counts, int p);
HP2Result h_p2(const LatticePolytope& p_delta, const Fan& fine, int p);

// Batyrev's h^{2,1} for a reflexive 4-polytope.
Integer h21_batyrev(const LatticePolytope& delta);

enum class PullingOrder { lexicographic, reverse_lexicographic };
// Simplicial fan on all nonzero lattice points of a reflexive polytope, from a pulling
// triangulation of each facet coned over the origin. Refines normal_fan(dual).
Fan triangulation_helper(const LatticePolytope& dual, PullingOrder order = PullingOrder::lexicographic);

// Counts for normal_fan(P) refined by every nonzero lattice point of the dual, P reflexive.
// When no face of dimension d - p - 2 has interior points the a_2 terms vanish, so the
// rays suffice and no triangulation is built.
struct ReflexiveCounts {
    SubdivisionCounts counts;
    bool triangulated = false;
};
ReflexiveCounts reflexive_counts(const LatticePolytope& P, int p, PullingOrder order = PullingOrder::lexicographic);

struct HodgeValue {
    std::string name;
    Integer value;
    std::string provenance;
};
struct HodgeReport {
    std::vector<HodgeValue> values;
    const HodgeValue& get(const std::string& name) const;
};

struct MirrorWitness {
    std::vector<LatticeVector> face;              // vertices of a face of the dual polytope
    std::vector<LatticeVector> double_interior;   // relative interior points of twice the face
    std::vector<LatticeVector> dual_face;         // vertices of its dual face in the polytope
    std::vector<LatticeVector> dual_face_interior;
};

struct MirrorReport {
    HodgeReport primal, dual;               // hypersurfaces with polytope delta and delta*
    std::vector<LatticeVector> dual_points; // lattice points of delta*, sorted
    bool dual_points_are_vertices_and_origin = false;
    Integer simplified_dual_sum;            // sum over faces of l*(face) l*(2 dual face)
    bool mpcp_identity = false;             // a_1 = l*(dual face) on every cone used
    std::vector<MirrorWitness> witnesses;
    bool differ() const;
};

// h^{3,2} on both sides of a reflexive 7-polytope, with witnesses. p = 3.
MirrorReport mirror_check(const LatticePolytope& delta);

}  // namespace semiample
