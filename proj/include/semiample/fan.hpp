#pragma once

#include "semiample/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semiample {

// A cone of a fan, by sorted ray indices.
struct ConeRef {
    std::vector<std::size_t> rays;
    int dim = 0;
    friend bool operator==(const ConeRef&, const ConeRef&) = default;
    friend auto operator<=>(const ConeRef& a, const ConeRef& b) {
        if (a.dim != b.dim) return a.dim <=> b.dim;
        return a.rays <=> b.rays;
    }
};

// H-description of the cone generated by a list of vectors. Facet ray sets are
// positions in that list.
struct ConeGeometry {
    int dim = 0;
    std::vector<LatticeVector> equations;         // basis of the orthogonal lattice of the span
    std::vector<LatticeVector> facet_normals;     // primitive, inside the span, nonnegative on the cone
    std::vector<std::vector<std::size_t>> facet_generators;

    bool contains(const RationalVector& x) const;
    bool contains(const LatticeVector& x) const;
    bool contains_in_relative_interior(const RationalVector& x) const;
    bool is_pointed() const;
};
ConeGeometry cone_geometry(const std::vector<LatticeVector>& generators, std::size_t ambient);
// All faces as subsets of generator positions, the zero face (empty set) included.
std::vector<std::vector<std::size_t>> cone_faces(const ConeGeometry& g, std::size_t generators);

class Fan {
public:
    Fan() = default;
    // Checks shapes and indices only; call validate() for the geometric conditions.
    Fan(std::vector<LatticeVector> rays, std::vector<std::vector<std::size_t>> max_cones, std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<LatticeVector>& rays() const { return rays_; }
    const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
    const std::vector<ConeRef>& max_cones() const { return max_cones_; }
    std::optional<std::size_t> find_ray(const LatticeVector& v) const;

    // All cones of dimension k, sorted by ray set.
    const std::vector<ConeRef>& cones(int k) const;
    std::optional<ConeRef> find_cone(const std::vector<std::size_t>& rays) const;
    bool is_simplicial() const { return simplicial_; }

    std::vector<LatticeVector> generators(const ConeRef& c) const;
    const ConeGeometry& max_cone_geometry(std::size_t i) const { return geometry_.at(i); }
    // Maximal cones (by index) that contain the cone c as a face.
    std::vector<std::size_t> max_cones_containing(const ConeRef& c) const;
    // Index of some maximal cone containing the point, or none.
    std::optional<std::size_t> locate(const RationalVector& x) const;

private:
    std::size_t ambient_ = 0;
    std::vector<LatticeVector> rays_;
    std::vector<ConeRef> max_cones_;
    std::vector<ConeGeometry> geometry_;
    std::vector<std::vector<ConeRef>> by_dim_;
    bool simplicial_ = true;
};

struct FanDiagnostics {
    bool valid = true;  // a fan: rays fine, cones pointed and pairwise compatible
    bool complete = false;
    bool simplicial = false;
    std::vector<std::string> violations;
};
FanDiagnostics validate(const Fan& f);
// Throws PreconditionError unless f is a complete fan (simplicial too, if asked).
void require_complete(const Fan& f, bool simplicial = false);

// Every cone of f lies in a cone of g and the supports agree.
bool is_refinement(const Fan& f, const Fan& g);
// Same cones, compared by ray vectors (ray order may differ).
bool same_cones(const Fan& a, const Fan& b);

ConeRef smallest_containing_cone(const Fan& coarse, const std::vector<LatticeVector>& generators);
ConeRef smallest_containing_cone(const Fan& coarse, const Fan& fine, const ConeRef& c);

// The fan of the orbit closure V(sigma) in N / (span(sigma) intersect N).
struct StarFan {
    Fan fan;
    QuotientLattice quotient;
    ConeRef sigma;
    std::vector<ConeRef> ray_cones;  // cone of dimension dim(sigma)+1 behind each star ray
};
StarFan star_fan(const Fan& f, const ConeRef& sigma);

}  // namespace semiample
