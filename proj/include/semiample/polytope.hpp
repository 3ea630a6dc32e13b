#pragma once

#include "semiample/lattice.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace semiample {

class Fan;

// <m, normal> >= rhs
struct Inequality {
    LatticeVector normal;
    Integer rhs;
};

struct HPolytope {
    std::size_t ambient = 0;
    std::vector<Inequality> inequalities;
};

// <m, normal> = value on the affine span
struct Equation {
    LatticeVector normal;
    Rational value;
};

// A facet as an inequality valid on the polytope, tight exactly on `vertices`.
// `normal` is primitive and lies in the direction space of the affine span.
struct Facet {
    LatticeVector normal;
    Rational rhs;
    std::vector<std::size_t> vertices;
};

// A face, given by indices into the vertex list of the polytope it came from.
struct Face {
    std::vector<std::size_t> vertices;
    int dim = -1;
    friend bool operator==(const Face&, const Face&) = default;
};

class LatticePolytope {
public:
    LatticePolytope() = default;
    static LatticePolytope empty(std::size_t ambient);
    // Convex hull of finitely many rational points.
    static LatticePolytope from_points(std::vector<RationalVector> points, std::size_t ambient);
    static LatticePolytope from_points(const std::vector<LatticeVector>& points, std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    bool is_empty() const { return vertices_.empty(); }
    int dim() const { return dim_; }
    bool is_full_dimensional() const { return dim_ == static_cast<int>(ambient_); }
    // Vertices, sorted lexicographically.
    const std::vector<RationalVector>& vertices() const { return vertices_; }
    // Facets, sorted by normal.
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Equation>& equations() const { return equations_; }
    // Basis of the lattice of integer vectors parallel to the affine span.
    const std::vector<LatticeVector>& direction_basis() const { return direction_; }
    // All vertices integral.
    bool is_lattice() const { return lattice_; }

    bool contains(const RationalVector& x) const;
    bool contains_in_relative_interior(const RationalVector& x) const;

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
        return a.ambient_ == b.ambient_ && a.vertices_ == b.vertices_;
    }

private:
    std::size_t ambient_ = 0;
    int dim_ = -1;
    std::vector<RationalVector> vertices_;
    std::vector<Facet> facets_;
    std::vector<Equation> equations_;
    std::vector<LatticeVector> direction_;
    bool lattice_ = true;
};

// Throws PreconditionError("not a polytope") when the region is unbounded and returns
// the empty polytope when it is infeasible.
LatticePolytope vertices_from_inequalities(const HPolytope& h);

std::vector<LatticeVector> lattice_points(const LatticePolytope& p);
std::vector<LatticeVector> relative_interior_points(const LatticePolytope& p);
std::size_t count_lattice_points(const LatticePolytope& p);
std::size_t count_interior_points(const LatticePolytope& p);
// Visits lattice points (or relative interior ones) in an unspecified order.
void for_each_lattice_point(const LatticePolytope& p, bool interior_only,
                            const std::function<void(const LatticeVector&)>& visit);

// Every face, the polytope itself included; ordered by dimension, then vertex set.
std::vector<Face> all_faces(const LatticePolytope& p);
std::vector<Face> faces(const LatticePolytope& p, int k);
LatticePolytope face_polytope(const LatticePolytope& p, const Face& f);

// k! vol_k against the lattice of the affine span.
Rational normalized_volume(const LatticePolytope& p);
LatticePolytope dilate(const LatticePolytope& p, const Integer& k);

bool contains_origin_in_interior(const LatticePolytope& p);
bool is_reflexive(const LatticePolytope& p);
// {y : <x,y> >= -1 for x in p}; vertices sorted lexicographically.
LatticePolytope dual_polytope(const LatticePolytope& p);
// The face {y in dual : <x,y> = -1 for x in f}, indexed into dual_polytope(p).
Face dual_face(const LatticePolytope& p, const Face& f);

// Rays are the facet normals in facet order; one maximal cone per vertex.
Fan normal_fan(const LatticePolytope& p);

// Pulling refinement of the trivial subdivision of conv(points): every point is pulled
// once, in the given order. Returns maximal simplices as index sets into `points`.
std::vector<std::vector<std::size_t>> pulling_triangulation(const std::vector<LatticeVector>& points,
                                                            const std::vector<std::size_t>& order);

}  // namespace semiample
