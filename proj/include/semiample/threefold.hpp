#pragma once

#include "semiample/coxring.hpp"
#include "semiample/fan.hpp"
#include "semiample/residue.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace semiample {

// A ray of the fine fan in the relative interior of a 2-cone of the coarse fan, with
// its two flanking 2-cones cone(left, ray) and cone(ray, right) of the fine fan.
struct InteriorRay {
    std::size_t ray = 0;
    std::size_t left = 0, right = 0;
    Integer mult_left, mult_right;  // mult(sigma'), mult(sigma'')
    Integer mult_span;              // mult(sigma' + sigma'') = mult of cone(left, right)
};

// A 2-cone sigma of the coarse fan with the fine rays inside it. Fine ray indices
// throughout; the chain boundary[0], interior..., boundary[1] is ordered by angle.
struct TwoConeChart {
    ConeRef sigma;                     // in the coarse fan
    std::size_t boundary[2] = {0, 0};  // fine indices of the coarse rays of sigma
    std::vector<InteriorRay> interior;
    std::size_t n() const { return interior.size(); }
};

// Index of each coarse ray among the fine rays; ValidationError if one is missing.
std::vector<std::size_t> coarse_ray_positions(const Fan& fine, const Fan& coarse);

// Throws PreconditionError unless d = 4 and fine refines coarse. Also checks
// mult(s'+s'') e_i = mult(s') e'' + mult(s'') e' for every interior ray.
std::vector<TwoConeChart> two_cone_charts(const Fan& fine, const Fan& coarse);

// The hypersurface Y cap V(sigma) as a polynomial on the star fan of sigma in the coarse fan.
struct FacePolynomial {
    StarFan star;
    std::shared_ptr<const ClassGroup> group;
    GradedPolynomial poly;
    LatticeVector origin;                 // lattice point of the face sent to 0
    std::vector<LatticeVector> face_points;  // lattice points of the face, one per term of poly
};

// Keeps the terms of f whose lattice points lie on the face of the section polytope cut
// out by sigma. f lives on the fine fan; sigma is any cone of the coarse fan.
FacePolynomial face_polynomial(const GradedPolynomial& f, const Fan& coarse, const ConeRef& sigma);

struct H3Block {
    enum class Kind { jacobian, face };
    Kind kind = Kind::jacobian;
    int level = 0;  // a, for H^{3-a,a}
    std::size_t chart = 0, interior = 0;  // for face blocks
    DegreeClass degree;                   // of the basis monomials, on the fine or the star fan
    std::vector<Monomial> basis;          // standard monomials of the quotient
    std::size_t dim() const { return basis.size(); }
};

struct GramMatrix {
    int row_level = 0, col_level = 0;
    std::vector<H3Block> row_blocks, col_blocks;
    std::vector<std::vector<PairingValue>> entries;
    std::size_t rows() const { return entries.size(); }
    std::size_t cols() const { return entries.empty() ? 0 : entries[0].size(); }
    // Rank of the rational parts; blocks with different exponents never share a row.
    std::size_t rank() const;
};

// H^3 of a regular semiample hypersurface in a complete simplicial toric 4-fold.
class ThreefoldH3 {
public:
    // f on the fine fan; coarse is the fan of the semiample degree. Throws
    // PreconditionError when f or one of the needed face polynomials is not certified.
    ThreefoldH3(GradedPolynomial f, std::shared_ptr<const Fan> coarse);

    const std::vector<TwoConeChart>& charts() const { return charts_; }
    const CupProduct& cup() const { return *cup_; }
    // Face data of each chart with n(sigma) > 0; empty otherwise.
    const std::optional<FacePolynomial>& face(std::size_t chart) const { return faces_.at(chart); }
    const CupProduct& face_cup(std::size_t chart) const;

    std::vector<H3Block> blocks(int a) const { return blocks_.at(static_cast<std::size_t>(a)); }
    std::size_t hodge_number(int a) const;  // h^{3-a,a}

    // Pairing of level a against level 3 - a. Threads split the rows.
    GramMatrix gram(int a, unsigned threads = 1) const;
    PairingValue entry(const H3Block& row, const Monomial& x, const H3Block& col, const Monomial& y) const;

private:
    GradedPolynomial f_;
    std::shared_ptr<const Fan> coarse_;
    std::vector<TwoConeChart> charts_;
    std::vector<std::optional<FacePolynomial>> faces_;
    std::vector<std::shared_ptr<CupProduct>> face_cups_;
    std::shared_ptr<CupProduct> cup_;
    std::vector<std::vector<H3Block>> blocks_;
};

}  // namespace semiample
