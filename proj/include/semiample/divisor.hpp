#pragma once

#include "semiample/fan.hpp"
#include "semiample/polytope.hpp"

#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace semiample {

struct TorusInvariantDivisor {
    TorusInvariantDivisor(std::shared_ptr<const Fan> fan, LatticeVector coeffs);

    std::shared_ptr<const Fan> fan;
    LatticeVector coeffs;  // D = sum a_i D_i
};

// One m_sigma per maximal cone, in the fan's max-cone order; <m_sigma, e_i> = -a_i on sigma.
struct SupportFunction {
    std::vector<RationalVector> m;
    bool integral = true;
};

// Exact solve per maximal cone; none if the equations are inconsistent on some cone.
std::optional<SupportFunction> rational_support_function(const TorusInvariantDivisor& D);
// Throws NotCartierError unless every m_sigma exists and is integral.
SupportFunction support_function(const TorusInvariantDivisor& D);
bool is_cartier(const TorusInvariantDivisor& D);

bool is_globally_generated(const TorusInvariantDivisor& D);
bool is_strictly_convex(const TorusInvariantDivisor& D);
inline bool is_ample(const TorusInvariantDivisor& D) { return is_strictly_convex(D); }

// {m : <m, e_i> >= -a_i}
HPolytope polytope_of_divisor(const TorusInvariantDivisor& D);
LatticePolytope divisor_polytope(const TorusInvariantDivisor& D);
bool is_semiample(const TorusInvariantDivisor& D);

// (D^k . V(sigma)) = k! vol_k of the face of the section polytope cut out by sigma.
// Requires D globally generated and dim sigma = d - k.
Rational intersection_number(const TorusInvariantDivisor& D, int k, const ConeRef& sigma);
// (D . V(tau)) for a wall tau and any Cartier D, by writing D = (D + tA) - tA with A ample.
Rational curve_intersection(const TorusInvariantDivisor& D, const ConeRef& tau);

// Coefficients of a strictly convex Cartier divisor, found by linear programming.
// Throws PreconditionError("requires projective fan") when none exists.
LatticeVector ample_divisor(const Fan& f);

struct SigmaD {
    Fan fan;
    std::vector<std::size_t> ray_origin;  // index in the original fan of each ray of the coarse fan
};
// Coarsening of the fan attached to a semiample divisor. Three constructions are run
// (gluing by m_sigma, merging across walls with zero intersection, normal fan of the
// section polytope) and must agree.
SigmaD sigma_d(const TorusInvariantDivisor& D);

// The three constructions separately, each as a set of maximal cones given by
// sorted ray indices of the original fan. No agreement check.
struct SigmaDConstructions {
    std::set<std::vector<std::size_t>> by_m_sigma, by_zero_walls, by_normal_fan;
};
SigmaDConstructions sigma_d_constructions(const TorusInvariantDivisor& D);

// Keep the coefficients of the rays of the coarse fan.
TorusInvariantDivisor pushforward(const TorusInvariantDivisor& D, std::shared_ptr<const Fan> coarse);
// Coefficients -psi_D(e_j) on the rays of a refinement.
TorusInvariantDivisor pullback(const TorusInvariantDivisor& D, std::shared_ptr<const Fan> fine);

bool nakai_globally_generated(const TorusInvariantDivisor& D);
bool nakai_ample(const TorusInvariantDivisor& D);

struct StratumRecord {
    ConeRef sigma;                        // cone of the original fan
    ConeRef sigma0;                       // smallest cone of the coarse fan containing it
    std::vector<std::size_t> sigma0_rays; // sigma0 by original ray indices
    int torus_dim = 0;                    // dim sigma0 - dim sigma
};
std::vector<StratumRecord> stratify(const TorusInvariantDivisor& D);

}  // namespace semiample
