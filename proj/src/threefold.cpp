#include "semiample/threefold.hpp"

#include "semiample/combinatorics.hpp"
#include "semiample/divisor.hpp"
#include "semiample/errors.hpp"
#include "semiample/lattice.hpp"
#include "semiample/linalg.hpp"
#include "semiample/polytope.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace semiample {

namespace {

const char* kH3Anchor = "H^3 decomposition of a regular semiample threefold";

// (lambda0, lambda1) with v = lambda0 u0 + lambda1 u1.
std::pair<Rational, Rational> plane_coordinates(const LatticeVector& u0, const LatticeVector& u1,
                                                const LatticeVector& v) {
    const std::size_t d = v.size();
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = j + 1; k < d; ++k) {
            Integer det = u0[j] * u1[k] - u0[k] * u1[j];
            if (det == 0) continue;
            Rational l0 = Rational(v[j] * u1[k] - v[k] * u1[j]) / Rational(det);
            Rational l1 = Rational(u0[j] * v[k] - u0[k] * v[j]) / Rational(det);
            for (std::size_t i = 0; i < d; ++i)
                if (l0 * u0[i] + l1 * u1[i] != Rational(v[i])) throw InconsistencyError("ray outside the plane of its cone");
            return {l0, l1};
        }
    throw InconsistencyError("2-cone with dependent rays");
}

ConeRef require_fine_cone(const Fan& fine, std::size_t a, std::size_t b) {
    std::vector<std::size_t> r{std::min(a, b), std::max(a, b)};
    auto c = fine.find_cone(r);
    if (!c || c->dim != 2)
        throw PreconditionError("interior ray is not flanked by two 2-cones of the fine fan", kH3Anchor);
    return *c;
}

Rational sign_of_level(int a) { return (a - 1) % 2 == 0 ? Rational(1) : Rational(-1); }

}  // namespace

std::vector<std::size_t> coarse_ray_positions(const Fan& fine, const Fan& coarse) {
    std::vector<std::size_t> out;
    for (const auto& r : coarse.rays()) {
        auto i = fine.find_ray(r);
        if (!i) throw ValidationError("a ray of the coarse fan is not a ray of the fine fan");
        out.push_back(*i);
    }
    return out;
}

std::vector<TwoConeChart> two_cone_charts(const Fan& fine, const Fan& coarse) {
    if (fine.ambient() != 4 || coarse.ambient() != 4)
        throw PreconditionError("two-cone charts need dimension 4", kH3Anchor);
    if (!is_refinement(fine, coarse)) throw PreconditionError("fine fan does not refine the coarse fan", kH3Anchor);
    const auto pos = coarse_ray_positions(fine, coarse);
    std::vector<TwoConeChart> charts;
    for (const auto& sigma : coarse.cones(2)) {
        TwoConeChart ch;
        ch.sigma = sigma;
        ch.boundary[0] = pos[sigma.rays[0]];
        ch.boundary[1] = pos[sigma.rays[1]];
        const LatticeVector& u0 = fine.ray(ch.boundary[0]);
        const LatticeVector& u1 = fine.ray(ch.boundary[1]);
        std::vector<std::pair<Rational, std::size_t>> inside;
        for (std::size_t i = 0; i < fine.num_rays(); ++i) {
            ConeRef c = smallest_containing_cone(coarse, {fine.ray(i)});
            if (c == sigma) {
                auto [l0, l1] = plane_coordinates(u0, u1, fine.ray(i));
                inside.emplace_back(l1 / l0, i);
            }
        }
        std::sort(inside.begin(), inside.end());
        std::vector<std::size_t> chain{ch.boundary[0]};
        for (const auto& [slope, i] : inside) chain.push_back(i);
        chain.push_back(ch.boundary[1]);
        for (std::size_t k = 1; k + 1 < chain.size(); ++k) {
            InteriorRay r;
            r.ray = chain[k];
            r.left = chain[k - 1];
            r.right = chain[k + 1];
            require_fine_cone(fine, r.left, r.ray);
            require_fine_cone(fine, r.ray, r.right);
            r.mult_left = cone_multiplicity({fine.ray(r.left), fine.ray(r.ray)});
            r.mult_right = cone_multiplicity({fine.ray(r.ray), fine.ray(r.right)});
            r.mult_span = cone_multiplicity({fine.ray(r.left), fine.ray(r.right)});
            for (std::size_t j = 0; j < 4; ++j)
                if (r.mult_span * fine.ray(r.ray)[j] !=
                    r.mult_left * fine.ray(r.right)[j] + r.mult_right * fine.ray(r.left)[j])
                    throw InconsistencyError("multiplicity identity fails for an interior ray");
            ch.interior.push_back(r);
        }
        charts.push_back(std::move(ch));
    }
    return charts;
}

FacePolynomial face_polynomial(const GradedPolynomial& f, const Fan& coarse, const ConeRef& sigma) {
    const DegreeClass& beta = f.degree();
    const ClassGroup& g = *beta.group;
    const Fan& fine = g.fan();
    const auto pos = coarse_ray_positions(fine, coarse);
    std::vector<std::size_t> S;
    for (auto r : sigma.rays) S.push_back(pos.at(r));

    TorusInvariantDivisor D(g.fan_ptr(), beta.rep);
    LatticePolytope P = divisor_polytope(D);
    auto on_face = [&](const RationalVector& m) {
        for (auto s : S)
            if (pairing(m, fine.ray(s)) != Rational(-beta.rep[s])) return false;
        return true;
    };
    std::vector<RationalVector> vertices;
    for (const auto& v : P.vertices())
        if (on_face(v)) vertices.push_back(v);

    FacePolynomial out{star_fan(coarse, sigma), nullptr, GradedPolynomial(g.zero()), {}, {}};
    out.group = ClassGroup::create(std::make_shared<Fan>(out.star.fan));
    if (vertices.empty()) {
        out.poly = GradedPolynomial(out.group->zero());
        return out;
    }
    if (!is_integral(vertices[0])) throw PreconditionError("face polynomial needs a lattice section polytope", kH3Anchor);
    out.origin = to_lattice(vertices[0]);
    const Fan& sf = out.star.fan;
    std::vector<LatticeVector> lifts;
    LatticeVector b(sf.num_rays());
    for (std::size_t k = 0; k < sf.num_rays(); ++k) {
        lifts.push_back(out.star.quotient.lift(sf.ray(k)));
        Rational lo;
        bool first = true;
        for (const auto& v : vertices) {
            Rational x = pairing(v, lifts[k]) - Rational(pairing(out.origin, lifts[k]));
            if (first || x < lo) lo = x;
            first = false;
        }
        b[k] = -floor_of(lo);
    }
    std::map<Monomial, Rational> terms;
    for (const auto& [a, c] : f.terms()) {
        LatticeVector m = g.lattice_point(a, beta);
        bool keep = true;
        for (auto s : S) keep = keep && a[s] == 0;
        if (!keep) continue;
        Monomial y(sf.num_rays());
        for (std::size_t k = 0; k < y.size(); ++k) {
            Integer e = pairing(m, lifts[k]) - pairing(out.origin, lifts[k]) + b[k];
            if (e < 0) throw InconsistencyError("face monomial with a negative exponent");
            y[k] = to_long(e);
        }
        terms[y] += c;
        out.face_points.push_back(m);
    }
    out.poly = GradedPolynomial(out.group->of(b), terms);
    return out;
}

std::size_t GramMatrix::rank() const {
    RationalMatrix m(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j = 0; j < cols(); ++j) m(i, j) = entries[i][j].rational;
    return semiample::rank(m);
}

ThreefoldH3::ThreefoldH3(GradedPolynomial f, std::shared_ptr<const Fan> coarse)
    : f_(std::move(f)), coarse_(std::move(coarse)) {
    const ClassGroup& g = *f_.degree().group;
    const Fan& fine = g.fan();
    if (fine.ambient() != 4) throw PreconditionError("H^3 decomposition needs a toric 4-fold", kH3Anchor);
    TorusInvariantDivisor D(g.fan_ptr(), f_.degree().rep);
    if (!is_semiample(D)) throw PreconditionError("degree of f is not semiample", kH3Anchor);
    if (!same_cones(sigma_d(D).fan, *coarse_))
        throw PreconditionError("coarse fan is not the fan of the degree of f", kH3Anchor);
    charts_ = two_cone_charts(fine, *coarse_);
    cup_ = std::make_shared<CupProduct>(f_);
    faces_.resize(charts_.size());
    face_cups_.resize(charts_.size());
    for (std::size_t c = 0; c < charts_.size(); ++c) {
        if (charts_[c].n() == 0) continue;
        faces_[c] = face_polynomial(f_, *coarse_, charts_[c].sigma);
        try {
            face_cups_[c] = std::make_shared<CupProduct>(faces_[c]->poly);
        } catch (const PreconditionError& e) {
            throw PreconditionError("face polynomial of chart " + std::to_string(c) + ": " + e.what(), kH3Anchor);
        }
    }
    blocks_.resize(4);
    for (int a = 0; a < 4; ++a) {
        H3Block j;
        j.level = a;
        j.degree = cup_->level(a);
        j.basis = j1_graded_piece(f_, j.degree).standard_monomials();
        blocks_[a].push_back(j);
        if (a == 0 || a == 3) continue;
        for (std::size_t c = 0; c < charts_.size(); ++c) {
            if (charts_[c].n() == 0) continue;
            H3Block proto;
            proto.kind = H3Block::Kind::face;
            proto.level = a;
            proto.chart = c;
            proto.degree = face_cups_[c]->level(a - 1);
            proto.basis = j1_graded_piece(faces_[c]->poly, proto.degree).standard_monomials();
            for (std::size_t i = 0; i < charts_[c].n(); ++i) {
                proto.interior = i;
                blocks_[a].push_back(proto);
            }
        }
    }
}

const CupProduct& ThreefoldH3::face_cup(std::size_t chart) const {
    if (!face_cups_.at(chart)) throw ValidationError("chart has no interior rays");
    return *face_cups_[chart];
}

std::size_t ThreefoldH3::hodge_number(int a) const {
    std::size_t s = 0;
    for (const auto& b : blocks_.at(static_cast<std::size_t>(a))) s += b.dim();
    return s;
}

PairingValue ThreefoldH3::entry(const H3Block& row, const Monomial& x, const H3Block& col, const Monomial& y) const {
    if (row.level + col.level != 3) throw ValidationError("pairing needs complementary levels");
    const int a = row.level, b = col.level;
    if (row.kind == H3Block::Kind::jacobian && col.kind == H3Block::Kind::jacobian) {
        return cup_->pair(GradedPolynomial::monomial(row.degree, x), GradedPolynomial::monomial(col.degree, y), a, b);
    }
    PairingValue zero;
    if (row.kind != col.kind || row.chart != col.chart) return zero;
    const TwoConeChart& ch = charts_[row.chart];
    const InteriorRay& ri = ch.interior[row.interior];
    Rational factor;
    if (row.interior == col.interior) {
        factor = -Rational(ri.mult_span) / Rational(ri.mult_left * ri.mult_right);
    } else if (col.interior == row.interior + 1) {
        factor = Rational(1) / Rational(ri.mult_right);
    } else if (row.interior == col.interior + 1) {
        factor = Rational(1) / Rational(ri.mult_left);
    } else {
        return zero;
    }
    const CupProduct& fc = *face_cups_[row.chart];
    Rational eta = fc.eta(GradedPolynomial::monomial(row.degree, x) * GradedPolynomial::monomial(col.degree, y));
    PairingValue v;
    v.rational = factor * sign_of_level(a) * eta;
    v.two_pi_i_exponent = 2;
    return v;
}

GramMatrix ThreefoldH3::gram(int a, unsigned threads) const {
    if (a < 0 || a > 3) throw ValidationError("level must be in 0..3");
    GramMatrix G;
    G.row_level = a;
    G.col_level = 3 - a;
    G.row_blocks = blocks(a);
    G.col_blocks = blocks(3 - a);
    std::vector<std::pair<const H3Block*, const Monomial*>> rows, cols;
    for (const auto& b : G.row_blocks)
        for (const auto& m : b.basis) rows.emplace_back(&b, &m);
    for (const auto& b : G.col_blocks)
        for (const auto& m : b.basis) cols.emplace_back(&b, &m);
    G.entries.assign(rows.size(), std::vector<PairingValue>(cols.size()));
    threads = std::max(1u, threads);
    std::vector<std::exception_ptr> failures(threads);
    auto work = [&](std::size_t start) {
        try {
            for (std::size_t i = start; i < rows.size(); i += threads)
                for (std::size_t j = 0; j < cols.size(); ++j)
                    G.entries[i][j] = entry(*rows[i].first, *rows[i].second, *cols[j].first, *cols[j].second);
        } catch (...) {
            failures[start] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& t : pool) t.join();
    }
    for (auto& e : failures)
        if (e) std::rethrow_exception(e);
    return G;
}

}  // namespace semiample
