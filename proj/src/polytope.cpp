#include "semiample/polytope.hpp"

#include "semiample/combinatorics.hpp"
#include "semiample/errors.hpp"
#include "semiample/fan.hpp"
#include "semiample/linalg.hpp"
#include "semiample/lp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace semiample {

namespace {

LatticeVector scaled_to_integer(const RationalVector& v) {
    Integer l = common_denominator(v);
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational t = v[i] * l;
        r[i] = t.get_num();
    }
    return r;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

}  // namespace

LatticePolytope LatticePolytope::empty(std::size_t ambient) {
    LatticePolytope p;
    p.ambient_ = ambient;
    return p;
}

LatticePolytope LatticePolytope::from_points(const std::vector<LatticeVector>& points, std::size_t ambient) {
    std::vector<RationalVector> r;
    r.reserve(points.size());
    for (const auto& v : points) r.push_back(to_rational(v));
    return from_points(std::move(r), ambient);
}

LatticePolytope LatticePolytope::from_points(std::vector<RationalVector> pts, std::size_t ambient) {
    for (const auto& v : pts)
        if (v.size() != ambient) throw ValidationError("point of wrong length in polytope");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    LatticePolytope p;
    p.ambient_ = ambient;
    if (pts.empty()) return p;

    const RationalVector& p0 = pts[0];
    std::vector<LatticeVector> normals;
    if (pts.size() == 1) {
        for (std::size_t j = 0; j < ambient; ++j) {
            LatticeVector e(ambient);
            e[j] = 1;
            normals.push_back(e);
        }
    } else {
        std::vector<LatticeVector> diffs;
        for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(scaled_to_integer(sub(pts[i], p0)));
        normals = integer_kernel(IntegerMatrix::from_rows(diffs, ambient));
    }
    for (const auto& u : normals) p.equations_.push_back({u, pairing(p0, u)});
    p.dim_ = static_cast<int>(ambient - normals.size());
    if (normals.empty()) {
        for (std::size_t j = 0; j < ambient; ++j) {
            LatticeVector e(ambient);
            e[j] = 1;
            p.direction_.push_back(e);
        }
    } else {
        p.direction_ = integer_kernel(IntegerMatrix::from_rows(normals, ambient));
    }

    if (p.dim_ == 0) {
        p.vertices_ = pts;
        p.lattice_ = is_integral(pts[0]);
        return p;
    }

    // Facets: a k-subset of affinely independent points spans a facet hyperplane when
    // all points lie on one side of it. The normal is taken inside the direction space.
    const std::size_t k = static_cast<std::size_t>(p.dim_);
    std::map<std::vector<std::size_t>, std::pair<LatticeVector, Rational>> by_tight;
    for_each_combination(pts.size(), k, [&](const std::vector<std::size_t>& S) {
        RationalMatrix m(k - 1 + normals.size(), ambient);
        for (std::size_t r = 1; r < k; ++r) {
            RationalVector d = sub(pts[S[r]], pts[S[0]]);
            for (std::size_t j = 0; j < ambient; ++j) m(r - 1, j) = d[j];
        }
        for (std::size_t r = 0; r < normals.size(); ++r)
            for (std::size_t j = 0; j < ambient; ++j) m(k - 1 + r, j) = normals[r][j];
        auto ker = kernel(m);
        if (ker.size() != 1) return true;
        LatticeVector u = primitive_direction(ker[0]);
        Rational c = pairing(pts[S[0]], u);
        bool pos = false, neg = false;
        std::vector<std::size_t> tight;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Rational v = pairing(pts[i], u) - c;
            if (v > 0) pos = true;
            else if (v < 0) neg = true;
            else tight.push_back(i);
            if (pos && neg) return true;
        }
        if (neg) {
            for (auto& x : u) x = -x;
            c = -c;
        }
        by_tight.emplace(tight, std::make_pair(u, c));
        return true;
    });

    std::vector<std::size_t> vertex_of(pts.size(), pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::size_t> common;
        bool first = true;
        for (const auto& [tight, f] : by_tight) {
            if (!std::binary_search(tight.begin(), tight.end(), i)) continue;
            common = first ? tight : sorted_intersection(common, tight);
            first = false;
        }
        if (!first && common.size() == 1) {
            vertex_of[i] = p.vertices_.size();
            p.vertices_.push_back(pts[i]);
        }
    }
    for (const auto& [tight, f] : by_tight) {
        Facet facet{f.first, f.second, {}};
        for (auto i : tight)
            if (vertex_of[i] < pts.size()) facet.vertices.push_back(vertex_of[i]);
        p.facets_.push_back(std::move(facet));
    }
    std::sort(p.facets_.begin(), p.facets_.end(),
              [](const Facet& a, const Facet& b) { return a.normal < b.normal; });
    p.lattice_ = std::all_of(p.vertices_.begin(), p.vertices_.end(),
                             [](const RationalVector& v) { return is_integral(v); });
    return p;
}

bool LatticePolytope::contains(const RationalVector& x) const {
    if (is_empty() || x.size() != ambient_) return false;
    for (const auto& e : equations_)
        if (pairing(x, e.normal) != e.value) return false;
    for (const auto& f : facets_)
        if (pairing(x, f.normal) < f.rhs) return false;
    return true;
}

bool LatticePolytope::contains_in_relative_interior(const RationalVector& x) const {
    if (!contains(x)) return false;
    for (const auto& f : facets_)
        if (pairing(x, f.normal) == f.rhs) return false;
    return true;
}

LatticePolytope vertices_from_inequalities(const HPolytope& h) {
    const std::size_t d = h.ambient;
    for (const auto& q : h.inequalities) {
        if (q.normal.size() != d) throw ValidationError("inequality normal of wrong length");
        if (is_zero(q.normal)) throw ValidationError("inequality with zero normal");
    }
    const std::size_t n = h.inequalities.size();
    RationalMatrix A(n, d);
    RationalVector b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) A(i, j) = h.inequalities[i].normal[j];
        b[i] = h.inequalities[i].rhs;
    }
    if (d == 0) return LatticePolytope::from_points(std::vector<RationalVector>{RationalVector{}}, 0);
    if (!find_feasible_point(A, b, RationalMatrix(), RationalVector())) return LatticePolytope::empty(d);

    // Bounded iff some strictly positive combination of the normals vanishes.
    RationalMatrix At = A.transpose();
    RationalMatrix I = RationalMatrix::identity(n);
    if (rank(A) < d || !find_feasible_point(I, RationalVector(n, Rational(1)), At, RationalVector(d)))
        throw PreconditionError("not a polytope: the inequality system is unbounded", "vertex enumeration");

    std::set<RationalVector> verts;
    for_each_combination(n, d, [&](const std::vector<std::size_t>& S) {
        RationalMatrix m(d, d);
        RationalVector r(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) m(i, j) = A(S[i], j);
            r[i] = b[S[i]];
        }
        if (rank(m) < d) return true;
        auto x = solve(m, r);
        for (std::size_t i = 0; i < n; ++i) {
            Rational v = 0;
            for (std::size_t j = 0; j < d; ++j) v += A(i, j) * (*x)[j];
            if (v < b[i]) return true;
        }
        verts.insert(*x);
        return true;
    });
    return LatticePolytope::from_points(std::vector<RationalVector>(verts.begin(), verts.end()), d);
}

namespace {

template <class T>
T floor_div(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, Integer>) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    } else {
        T q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }
}

template <class T>
T ceil_div(const T& a, const T& b) {
    return -floor_div<T>(-a, b);
}

template <class T>
T convert(const Integer& x) {
    if constexpr (std::is_same_v<T, Integer>) return x;
    else return static_cast<T>(x.get_si());
}

struct ScanSetup {
    bool any = false;
    LatticeVector x0;
    std::vector<LatticeVector> basis;
    std::vector<Integer> lo, hi;
    std::vector<std::vector<Integer>> coef;  // facet x local coordinate
    std::vector<Integer> thr;                // base moved to the threshold
};

ScanSetup make_scan(const LatticePolytope& p, bool interior_only) {
    ScanSetup s;
    const std::size_t d = p.ambient();
    if (p.is_empty()) return s;
    if (p.dim() == 0) {
        s.any = is_integral(p.vertices()[0]);
        if (s.any) s.x0 = to_lattice(p.vertices()[0]);
        return s;
    }
    // an integer point of the affine span
    if (p.equations().empty()) {
        s.x0 = LatticeVector(d);
    } else {
        std::vector<LatticeVector> normals;
        LatticeVector values;
        for (const auto& e : p.equations()) {
            if (e.value.get_den() != 1) return s;
            normals.push_back(e.normal);
            values.push_back(e.value.get_num());
        }
        auto x0 = solve_integer(IntegerMatrix::from_rows(normals, d), values);
        if (!x0) return s;
        s.x0 = *x0;
    }
    s.basis = p.direction_basis();
    const std::size_t k = s.basis.size();
    RationalMatrix L = to_rational(IntegerMatrix::from_columns(s.basis, d));
    std::vector<Rational> tmin(k), tmax(k);
    bool first = true;
    for (const auto& v : p.vertices()) {
        RationalVector rhs(d);
        for (std::size_t j = 0; j < d; ++j) rhs[j] = v[j] - s.x0[j];
        auto t = solve(L, rhs);
        if (!t) throw InconsistencyError("vertex outside its own affine span");
        for (std::size_t j = 0; j < k; ++j) {
            if (first || (*t)[j] < tmin[j]) tmin[j] = (*t)[j];
            if (first || (*t)[j] > tmax[j]) tmax[j] = (*t)[j];
        }
        first = false;
    }
    for (std::size_t j = 0; j < k; ++j) {
        s.lo.push_back(ceil_of(tmin[j]));
        s.hi.push_back(floor_of(tmax[j]));
        if (s.lo.back() > s.hi.back()) return s;
    }
    for (const auto& f : p.facets()) {
        std::vector<Integer> c(k);
        for (std::size_t j = 0; j < k; ++j) c[j] = pairing(f.normal, s.basis[j]);
        Integer base = pairing(f.normal, s.x0);
        Integer t = interior_only ? Integer(floor_of(f.rhs) + 1) : ceil_of(f.rhs);
        s.coef.push_back(std::move(c));
        s.thr.push_back(t - base);
    }
    s.any = true;
    return s;
}

template <class T>
void scan(const ScanSetup& s, const std::function<void(const std::vector<T>&)>& leaf) {
    const std::size_t k = s.basis.size(), nf = s.coef.size();
    std::vector<std::vector<T>> coef(nf, std::vector<T>(k));
    std::vector<T> thr(nf), lo(k), hi(k);
    for (std::size_t j = 0; j < k; ++j) lo[j] = convert<T>(s.lo[j]), hi[j] = convert<T>(s.hi[j]);
    for (std::size_t f = 0; f < nf; ++f) {
        thr[f] = convert<T>(s.thr[f]);
        for (std::size_t j = 0; j < k; ++j) coef[f][j] = convert<T>(s.coef[f][j]);
    }
    // maxrest[f][j]: largest value of sum_{j' >= j} coef t over the box
    std::vector<std::vector<T>> maxrest(nf, std::vector<T>(k + 1, T(0)));
    for (std::size_t f = 0; f < nf; ++f)
        for (std::size_t j = k; j-- > 0;) {
            T a = coef[f][j] * lo[j], b = coef[f][j] * hi[j];
            maxrest[f][j] = maxrest[f][j + 1] + (a > b ? a : b);
        }
    std::vector<T> t(k);
    std::vector<std::vector<T>> partial(k + 1, std::vector<T>(nf, T(0)));
    std::function<void(std::size_t)> rec = [&](std::size_t j) {
        if (j == k) {
            leaf(t);
            return;
        }
        T tlo = lo[j], thi = hi[j];
        for (std::size_t f = 0; f < nf; ++f) {
            T need = thr[f] - partial[j][f] - maxrest[f][j + 1];
            const T& c = coef[f][j];
            if (c > 0) {
                T b = ceil_div<T>(need, c);
                if (b > tlo) tlo = b;
            } else if (c < 0) {
                T b = floor_div<T>(need, c);
                if (b < thi) thi = b;
            } else if (need > 0) {
                return;
            }
        }
        for (T v = tlo; v <= thi; ++v) {
            t[j] = v;
            for (std::size_t f = 0; f < nf; ++f) partial[j + 1][f] = partial[j][f] + coef[f][j] * v;
            rec(j + 1);
        }
    };
    rec(0);
}

bool fits_machine_words(const ScanSetup& s) {
    const Integer limit = Integer(1) << 60;
    Integer box = 0;
    for (std::size_t j = 0; j < s.lo.size(); ++j) {
        Integer a = abs(s.lo[j]), b = abs(s.hi[j]);
        if (a + 1 > box) box = a + 1;
        if (b + 1 > box) box = b + 1;
    }
    for (std::size_t f = 0; f < s.coef.size(); ++f) {
        Integer total = abs(s.thr[f]);
        for (const auto& c : s.coef[f]) total += abs(c) * box;
        if (total * 4 >= limit) return false;
    }
    return true;
}

}  // namespace

void for_each_lattice_point(const LatticePolytope& p, bool interior_only,
                            const std::function<void(const LatticeVector&)>& visit) {
    ScanSetup s = make_scan(p, interior_only);
    if (!s.any) return;
    if (p.dim() == 0) {
        visit(s.x0);
        return;
    }
    const std::size_t d = p.ambient(), k = s.basis.size();
    LatticeVector x(d);
    auto emit = [&](auto const& t) {
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = s.x0[i];
            for (std::size_t j = 0; j < k; ++j)
                if (s.basis[j][i] != 0) x[i] += s.basis[j][i] * Integer(t[j]);
        }
        visit(x);
    };
    if (fits_machine_words(s))
        scan<long long>(s, [&](const std::vector<long long>& t) {
            std::vector<Integer> tt(t.size());
            for (std::size_t j = 0; j < t.size(); ++j) tt[j] = static_cast<long>(t[j]);
            emit(tt);
        });
    else
        scan<Integer>(s, [&](const std::vector<Integer>& t) { emit(t); });
}

namespace {

std::size_t count_points(const LatticePolytope& p, bool interior_only) {
    ScanSetup s = make_scan(p, interior_only);
    if (!s.any) return 0;
    if (p.dim() == 0) return 1;
    std::size_t n = 0;
    if (fits_machine_words(s)) scan<long long>(s, [&](const std::vector<long long>&) { ++n; });
    else scan<Integer>(s, [&](const std::vector<Integer>&) { ++n; });
    return n;
}

std::vector<LatticeVector> collect(const LatticePolytope& p, bool interior_only) {
    std::vector<LatticeVector> out;
    for_each_lattice_point(p, interior_only, [&](const LatticeVector& x) { out.push_back(x); });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<LatticeVector> lattice_points(const LatticePolytope& p) { return collect(p, false); }
std::vector<LatticeVector> relative_interior_points(const LatticePolytope& p) { return collect(p, true); }
std::size_t count_lattice_points(const LatticePolytope& p) { return count_points(p, false); }
std::size_t count_interior_points(const LatticePolytope& p) { return count_points(p, true); }

std::vector<Face> all_faces(const LatticePolytope& p) {
    std::vector<Face> out;
    if (p.is_empty()) return out;
    std::vector<std::size_t> everything(p.vertices().size());
    for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;
    std::set<std::vector<std::size_t>> seen{everything};
    std::vector<std::vector<std::size_t>> queue{everything};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const auto cur = queue[q];
        for (const auto& f : p.facets()) {
            auto meet = sorted_intersection(cur, f.vertices);
            if (!meet.empty() && seen.insert(meet).second) queue.push_back(meet);
        }
    }
    for (const auto& vs : seen) {
        int dim;
        if (vs.size() == 1) {
            dim = 0;
        } else {
            std::vector<RationalVector> diffs;
            for (std::size_t i = 1; i < vs.size(); ++i) diffs.push_back(sub(p.vertices()[vs[i]], p.vertices()[vs[0]]));
            dim = static_cast<int>(rank_of_vectors(diffs));
        }
        out.push_back({vs, dim});
    }
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
    });
    return out;
}

std::vector<Face> faces(const LatticePolytope& p, int k) {
    if (k < 0 || k > p.dim()) throw ValidationError("faces: dimension out of range");
    std::vector<Face> out;
    for (auto& f : all_faces(p))
        if (f.dim == k) out.push_back(std::move(f));
    return out;
}

LatticePolytope face_polytope(const LatticePolytope& p, const Face& f) {
    std::vector<RationalVector> pts;
    for (auto i : f.vertices) pts.push_back(p.vertices().at(i));
    return LatticePolytope::from_points(std::move(pts), p.ambient());
}

Rational normalized_volume(const LatticePolytope& p) {
    if (p.is_empty()) return 0;
    if (p.dim() == 0) return 1;
    const std::size_t k = static_cast<std::size_t>(p.dim()), d = p.ambient();
    const auto& V = p.vertices();
    if (V.size() == k + 1) {
        RationalMatrix L = to_rational(IntegerMatrix::from_columns(p.direction_basis(), d));
        RationalMatrix T(k, k);
        for (std::size_t i = 1; i <= k; ++i) {
            auto t = solve(L, sub(V[i], V[0]));
            for (std::size_t j = 0; j < k; ++j) T(i - 1, j) = (*t)[j];
        }
        return abs(determinant(T));
    }
    // pyramids over the facets not containing vertex 0
    Rational total = 0;
    for (const auto& f : p.facets()) {
        if (std::binary_search(f.vertices.begin(), f.vertices.end(), std::size_t{0})) continue;
        Integer g = 0;
        for (const auto& b : p.direction_basis()) {
            Integer v = pairing(f.normal, b);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        Rational height = (pairing(V[0], f.normal) - f.rhs) / Rational(g);
        total += height * normalized_volume(face_polytope(p, Face{f.vertices, static_cast<int>(k) - 1}));
    }
    return total;
}

LatticePolytope dilate(const LatticePolytope& p, const Integer& k) {
    if (k < 1) throw ValidationError("dilate: factor must be positive");
    std::vector<RationalVector> pts = p.vertices();
    for (auto& v : pts)
        for (auto& x : v) x *= k;
    return LatticePolytope::from_points(std::move(pts), p.ambient());
}

bool contains_origin_in_interior(const LatticePolytope& p) {
    if (!p.is_full_dimensional() || p.dim() == 0) return p.is_full_dimensional() && !p.is_empty();
    return std::all_of(p.facets().begin(), p.facets().end(), [](const Facet& f) { return f.rhs < 0; });
}

bool is_reflexive(const LatticePolytope& p) {
    if (!p.is_lattice() || !p.is_full_dimensional() || p.dim() == 0) return false;
    return std::all_of(p.facets().begin(), p.facets().end(), [](const Facet& f) { return f.rhs == -1; });
}

LatticePolytope dual_polytope(const LatticePolytope& p) {
    if (!contains_origin_in_interior(p) || p.dim() == 0)
        throw PreconditionError("dual polytope: the origin is not an interior point", "polar dual");
    std::vector<RationalVector> pts;
    for (const auto& f : p.facets()) {
        RationalVector y(p.ambient());
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = Rational(f.normal[j]) / (-f.rhs);
        pts.push_back(y);
    }
    return LatticePolytope::from_points(std::move(pts), p.ambient());
}

Face dual_face(const LatticePolytope& p, const Face& f) {
    if (!is_reflexive(p)) throw PreconditionError("dual face: polytope is not reflexive", "dual face of a reflexive polytope");
    LatticePolytope dual = dual_polytope(p);
    Face out;
    for (std::size_t i = 0; i < dual.vertices().size(); ++i) {
        bool tight = true;
        for (auto v : f.vertices)
            if (pairing(p.vertices().at(v), dual.vertices()[i]) != -1) {
                tight = false;
                break;
            }
        if (tight) out.vertices.push_back(i);
    }
    for (const auto& g : all_faces(dual))
        if (g.vertices == out.vertices) return g;
    if (out.vertices.empty()) return out;
    throw InconsistencyError("dual face is not a face");
}

Fan normal_fan(const LatticePolytope& p) {
    if (!p.is_full_dimensional())
        throw PreconditionError("normal fan: polytope is not full-dimensional", "normal fan of a polytope");
    std::vector<LatticeVector> rays;
    for (const auto& f : p.facets()) rays.push_back(f.normal);
    std::vector<std::vector<std::size_t>> cones(p.vertices().size());
    for (std::size_t fi = 0; fi < p.facets().size(); ++fi)
        for (auto v : p.facets()[fi].vertices) cones[v].push_back(fi);
    if (p.dim() == 0) cones = {{}};
    return Fan(rays, cones, p.ambient());
}

std::vector<std::vector<std::size_t>> pulling_triangulation(const std::vector<LatticeVector>& points,
                                                            const std::vector<std::size_t>& order) {
    if (points.empty()) return {};
    const std::size_t d = points[0].size();
    std::map<RationalVector, std::size_t> index_of;
    for (std::size_t i = 0; i < points.size(); ++i) index_of.emplace(to_rational(points[i]), i);

    auto to_indices = [&](const LatticePolytope& q) {
        std::vector<std::size_t> idx;
        for (const auto& v : q.vertices()) {
            auto it = index_of.find(v);
            if (it == index_of.end()) throw InconsistencyError("pulling: vertex not among the points");
            idx.push_back(it->second);
        }
        return idx;
    };
    auto hull = [&](const std::vector<std::size_t>& idx) {
        std::vector<LatticeVector> pts;
        for (auto i : idx) pts.push_back(points[i]);
        return LatticePolytope::from_points(pts, d);
    };

    std::vector<std::size_t> all(points.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    LatticePolytope whole = hull(all);
    // each cell keeps its hull so that it is computed once
    std::vector<std::pair<std::vector<std::size_t>, LatticePolytope>> live;
    live.emplace_back(to_indices(whole), whole);
    for (auto pi : order) {
        const RationalVector x = to_rational(points.at(pi));
        std::vector<std::pair<std::vector<std::size_t>, LatticePolytope>> next;
        for (auto& [cell, c] : live) {
            if (c.dim() == 0 || !c.contains(x)) {
                next.emplace_back(std::move(cell), std::move(c));
                continue;
            }
            auto cidx = to_indices(c);
            for (const auto& f : c.facets()) {
                if (pairing(x, f.normal) == f.rhs) continue;
                std::vector<std::size_t> pyramid{pi};
                for (auto v : f.vertices) pyramid.push_back(cidx[v]);
                std::sort(pyramid.begin(), pyramid.end());
                LatticePolytope h = hull(pyramid);
                next.emplace_back(std::move(pyramid), std::move(h));
            }
        }
        live = std::move(next);
    }
    std::vector<std::vector<std::size_t>> cells;
    for (auto& [cell, c] : live) cells.push_back(std::move(cell));
    for (const auto& cell : cells)
        if (cell.size() != static_cast<std::size_t>(whole.dim()) + 1)
            throw InconsistencyError("pulling refinement did not end in a triangulation");
    std::sort(cells.begin(), cells.end());
    return cells;
}

}  // namespace semiample
