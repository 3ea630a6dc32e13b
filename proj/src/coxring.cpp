#include "semiample/coxring.hpp"

#include "semiample/errors.hpp"
#include "semiample/lattice.hpp"
#include "semiample/polytope.hpp"

#include <algorithm>
#include <functional>

namespace semiample {

namespace {

const ClassGroup& group_of(const DegreeClass& a) {
    if (!a.group) throw ValidationError("degree class without a class group");
    return *a.group;
}

void require_same_group(const DegreeClass& a, const DegreeClass& b) {
    if (a.group != b.group && (a.group == nullptr || b.group == nullptr || a.group->fan_ptr() != b.group->fan_ptr()))
        throw ValidationError("degree classes live on different fans");
}

SparseVector sorted_sparse(std::map<std::size_t, Rational>& acc) {
    SparseVector v;
    v.reserve(acc.size());
    for (auto& [c, x] : acc)
        if (x != 0) v.emplace_back(c, x);
    return v;
}

}  // namespace

DegreeClass operator+(const DegreeClass& a, const DegreeClass& b) {
    require_same_group(a, b);
    LatticeVector s(a.rep.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.rep[i] + b.rep[i];
    return group_of(a).of(s);
}

DegreeClass operator-(const DegreeClass& a, const DegreeClass& b) {
    require_same_group(a, b);
    LatticeVector s(a.rep.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.rep[i] - b.rep[i];
    return group_of(a).of(s);
}

DegreeClass operator*(long k, const DegreeClass& a) {
    LatticeVector s(a.rep.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.rep[i] * k;
    return group_of(a).of(s);
}

ClassGroup::ClassGroup(std::shared_ptr<const Fan> fan) : fan_(std::move(fan)) {
    IntegerMatrix rel = IntegerMatrix::from_rows(fan_->rays(), fan_->ambient());
    smith_ = smith_normal_form(rel);
    rank_ = smith_.rank();
}

std::shared_ptr<const ClassGroup> ClassGroup::create(std::shared_ptr<const Fan> fan) {
    if (!fan) throw ValidationError("class group of a null fan");
    return std::shared_ptr<const ClassGroup>(new ClassGroup(std::move(fan)));
}

std::size_t ClassGroup::free_rank() const { return num_vars() - rank_; }

std::vector<Integer> ClassGroup::torsion() const {
    std::vector<Integer> t;
    for (const auto& x : smith_.invariants)
        if (x != 1) t.push_back(x);
    return t;
}

DegreeClass ClassGroup::of(const LatticeVector& b) const {
    if (b.size() != num_vars()) throw ValidationError("degree vector has wrong length");
    LatticeVector c = smith_.U * b;
    for (std::size_t i = 0; i < rank_; ++i) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), c[i].get_mpz_t(), smith_.invariants[i].get_mpz_t());
        c[i] = r;
    }
    DegreeClass d;
    d.group = shared_from_this();
    d.rep = smith_.U_inverse * c;
    d.key = std::move(c);
    return d;
}

DegreeClass ClassGroup::of_monomial(const Monomial& a) const {
    if (a.size() != num_vars()) throw ValidationError("exponent vector has wrong length");
    LatticeVector b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = a[i];
    return of(b);
}

DegreeClass ClassGroup::zero() const { return of(LatticeVector(num_vars())); }

DegreeClass ClassGroup::variable(std::size_t i) const {
    LatticeVector b(num_vars());
    b.at(i) = 1;
    return of(b);
}

DegreeClass ClassGroup::anticanonical() const { return of(LatticeVector(num_vars(), Integer(1))); }

std::shared_ptr<const GradedPieceBasis> ClassGroup::basis(const DegreeClass& gamma) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(gamma.key);
        if (it != cache_.end()) return it->second;
    }
    auto b = std::make_shared<const GradedPieceBasis>(monomial_basis(gamma));
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return cache_.emplace(gamma.key, b).first->second;
}

LatticeVector ClassGroup::lattice_point(const Monomial& a, const DegreeClass& gamma) const {
    if (a.size() != num_vars()) throw ValidationError("exponent vector has wrong length");
    IntegerMatrix rel = IntegerMatrix::from_rows(fan_->rays(), fan_->ambient());
    LatticeVector rhs(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) rhs[i] = Integer(a[i]) - gamma.rep[i];
    auto m = solve_integer(rel, rhs);
    if (!m) throw ValidationError("monomial is not of the given degree");
    return *m;
}

bool degrees_equal(const DegreeClass& a, const DegreeClass& b) {
    require_same_group(a, b);
    return a == b;
}

DegreeClass degree_of_monomial(const ClassGroup& g, const Monomial& a) { return g.of_monomial(a); }

std::optional<std::size_t> GradedPieceBasis::find(const Monomial& a) const {
    auto it = index.find(a);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

GradedPieceBasis monomial_basis(const DegreeClass& gamma) {
    const ClassGroup& g = group_of(gamma);
    const Fan& f = g.fan();
    HPolytope h;
    h.ambient = f.ambient();
    for (std::size_t i = 0; i < f.num_rays(); ++i) h.inequalities.push_back({f.ray(i), -gamma.rep[i]});
    LatticePolytope p = vertices_from_inequalities(h);
    GradedPieceBasis out;
    out.degree = gamma;
    if (!p.is_empty()) {
        for (const auto& m : lattice_points(p)) {
            Monomial a(f.num_rays());
            for (std::size_t i = 0; i < a.size(); ++i) a[i] = to_long(gamma.rep[i] + pairing(m, f.ray(i)));
            out.monomials.push_back(std::move(a));
        }
    }
    std::sort(out.monomials.begin(), out.monomials.end(), std::greater<>());
    for (std::size_t k = 0; k < out.monomials.size(); ++k) out.index.emplace(out.monomials[k], k);
    return out;
}

GradedPolynomial::GradedPolynomial(DegreeClass degree) : degree_(std::move(degree)) { group_of(degree_); }

GradedPolynomial::GradedPolynomial(DegreeClass degree, const std::map<Monomial, Rational>& terms)
    : degree_(std::move(degree)) {
    for (const auto& [a, c] : terms) add_term(a, c);
}

GradedPolynomial GradedPolynomial::monomial(const DegreeClass& degree, const Monomial& a, const Rational& c) {
    GradedPolynomial p(degree);
    p.add_term(a, c);
    return p;
}

GradedPolynomial GradedPolynomial::from_monomial(const ClassGroup& g, const Monomial& a, const Rational& c) {
    return monomial(g.of_monomial(a), a, c);
}

std::size_t GradedPolynomial::num_vars() const { return degree_.rep.size(); }

void GradedPolynomial::add_term(const Monomial& a, const Rational& c) {
    if (a.size() != num_vars()) throw ValidationError("exponent vector has wrong length");
    for (long e : a)
        if (e < 0) throw ValidationError("negative exponent");
    if (c == 0) return;
    if (group_of(degree_).of_monomial(a) != degree_)
        throw ValidationError("polynomial is not homogeneous of the declared degree");
    auto [it, fresh] = terms_.emplace(a, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

GradedPolynomial GradedPolynomial::derivative(std::size_t i) const {
    const ClassGroup& g = group_of(degree_);
    GradedPolynomial out(degree_ - g.variable(i));
    for (const auto& [a, c] : terms_) {
        if (a[i] == 0) continue;
        Monomial b = a;
        --b[i];
        out.terms_.emplace(std::move(b), c * a[i]);
    }
    return out;
}

GradedPolynomial GradedPolynomial::weighted_partial(std::size_t i) const {
    GradedPolynomial out(degree_);
    for (const auto& [a, c] : terms_)
        if (a[i] != 0) out.terms_.emplace(a, c * a[i]);
    return out;
}

GradedPolynomial GradedPolynomial::times_monomial(const Monomial& a) const {
    const ClassGroup& g = group_of(degree_);
    GradedPolynomial out(degree_ + g.of_monomial(a));
    for (const auto& [b, c] : terms_) {
        Monomial s = b;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += a[i];
        out.terms_.emplace(std::move(s), c);
    }
    return out;
}

std::optional<GradedPolynomial> GradedPolynomial::divide_by_monomial(const Monomial& a) const {
    const ClassGroup& g = group_of(degree_);
    GradedPolynomial out(degree_ - g.of_monomial(a));
    for (const auto& [b, c] : terms_) {
        Monomial s = b;
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] -= a[i];
            if (s[i] < 0) return std::nullopt;
        }
        out.terms_.emplace(std::move(s), c);
    }
    return out;
}

GradedPolynomial& GradedPolynomial::operator+=(const GradedPolynomial& o) {
    require_same_group(degree_, o.degree_);
    if (o.is_zero()) return *this;
    if (is_zero()) degree_ = o.degree_;
    else if (o.degree_ != degree_) throw ValidationError("adding polynomials of different degrees");
    for (const auto& [a, c] : o.terms_) {
        auto [it, fresh] = terms_.emplace(a, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

GradedPolynomial& GradedPolynomial::operator-=(const GradedPolynomial& o) {
    GradedPolynomial neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

GradedPolynomial& GradedPolynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [a, x] : terms_) x *= c;
    return *this;
}

GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
GradedPolynomial operator*(const Rational& c, GradedPolynomial a) { return a *= c; }

GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    require_same_group(a.degree(), b.degree());
    std::map<Monomial, Rational> acc;
    for (const auto& [x, c] : a.terms())
        for (const auto& [y, e] : b.terms()) {
            Monomial s = x;
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += y[i];
            acc[s] += c * e;
        }
    GradedPolynomial out(a.degree() + b.degree());
    for (auto& [m, c] : acc)
        if (c != 0) out.add_term(m, c);
    return out;
}

Monomial product_of_variables(std::size_t n) { return Monomial(n, 1); }

std::vector<GradedPolynomial> partials(const GradedPolynomial& f) {
    std::vector<GradedPolynomial> out;
    for (std::size_t i = 0; i < f.num_vars(); ++i) out.push_back(f.derivative(i));
    return out;
}

std::vector<GradedPolynomial> weighted_partials(const GradedPolynomial& f) {
    std::vector<GradedPolynomial> out;
    for (std::size_t i = 0; i < f.num_vars(); ++i) out.push_back(f.weighted_partial(i));
    return out;
}

SparseVector GradedSubspace::coordinates(const GradedPolynomial& h) const {
    if (!h.is_zero() && h.degree() != basis->degree)
        throw ValidationError("polynomial degree does not match the graded piece");
    std::map<std::size_t, Rational> acc;
    for (const auto& [a, c] : h.terms()) {
        auto k = basis->find(a);
        if (!k) throw InconsistencyError("monomial missing from the graded piece basis");
        acc[*k] += c;
    }
    return sorted_sparse(acc);
}

GradedPolynomial GradedSubspace::polynomial(const SparseVector& v) const {
    GradedPolynomial p(basis->degree);
    for (const auto& [k, c] : v) p.add_term(basis->monomials.at(k), c);
    return p;
}

bool GradedSubspace::contains(const GradedPolynomial& h) const { return space.contains(coordinates(h)); }

std::vector<Monomial> GradedSubspace::standard_monomials() const {
    std::vector<Monomial> out;
    for (std::size_t k : space.free_columns()) out.push_back(basis->monomials[k]);
    return out;
}

GradedSubspace ideal_graded_piece(const std::vector<GradedPolynomial>& generators, const DegreeClass& gamma) {
    const ClassGroup& g = group_of(gamma);
    GradedSubspace s{g.basis(gamma), EchelonSpace(0)};
    s.space = EchelonSpace(s.basis->size());
    for (const auto& gen : generators) {
        require_same_group(gen.degree(), gamma);
        if (gen.is_zero()) continue;
        auto cofactors = g.basis(gamma - gen.degree());
        for (const auto& u : cofactors->monomials) {
            std::map<std::size_t, Rational> acc;
            for (const auto& [a, c] : gen.terms()) {
                Monomial p = a;
                for (std::size_t i = 0; i < p.size(); ++i) p[i] += u[i];
                auto k = s.basis->find(p);
                if (!k) throw InconsistencyError("product monomial outside the graded piece");
                acc[*k] += c;
            }
            s.space.insert(sorted_sparse(acc));
        }
    }
    return s;
}

GradedSubspace jacobian_graded_piece(const GradedPolynomial& f, const DegreeClass& gamma) {
    return ideal_graded_piece(partials(f), gamma);
}

GradedSubspace j0_graded_piece(const GradedPolynomial& f, const DegreeClass& gamma) {
    return ideal_graded_piece(weighted_partials(f), gamma);
}

GradedSubspace j1_graded_piece(const GradedPolynomial& f, const DegreeClass& gamma) {
    const ClassGroup& g = group_of(gamma);
    const Monomial all = product_of_variables(g.num_vars());
    GradedSubspace j0 = j0_graded_piece(f, gamma + g.anticanonical());
    GradedSubspace out{g.basis(gamma), EchelonSpace(0)};
    out.space = EchelonSpace(out.basis->size());
    std::vector<SparseVector> images;
    images.reserve(out.basis->size());
    for (const auto& u : out.basis->monomials) {
        Monomial p = u;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += all[i];
        auto k = j0.basis->find(p);
        if (!k) throw InconsistencyError("product monomial outside the graded piece");
        images.push_back(j0.space.reduce({{*k, Rational(1)}}));
    }
    for (const auto& v : sparse_kernel(images, j0.basis->size())) out.space.insert(v);
    return out;
}

std::size_t r_dim(const GradedPolynomial& f, const DegreeClass& gamma) {
    return jacobian_graded_piece(f, gamma).codim();
}

std::size_t r0_dim(const GradedPolynomial& f, const DegreeClass& gamma) { return j0_graded_piece(f, gamma).codim(); }

std::size_t r1_dim(const GradedPolynomial& f, const DegreeClass& gamma) { return j1_graded_piece(f, gamma).codim(); }

GradedPolynomial reduce_modulo(const GradedSubspace& s, const GradedPolynomial& h) {
    return s.polynomial(s.space.reduce(s.coordinates(h)));
}

}  // namespace semiample
