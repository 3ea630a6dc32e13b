#include "semiample/lattice.hpp"

#include "semiample/errors.hpp"

#include <algorithm>

namespace semiample {

Integer pairing(const LatticeVector& m, const LatticeVector& n) {
    if (m.size() != n.size()) throw ValidationError("pairing: length mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * n[i];
    return s;
}

Rational pairing(const RationalVector& m, const LatticeVector& n) {
    if (m.size() != n.size()) throw ValidationError("pairing: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * n[i];
    return s;
}

Rational pairing(const RationalVector& m, const RationalVector& n) {
    if (m.size() != n.size()) throw ValidationError("pairing: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * n[i];
    return s;
}

Integer content(const LatticeVector& v) {
    Integer g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

bool is_zero(const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

LatticeVector primitivize(const LatticeVector& v) {
    Integer g = content(v);
    if (g == 0) throw ValidationError("primitivize: zero vector");
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

LatticeVector primitive_direction(const RationalVector& v) {
    Integer l = common_denominator(v);
    LatticeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rational t = v[i] * l;
        r[i] = t.get_num();
    }
    return primitivize(r);
}

Integer determinant(const IntegerMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntegerMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

// Row and column operations mirrored on the transforms and their inverses.
struct SnfState {
    IntegerMatrix D, U, V, Ui, Vi;

    void row_sub(std::size_t i, std::size_t t, const Integer& q) {  // row_i -= q row_t
        for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) -= q * D(t, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) -= q * U(t, j);
        for (std::size_t r = 0; r < Ui.rows(); ++r) Ui(r, t) += q * Ui(r, i);
    }
    void col_sub(std::size_t j, std::size_t t, const Integer& q) {  // col_j -= q col_t
        for (std::size_t i = 0; i < D.rows(); ++i) D(i, j) -= q * D(i, t);
        for (std::size_t i = 0; i < V.rows(); ++i) V(i, j) -= q * V(i, t);
        for (std::size_t c = 0; c < Vi.cols(); ++c) Vi(t, c) += q * Vi(j, c);
    }
    void row_swap(std::size_t a, std::size_t b) {
        D.swap_rows(a, b);
        U.swap_rows(a, b);
        Ui.swap_cols(a, b);
    }
    void col_swap(std::size_t a, std::size_t b) {
        D.swap_cols(a, b);
        V.swap_cols(a, b);
        Vi.swap_rows(a, b);
    }
    void row_negate(std::size_t i) {
        for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) = -D(i, j);
        for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
        for (std::size_t r = 0; r < Ui.rows(); ++r) Ui(r, i) = -Ui(r, i);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfState s{a, IntegerMatrix::identity(m), IntegerMatrix::identity(n),
               IntegerMatrix::identity(m), IntegerMatrix::identity(n)};
    std::vector<Integer> inv;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // smallest nonzero entry of the trailing block
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (s.D(i, j) != 0 && (pi == m || abs(s.D(i, j)) < abs(s.D(pi, pj)))) pi = i, pj = j;
        if (pi == m) break;
        s.row_swap(t, pi);
        s.col_swap(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.D(i, t) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), s.D(i, t).get_mpz_t(), s.D(t, t).get_mpz_t());
                s.row_sub(i, t, q);
                if (s.D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.D(t, j) == 0) continue;
                Integer q;
                mpz_tdiv_q(q.get_mpz_t(), s.D(t, j).get_mpz_t(), s.D(t, t).get_mpz_t());
                s.col_sub(j, t, q);
                if (s.D(t, j) != 0) clean = false;
            }
            if (!clean) {
                // a smaller remainder appeared in row or column t; make it the pivot
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (s.D(i, t) != 0 && abs(s.D(i, t)) < abs(s.D(bi, bj))) bi = i, bj = t;
                for (std::size_t j = t + 1; j < n; ++j)
                    if (s.D(t, j) != 0 && abs(s.D(t, j)) < abs(s.D(bi, bj))) bi = t, bj = j;
                s.row_swap(t, bi);
                s.col_swap(t, bj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(s.D(i, j).get_mpz_t(), s.D(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            s.row_sub(t, bad, Integer(-1));
        }
        if (s.D(t, t) < 0) s.row_negate(t);
        inv.push_back(s.D(t, t));
    }
    return SmithForm{s.U, s.V, s.D, s.Ui, s.Vi, inv};
}

std::size_t rank(const IntegerMatrix& a) {
    // fraction-free elimination
    IntegerMatrix m = a;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Integer f = m(i, c), g = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * g - m(r, j) * f;
            Integer cg = content(m.row(i));
            if (cg > 1)
                for (std::size_t j = c; j < m.cols(); ++j) m(i, j) /= cg;
        }
        ++r;
    }
    return r;
}

std::vector<LatticeVector> integer_kernel(const IntegerMatrix& a) {
    SmithForm s = smith_normal_form(a);
    // A V = U^{-1} D, so the columns of V beyond the rank span the kernel.
    std::vector<LatticeVector> basis;
    for (std::size_t j = s.rank(); j < a.cols(); ++j) basis.push_back(s.V.column(j));
    return basis;
}

std::optional<LatticeVector> solve_integer(const IntegerMatrix& a, const LatticeVector& b) {
    if (b.size() != a.rows()) throw ValidationError("solve_integer: length mismatch");
    SmithForm s = smith_normal_form(a);
    // D y = U b, x = V y
    LatticeVector ub = s.U * b;
    LatticeVector y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < s.rank()) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), s.invariants[i].get_mpz_t())) return std::nullopt;
            y[i] = ub[i] / s.invariants[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V * y;
}

Integer cone_multiplicity(const std::vector<LatticeVector>& generators) {
    if (generators.empty()) return 1;
    IntegerMatrix g = IntegerMatrix::from_rows(generators, generators[0].size());
    SmithForm s = smith_normal_form(g);
    if (s.rank() != generators.size())
        throw PreconditionError("cone_multiplicity: generators are linearly dependent",
                                "multiplicity of a simplicial cone");
    Integer p = 1;
    for (const auto& d : s.invariants) p *= d;
    return p;
}

QuotientLattice::QuotientLattice(const std::vector<LatticeVector>& span, std::size_t ambient)
    : ambient_(ambient) {
    IntegerMatrix cols = IntegerMatrix::from_columns(span, ambient);
    SmithForm s = smith_normal_form(cols);
    const std::size_t k = s.rank();
    projection_ = IntegerMatrix(ambient - k, ambient);
    section_ = IntegerMatrix(ambient, ambient - k);
    for (std::size_t i = k; i < ambient; ++i)
        for (std::size_t j = 0; j < ambient; ++j) {
            projection_(i - k, j) = s.U(i, j);
            section_(j, i - k) = s.U_inverse(j, i);
        }
}

LatticeVector QuotientLattice::project(const LatticeVector& v) const { return projection_ * v; }

LatticeVector QuotientLattice::lift(const LatticeVector& q) const { return section_ * q; }

}  // namespace semiample
