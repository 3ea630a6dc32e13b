#include "semiample/linalg.hpp"

#include "semiample/errors.hpp"

namespace semiample {

RowEchelon row_echelon(const RationalMatrix& a) {
    RationalMatrix m = a;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    RationalMatrix reduced(r, m.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) reduced(i, j) = m(i, j);
    return {reduced, pivots};
}

std::size_t rank(const RationalMatrix& a) { return row_echelon(a).pivots.size(); }

Rational determinant(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw ValidationError("determinant of a non-square matrix");
    RationalMatrix m = a;
    Rational det = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::size_t p = c;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) return 0;
        if (p != c) {
            m.swap_rows(c, p);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::vector<RationalVector> kernel(const RationalMatrix& a) {
    RowEchelon e = row_echelon(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(a.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(v);
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
    if (b.size() != a.rows()) throw ValidationError("solve: length mismatch");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    RowEchelon e = row_echelon(aug);
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    RationalVector x(a.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
    return x;
}

std::size_t rank_of_vectors(const std::vector<LatticeVector>& vs) {
    if (vs.empty()) return 0;
    return rank(to_rational(IntegerMatrix::from_rows(vs, vs[0].size())));
}

std::size_t rank_of_vectors(const std::vector<RationalVector>& vs) {
    if (vs.empty()) return 0;
    return rank(RationalMatrix::from_rows(vs, vs[0].size()));
}

namespace {

// gcd of all entries, stopping early once it reaches 1
Integer row_content(const std::vector<std::pair<std::size_t, Integer>>& r) {
    Integer g = 0;
    for (const auto& [c, x] : r) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

}  // namespace

Rational EchelonSpace::reduce_integral(const SparseVector& v, IntegerRow& w) const {
    Integer L = 1;
    for (const auto& [c, x] : v) {
        if (c >= columns_) throw ValidationError("vector has an entry beyond the column count");
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), x.get_den_mpz_t());
    }
    w.clear();
    w.reserve(v.size());
    for (const auto& [c, x] : v)
        if (x != 0) w.emplace_back(c, Integer(x.get_num() * (L / x.get_den())));
    Rational factor(Integer(1), L);
    factor.canonicalize();
    IntegerRow next;
    std::size_t pos = 0;
    while (pos < w.size()) {
        const long r = pivot_row_[w[pos].first];
        if (r < 0) {
            ++pos;
            continue;
        }
        const IntegerRow& row = rows_[static_cast<std::size_t>(r)];
        Integer a = row.front().second, b = w[pos].second, g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        a /= g;
        b /= g;
        // w <- a w - b row; the entry at pos cancels
        next.clear();
        next.reserve(w.size() + row.size());
        for (std::size_t i = 0; i < pos; ++i) next.emplace_back(w[i].first, w[i].second * a);
        std::size_t i = pos + 1, j = 1;
        while (i < w.size() || j < row.size()) {
            if (j == row.size() || (i < w.size() && w[i].first < row[j].first)) {
                next.emplace_back(w[i].first, w[i].second * a);
                ++i;
            } else if (i == w.size() || row[j].first < w[i].first) {
                next.emplace_back(row[j].first, -b * row[j].second);
                ++j;
            } else {
                Integer x = w[i].second * a - b * row[j].second;
                if (x != 0) next.emplace_back(w[i].first, std::move(x));
                ++i;
                ++j;
            }
        }
        std::swap(w, next);
        factor /= Rational(a);
        Integer content = row_content(w);
        if (content > 1) {
            for (auto& e : w) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), content.get_mpz_t());
            factor *= Rational(content);
        }
    }
    return factor;
}

SparseVector EchelonSpace::reduce(const SparseVector& v) const {
    IntegerRow w;
    Rational factor = reduce_integral(v, w);
    SparseVector out;
    out.reserve(w.size());
    for (auto& [c, x] : w) out.emplace_back(c, Rational(x) * factor);
    return out;
}

bool EchelonSpace::insert(const SparseVector& v) {
    IntegerRow w;
    reduce_integral(v, w);
    if (w.empty()) return false;
    Integer content = row_content(w);
    if (w.front().second < 0) content = -content;
    for (auto& e : w) mpz_divexact(e.second.get_mpz_t(), e.second.get_mpz_t(), content.get_mpz_t());
    pivot_row_[w.front().first] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(w));
    return true;
}

std::vector<std::size_t> EchelonSpace::free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < columns_; ++c)
        if (pivot_row_[c] < 0) out.push_back(c);
    return out;
}

std::vector<std::size_t> EchelonSpace::pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < columns_; ++c)
        if (pivot_row_[c] >= 0) out.push_back(c);
    return out;
}

std::vector<SparseVector> EchelonSpace::basis_rows() const {
    std::vector<SparseVector> out;
    for (std::size_t c : pivots()) {
        SparseVector r;
        for (const auto& [j, x] : rows_[static_cast<std::size_t>(pivot_row_[c])]) r.emplace_back(j, Rational(x));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SparseVector> sparse_kernel(const std::vector<SparseVector>& images, std::size_t target_columns) {
    // Augmented rows [image | e_i]; a row whose image part reduces to zero is a kernel vector.
    EchelonSpace space(target_columns + images.size());
    std::vector<SparseVector> out;
    for (std::size_t i = 0; i < images.size(); ++i) {
        SparseVector row = images[i];
        row.emplace_back(target_columns + i, Rational(1));
        SparseVector r = space.reduce(row);
        if (r.empty()) throw InconsistencyError("sparse_kernel: identity part vanished");
        if (r.front().first >= target_columns) {
            SparseVector k;
            k.reserve(r.size());
            for (const auto& [j, val] : r) k.emplace_back(j - target_columns, val);
            out.push_back(std::move(k));
        }
        space.insert(r);
    }
    return out;
}

}  // namespace semiample
