#include "semiample/lp.hpp"

#include "semiample/errors.hpp"

#include <algorithm>

namespace semiample {

std::optional<RationalVector> find_feasible_point(const RationalMatrix& A, const RationalVector& b,
                                                  const RationalMatrix& E, const RationalVector& e) {
    const std::size_t n = std::max(A.cols(), E.cols());
    const std::size_t mi = A.rows(), me = E.rows(), m = mi + me;
    if (b.size() != mi || e.size() != me || (mi && A.cols() != n) || (me && E.cols() != n))
        throw ValidationError("find_feasible_point: dimension mismatch");
    if (m == 0) return RationalVector(n);

    // Columns: x+ (n), x- (n), surplus (mi), artificial (m), rhs.
    const std::size_t art = 2 * n + mi, rhs = art + m, width = rhs + 1;
    RationalMatrix T(m, width);
    for (std::size_t i = 0; i < m; ++i) {
        const bool ineq = i < mi;
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& c = ineq ? A(i, j) : E(i - mi, j);
            T(i, j) = c;
            T(i, n + j) = -c;
        }
        if (ineq) T(i, 2 * n + i) = -1;
        T(i, rhs) = ineq ? b[i] : e[i - mi];
        if (T(i, rhs) < 0)
            for (std::size_t j = 0; j < rhs + 1; ++j) T(i, j) = -T(i, j);
        T(i, art + i) = 1;
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = art + i;

    // Phase-one objective row: sum of rows, i.e. reduced costs of minimizing the artificials.
    std::vector<Rational> obj(width);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < width; ++j) obj[j] += T(i, j);
    for (std::size_t i = 0; i < m; ++i) obj[art + i] = 0;

    for (;;) {
        std::size_t enter = width;
        for (std::size_t j = 0; j < rhs; ++j)
            if (obj[j] > 0) {
                enter = j;
                break;
            }
        if (enter == width) break;
        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T(i, enter) <= 0) continue;
            Rational ratio = T(i, rhs) / T(i, enter);
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) throw InconsistencyError("phase-one simplex is unbounded");
        Rational piv = T(leave, enter);
        for (std::size_t j = 0; j < width; ++j) T(leave, j) /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T(i, enter) == 0) continue;
            Rational f = T(i, enter);
            for (std::size_t j = 0; j < width; ++j)
                if (T(leave, j) != 0) T(i, j) -= f * T(leave, j);
        }
        if (obj[enter] != 0) {
            Rational f = obj[enter];
            for (std::size_t j = 0; j < width; ++j)
                if (T(leave, j) != 0) obj[j] -= f * T(leave, j);
        }
        basis[leave] = enter;
    }
    if (obj[rhs] != 0) return std::nullopt;

    RationalVector x(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) x[basis[i]] += T(i, rhs);
        else if (basis[i] < 2 * n) x[basis[i] - n] -= T(i, rhs);
    }
    return x;
}

}  // namespace semiample
