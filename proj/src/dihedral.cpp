#include "dihedral.hpp"

#include <algorithm>
#include <cmath>

#include "bigrat.hpp"
#include "common.hpp"

namespace thd {

namespace {

int64_t isqrt_i64(int64_t n) {
    if (n < 0) fail(ErrorCode::Internal, "isqrt of a negative number");
    int64_t s = int64_t(std::sqrt(double(n)));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

bool squarefree(int64_t n) {
    if (n < 0) n = -n;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

bool is_fundamental(int64_t D) {
    if (D >= 0) return false;
    int64_t m4 = ((D % 4) + 4) % 4;
    if (m4 == 1) return squarefree(D);
    if (m4 == 0) {
        int64_t m = D / 4;
        int64_t mm4 = ((m % 4) + 4) % 4;
        return (mm4 == 2 || mm4 == 3) && squarefree(m);
    }
    return false;
}

// Determinant of a square Rat matrix by fraction-exact elimination.
Rat rat_det(std::vector<std::vector<Rat>> m) {
    const size_t n = m.size();
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        Rat inv = Rat(1) / m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col].is_zero()) continue;
            Rat f = m[row][col] * inv;
            for (size_t j = col; j < n; ++j) m[row][j] = m[row][j] - f * m[col][j];
        }
    }
    return det;
}

Rat resultant(const std::vector<Rat>& f, const std::vector<Rat>& g) {
    const size_t n = f.size() - 1, m = g.size() - 1;
    std::vector<std::vector<Rat>> syl(n + m, std::vector<Rat>(n + m, Rat(0)));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= n; ++j) syl[i][i + j] = f[n - j];
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j <= m; ++j) syl[m + i][i + j] = g[m - j];
    return rat_det(std::move(syl));
}

// Discriminant of a monic integer polynomial, exact.
Rat poly_disc(const std::vector<int64_t>& poly) {
    const size_t n = poly.size() - 1;
    std::vector<Rat> f(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) f[i] = Rat(poly[i]);
    std::vector<Rat> df(n);
    for (size_t i = 1; i <= n; ++i) df[i - 1] = Rat(int64_t(i)) * f[i];
    Rat res = resultant(f, df);
    return (n * (n - 1) / 2) % 2 == 0 ? res : -res;
}

struct ClassTable {
    int64_t D;
    uint32_t h;
    QuadForm principal;
    std::vector<QuadForm> pairs;  // one representative per {Q, Q^-1} pair
    std::vector<int64_t> poly;    // principality-detecting polynomial
    int64_t poly_disc_pin;
};

const ClassTable* class_table(int64_t D) {
    static const ClassTable t23{-23, 3, {1, 1, 6}, {{2, 1, 3}}, {-1, -1, 0, 1}, -23};
    static const ClassTable t47{-47, 5, {1, 1, 12}, {{2, 1, 6}, {3, 1, 4}},
                                {1, 0, -1, 2, -2, 1}, 2209};
    if (D == -23) return &t23;
    if (D == -47) return &t47;
    return nullptr;
}

const ClassTable& checked_table(int64_t D) {
    const ClassTable* t = class_table(D);
    if (!t)
        fail(ErrorCode::UnknownDiscriminant,
             "no class structure table for discriminant " + std::to_string(D));
    auto forms = reduced_forms(D);
    if (forms.size() != t->h)
        fail(ErrorCode::UnsupportedClassNumber, "class number changed under enumeration");
    auto present = [&](const QuadForm& q) {
        return std::find(forms.begin(), forms.end(), q) != forms.end();
    };
    if (!present(t->principal)) fail(ErrorCode::Internal, "principal form not reduced");
    for (const auto& q : t->pairs) {
        if (!present(q) || !present(QuadForm{q.a, -q.b, q.c}))
            fail(ErrorCode::Internal, "class pair not reduced");
        if (q.b * q.b - 4 * q.a * q.c != D) fail(ErrorCode::Internal, "table discriminant drift");
    }
    return *t;
}

}  // namespace

std::vector<QuadForm> reduced_forms(int64_t D) {
    if (!is_fundamental(D))
        fail(ErrorCode::NotFundamental,
             "discriminant " + std::to_string(D) + " is not fundamental");
    std::vector<QuadForm> out;
    for (int64_t b = (D % 2 == 0) ? 0 : 1; b * b <= -D / 3; b += 2) {
        int64_t m = (b * b - D) / 4;  // = a*c
        for (int64_t a = std::max<int64_t>(b, 1); a * a <= m; ++a) {
            if (m % a) continue;
            int64_t c = m / a;
            out.push_back({a, b, c});
            if (b > 0 && b < a && a < c) out.push_back({a, -b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadForm& x, const QuadForm& y) {
        if (x.a != y.a) return x.a < y.a;
        return x.b > y.b;  // +b before -b
    });
    return out;
}

std::vector<uint32_t> theta_counts(const QuadForm& Q, uint32_t prec) {
    if (Q.a <= 0 || 4 * Q.a * Q.c - Q.b * Q.b <= 0)
        fail(ErrorCode::UsageError, "theta needs a positive-definite form");
    std::vector<uint32_t> r(prec, 0);
    if (prec == 0) return r;
    const int64_t D = Q.b * Q.b - 4 * Q.a * Q.c;
    const int64_t M = int64_t(prec) - 1;
    const int64_t yb = isqrt_i64(4 * Q.a * M / (-D)) + 1;
    for (int64_t y = -yb; y <= yb; ++y) {
        int64_t disc = D * y * y + 4 * Q.a * M;
        if (disc < 0) continue;
        int64_t s = isqrt_i64(disc);
        int64_t lo = (-Q.b * y - s) / (2 * Q.a) - 2;
        int64_t hi = (-Q.b * y + s) / (2 * Q.a) + 2;
        for (int64_t x = lo; x <= hi; ++x) {
            int64_t n = Q.a * x * x + Q.b * x * y + Q.c * y * y;
            if (n >= 0 && n <= M) r[size_t(n)]++;
        }
    }
    return r;
}

std::vector<int64_t> dihedral_coeffs_23(uint32_t prec) {
    const ClassTable& t = checked_table(-23);
    auto ra = theta_counts(t.principal, prec);
    auto rb = theta_counts(t.pairs[0], prec);
    std::vector<int64_t> out(prec);
    for (uint32_t n = 0; n < prec; ++n) {
        int64_t d = int64_t(ra[n]) - int64_t(rb[n]);
        if (d % 2) fail(ErrorCode::Internal, "odd theta difference");
        out[n] = d / 2;
    }
    return out;
}

QExpansion weight_one_dihedral(int64_t D, const Ctx& F, uint32_t prec, uint32_t variant) {
    const ClassTable& t = checked_table(D);
    const uint64_t p = F->p();
    if (p == 2) fail(ErrorCode::UsageError, "characteristic 2 is unsupported here");
    QExpansion out(F, prec);
    if (prec == 0) return out;
    Fq inv2 = F->from_int(2).inv();

    if (D == -23) {
        auto co = dihedral_coeffs_23(prec);
        for (uint32_t n = 0; n < prec; ++n)
            if (co[n] % int64_t(p) != 0) out.set_coeff(n, F->from_int(co[n]));
        return out;
    }

    // D = -47: a_n = (r_A + s_B r_B + s_C r_C) / 2 with s_X = zeta^e + zeta^-e.
    if (variant != 1 && variant != 2) fail(ErrorCode::UsageError, "variant must be 1 or 2");
    Fq sB = F->from_int(2), sC = sB;
    if (p != 5) {
        Fq w = F->root_of_unity(5);
        Fq w1 = w + w.pow(4), w2 = w.pow(2) + w.pow(3);
        sB = variant == 1 ? w1 : w2;
        sC = variant == 1 ? w2 : w1;
    }
    auto ra = theta_counts(t.principal, prec);
    auto rb = theta_counts(t.pairs[0], prec);
    auto rc = theta_counts(t.pairs[1], prec);
    for (uint32_t n = 0; n < prec; ++n) {
        Fq a = (F->from_int(int64_t(ra[n])) + sB * F->from_int(int64_t(rb[n])) +
                sC * F->from_int(int64_t(rc[n]))) *
               inv2;
        if (!a.is_zero()) out.set_coeff(n, a);
    }
    return out;
}

std::vector<int64_t> class_poly(int64_t D) {
    const ClassTable& t = checked_table(D);
    Rat disc = poly_disc(t.poly);
    if (disc != Rat(t.poly_disc_pin))
        fail(ErrorCode::Internal, "class polynomial discriminant drift");
    return t.poly;
}

}  // namespace thd
