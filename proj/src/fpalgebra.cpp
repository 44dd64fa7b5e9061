#include "cmq/fpalgebra.hpp"

#include <stdexcept>

namespace cmq {

namespace {

Int md(const Int& x, const Int& p) {
    Int y = x % p;
    if (y < 0) y += p;
    return y;
}

Int inv_mod(const Int& x, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0) throw std::domain_error("inv_mod: not invertible");
    return r;
}

}  // namespace

std::vector<FVec> kernel_mod(const IntMat& m0, const Int& p) {
    const std::size_t rows = m0.rows(), n = m0.cols();
    IntMat w = m0;
    std::vector<std::size_t> pc;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && md(w(piv, col), p) == 0) ++piv;
        if (piv == rows) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(w(row, j), w(piv, j));
        Int iv = inv_mod(md(w(row, col), p), p);
        for (std::size_t j = 0; j < n; ++j) w(row, j) = md(w(row, j) * iv, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || md(w(i, col), p) == 0) continue;
            Int f = w(i, col);
            for (std::size_t j = 0; j < n; ++j) w(i, j) = md(w(i, j) - f * w(row, j), p);
        }
        pc.push_back(col);
        ++row;
    }
    std::vector<bool> isp(n, false);
    for (auto c : pc) isp[c] = true;
    std::vector<FVec> ker;
    for (std::size_t fr = 0; fr < n; ++fr) {
        if (isp[fr]) continue;
        FVec v(n, 0);
        v[fr] = 1;
        for (std::size_t i = 0; i < pc.size(); ++i) v[pc[i]] = md(-w(i, fr), p);
        ker.push_back(v);
    }
    return ker;
}


Subspace Subspace::span(const Int& p, std::size_t n, const std::vector<FVec>& vs) {
    Subspace s;
    s.p = p;
    s.n = n;
    for (auto v : vs) {
        v = s.reduce(v);
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        Int iv = inv_mod(v[piv], p);
        for (auto& x : v) x = md(x * iv, p);
        for (auto& r : s.rows) {
            if (r[piv] == 0) continue;
            Int f = r[piv];
            for (std::size_t i = 0; i < n; ++i) r[i] = md(r[i] - f * v[i], p);
        }
        // keep rows sorted by pivot
        std::size_t pos = 0;
        while (pos < s.pivots.size() && s.pivots[pos] < piv) ++pos;
        s.rows.insert(s.rows.begin() + static_cast<long>(pos), v);
        s.pivots.insert(s.pivots.begin() + static_cast<long>(pos), piv);
    }
    return s;
}

FVec Subspace::reduce(FVec v) const {
    for (auto& x : v) x = md(x, p);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Int f = v[pivots[k]];
        if (f == 0) continue;
        for (std::size_t i = 0; i < n; ++i) v[i] = md(v[i] - f * rows[k][i], p);
    }
    return v;
}

bool Subspace::contains(const FVec& v) const {
    for (const auto& x : reduce(v))
        if (x != 0) return false;
    return true;
}

std::vector<std::size_t> Subspace::free_columns() const {
    std::vector<bool> piv(n, false);
    for (auto c : pivots) piv[c] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (!piv[i]) out.push_back(i);
    return out;
}

Int FpAlgebra::mod(const Int& x) const { return md(x, p); }

FVec FpAlgebra::mul(const FVec& a, const FVec& b) const {
    FVec r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            Int ab = a[i] * b[j];
            const FVec& tij = t[i][j];
            for (std::size_t k = 0; k < n; ++k)
                if (tij[k] != 0) r[k] += ab * tij[k];
        }
    }
    for (auto& x : r) x = md(x, p);
    return r;
}

FVec FpAlgebra::pow(FVec a, Int e) const {
    FVec r = one;
    while (e > 0) {
        if (e % 2 == 1) r = mul(r, a);
        e /= 2;
        if (e > 0) a = mul(a, a);
    }
    return r;
}

FVec FpAlgebra::add(const FVec& a, const FVec& b) const {
    FVec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = md(a[i] + b[i], p);
    return r;
}

FVec FpAlgebra::sub(const FVec& a, const FVec& b) const {
    FVec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = md(a[i] - b[i], p);
    return r;
}

FVec FpAlgebra::scale(const FVec& a, const Int& c) const {
    FVec r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = md(a[i] * c, p);
    return r;
}

bool FpAlgebra::is_zero(const FVec& a) const {
    for (const auto& x : a)
        if (md(x, p) != 0) return false;
    return true;
}

FVec FpAlgebra::basis(std::size_t i) const {
    FVec v(n, 0);
    v[i] = 1;
    return v;
}

FVec FpQuotient::project(const FVec& x) const {
    FVec r = ideal.reduce(x);
    FVec y(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) y[i] = r[cols[i]];
    return y;
}

FVec FpQuotient::lift(const FVec& y) const {
    FVec x(ideal.n, 0);
    for (std::size_t i = 0; i < cols.size(); ++i) x[cols[i]] = y[i];
    return x;
}

FpQuotient fp_quotient(const FpAlgebra& a, const Subspace& ideal) {
    FpQuotient q;
    q.ideal = ideal;
    q.cols = ideal.free_columns();
    q.alg.p = a.p;
    q.alg.n = q.cols.size();
    q.alg.t.assign(q.alg.n, std::vector<FVec>(q.alg.n));
    for (std::size_t i = 0; i < q.alg.n; ++i)
        for (std::size_t j = 0; j < q.alg.n; ++j)
            q.alg.t[i][j] = q.project(a.mul(a.basis(q.cols[i]), a.basis(q.cols[j])));
    q.alg.one = q.project(a.one);
    return q;
}

Subspace fp_radical(const FpAlgebra& a) {
    Int q = a.p;
    while (q < Int(static_cast<long>(a.n))) q *= a.p;
    IntMat m(a.n, a.n);
    for (std::size_t i = 0; i < a.n; ++i) {
        FVec r = a.pow(a.basis(i), q);
        for (std::size_t k = 0; k < a.n; ++k) m(k, i) = r[k];
    }
    auto ker = kernel_mod(m, a.p);
    return Subspace::span(a.p, a.n, ker);
}

FVec fp_minpoly(const FpAlgebra& a, const FVec& x) { return fp_minpoly(a, x, a.one); }

FVec fp_minpoly(const FpAlgebra& a, const FVec& x, const FVec& unit) {
    std::vector<FVec> powers{unit};
    for (std::size_t d = 1; d <= a.n; ++d) {
        powers.push_back(a.mul(powers.back(), x));
        std::vector<FVec> prev(powers.begin(), powers.end() - 1);
        Subspace sp = Subspace::span(a.p, a.n, prev);
        if (!sp.contains(powers[d])) continue;
        // solve sum c_i x^i = x^d
        const std::size_t m = d;
        IntMat w(a.n, m + 1);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < a.n; ++k) w(k, i) = powers[i][k];
        for (std::size_t k = 0; k < a.n; ++k) w(k, m) = powers[d][k];
        std::vector<std::size_t> pc;
        std::size_t row = 0;
        for (std::size_t col = 0; col < m && row < a.n; ++col) {
            std::size_t piv = row;
            while (piv < a.n && md(w(piv, col), a.p) == 0) ++piv;
            if (piv == a.n) continue;
            for (std::size_t j = 0; j <= m; ++j) std::swap(w(row, j), w(piv, j));
            Int iv = inv_mod(md(w(row, col), a.p), a.p);
            for (std::size_t j = 0; j <= m; ++j) w(row, j) = md(w(row, j) * iv, a.p);
            for (std::size_t i = 0; i < a.n; ++i) {
                if (i == row || md(w(i, col), a.p) == 0) continue;
                Int f = w(i, col);
                for (std::size_t j = 0; j <= m; ++j) w(i, j) = md(w(i, j) - f * w(row, j), a.p);
            }
            pc.push_back(col);
            ++row;
        }
        FVec c(d + 1, 0);
        for (std::size_t i = 0; i < pc.size(); ++i) c[pc[i]] = md(-w(i, m), a.p);
        c[d] = 1;
        return c;
    }
    throw std::logic_error("fp_minpoly: no relation found");
}

std::vector<FVec> fp_idempotents(const FpAlgebra& s) {
    // Berlekamp subalgebra: x^p = x
    IntMat m(s.n, s.n);
    for (std::size_t i = 0; i < s.n; ++i) {
        FVec r = s.pow(s.basis(i), s.p);
        for (std::size_t k = 0; k < s.n; ++k) m(k, i) = md(r[k] - (k == i ? 1 : 0), s.p);
    }
    std::vector<FVec> ber;
    for (auto& v : kernel_mod(m, s.p)) ber.push_back(v);
    std::vector<FVec> es{s.one};
    if (ber.size() <= 1) return es;
    for (const auto& b : ber) {
        std::vector<FVec> next;
        for (const auto& e : es) {
            FVec c = s.mul(e, b);
            FVec mp = fp_minpoly(s, c, e);
            const std::size_t d = mp.size() - 1;
            if (d == 1) {
                next.push_back(e);
                continue;
            }
            std::vector<Int> roots;
            if (s.p > 100000000) throw std::runtime_error("fp_idempotents: prime too large for root search");
            for (Int r = 0; r < s.p && roots.size() < d; ++r) {
                Int v = 0;
                for (std::size_t i = mp.size(); i-- > 0;) v = md(v * r + mp[i], s.p);
                if (v == 0) roots.push_back(r);
            }
            if (roots.size() != d) throw std::logic_error("fp_idempotents: minimal polynomial does not split");
            for (std::size_t i = 0; i < d; ++i) {
                FVec ei = e;
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == i) continue;
                    FVec fct = s.sub(c, s.scale(e, roots[j]));
                    Int den = inv_mod(md(roots[i] - roots[j], s.p), s.p);
                    ei = s.mul(ei, s.scale(fct, den));
                }
                next.push_back(ei);
            }
        }
        es = std::move(next);
        if (es.size() == ber.size()) break;
    }
    return es;
}

}  // namespace cmq
