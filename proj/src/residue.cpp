#include "cmq/residue.hpp"

#include <omp.h>

#include <cmath>
#include <stdexcept>

namespace cmq {

namespace {

long floor_div_ll(__int128 a, long b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return static_cast<long>(q);
}

long mod_ll(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long inv_mod_ll(long a, long m) {
    Int r;
    Int aa = mod_ll(a, m), mm = m;
    if (mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()) == 0) throw std::domain_error("inv_mod: not invertible");
    return r.get_si();
}

std::vector<long> small_primes_of(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

Int posmod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

}  // namespace

RVec ResidueRing::modulus_column(std::size_t i) const {
    RVec v{0, 0, 0, 0};
    for (std::size_t r = 0; r < n_; ++r) v[r] = h_[r][i];
    return v;
}

ResidueRing::ResidueRing(FieldPtr k, std::vector<Elem> ring_basis, const std::vector<Elem>& modulus_gens)
    : k_(std::move(k)), n_(ring_basis.size()), basis_(std::move(ring_basis)), mod_gens_(modulus_gens) {
    if (n_ == 4)
        cidx_ = {0, 1, 2, 3};
    else if (n_ == 2)
        cidx_ = {0, 2};
    else
        throw std::invalid_argument("ResidueRing: rank must be 2 or 4");
    RatMat b(n_, n_);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i) b(i, j) = basis_[j][cidx_[i]];
    binv_ = inverse(b);
    auto coords = [&](const Elem& x) {
        std::vector<Rat> v(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            Rat s = 0;
            for (std::size_t j = 0; j < n_; ++j) s += binv_(i, j) * x[cidx_[j]];
            v[i] = s;
        }
        return v;
    };
    // modulus in ring coordinates
    IntMat mm(n_, mod_gens_.size());
    for (std::size_t j = 0; j < mod_gens_.size(); ++j) {
        auto c = coords(mod_gens_[j]);
        for (std::size_t i = 0; i < n_; ++i) {
            if (c[i].get_den() != 1) throw std::invalid_argument("ResidueRing: modulus not inside the ring");
            mm(i, j) = c[i].get_num();
        }
    }
    auto hb = hnf_basis(mm);
    if (hb.cols() != n_) throw std::invalid_argument("ResidueRing: modulus not of full rank");
    size_ = 1;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (!hb(i, j).fits_slong_p() || abs(hb(i, j)) > Int(1L << 40)) throw std::overflow_error("ResidueRing: modulus too large");
            h_[i][j] = hb(i, j).get_si();
        }
        diag_.push_back(h_[i][i]);
        size_ *= h_[i][i];
        if (size_ > (1L << 50)) throw std::overflow_error("ResidueRing: ring too large");
    }
    primes_ = small_primes_of(size_);
    // structure constants
    t_.assign(n_, std::vector<std::vector<Int>>(n_, std::vector<Int>(n_)));
    red_.assign(n_, std::vector<RVec>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            auto c = coords(basis_[i] * basis_[j]);
            std::array<__int128, 4> v{0, 0, 0, 0};
            for (std::size_t l = 0; l < n_; ++l) {
                if (c[l].get_den() != 1) throw std::invalid_argument("ResidueRing: basis does not span a ring");
                t_[i][j][l] = c[l].get_num();
                Int r = c[l].get_num() % Int(size_);
                v[l] = r.get_si();
            }
            red_[i][j] = reduce(v);
        }
    auto oc = coords(k_->one());
    std::array<__int128, 4> ov{0, 0, 0, 0};
    for (std::size_t l = 0; l < n_; ++l) {
        if (oc[l].get_den() != 1) throw std::invalid_argument("ResidueRing: ring does not contain 1");
        ov[l] = oc[l].get_num().get_si();
    }
    one_ = reduce(ov);
}

ResidueRing ResidueRing::of_order(const Order& o, const Int& f) {
    Order ok = Order::maximal(o.field());
    std::vector<Elem> m;
    for (const auto& b : ok.basis()) m.push_back(b * Rat(f));
    return ResidueRing(o.field(), o.basis(), m);
}

ResidueRing ResidueRing::of_real_order(const Order& o, const Int& f) {
    RealOrder r0 = real_suborder(o);
    RealOrder rk = real_suborder(Order::maximal(o.field()));
    std::vector<Elem> m;
    for (const auto& b : rk.basis()) m.push_back(b * Rat(f));
    return ResidueRing(o.field(), r0.basis(), m);
}

bool ResidueRing::contains(const Elem& x) const {
    for (std::size_t i = 0; i < 4; ++i)
        if (n_ == 2 && (i == 1 || i == 3) && x[i] != 0) return false;
    for (std::size_t i = 0; i < n_; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < n_; ++j) s += binv_(i, j) * x[cidx_[j]];
        if (s.get_den() != 1) return false;
    }
    return true;
}

RVec ResidueRing::from_elem(const Elem& x) const {
    if (n_ == 2 && !x.is_real()) throw std::invalid_argument("ResidueRing: element not real");
    std::vector<Rat> c(n_);
    Int d = 1;
    for (std::size_t i = 0; i < n_; ++i) {
        Rat s = 0;
        for (std::size_t j = 0; j < n_; ++j) s += binv_(i, j) * x[cidx_[j]];
        c[i] = s;
        d = lcm(d, Int(s.get_den()));
    }
    Int sz = size_;
    if (gcd(d, sz) != 1) throw std::invalid_argument("ResidueRing: element not integral at the modulus");
    Int di;
    mpz_invert(di.get_mpz_t(), d.get_mpz_t(), sz.get_mpz_t());
    if (sz == 1) di = 0;
    std::array<__int128, 4> v{0, 0, 0, 0};
    for (std::size_t i = 0; i < n_; ++i) {
        Int num = c[i].get_num() * (d / Int(c[i].get_den()));
        Int r = (num * di) % sz;
        if (r < 0) r += sz;
        v[i] = r.get_si();
    }
    return reduce(v);
}

Elem ResidueRing::to_elem(const RVec& v) const {
    Elem x = k_->zero();
    for (std::size_t i = 0; i < n_; ++i)
        if (v[i] != 0) x = x + basis_[i] * Rat(Int(static_cast<long>(v[i])));
    return x;
}

RVec ResidueRing::reduce(std::array<__int128, 4> v) const {
    for (std::size_t i = n_; i-- > 0;) {
        long q = floor_div_ll(v[i], h_[i][i]);
        if (q != 0)
            for (std::size_t r = 0; r <= i; ++r) v[r] -= static_cast<__int128>(q) * h_[r][i];
    }
    RVec out{0, 0, 0, 0};
    for (std::size_t i = 0; i < n_; ++i) out[i] = static_cast<long>(v[i]);
    return out;
}

RVec ResidueRing::add(const RVec& a, const RVec& b) const {
    std::array<__int128, 4> v{0, 0, 0, 0};
    for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<__int128>(a[i]) + b[i];
    return reduce(v);
}

RVec ResidueRing::sub(const RVec& a, const RVec& b) const {
    std::array<__int128, 4> v{0, 0, 0, 0};
    for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<__int128>(a[i]) - b[i];
    return reduce(v);
}

RVec ResidueRing::mul_int(const RVec& a, long c) const {
    std::array<__int128, 4> v{0, 0, 0, 0};
    for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<__int128>(a[i]) * c;
    return reduce(v);
}

RVec ResidueRing::mul(const RVec& a, const RVec& b) const {
    std::array<__int128, 4> v{0, 0, 0, 0};
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            const __int128 ab = static_cast<__int128>(a[i]) * b[j];
            const RVec& r = red_[i][j];
            for (std::size_t l = 0; l < n_; ++l) v[l] += ab * r[l];
        }
    }
    return reduce(v);
}

RVec ResidueRing::pow(RVec a, Int e) const {
    RVec r = one_;
    while (e > 0) {
        if (e % 2 == 1) r = mul(r, a);
        e /= 2;
        if (e > 0) a = mul(a, a);
    }
    return r;
}

long ResidueRing::norm_mod(const RVec& a, long p) const {
    // determinant of multiplication by a, mod p
    std::vector<std::vector<long>> m(n_, std::vector<long>(n_, 0));
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] == 0) continue;
            const long ai = mod_ll(a[i], p);
            for (std::size_t l = 0; l < n_; ++l) {
                Int t = t_[i][j][l] % Int(p);
                m[l][j] = mod_ll(m[l][j] + ai * mod_ll(t.get_si(), p), p);
            }
        }
    long det = 1;
    for (std::size_t c = 0; c < n_; ++c) {
        std::size_t piv = c;
        while (piv < n_ && m[piv][c] == 0) ++piv;
        if (piv == n_) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = mod_ll(-det, p);
        }
        det = static_cast<long>(static_cast<__int128>(det) * m[c][c] % p);
        const long iv = inv_mod_ll(m[c][c], p);
        for (std::size_t r = c + 1; r < n_; ++r) {
            if (m[r][c] == 0) continue;
            const long f = static_cast<long>(static_cast<__int128>(m[r][c]) * iv % p);
            for (std::size_t j = c; j < n_; ++j) m[r][j] = mod_ll(m[r][j] - static_cast<long>(static_cast<__int128>(f) * m[c][j] % p), p);
        }
    }
    return det;
}

bool ResidueRing::is_unit(const RVec& a) const {
    for (auto p : primes_)
        if (norm_mod(a, p) == 0) return false;
    return true;
}

ResidueRing ResidueRing::with_extra_modulus(const std::vector<Elem>& gens) const {
    std::vector<Elem> m = mod_gens_;
    m.insert(m.end(), gens.begin(), gens.end());
    return ResidueRing(k_, basis_, m);
}

std::vector<RVec> ResidueRing::elements() const {
    std::vector<RVec> out;
    out.reserve(static_cast<std::size_t>(size_));
    RVec v{0, 0, 0, 0};
    for (long c = 0; c < size_; ++c) {
        out.push_back(v);
        for (std::size_t i = 0; i < n_; ++i) {
            if (++v[i] < diag_[i]) break;
            v[i] = 0;
        }
    }
    return out;
}

FpAlgebra ResidueRing::fp_algebra(long p) const {
    FpAlgebra a;
    a.p = p;
    a.n = n_;
    a.t.assign(n_, std::vector<FVec>(n_, FVec(n_)));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t l = 0; l < n_; ++l) a.t[i][j][l] = a.mod(t_[i][j][l]);
    a.one = fp_coords(one_, p);
    return a;
}

FVec ResidueRing::fp_coords(const RVec& v, long p) const {
    FVec f(n_);
    for (std::size_t i = 0; i < n_; ++i) f[i] = mod_ll(v[i], p);
    return f;
}

long count_units_serial(const ResidueRing& r) {
    long c = 0;
    for (const auto& x : r.elements())
        if (r.is_unit(x)) ++c;
    return c;
}

long count_units_parallel(const ResidueRing& r) {
    const auto el = r.elements();
    long c = 0;
    const long n = static_cast<long>(el.size());
#pragma omp parallel for reduction(+ : c) schedule(static)
    for (long i = 0; i < n; ++i)
        if (r.is_unit(el[static_cast<std::size_t>(i)])) ++c;
    return c;
}

bool is_unit_by_ideal(const ResidueRing& r, const RVec& x) {
    Elem xe = r.to_elem(x);
    std::vector<std::vector<Rat>> g;
    auto pad = [&](const Elem& e) {
        if (r.rank() == 4) return e.vec();
        return std::vector<Rat>{e[0], e[2]};
    };
    for (const auto& b : r.ring_basis()) g.push_back(pad(xe * b));
    for (const auto& m : r.modulus_gens()) g.push_back(pad(m));
    std::vector<std::vector<Rat>> lb;
    for (const auto& b : r.ring_basis()) lb.push_back(pad(b));
    return Lattice::from_generators(r.rank(), g) == Lattice::from_generators(r.rank(), lb);
}

// ------------------------------------------------------------------ UnitGroup

UnitGroup::UnitGroup(const ResidueRing& r) : r_(std::make_shared<ResidueRing>(r)) {
    const long size = r.size();
    std::vector<Int> raw_orders;
    for (auto p : r.primes()) {
        Local loc;
        loc.p = p;
        long pb = 1;
        while (size % (pb * p) == 0) pb *= p;
        std::vector<Elem> extra;
        for (const auto& b : r.ring_basis()) extra.push_back(b * Rat(Int(static_cast<long>(pb))));
        loc.ring = std::make_shared<ResidueRing>(r.with_extra_modulus(extra));
        const ResidueRing& rp = *loc.ring;
        // CRT coefficient: 1 mod pb, 0 mod size/pb
        {
            long other = size / pb;
            long c = other * inv_mod_ll(other % pb, pb);
            loc.crt = mod_ll(c, size);
        }
        loc.a = r.fp_algebra(p);
        std::vector<FVec> w;
        for (std::size_t i = 0; i < r.rank(); ++i) {
            FVec v(r.rank());
            for (std::size_t l = 0; l < r.rank(); ++l) v[l] = mod_ll(rp.modulus_column(i)[l], p);
            w.push_back(v);
        }
        Subspace wsp = Subspace::span(Int(p), r.rank(), w);
        FpQuotient abar = fp_quotient(loc.a, wsp);
        Subspace rad = fp_radical(abar.alg);
        std::vector<FVec> killv = wsp.rows;
        for (const auto& row : rad.rows) killv.push_back(abar.lift(row));
        loc.kill = Subspace::span(Int(p), r.rank(), killv);
        loc.s = fp_quotient(loc.a, loc.kill);
        const FpAlgebra& s = loc.s.alg;
        auto idem = fp_idempotents(s);
        // |S| and |1+J|
        long ssize = 1;
        for (std::size_t i = 0; i < s.n; ++i) ssize *= p;
        const long jsize = rp.size() / ssize;
        loc.q = jsize;
        loc.m = 1;
        auto lift_s = [&](const FVec& sv) {
            FVec a = loc.s.lift(sv);
            RVec v{0, 0, 0, 0};
            for (std::size_t i = 0; i < r.rank(); ++i) v[i] = a[i].get_si();
            return rp.reduce({static_cast<__int128>(v[0]), static_cast<__int128>(v[1]), static_cast<__int128>(v[2]), static_cast<__int128>(v[3])});
        };
        auto proj_s = [&](const RVec& v) { return loc.s.project(rp.fp_coords(v, p)); };
        for (const auto& e : idem) {
            Field fd;
            fd.idem = e;
            std::vector<FVec> es;
            for (std::size_t j = 0; j < s.n; ++j) es.push_back(s.mul(e, s.basis(j)));
            Subspace fs = Subspace::span(Int(p), s.n, es);
            const std::size_t dim = fs.dim();
            long q = 1;
            for (std::size_t i = 0; i < dim; ++i) q *= p;
            fd.q = q;
            const long ord = q - 1;
            auto ops = small_primes_of(ord);
            // search a primitive element of e*S
            FVec g;
            bool found = false;
            for (long code = 1; code < q && !found; ++code) {
                FVec c = s.zero();
                long t = code;
                for (std::size_t i = 0; i < dim; ++i) {
                    c = s.add(c, s.scale(fs.rows[i], Int(t % p)));
                    t /= p;
                }
                bool prim = true;
                for (auto rr : ops)
                    if (s.pow(c, Int(ord / rr)) == e) {
                        prim = false;
                        break;
                    }
                if (s.pow(c, Int(ord)) != e) prim = false;
                if (prim) {
                    g = c;
                    found = true;
                }
            }
            if (!found) throw std::logic_error("UnitGroup: no primitive element");
            // element equal to g in this field and 1 elsewhere
            FVec full = s.add(g, s.sub(s.one, e));
            RVec x = lift_s(full);
            RVec t = rp.pow(x, Int(jsize));
            loc.teich.push_back(t);
            fd.gamma = s.mul(e, proj_s(t));
            // baby-step giant-step tables
            long bs = static_cast<long>(std::ceil(std::sqrt(static_cast<long double>(ord))));
            fd.giant_step = bs;
            FVec cur = e;
            auto key = [&](const FVec& v) {
                RVec k{0, 0, 0, 0};
                for (std::size_t i = 0; i < v.size(); ++i) k[i] = v[i].get_si();
                return k;
            };
            for (long j = 0; j < bs; ++j) {
                fd.baby.emplace(key(cur), j);
                cur = s.mul(cur, fd.gamma);
            }
            // gamma^{-bs} = gamma^{ord - bs mod ord}
            long ex = mod_ll(ord - (bs % ord), ord);
            fd.gamma_inv_m = s.add(s.mul(e, s.pow(fd.gamma, Int(ex))), s.zero());
            loc.m *= ord;
            loc.fields.push_back(std::move(fd));
        }
        // 1 + J: generators 1 + x for x in a Z-basis of J^k, all k
        {
            std::vector<Elem> jg;
            for (const auto& row : loc.kill.rows) jg.push_back(rp.to_elem(rp.reduce({row[0].get_si(), row.size() > 1 ? row[1].get_si() : 0, row.size() > 2 ? row[2].get_si() : 0, row.size() > 3 ? row[3].get_si() : 0})));
            for (const auto& b : r.ring_basis()) jg.push_back(b * Rat(Int(p)));
            auto pad = [&](const Elem& e) {
                if (r.rank() == 4) return e.vec();
                return std::vector<Rat>{e[0], e[2]};
            };
            std::vector<std::vector<Rat>> mg;
            for (const auto& mgen : rp.modulus_gens()) mg.push_back(pad(mgen));
            std::vector<std::vector<Rat>> g0;
            for (const auto& x : jg) g0.push_back(pad(x));
            std::vector<std::vector<Rat>> all = g0;
            all.insert(all.end(), mg.begin(), mg.end());
            Lattice mlat = Lattice::from_generators(r.rank(), mg);
            Lattice jk = Lattice::from_generators(r.rank(), all);
            std::vector<RVec> gens;
            for (int step = 0; step < 64 && jk != mlat; ++step) {
                for (const auto& v : jk.basis_vectors()) {
                    Elem e = r.rank() == 4 ? r.field()->make_elem(v) : r.field()->make_elem({v[0], 0, v[1], 0});
                    RVec g = rp.add(rp.one(), rp.from_elem(e));
                    if (g != rp.one()) gens.push_back(g);
                }
                // next power J^{k+1} = J^k * J + M
                std::vector<std::vector<Rat>> nx = mg;
                auto jkb = jk.basis_vectors();
                for (const auto& u : jkb)
                    for (const auto& x : jg) {
                        Elem ue = r.rank() == 4 ? r.field()->make_elem(u) : r.field()->make_elem({u[0], 0, u[1], 0});
                        nx.push_back(pad(ue * x));
                    }
                jk = Lattice::from_generators(r.rank(), nx);
            }
            std::function<RVec(const RVec&, const RVec&)> comp = [rp = loc.ring](const RVec& a, const RVec& b) { return rp->mul(a, b); };
            std::function<RVec(const RVec&)> key = [](const RVec& v) { return v; };
            loc.onej = std::make_shared<GroupStructure<RVec>>(group_structure_hashed<RVec, RVec, RVecHash>(gens, rp.one(), comp, key));
            if (loc.onej->group.order() != Int(jsize)) throw std::logic_error("UnitGroup: 1+J has unexpected order");
        }
        // raw generators in R via CRT
        auto embed = [&](const RVec& xp) {
            // element equal to xp at p and 1 elsewhere
            RVec a = r.mul_int(r.sub(xp, r.one()), loc.crt);
            return r.add(a, r.one());
        };
        for (std::size_t i = 0; i < loc.fields.size(); ++i) {
            raw_gens_.push_back(embed(loc.teich[i]));
            raw_orders.push_back(Int(loc.fields[i].q - 1));
        }
        for (std::size_t i = 0; i < loc.onej->group.rank(); ++i) {
            raw_gens_.push_back(embed(loc.onej->generators[i]));
            raw_orders.push_back(loc.onej->group.invariants[i]);
        }
        locals_.push_back(std::move(loc));
    }
    raw_orders_ = raw_orders;
    const std::size_t n = raw_orders.size();
    IntMat rel(n, n);
    for (std::size_t i = 0; i < n; ++i) rel(i, i) = raw_orders[i];
    if (n) {
        pres_ = present(rel);
        group_ = pres_.group;
    }
    for (std::size_t j = 0; j < group_.rank(); ++j) {
        IVec raw(n);
        for (std::size_t i = 0; i < n; ++i) raw[i] = pres_.from_snf(i, j);
        RVec g = r.one();
        for (std::size_t i = 0; i < n; ++i) g = r.mul(g, r.pow(raw_gens_[i], posmod(raw[i], raw_orders[i])));
        gens_.push_back(g);
    }
}

long UnitGroup::field_log(const Local& loc, const Field& fd, const FVec& sv) const {
    const FpAlgebra& s = loc.s.alg;
    const long ord = fd.q - 1;
    auto key = [&](const FVec& v) {
        RVec k{0, 0, 0, 0};
        for (std::size_t i = 0; i < v.size(); ++i) k[i] = v[i].get_si();
        return k;
    };
    FVec cur = sv;
    for (long i = 0; i * fd.giant_step <= ord; ++i) {
        auto it = fd.baby.find(key(cur));
        if (it != fd.baby.end()) return mod_ll(i * fd.giant_step + it->second, ord);
        cur = s.mul(cur, fd.gamma_inv_m);
    }
    throw std::logic_error("UnitGroup: discrete logarithm failed");
}

IVec UnitGroup::raw_log(const RVec& x) const {
    IVec out;
    for (const auto& loc : locals_) {
        const ResidueRing& rp = *loc.ring;
        RVec xp = rp.reduce({x[0], x[1], x[2], x[3]});
        Int mi;
        {
            Int mm = loc.m % loc.q;
            if (loc.q == 1)
                mi = 0;
            else
                mpz_invert(mi.get_mpz_t(), mm.get_mpz_t(), loc.q.get_mpz_t());
        }
        RVec u = rp.pow(rp.pow(xp, loc.m), mi);
        RVec t = rp.mul(xp, rp.pow(u, loc.q - 1));
        FVec st = loc.s.project(rp.fp_coords(t, loc.p));
        for (const auto& fd : loc.fields) out.push_back(Int(field_log(loc, fd, loc.s.alg.mul(fd.idem, st))));
        auto ru = loc.onej->dlog(u);
        if (!ru) throw std::invalid_argument("UnitGroup: not a unit");
        for (const auto& c : *ru) out.push_back(c);
    }
    return out;
}

IVec UnitGroup::dlog(const RVec& x) const {
    if (!r_->is_unit(x)) throw std::invalid_argument("UnitGroup: not a unit");
    if (raw_orders_.empty()) return {};
    return pres_.map(raw_log(x));
}

RVec UnitGroup::exp(const IVec& v) const {
    RVec g = r_->one();
    for (std::size_t j = 0; j < gens_.size(); ++j) g = r_->mul(g, r_->pow(gens_[j], posmod(v[j], group_.invariants[j])));
    return g;
}

RVec UnitGroup::inverse(const RVec& x) const {
    Int e = group_.exponent();
    return r_->pow(x, e - 1);
}

}  // namespace cmq
