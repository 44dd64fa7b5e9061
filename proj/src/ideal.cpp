#include "cmq/ideal.hpp"

#include "cmq/fpalgebra.hpp"

#include <stdexcept>

namespace cmq {

FracIdeal::FracIdeal(Order o, Lattice lat) : o_(std::move(o)), lat_(std::move(lat)) {}

FracIdeal FracIdeal::unit(const Order& o) { return FracIdeal(o, o.lattice()); }

FracIdeal FracIdeal::principal(const Order& o, const Elem& x) {
    if (x.is_zero()) throw std::invalid_argument("ideal: zero ideal");
    std::vector<Elem> g;
    for (const auto& b : o.basis()) g.push_back(x * b);
    return FracIdeal(o, span(g));
}

FracIdeal FracIdeal::generated(const Order& o, const std::vector<Elem>& gens) {
    std::vector<Elem> g;
    for (const auto& x : gens)
        for (const auto& b : o.basis()) g.push_back(x * b);
    if (g.empty()) throw std::invalid_argument("ideal: zero ideal");
    return FracIdeal(o, span(g));
}

std::vector<Elem> FracIdeal::basis() const { return lattice_elems(lat_, o_.K()); }

Int FracIdeal::denominator() const {
    // d * a in O  <=>  coordinates of a-basis in O-basis times d integral
    Int d = 1;
    for (const auto& v : lat_.basis_vectors())
        for (const auto& c : o_.lattice().coordinates(v)) d = lcm(d, Int(c.get_den()));
    return d;
}

FracIdeal FracIdeal::operator*(const FracIdeal& b) const { return FracIdeal(o_, lattice_product(lat_, b.lat_, o_.K())); }

FracIdeal FracIdeal::operator*(const Elem& x) const {
    std::vector<Elem> g;
    for (const auto& e : basis()) g.push_back(e * x);
    return FracIdeal(o_, span(g));
}

FracIdeal FracIdeal::operator+(const FracIdeal& b) const { return FracIdeal(o_, lat_ + b.lat_); }

FracIdeal FracIdeal::intersect(const FracIdeal& b) const { return FracIdeal(o_, lat_.intersect(b.lat_)); }

FracIdeal FracIdeal::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FracIdeal r = unit(o_);
    FracIdeal b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FracIdeal FracIdeal::conj() const { return FracIdeal(o_, lattice_conj(lat_)); }

FracIdeal FracIdeal::sigma(int k) const {
    std::vector<Elem> g;
    for (const auto& e : basis()) g.push_back(o_.K().sigma(e, k));
    return FracIdeal(o_, span(g));
}

Rat FracIdeal::norm() const { return lat_.covolume() / o_.lattice().covolume(); }

FracIdeal FracIdeal::colon(const FracIdeal& b) const { return FracIdeal(o_, cmq::colon(lat_, b.lat_, o_.K())); }

FracIdeal FracIdeal::inverse() const { return unit(o_).colon(*this); }

bool FracIdeal::is_invertible() const { return (*this * inverse()) == unit(o_); }

bool FracIdeal::coprime_to(const Int& f) const {
    Int d = denominator();
    if (gcd(d, f) != 1) return false;
    Lattice num = lat_.scaled(Rat(d));
    return (num + o_.lattice().scaled(Rat(f))) == o_.lattice();
}

Order FracIdeal::multiplier_ring() const { return Order(o_.field(), cmq::colon(lat_, lat_, o_.K()), false); }

FracIdeal FracIdeal::extend(const Order& big) const {
    if (!big.contains(o_)) throw std::invalid_argument("extend: target order does not contain the base order");
    return FracIdeal(big, lattice_product(lat_, big.lattice(), o_.K()));
}

FracIdeal FracIdeal::contract(const Order& small) const {
    if (!o_.contains(small)) throw std::invalid_argument("contract: target order not contained in the base order");
    Int f = small.index_in(o_);
    Int d = denominator();
    if (gcd(d, f) != 1) throw std::invalid_argument("contract: ideal not coprime to the index");
    Lattice num = lat_.scaled(Rat(d)).intersect(small.lattice());
    return FracIdeal(small, num.scaled(ratio(1, d)));
}

std::string FracIdeal::str() const { return lat_.key(); }

Int PrimeIdeal::norm() const {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(f));
    return r;
}

bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::vector<PrimeIdeal> primes_above(const Order& o, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("primes_above: p is not prime");
    FpAlgebra a;
    a.p = p;
    a.n = 4;
    auto mt = o.mult_table();
    a.t.assign(4, std::vector<FVec>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            FVec v(4);
            for (std::size_t k = 0; k < 4; ++k) v[k] = a.mod(mt[i][j][k]);
            a.t[i][j] = v;
        }
    {
        auto c = o.coords(o.K().one());
        a.one.resize(4);
        for (std::size_t k = 0; k < 4; ++k) a.one[k] = a.mod(c[k].get_num());
    }
    Subspace rad = fp_radical(a);
    FpQuotient s = fp_quotient(a, rad);
    auto idem = fp_idempotents(s.alg);
    auto to_elem = [&](const FVec& v) { return o.from_coords(std::vector<Int>(v.begin(), v.end())); };
    std::vector<PrimeIdeal> out;
    const bool maximal = o.is_maximal();
    for (const auto& e : idem) {
        std::vector<Elem> gens;
        for (const auto& r : rad.rows) gens.push_back(to_elem(r));
        FVec ce = s.alg.sub(s.alg.one, e);
        std::vector<FVec> eS;
        for (std::size_t j = 0; j < s.alg.n; ++j) {
            gens.push_back(to_elem(s.lift(s.alg.mul(ce, s.alg.basis(j)))));
            eS.push_back(s.alg.mul(e, s.alg.basis(j)));
        }
        std::vector<Elem> latgens = gens;
        for (const auto& b : o.basis()) latgens.push_back(b * Rat(p));
        PrimeIdeal q;
        q.ideal = FracIdeal(o, span(latgens));
        q.p = p;
        q.f = static_cast<int>(Subspace::span(p, s.alg.n, eS).dim());
        if (maximal) {
            FracIdeal pO = FracIdeal::principal(o, o.K().rat(Rat(p)));
            FracIdeal pw = q.ideal;
            int ee = 1;
            while (true) {
                FracIdeal nx = pw * q.ideal;
                if (!nx.contains(pO)) break;
                pw = nx;
                ++ee;
            }
            q.e = ee;
        }
        out.push_back(q);
    }
    return out;
}

std::vector<PrimeIdeal> primes_up_to(const Order& o, const Int& bound, const Int& avoid) {
    std::vector<PrimeIdeal> out;
    for (Int p = 2; p <= bound; ++p) {
        if (!is_prime(p) || avoid % p == 0) continue;
        for (auto& q : primes_above(o, p))
            if (q.norm() <= bound) out.push_back(q);
    }
    return out;
}

}  // namespace cmq
