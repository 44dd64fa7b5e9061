#include "cmq/unitquot.hpp"

#include <stdexcept>

namespace cmq {

namespace {

Rat prime_product(const Int& f, long n, bool inverse_) {
    Rat r = 1;
    for (const auto& p : prime_factors(f)) {
        Rat t = Rat(1) - ratio(1, p);
        for (long i = 0; i < n; ++i) r *= inverse_ ? Rat(1) / t : t;
    }
    return r;
}

std::vector<Elem> scaled_basis(const std::vector<Elem>& b, const Int& f) {
    std::vector<Elem> out;
    for (const auto& x : b) out.push_back(x * Rat(f));
    return out;
}

// images of generators of (sub/fO_K)^x inside the unit group of the ambient ring
std::vector<IVec> sub_unit_logs(const UnitGroup& g, const ResidueRing& sub) {
    UnitGroup us(sub);
    std::vector<IVec> out;
    for (const auto& x : us.generators()) out.push_back(g.dlog(g.ring().from_elem(sub.to_elem(x))));
    return out;
}

}  // namespace

Int ResidueUnits::parts_product() const {
    Int r = 1;
    for (const auto& p : parts) r *= p.residue * p.one_plus;
    return r;
}

ResidueUnits residue_units(const Order& o, const Int& f) {
    Order ok = Order::maximal(o.field());
    Lattice fok = scaled_lattice(ok, f);
    if (!o.lattice().contains(fok)) throw std::invalid_argument("residue_units: f O_K is not contained in O");
    ResidueUnits ru;
    ru.f = f;
    ru.units = std::make_shared<UnitGroup>(ResidueRing::of_order(o, f));
    for (const auto& p : prime_factors(f)) {
        for (const auto& q : primes_above(o, p)) {
            // (fO_K)_(q) = fO_K + q^n for n large
            Lattice cur = fok + q.ideal.lattice();
            Lattice qn = q.ideal.lattice();
            for (int it = 0; it < 200; ++it) {
                qn = lattice_product(qn, q.ideal.lattice(), o.K());
                Lattice nx = fok + qn;
                if (nx == cur) break;
                cur = nx;
            }
            ResidueUnits::Part part;
            part.p = p;
            part.norm = q.norm();
            part.residue = q.norm() - 1;
            Rat local = lattice_index(o.lattice(), cur);
            part.one_plus = local.get_num() / q.norm();
            ru.parts.push_back(part);
        }
    }
    return ru;
}

PsiData psi_sub(const Order& o, const Order& osub, const Int& f) {
    if (!o.contains(osub)) throw std::invalid_argument("psi: O° is not contained in O");
    Order ok = Order::maximal(o.field());
    if (!osub.lattice().contains(scaled_lattice(ok, f))) throw std::invalid_argument("psi: f O_K is not contained in O°");
    if (!o.is_cc_stable() || !osub.is_cc_stable()) throw std::invalid_argument("psi: orders must be stable under conjugation");
    ResidueRing r = ResidueRing::of_order(o, f);
    UnitGroup g(r);
    ResidueRing r0 = ResidueRing::of_real_order(o, f);
    UnitGroup g0(r0);
    // denominator of the domain
    std::vector<IVec> hd = sub_unit_logs(g, ResidueRing::of_order(osub, f));
    {
        const auto& u = o.K().units();
        Elem z = o.K().one();
        for (long j = 0; j < u.w; ++j) {
            if (o.contains(z)) hd.push_back(g.dlog(r.from_elem(z)));
            z = z * u.zeta;
        }
    }
    Presentation dom = quotient(g.group(), hd);
    std::vector<IVec> hc = sub_unit_logs(g0, ResidueRing::of_real_order(osub, f));
    Presentation cod = quotient(g0.group(), hc);
    PsiData out;
    out.domain = dom.group;
    out.codomain = cod.group;
    const std::size_t nd = dom.group.rank(), nc = cod.group.rank();
    out.matrix = IntMat(nc, nd);
    for (std::size_t j = 0; j < nd; ++j) {
        IVec raw(g.group().rank());
        for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = dom.from_snf(i, j);
        Elem x = r.to_elem(g.exp(raw));
        Elem nx = x * x.conj();
        IVec c = cod.map(g0.dlog(r0.from_elem(nx)));
        for (std::size_t i = 0; i < nc; ++i) out.matrix(i, j) = c[i];
    }
    out.kernel = hom_kernel(out.domain, out.codomain, out.matrix);
    return out;
}

PsiData psi(const Order& o, const Order& o_prime, const Int& f) { return psi_sub(o, o.intersect(o_prime), f); }

Prop41 prop41_bounds(const Order& o, const Order& osub, const Int& f) {
    Int idx = osub.index_in(o);
    if (f % idx != 0) throw std::invalid_argument("prop41: f must be a multiple of the index");
    auto fo = scaled_basis(o.basis(), f);
    UnitGroup a(ResidueRing(o.field(), o.basis(), fo));
    UnitGroup b(ResidueRing(o.field(), osub.basis(), fo));
    Prop41 r;
    r.actual = Rat(a.order()) / Rat(b.order());
    r.lower = Rat(idx) * prime_product(f, 4, false);
    r.upper = Rat(idx) * prime_product(f, 4, true);
    return r;
}

Prop41 prop41_bounds_real(const Order& o, const Order& osub, const Int& f) {
    RealOrder a0 = real_suborder(o), b0 = real_suborder(osub);
    Int idx = b0.index_in(a0);
    auto fo = scaled_basis(a0.basis(), f);
    UnitGroup a(ResidueRing(o.field(), a0.basis(), fo));
    UnitGroup b(ResidueRing(o.field(), b0.basis(), fo));
    Prop41 r;
    r.actual = Rat(a.order()) / Rat(b.order());
    r.lower = Rat(idx) * prime_product(f, 2, false);
    r.upper = Rat(idx) * prime_product(f, 2, true);
    return r;
}

bool lemma42_holds(const Int& p, long v, long mu_order) {
    Rat lhs = 1;
    for (long i = 0; i < 6; ++i) lhs *= Rat(p - 1);
    if (v >= 6)
        for (long i = 0; i < v - 6; ++i) lhs *= Rat(p);
    else
        for (long i = 0; i < 6 - v; ++i) lhs /= Rat(p);
    if (lhs > Rat(8 * mu_order)) return false;
    if (v >= 1 && p >= 10 * mu_order) return false;
    return true;
}

}  // namespace cmq
