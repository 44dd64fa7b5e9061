#include "cmq/abelian.hpp"

#include <sstream>

namespace cmq {

Int AbelianGroup::order() const {
    Int o = 1;
    for (const auto& d : invariants) o *= d;
    return o;
}

Int AbelianGroup::exponent() const { return invariants.empty() ? Int(1) : invariants.back(); }

IVec AbelianGroup::reduce(const IVec& v) const {
    IVec r(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        r[i] = v[i] % invariants[i];
        if (r[i] < 0) r[i] += invariants[i];
    }
    return r;
}

bool AbelianGroup::is_zero(const IVec& v) const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (v[i] % invariants[i] != 0) return false;
    return true;
}

IVec AbelianGroup::add(const IVec& a, const IVec& b) const {
    IVec r(rank());
    for (std::size_t i = 0; i < rank(); ++i) r[i] = a[i] + b[i];
    return reduce(r);
}

IVec AbelianGroup::neg(const IVec& a) const {
    IVec r(rank());
    for (std::size_t i = 0; i < rank(); ++i) r[i] = -a[i];
    return reduce(r);
}

IVec AbelianGroup::scale(const IVec& a, const Int& k) const {
    IVec r(rank());
    for (std::size_t i = 0; i < rank(); ++i) r[i] = a[i] * k;
    return reduce(r);
}

Int AbelianGroup::element_order(const IVec& v) const {
    Int o = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
        Int x = v[i] % invariants[i];
        Int g = gcd(x, invariants[i]);
        o = lcm(o, invariants[i] / g);
    }
    return o;
}

std::vector<IVec> AbelianGroup::elements(const Int& cap) const {
    if (order() > cap) throw std::runtime_error("AbelianGroup::elements: group too large");
    std::vector<IVec> out;
    IVec cur(rank(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = rank();
        while (i-- > 0) {
            cur[i] += 1;
            if (cur[i] < invariants[i]) break;
            cur[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

IVec Presentation::map(const IVec& raw) const {
    IVec v(group.rank());
    for (std::size_t i = 0; i < group.rank(); ++i)
        for (std::size_t j = 0; j < raw.size(); ++j) v[i] += to_snf(i, j) * raw[j];
    return group.reduce(v);
}

Presentation present(const IntMat& relations) {
    const std::size_t n = relations.rows();
    Presentation p;
    if (n == 0) return p;
    auto s = snf(relations, true);
    if (s.diag.size() < n) throw std::domain_error("present: relation lattice not of full rank");
    RatMat uinv = inverse(to_rat(s.u));
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.diag[i] == 0) throw std::domain_error("present: infinite group");
        if (s.diag[i] != 1) keep.push_back(i);
    }
    p.group.invariants.clear();
    p.to_snf = IntMat(keep.size(), n);
    p.from_snf = IntMat(n, keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) {
        const std::size_t i = keep[a];
        p.group.invariants.push_back(s.diag[i]);
        for (std::size_t j = 0; j < n; ++j) {
            p.to_snf(a, j) = s.u(i, j);
            p.from_snf(j, a) = uinv(j, i).get_num();
        }
    }
    return p;
}

static IntMat relation_matrix(const AbelianGroup& g, const std::vector<IVec>& gens) {
    const std::size_t r = g.rank();
    IntMat m(r, r + gens.size());
    for (std::size_t i = 0; i < r; ++i) m(i, i) = g.invariants[i];
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < r; ++i) m(i, r + j) = gens[j][i];
    return m;
}

Presentation quotient(const AbelianGroup& g, const std::vector<IVec>& gens) {
    if (g.rank() == 0) return Presentation{};
    return present(relation_matrix(g, gens));
}

Int subgroup_order(const AbelianGroup& g, const std::vector<IVec>& gens) {
    return g.order() / quotient(g, gens).group.order();
}

bool subgroup_contains(const AbelianGroup& g, const std::vector<IVec>& gens, const IVec& x) {
    auto q = quotient(g, gens);
    return q.group.is_zero(q.map(x));
}

Subgroup make_subgroup(const AbelianGroup& g, const std::vector<IVec>& gens) {
    Subgroup s;
    const std::size_t r = g.rank();
    if (r == 0) return s;
    IntMat b = hnf_basis(relation_matrix(g, gens));
    RatMat binv = inverse(to_rat(b));
    IntMat rel(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) rel(i, j) = Rat(binv(i, j) * Rat(g.invariants[j])).get_num();
    Presentation p = present(rel);
    s.structure = p.group;
    for (std::size_t j = 0; j < p.group.rank(); ++j) {
        IVec v(r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < r; ++k) v[i] += b(i, k) * p.from_snf(k, j);
        s.gens.push_back(g.reduce(v));
    }
    return s;
}

Subgroup subgroup_intersection(const AbelianGroup& g, const std::vector<IVec>& a, const std::vector<IVec>& b) {
    const std::size_t r = g.rank();
    if (r == 0) return Subgroup{};
    auto lat = [&](const std::vector<IVec>& gens) {
        IntMat m = relation_matrix(g, gens);
        std::vector<std::vector<Rat>> cols;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::vector<Rat> c(r);
            for (std::size_t i = 0; i < r; ++i) c[i] = m(i, j);
            cols.push_back(c);
        }
        return Lattice::from_generators(r, cols);
    };
    Lattice l = lat(a).intersect(lat(b));
    std::vector<IVec> gens;
    for (const auto& v : l.basis_vectors()) {
        IVec w(r);
        for (std::size_t i = 0; i < r; ++i) w[i] = v[i].get_num();
        gens.push_back(w);
    }
    return make_subgroup(g, gens);
}

Subgroup hom_kernel(const AbelianGroup& g, const AbelianGroup& h, const IntMat& m) {
    const std::size_t r = g.rank(), s = h.rank();
    if (r == 0) return Subgroup{};
    std::vector<IVec> gens;
    if (s == 0) {
        for (std::size_t i = 0; i < r; ++i) {
            IVec e(r, 0);
            e[i] = 1;
            gens.push_back(e);
        }
        return make_subgroup(g, gens);
    }
    IntMat a(s, r + s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = 0; j < r; ++j) a(i, j) = m(i, j);
        a(i, r + i) = h.invariants[i];
    }
    IntMat k = integer_kernel(a);
    for (std::size_t j = 0; j < k.cols(); ++j) {
        IVec v(r);
        for (std::size_t i = 0; i < r; ++i) v[i] = k(i, j);
        gens.push_back(v);
    }
    return make_subgroup(g, gens);
}

Int hom_image_order(const AbelianGroup& g, const AbelianGroup& h, const IntMat& m) {
    std::vector<IVec> imgs;
    for (std::size_t j = 0; j < g.rank(); ++j) {
        IVec v(h.rank());
        for (std::size_t i = 0; i < h.rank(); ++i) v[i] = m(i, j);
        imgs.push_back(v);
    }
    return subgroup_order(h, imgs);
}

std::string to_string(const AbelianGroup& g) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < g.rank(); ++i) os << (i ? "," : "") << g.invariants[i].get_str();
    os << ']';
    return os.str();
}

}  // namespace cmq
