#include "fanokernel/ideal.hpp"

#include <algorithm>
#include <map>

#include "fanokernel/invariants.hpp"
#include "fanokernel/linalg.hpp"

namespace fano {

Ideal::Ideal(RingPtr R, std::vector<Poly> gens) : st_(std::make_shared<State>()) {
    st_->ring = std::move(R);
    for (Poly& g : gens) {
        if (g.is_zero()) continue;
        if (!g.ring()->same_ring(*st_->ring)) throw RingMismatch();
        st_->gens.push_back(std::move(g));
    }
}

const std::vector<Poly>& Ideal::gb() const {
    std::lock_guard<std::mutex> lock(st_->mu);
    if (!st_->gb) {
        auto basis = std::make_shared<std::vector<Poly>>(
            reduce_basis(buchberger(st_->gens)));
        st_->gb = basis;
    }
    return *st_->gb;
}

bool Ideal::is_unit() const {
    if (st_->gens.empty()) return false;
    for (const Poly& g : st_->gens)
        if (!g.is_zero() && g.is_constant()) return true;
    const auto& basis = gb();
    return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

namespace {

Ideal make_with_gb(RingPtr R, std::vector<Poly> reduced) {
    // the generators are already a reduced GB; share them as the cache
    Ideal I(R, reduced);
    (void)I.gb();  // cache fill is cheap: buchberger of a GB re-derives it
    return I;
}

}  // namespace

Ideal combine(const Ideal& I, const Ideal& J, CombineOp op, int power) {
    if (!I.ring()->same_ring(*J.ring())) throw RingMismatch();
    switch (op) {
        case CombineOp::Sum: {
            std::vector<Poly> gens = I.gens();
            for (const Poly& g : J.gens()) gens.push_back(g);
            return Ideal(I.ring(), std::move(gens));
        }
        case CombineOp::Product: {
            std::vector<Poly> gens;
            for (size_t a = 0; a < I.gens().size(); ++a)
                for (size_t b = 0; b < J.gens().size(); ++b) {
                    Poly fg = I.gens()[a] * J.gens()[b];
                    bool dup = false;
                    for (const Poly& h : gens)
                        if (h == fg) dup = true;
                    if (!dup) gens.push_back(std::move(fg));
                }
            return Ideal(I.ring(), std::move(gens));
        }
        case CombineOp::Power: {
            if (power < 0) throw std::invalid_argument("negative ideal power");
            Ideal acc = Ideal::unit(I.ring());
            for (int k = 0; k < power; ++k) acc = combine(acc, I, CombineOp::Product);
            return acc;
        }
    }
    return I;
}

Ideal intersect(const Ideal& I, const Ideal& J) {
    if (!I.ring()->same_ring(*J.ring())) throw RingMismatch();
    RingPtr R = I.ring();
    if (I.is_zero_ideal() || J.is_zero_ideal()) return Ideal::zero(R);
    if (I.is_unit()) return J;
    if (J.is_unit()) return I;
    // submodule of R^2 spanned by (f,f) and (g,0); elements with first
    // component zero have second component in the intersection
    FreeModule F{R, {0, 0}};
    std::vector<ModPoly> cols;
    for (const Poly& f : I.gens()) {
        std::vector<ModTerm> ts;
        for (const Term& t : f.terms()) {
            ts.push_back({t.m, 0, t.c});
            ts.push_back({t.m, 1, t.c});
        }
        cols.push_back(ModPoly::from_terms(R, ModOrder::POT, std::move(ts)));
    }
    for (const Poly& g : J.gens()) cols.push_back(ModPoly::from_poly(g, 0, ModOrder::POT));
    ModGBResult res = module_buchberger(F, cols, ModOrder::POT);
    std::vector<Poly> out;
    for (const ModPoly& e : res.basis)
        if (!e.is_zero() && e.lead().comp == 1) out.push_back(e.component(1));
    return make_with_gb(R, reduce_basis(std::move(out)));
}

Ideal intersect_many(std::vector<Ideal> ideals) {
    if (ideals.empty()) throw std::invalid_argument("empty intersection");
    // balanced tree keeps the intermediate ideals small
    while (ideals.size() > 1) {
        std::vector<Ideal> next;
        for (size_t i = 0; i + 1 < ideals.size(); i += 2)
            next.push_back(intersect(ideals[i], ideals[i + 1]));
        if (ideals.size() % 2) next.push_back(ideals.back());
        ideals = std::move(next);
    }
    return ideals[0];
}

Ideal quotient_by_poly(const Ideal& I, const Poly& g) {
    RingPtr R = I.ring();
    if (!g.ring()->same_ring(*R)) throw RingMismatch();
    if (g.is_zero()) return Ideal::unit(R);
    if (I.is_zero_ideal()) return Ideal::zero(R);
    int dg = g.degree();
    FreeModule F{R, {0, dg}};
    std::vector<ModPoly> cols;
    for (const Poly& f : I.gens()) cols.push_back(ModPoly::from_poly(f, 0, ModOrder::POT));
    {
        std::vector<ModTerm> ts;
        for (const Term& t : g.terms()) ts.push_back({t.m, 0, t.c});
        ts.push_back({Mono::one(), 1, 1});
        cols.push_back(ModPoly::from_terms(R, ModOrder::POT, std::move(ts)));
    }
    ModGBResult res = module_buchberger(F, cols, ModOrder::POT);
    std::vector<Poly> out;
    for (const ModPoly& e : res.basis)
        if (!e.is_zero() && e.lead().comp == 1) out.push_back(e.component(1));
    return make_with_gb(R, reduce_basis(std::move(out)));
}

Ideal quotient(const Ideal& I, const Ideal& J) {
    if (!I.ring()->same_ring(*J.ring())) throw RingMismatch();
    if (J.is_zero_ideal()) return Ideal::unit(I.ring());
    std::vector<Ideal> parts;
    for (const Poly& g : J.gens()) parts.push_back(quotient_by_poly(I, g));
    return intersect_many(std::move(parts));
}

Ideal saturate(const Ideal& I, const Ideal& J) {
    Ideal cur = I;
    for (int round = 0; round < 64; ++round) {
        Ideal next = quotient(cur, J);
        if (ideal_equals(next, cur)) return cur;
        cur = next;
    }
    throw std::runtime_error("saturation did not stabilize");
}

namespace {

// substitute x_i -> sum_j M[i][j] x_j
Poly linear_substitute(const Poly& f, const MatFp& M) {
    RingPtr R = f.ring();
    std::vector<Poly> images;
    for (int i = 0; i < R->nvars(); ++i) {
        std::vector<Term> ts;
        for (int j = 0; j < R->nvars(); ++j)
            if (M.at(i, j)) ts.push_back({Mono::var(j), M.at(i, j)});
        images.push_back(Poly::from_terms(R, std::move(ts)));
    }
    return RingMap(R, R, images).apply(f);
}

MatFp random_invertible(const PrimeField& F, int n, Rng& rng) {
    for (;;) {
        MatFp M(F, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M.at(i, j) = rng.field_element(F.modulus());
        if (M.det() != 0) return M;
    }
}

// divide out the largest power of the last variable from every generator of
// a grevlex GB; by Bayer's trick this generates (I : x_last^inf)
std::vector<Poly> strip_last_variable(const std::vector<Poly>& gb) {
    std::vector<Poly> out;
    const int last = gb.empty() ? 0 : gb[0].ring()->nvars() - 1;
    for (const Poly& g : gb) {
        int k = 127;
        for (const Term& t : g.terms()) k = std::min(k, t.m.exp(last));
        if (k == 0) {
            out.push_back(g);
        } else {
            Mono d = Mono::var(last, k);
            std::vector<Term> ts;
            for (const Term& t : g.terms()) ts.push_back({t.m / d, t.c});
            out.push_back(Poly::from_terms(g.ring(), std::move(ts)));
        }
    }
    return out;
}

Ideal irrelevant_ideal(const RingPtr& R) {
    std::vector<Poly> vars;
    for (int i = 0; i < R->nvars(); ++i) vars.push_back(Poly::variable(R, i));
    return Ideal(R, std::move(vars));
}

}  // namespace

Ideal saturate_irrelevant(const Ideal& I, uint64_t seed) {
    RingPtr R = I.ring();
    if (I.is_zero_ideal() || I.is_unit()) return I;
    const PrimeField& F = R->field();
    HilbertData base = hilbert_series(I);
    Rng rng(seed * 0x9e3779b97f4a7c15ull + 17);
    for (int attempt = 0; attempt < 8; ++attempt) {
        MatFp T = random_invertible(F, R->nvars(), rng);
        MatFp Tinv = T.inverse();
        std::vector<Poly> moved;
        for (const Poly& g : I.gens()) moved.push_back(linear_substitute(g, T));
        Ideal J(R, std::move(moved));
        std::vector<Poly> stripped = strip_last_variable(J.gb());
        Ideal K = Ideal(R, reduce_basis(buchberger(stripped)));
        // remove any remaining irrelevant-primary part
        Ideal m = irrelevant_ideal(R);
        for (int round = 0; round < 16; ++round) {
            Ideal next = quotient(K, m);
            if (ideal_equals(next, K)) break;
            K = next;
        }
        // certificate: saturation never changes the Hilbert polynomial, so a
        // dropped component would show up here
        HilbertData hk = hilbert_series(K);
        bool ok = hk.cone_dim == base.cone_dim;
        if (ok) {
            long long probe = std::max(20, 2 * base.cone_dim);
            for (long long d = probe; d < probe + 3 && ok; ++d)
                if (hk.hilbert_polynomial(d) != base.hilbert_polynomial(d)) ok = false;
        }
        if (base.cone_dim == 0) ok = true;  // supported at the cone point only
        if (ok) {
            std::vector<Poly> back;
            for (const Poly& g : K.gens()) back.push_back(linear_substitute(g, Tinv));
            return Ideal(R, reduce_basis(buchberger(back)));
        }
    }
    // fall back to plain iterated quotient
    return saturate(I, irrelevant_ideal(R));
}

Ideal eliminate(const Ideal& I, const std::vector<int>& vars) {
    RingPtr R = I.ring();
    const int n = R->nvars();
    std::vector<int> elim = vars;
    std::sort(elim.begin(), elim.end());
    elim.erase(std::unique(elim.begin(), elim.end()), elim.end());
    for (int v : elim)
        if (v < 0 || v >= n) throw std::invalid_argument("variable index out of range");
    const int k = int(elim.size());
    if (k == 0 || k >= n) throw std::invalid_argument("must eliminate a proper subset");

    std::vector<int> perm(n, -1);  // old index -> new index
    int pos = 0;
    for (int v : elim) perm[v] = pos++;
    std::vector<std::string> names;
    std::vector<int> grading;
    for (int v : elim) {
        names.push_back(R->names()[v]);
        grading.push_back(R->grading()[v]);
    }
    std::vector<int> kept;
    for (int i = 0; i < n; ++i)
        if (perm[i] < 0) {
            perm[i] = pos++;
            kept.push_back(i);
            names.push_back(R->names()[i]);
            grading.push_back(R->grading()[i]);
        }
    RingPtr RE = PolyRing::make(R->field().modulus(), n, MonomialOrder::elim(k), names, grading);

    auto permute = [&](const Poly& f, const std::vector<int>& p, RingPtr target) {
        std::vector<Term> ts;
        for (const Term& t : f.terms()) {
            Mono m;
            for (int i = 0; i < n; ++i) {
                int e = t.m.exp(i);
                if (e) m = m * Mono::var(p[i], e);
            }
            ts.push_back({m, t.c});
        }
        return Poly::from_terms(target, std::move(ts));
    };

    std::vector<Poly> moved;
    for (const Poly& g : I.gens()) moved.push_back(permute(g, perm, RE));
    std::vector<Poly> gbE = reduce_basis(buchberger(moved));

    // subring on the kept variables
    std::vector<std::string> sub_names;
    std::vector<int> sub_grading;
    for (int v : kept) {
        sub_names.push_back(R->names()[v]);
        sub_grading.push_back(R->grading()[v]);
    }
    RingPtr S = PolyRing::make(R->field().modulus(), n - k, MonomialOrder::grevlex(), sub_names,
                               sub_grading);
    std::vector<Poly> out;
    for (const Poly& g : gbE) {
        bool pure = true;
        for (const Term& t : g.terms())
            for (int i = 0; i < k && pure; ++i)
                if (t.m.exp(i)) pure = false;
        if (!pure) continue;
        std::vector<Term> ts;
        for (const Term& t : g.terms()) {
            Mono m;
            for (int i = k; i < n; ++i) {
                int e = t.m.exp(i);
                if (e) m = m * Mono::var(i - k, e);
            }
            ts.push_back({m, t.c});
        }
        out.push_back(Poly::from_terms(S, std::move(ts)));
    }
    return Ideal(S, reduce_basis(std::move(out)));
}

bool is_subset(const Ideal& I, const Ideal& J) {
    if (!I.ring()->same_ring(*J.ring())) throw RingMismatch();
    for (const Poly& g : I.gens())
        if (!J.contains(g)) return false;
    return true;
}

bool ideal_equals(const Ideal& I, const Ideal& J) { return is_subset(I, J) && is_subset(J, I); }

Ideal ideal_of_point(RingPtr R, const std::vector<uint32_t>& p) {
    const PrimeField& F = R->field();
    const int n = R->nvars();
    MatFp A(F, 1, n);
    for (int j = 0; j < n; ++j) A.at(0, j) = p[j] % F.modulus();
    MatFp K = A.kernel();
    std::vector<Poly> gens;
    for (size_t r = 0; r < K.rows(); ++r) {
        std::vector<Term> ts;
        for (int j = 0; j < n; ++j)
            if (K.at(r, j)) ts.push_back({Mono::var(j), K.at(r, j)});
        gens.push_back(Poly::from_terms(R, std::move(ts)));
    }
    return Ideal(R, std::move(gens));
}

Ideal ideal_of_line(RingPtr R, const std::vector<uint32_t>& p, const std::vector<uint32_t>& q) {
    const PrimeField& F = R->field();
    const int n = R->nvars();
    MatFp A(F, 2, n);
    for (int j = 0; j < n; ++j) {
        A.at(0, j) = p[j] % F.modulus();
        A.at(1, j) = q[j] % F.modulus();
    }
    if (A.rank() < 2) throw DegeneratePosition("coincident points define no line");
    MatFp K = A.kernel();
    std::vector<Poly> gens;
    for (size_t r = 0; r < K.rows(); ++r) {
        std::vector<Term> ts;
        for (int j = 0; j < n; ++j)
            if (K.at(r, j)) ts.push_back({Mono::var(j), K.at(r, j)});
        gens.push_back(Poly::from_terms(R, std::move(ts)));
    }
    return Ideal(R, std::move(gens));
}

uint32_t binom_mod(long a, long b, const PrimeField& F) {
    if (b < 0 || b > a) return 0;
    const uint32_t p = F.modulus();
    uint32_t result = 1;
    while (a > 0 || b > 0) {  // Lucas
        long ad = a % p, bd = b % p;
        if (bd > ad) return 0;
        uint32_t c = 1;
        for (long k = 1; k <= bd; ++k)
            c = F.mul(F.mul(c, F.reduce_signed(ad - k + 1)), F.inv(F.reduce(k)));
        result = F.mul(result, c);
        a /= p;
        b /= p;
    }
    return result;
}

const std::vector<Mono>& degree_monomials(const PolyRing& R, int d) {
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, int, int, int, int>, std::vector<Mono>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(R.field().modulus(), R.nvars(), int(R.order().kind),
                               R.order().elim_block, d);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, R.monomials_of_degree(d)).first;
    return it->second;
}

size_t mono_rank(const PolyRing& R, const std::vector<Mono>& monos, Mono m) {
    auto it = std::lower_bound(monos.begin(), monos.end(), m,
                               [&R](Mono a, Mono b) { return R.cmp(a, b) > 0; });
    return size_t(it - monos.begin());
}

void dense_reduce(const PolyRing& R, const std::vector<Poly>& gb, int d,
                  const std::vector<Mono>& monos, std::vector<uint32_t>& v) {
    const PrimeField& F = R.field();
    const uint32_t p = F.modulus();
    for (size_t i = 0; i < monos.size(); ++i) {
        uint32_t c = v[i];
        if (c == 0) continue;
        const Poly* red = nullptr;
        for (const Poly& g : gb)
            if (g.lead_mono().divides(monos[i])) {
                red = &g;
                break;
            }
        if (!red) continue;
        v[i] = 0;
        Mono q = monos[i] / red->lead_mono();
        uint32_t scale = F.mul(c, F.inv(red->lead_coeff()));
        const auto& ts = red->terms();
        for (size_t k = 1; k < ts.size(); ++k) {
            size_t idx = mono_rank(R, monos, ts[k].m * q);
            uint64_t cur = v[idx] + uint64_t(p) - F.mul(scale, ts[k].c);
            v[idx] = uint32_t(cur >= p ? cur - p : cur);
        }
    }
    (void)d;
}

std::vector<Poly> min_gens(const Ideal& I) {
    RingPtr R = I.ring();
    const PrimeField& F = R->field();
    const auto& gb = I.gb();
    if (gb.empty()) return {};
    std::map<int, std::vector<Poly>> by_deg;
    for (const Poly& g : gb) by_deg[g.degree()].push_back(g);
    std::vector<Poly> kept;
    for (auto& [d, cands] : by_deg) {
        const auto& monos = degree_monomials(*R, d);
        MatFp span(F, 0, monos.size());
        for (const Poly& g : kept) {
            int dg = g.degree();
            if (dg > d) continue;
            for (Mono m : degree_monomials(*R, d - dg)) {
                Poly mg = g.mono_mul(m);
                std::vector<uint32_t> row(monos.size(), 0);
                for (const Term& t : mg.terms()) row[mono_rank(*R, monos, t.m)] = t.c;
                span.append_row(row);
            }
        }
        std::vector<size_t> piv = span.rref();
        std::vector<int> pivot_col(monos.size(), -1);
        for (size_t k = 0; k < piv.size(); ++k) pivot_col[piv[k]] = int(k);
        size_t nrows = piv.size();
        for (const Poly& c : cands) {
            // reduce the candidate against the current row space
            std::vector<uint32_t> row(monos.size(), 0);
            for (const Term& t : c.terms()) row[mono_rank(*R, monos, t.m)] = t.c;
            for (size_t j = 0; j < monos.size(); ++j) {
                if (row[j] == 0 || pivot_col[j] < 0) continue;
                uint32_t f = row[j];
                const uint32_t* pr = span.row(size_t(pivot_col[j]));
                uint64_t fp = F.modulus() - f;
                for (size_t jj = j; jj < monos.size(); ++jj)
                    row[jj] = F.reduce(row[jj] + fp * pr[jj]);
            }
            bool zero = true;
            for (uint32_t x : row)
                if (x) {
                    zero = false;
                    break;
                }
            if (zero) continue;
            kept.push_back(c);
            // append the reduced row, keep rref shape lazily: re-rref is fine
            span.append_row(row);
            piv = span.rref();
            pivot_col.assign(monos.size(), -1);
            for (size_t k = 0; k < piv.size(); ++k) pivot_col[piv[k]] = int(k);
            nrows = piv.size();
            (void)nrows;
        }
    }
    return kept;
}

}  // namespace fano
