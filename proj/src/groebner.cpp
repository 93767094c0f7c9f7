#include "fanokernel/groebner.hpp"

#include <algorithm>
#include <queue>

namespace fano {

// ---------- ModPoly ----------

int ModPoly::cmp_terms(const ModTerm& a, const ModTerm& b) const {
    if (ord_ == ModOrder::POT) {
        if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
        return R_->cmp(a.m, b.m);
    }
    int c = R_->cmp(a.m, b.m);
    if (c != 0) return c;
    if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
    return 0;
}

ModPoly ModPoly::from_terms(RingPtr R, ModOrder ord, std::vector<ModTerm> ts) {
    ModPoly f(std::move(R), ord);
    std::sort(ts.begin(), ts.end(),
              [&f](const ModTerm& a, const ModTerm& b) { return f.cmp_terms(a, b) > 0; });
    const PrimeField& F = f.R_->field();
    for (const ModTerm& t : ts) {
        uint32_t c = t.c % F.modulus();
        if (!f.ts_.empty() && f.ts_.back().m == t.m && f.ts_.back().comp == t.comp) {
            f.ts_.back().c = F.add(f.ts_.back().c, c);
            if (f.ts_.back().c == 0) f.ts_.pop_back();
        } else if (c) {
            f.ts_.push_back({t.m, t.comp, c});
        }
    }
    return f;
}

ModPoly ModPoly::unit(RingPtr R, ModOrder ord, uint32_t comp, int) {
    ModPoly f(std::move(R), ord);
    f.ts_.push_back({Mono::one(), comp, 1});
    return f;
}

ModPoly ModPoly::from_poly(const Poly& f, uint32_t comp, ModOrder ord) {
    ModPoly g(f.ring(), ord);
    for (const Term& t : f.terms()) g.ts_.push_back({t.m, comp, t.c});
    return g;
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
    const PrimeField& F = R_->field();
    ModPoly out(R_, ord_);
    out.ts_.reserve(ts_.size() + o.ts_.size());
    size_t i = 0, j = 0;
    while (i < ts_.size() && j < o.ts_.size()) {
        int c = cmp_terms(ts_[i], o.ts_[j]);
        if (c > 0) {
            out.ts_.push_back(ts_[i++]);
        } else if (c < 0) {
            out.ts_.push_back(o.ts_[j++]);
        } else {
            uint32_t s = F.add(ts_[i].c, o.ts_[j].c);
            if (s) out.ts_.push_back({ts_[i].m, ts_[i].comp, s});
            ++i, ++j;
        }
    }
    for (; i < ts_.size(); ++i) out.ts_.push_back(ts_[i]);
    for (; j < o.ts_.size(); ++j) out.ts_.push_back(o.ts_[j]);
    return out;
}

ModPoly ModPoly::axpy_sub(uint32_t c, Mono m, const ModPoly& g) const {
    const PrimeField& F = R_->field();
    ModPoly out(R_, ord_);
    out.ts_.reserve(ts_.size() + g.ts_.size());
    size_t i = 0, j = 0;
    while (i < ts_.size() && j < g.ts_.size()) {
        ModTerm gt{g.ts_[j].m * m, g.ts_[j].comp, g.ts_[j].c};
        int cc = cmp_terms(ts_[i], gt);
        if (cc > 0) {
            out.ts_.push_back(ts_[i++]);
        } else if (cc < 0) {
            out.ts_.push_back({gt.m, gt.comp, F.neg(F.mul(c, gt.c))});
            ++j;
        } else {
            uint32_t s = F.sub(ts_[i].c, F.mul(c, gt.c));
            if (s) out.ts_.push_back({ts_[i].m, ts_[i].comp, s});
            ++i, ++j;
        }
    }
    for (; i < ts_.size(); ++i) out.ts_.push_back(ts_[i]);
    for (; j < g.ts_.size(); ++j)
        out.ts_.push_back({g.ts_[j].m * m, g.ts_[j].comp, F.neg(F.mul(c, g.ts_[j].c))});
    return out;
}

ModPoly ModPoly::mono_mul(Mono m, uint32_t c) const {
    const PrimeField& F = R_->field();
    c %= F.modulus();
    ModPoly out(R_, ord_);
    if (c == 0) return out;
    out.ts_.reserve(ts_.size());
    for (const ModTerm& t : ts_) out.ts_.push_back({t.m * m, t.comp, F.mul(t.c, c)});
    return out;
}

ModPoly ModPoly::scaled(uint32_t c) const { return mono_mul(Mono::one(), c); }

ModPoly ModPoly::monic() const {
    if (is_zero() || ts_.front().c == 1) return *this;
    return scaled(R_->field().inv(ts_.front().c));
}

Poly ModPoly::component(uint32_t comp) const {
    std::vector<Term> ts;
    for (const ModTerm& t : ts_)
        if (t.comp == comp) ts.push_back({t.m, t.c});
    return Poly::from_terms(R_, std::move(ts));
}

int ModPoly::homogeneous_degree(const std::vector<int>& twists) const {
    if (ts_.empty()) return -1;
    int d = R_->weighted_degree(ts_[0].m) + twists[ts_[0].comp];
    for (const ModTerm& t : ts_)
        if (R_->weighted_degree(t.m) + twists[t.comp] != d) return -2;
    return d;
}

// ---------- heap-based division ----------

namespace {

// A stream walks (mul_c * mul_m) * src, term by term, in module order.
struct Stream {
    const std::vector<ModTerm>* src;
    size_t pos;
    Mono mul_m;
    uint32_t mul_c;
};

struct HeapEntry {
    ModTerm t;
    uint32_t stream;
};

struct Reducer {
    const ModPoly* engine_cmp;  // any ModPoly of the right ring/order, for cmp
    bool operator()(const HeapEntry& a, const HeapEntry& b) const {
        return engine_cmp->cmp_terms(a.t, b.t) < 0;  // max-heap
    }
};

struct RepStep {  // pending contribution  c * m * reps[idx]
    uint32_t c;
    Mono m;
    uint32_t idx;
};

// Full normal form of sum_i (init_c, init_m)*init_src against a reducer
// family addressed by index. Records every division step through on_step.
template <typename StepFn, typename FindReducer, typename Resolve>
ModPoly heap_reduce(const RingPtr& R, ModOrder ord,
                    const std::vector<std::tuple<uint32_t, Mono, const ModPoly*>>& init,
                    const FindReducer& find_reducer, const Resolve& resolve,
                    const StepFn& on_step) {
    ModPoly proto(R, ord);
    Reducer cmp{&proto};
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, Reducer> heap(cmp);
    std::vector<Stream> streams;
    const PrimeField& F = R->field();

    auto push_stream = [&](uint32_t c, Mono m, const ModPoly* src) {
        if (src->is_zero() || c == 0) return;
        uint32_t id = uint32_t(streams.size());
        streams.push_back({&src->terms(), 0, m, c});
        const ModTerm& t0 = src->terms()[0];
        heap.push({{t0.m * m, t0.comp, F.mul(t0.c, c)}, id});
    };
    auto advance = [&](uint32_t id) {
        Stream& s = streams[id];
        if (++s.pos < s.src->size()) {
            const ModTerm& t = (*s.src)[s.pos];
            heap.push({{t.m * s.mul_m, t.comp, F.mul(t.c, s.mul_c)}, id});
        }
    };

    for (auto& [c, m, src] : init) push_stream(c, m, src);

    std::vector<ModTerm> out;
    while (!heap.empty()) {
        HeapEntry top = heap.top();
        heap.pop();
        advance(top.stream);
        uint32_t coeff = top.t.c;
        while (!heap.empty() && heap.top().t.m == top.t.m && heap.top().t.comp == top.t.comp) {
            coeff = F.add(coeff, heap.top().t.c);
            uint32_t sid = heap.top().stream;
            heap.pop();
            advance(sid);
        }
        if (coeff == 0) continue;
        long ridx = find_reducer(top.t.m, top.t.comp);
        if (ridx >= 0) {
            const ModPoly* red = resolve(ridx);
            // subtract coeff * (m/lt) * red   (red is monic); skip its lead
            Mono q = top.t.m / red->lead().m;
            on_step(coeff, q, uint32_t(ridx));
            if (red->terms().size() > 1) {
                uint32_t id = uint32_t(streams.size());
                streams.push_back({&red->terms(), 1, q, F.neg(coeff)});
                const ModTerm& t1 = red->terms()[1];
                heap.push({{t1.m * q, t1.comp, F.mul(t1.c, F.neg(coeff))}, id});
            }
        } else {
            out.push_back({top.t.m, top.t.comp, coeff});
        }
    }
    // terms arrive in strictly decreasing order already
    return ModPoly::from_terms(R, ord, std::move(out));
}

struct GBElem {
    ModPoly f;         // monic
    ModPoly rep;       // representation over the inputs (POT order)
    int sugar = 0;
    bool redundant = false;
};

struct Pair {
    uint32_t i, j;
    Mono lcm;
    int sugar;
    bool alive = true;
};

}  // namespace

// Combine pending representation steps into a single ModPoly over inputs.
static ModPoly assemble_rep(const RingPtr& R, const std::vector<GBElem>& basis,
                            const std::vector<std::tuple<uint32_t, Mono, uint32_t>>& init_reps,
                            const std::vector<RepStep>& steps) {
    std::vector<ModTerm> acc;
    const PrimeField& F = R->field();
    auto add_scaled = [&](uint32_t c, Mono m, const ModPoly& rep, bool negate) {
        uint32_t cc = negate ? F.neg(c) : c;
        for (const ModTerm& t : rep.terms())
            acc.push_back({t.m * m, t.comp, F.mul(t.c, cc)});
    };
    for (auto& [c, m, idx] : init_reps) add_scaled(c, m, basis[idx].rep, false);
    for (const RepStep& s : steps) add_scaled(s.c, s.m, basis[s.idx].rep, true);
    return ModPoly::from_terms(R, ModOrder::POT, std::move(acc));
}

ModGBResult module_buchberger(const FreeModule& F, const std::vector<ModPoly>& gens,
                              ModOrder ord, GBOptions opt) {
    const RingPtr& R = F.ring;
    const PrimeField& Fp = R->field();
    ModGBResult res;
    std::vector<GBElem> basis;
    std::vector<Pair> pairs;
    const bool rank1 = F.rank() == 1;
    const bool track = opt.track_syzygies;

    auto sugar_of = [&](const ModPoly& f) {
        int d = -1;
        for (const ModTerm& t : f.terms())
            d = std::max(d, R->weighted_degree(t.m) + F.twists[t.comp]);
        return d;
    };

    auto find_reducer_fn = [&](Mono m, uint32_t comp) -> long {
        // prefer the reducer with the fewest terms
        long best = -1;
        size_t best_size = SIZE_MAX;
        for (size_t i = 0; i < basis.size(); ++i) {
            const ModTerm& lt = basis[i].f.lead();
            if (lt.comp == comp && lt.m.divides(m) && basis[i].f.terms().size() < best_size) {
                best = long(i);
                best_size = basis[i].f.terms().size();
            }
        }
        return best;
    };
    auto resolve_fn = [&](long i) -> const ModPoly* { return &basis[size_t(i)].f; };

    auto emit_syzygy = [&](ModPoly s) {
        if (!s.is_zero()) res.syzygies.push_back(std::move(s));
    };

    // add a new basis element (must be monic), update the pair set
    auto add_element = [&](ModPoly f, ModPoly rep, int sugar) {
        uint32_t t = uint32_t(basis.size());
        const ModTerm lt = f.lead();
        std::vector<Pair> fresh;
        for (uint32_t i = 0; i < t; ++i) {
            if (basis[i].redundant) continue;
            const ModTerm& li = basis[i].f.lead();
            if (li.comp != lt.comp) continue;
            if (rank1 && li.m.coprime(lt.m)) {
                // product criterion; in tracking mode its syzygy is Koszul
                if (track) {
                    // the pair's Schreyer syzygy is the Koszul relation
                    // f * rep_i - f_i * rep_t
                    std::vector<ModTerm> acc;
                    for (const ModTerm& a : f.terms())
                        for (const ModTerm& b : basis[i].rep.terms())
                            acc.push_back({a.m * b.m, b.comp, Fp.mul(a.c, b.c)});
                    for (const ModTerm& a : basis[i].f.terms())
                        for (const ModTerm& b : rep.terms())
                            acc.push_back({a.m * b.m, b.comp, Fp.neg(Fp.mul(a.c, b.c))});
                    emit_syzygy(ModPoly::from_terms(R, ModOrder::POT, std::move(acc)));
                }
                continue;
            }
            Mono l = li.m.lcm(lt.m);
            int sug = std::max(basis[i].sugar + R->weighted_degree(l / li.m),
                               sugar + R->weighted_degree(l / lt.m));
            fresh.push_back({i, t, l, sug});
        }
        // Gebauer-Moeller among the fresh pairs; with tracking on, the
        // dropped pairs' syzygies are covered by the retained ones plus the
        // Koszul relations emitted for coprime-lead pairs
        {
            std::vector<char> drop(fresh.size(), 0);
            for (size_t a = 0; a < fresh.size(); ++a) {
                if (drop[a]) continue;
                for (size_t b = 0; b < fresh.size(); ++b) {
                    if (a == b || drop[b] || drop[a]) continue;
                    if (fresh[b].lcm.divides(fresh[a].lcm) && fresh[a].lcm != fresh[b].lcm)
                        drop[a] = 1;
                }
            }
            // keep one pair per lcm value
            for (size_t a = 0; a < fresh.size(); ++a) {
                if (drop[a]) continue;
                for (size_t b = a + 1; b < fresh.size(); ++b) {
                    if (!drop[b] && fresh[b].lcm == fresh[a].lcm) drop[b] = 1;
                }
            }
            // old-pair elimination
            for (Pair& p : pairs) {
                if (!p.alive) continue;
                if (basis[p.i].f.lead().comp != lt.comp) continue;
                if (lt.m.divides(p.lcm)) {
                    Mono lit = basis[p.i].f.lead().m.lcm(lt.m);
                    Mono ljt = basis[p.j].f.lead().m.lcm(lt.m);
                    if (lit != p.lcm && ljt != p.lcm) p.alive = false;
                }
            }
            for (size_t a = 0; a < fresh.size(); ++a)
                if (!drop[a]) pairs.push_back(fresh[a]);
        }
        for (uint32_t i = 0; i < t; ++i)
            if (!basis[i].redundant && basis[i].f.lead().comp == lt.comp &&
                lt.m.divides(basis[i].f.lead().m))
                basis[i].redundant = true;
        basis.push_back({std::move(f), std::move(rep), sugar, false});
    };

    // seed with the inputs
    for (size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].is_zero()) continue;
        ModPoly rep(R, ModOrder::POT);
        if (track) rep = ModPoly::unit(R, ModOrder::POT, uint32_t(k));
        ModPoly g = gens[k];
        int sug = sugar_of(g);
        // reduce each input against what we have (keeps the basis smaller);
        // with tracking we fold the division steps into the representation
        std::vector<RepStep> steps;
        std::vector<std::tuple<uint32_t, Mono, const ModPoly*>> init{{1u, Mono::one(), &g}};
        ModPoly nf = heap_reduce(R, ord, init, find_reducer_fn, resolve_fn,
                                 [&](uint32_t c, Mono m, uint32_t bi) {
                                     if (track) steps.push_back({c, m, bi});
                                 });
        if (nf.is_zero()) {
            if (track) {
                // the input itself reduced to zero: e_k minus the division steps
                std::vector<ModTerm> acc{{Mono::one(), uint32_t(k), 1u}};
                for (const RepStep& st : steps)
                    for (const ModTerm& t : basis[st.idx].rep.terms())
                        acc.push_back({t.m * st.m, t.comp, Fp.neg(Fp.mul(t.c, st.c))});
                emit_syzygy(ModPoly::from_terms(R, ModOrder::POT, std::move(acc)));
            }
            continue;
        }
        uint32_t lc = nf.lead().c;
        ModPoly rep_full(R, ModOrder::POT);
        if (track) {
            std::vector<ModTerm> acc{{Mono::one(), uint32_t(k), 1u}};
            for (const RepStep& st : steps)
                for (const ModTerm& t : basis[st.idx].rep.terms())
                    acc.push_back({t.m * st.m, t.comp, Fp.neg(Fp.mul(t.c, st.c))});
            rep_full = ModPoly::from_terms(R, ModOrder::POT, std::move(acc));
            rep_full = rep_full.scaled(Fp.inv(lc));
        }
        add_element(nf.monic(), std::move(rep_full), sug);
    }

    // main loop
    for (;;) {
        int best = -1;
        for (size_t a = 0; a < pairs.size(); ++a) {
            if (!pairs[a].alive) continue;
            if (best < 0) {
                best = int(a);
                continue;
            }
            const Pair &p = pairs[a], &q = pairs[size_t(best)];
            if (p.sugar != q.sugar) {
                if (p.sugar < q.sugar) best = int(a);
            } else {
                int c = R->cmp(p.lcm, q.lcm);
                if (c < 0 || (c == 0 && (p.i < q.i || (p.i == q.i && p.j < q.j)))) best = int(a);
            }
        }
        if (best < 0) break;
        Pair p = pairs[size_t(best)];
        pairs[size_t(best)].alive = false;
        if (opt.degree_cap >= 0 && p.sugar > opt.degree_cap) {
            res.truncated = true;
            continue;
        }
        const GBElem &gi = basis[p.i], &gj = basis[p.j];
        Mono ui = p.lcm / gi.f.lead().m, uj = p.lcm / gj.f.lead().m;
        std::vector<RepStep> steps;
        std::vector<std::tuple<uint32_t, Mono, const ModPoly*>> init{
            {1u, ui, &gi.f}, {Fp.neg(1), uj, &gj.f}};
        ModPoly nf = heap_reduce(R, ord, init, find_reducer_fn, resolve_fn,
                                 [&](uint32_t c, Mono m, uint32_t bi) {
                                     if (track) steps.push_back({c, m, bi});
                                 });
        if (nf.is_zero()) {
            if (track)
                emit_syzygy(assemble_rep(R, basis,
                                         {{1u, ui, p.i}, {Fp.neg(1), uj, p.j}}, steps));
            continue;
        }
        uint32_t lc = nf.lead().c;
        ModPoly rep_full(R, ModOrder::POT);
        if (track) {
            rep_full = assemble_rep(R, basis, {{1u, ui, p.i}, {Fp.neg(1), uj, p.j}}, steps);
            rep_full = rep_full.scaled(Fp.inv(lc));
        }
        add_element(nf.monic(), std::move(rep_full), p.sugar);
    }

    // collect: drop redundant, then inter-reduce tails for a reduced basis
    std::vector<ModPoly> out;
    for (const GBElem& e : basis)
        if (!e.redundant) out.push_back(e.f);
    if (opt.fully_reduce && !res.truncated) {
        for (size_t i = 0; i < out.size(); ++i) {
            std::vector<std::tuple<uint32_t, Mono, const ModPoly*>> init{{1u, Mono::one(), &out[i]}};
            auto finder = [&](Mono m, uint32_t comp) -> long {
                for (size_t j = 0; j < out.size(); ++j) {
                    if (j == i) continue;
                    const ModTerm& lt = out[j].lead();
                    if (lt.comp == comp && lt.m.divides(m)) return long(j);
                }
                return -1;
            };
            auto res2 = [&](long j) -> const ModPoly* { return &out[size_t(j)]; };
            out[i] = heap_reduce(R, ord, init, finder, res2, [](uint32_t, Mono, uint32_t) {});
        }
    }
    // deterministic output order: ascending in the module order
    ModPoly proto(R, ord);
    std::sort(out.begin(), out.end(), [&proto](const ModPoly& a, const ModPoly& b) {
        return proto.cmp_terms(a.lead(), b.lead()) < 0;
    });
    res.basis = std::move(out);
    return res;
}

ModPoly module_normal_form(const ModPoly& f, const std::vector<ModPoly>& basis) {
    if (f.is_zero()) return f;
    const RingPtr& R = f.ring();
    std::vector<std::tuple<uint32_t, Mono, const ModPoly*>> init{{1u, Mono::one(), &f}};
    auto finder = [&](Mono m, uint32_t comp) -> long {
        long best = -1;
        size_t best_size = SIZE_MAX;
        for (size_t j = 0; j < basis.size(); ++j) {
            if (basis[j].is_zero()) continue;
            const ModTerm& lt = basis[j].lead();
            if (lt.comp == comp && lt.m.divides(m) && basis[j].terms().size() < best_size) {
                best = long(j);
                best_size = basis[j].terms().size();
            }
        }
        return best;
    };
    auto resolve = [&](long j) -> const ModPoly* { return &basis[size_t(j)]; };
    return heap_reduce(R, f.order(), init, finder, resolve, [](uint32_t, Mono, uint32_t) {});
}

std::vector<Poly> buchberger(const std::vector<Poly>& gens, GBOptions opt) {
    if (gens.empty()) return {};
    RingPtr R = gens[0].ring();
    FreeModule F{R, {0}};
    std::vector<ModPoly> mg;
    for (const Poly& g : gens) {
        if (!g.ring()->same_ring(*R)) throw RingMismatch();
        mg.push_back(ModPoly::from_poly(g, 0, ModOrder::TOP));
    }
    opt.track_syzygies = false;
    ModGBResult r = module_buchberger(F, mg, ModOrder::TOP, opt);
    std::vector<Poly> out;
    for (const ModPoly& m : r.basis) out.push_back(m.component(0));
    return out;
}

std::vector<Poly> reduce_basis(std::vector<Poly> gb) {
    if (gb.empty()) return gb;
    // mutual reduction to a fixpoint; for a GB input this yields the unique
    // reduced basis, otherwise an autoreduced generating set
    std::vector<Poly> cur;
    for (const Poly& g : gb)
        if (!g.is_zero()) cur.push_back(g.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(cur.begin(), cur.end(), [&](const Poly& a, const Poly& b) {
            return a.ring()->cmp(a.lead_mono(), b.lead_mono()) < 0;
        });
        for (size_t i = 0; i < cur.size(); ++i) {
            std::vector<Poly> others;
            for (size_t j = 0; j < cur.size(); ++j)
                if (j != i) others.push_back(cur[j]);
            Poly nf = normal_form(cur[i], others);
            if (nf != cur[i]) {
                changed = true;
                if (nf.is_zero()) {
                    cur.erase(cur.begin() + i);
                    --i;
                } else {
                    cur[i] = nf.monic();
                }
            }
        }
    }
    std::sort(cur.begin(), cur.end(), [&](const Poly& a, const Poly& b) {
        return a.ring()->cmp(a.lead_mono(), b.lead_mono()) < 0;
    });
    return cur;
}

Poly normal_form(const Poly& f, const std::vector<Poly>& gb) {
    if (f.is_zero()) return f;
    std::vector<ModPoly> basis;
    basis.reserve(gb.size());
    for (const Poly& g : gb)
        if (!g.is_zero()) basis.push_back(ModPoly::from_poly(g.monic(), 0, ModOrder::TOP));
    ModPoly nf = module_normal_form(ModPoly::from_poly(f, 0, ModOrder::TOP), basis);
    return nf.component(0);
}

PolyMatrix syzygy_matrix(const FreeModule& F, const std::vector<ModPoly>& gens) {
    GBOptions opt;
    opt.track_syzygies = true;
    opt.fully_reduce = false;
    ModGBResult r = module_buchberger(F, gens, ModOrder::TOP, opt);
    std::vector<int> row_twists(gens.size(), 0);
    for (size_t k = 0; k < gens.size(); ++k) {
        int d = gens[k].homogeneous_degree(F.twists);
        if (d == -2) throw InhomogeneousInput();
        row_twists[k] = d >= 0 ? d : 0;
    }
    PolyMatrix S(F.ring, gens.size(), r.syzygies.size());
    S.row_twists = row_twists;
    for (size_t j = 0; j < r.syzygies.size(); ++j) {
        int d = r.syzygies[j].homogeneous_degree(row_twists);
        if (d == -2) throw InhomogeneousInput();
        S.col_twists[j] = d;
        for (size_t i = 0; i < gens.size(); ++i) S.at(i, j) = r.syzygies[j].component(uint32_t(i));
    }
    return S;
}

// ---------- resolutions ----------

namespace {

bool matrix_is_zero(const PolyMatrix& M) {
    for (const Poly& e : M.entries)
        if (!e.is_zero()) return false;
    return true;
}

// Remove unit entries by pivoting, adjusting the neighbouring maps so the
// chain stays a complex with the same homology.
void minimalize_chain(std::vector<PolyMatrix>& maps, std::vector<int>& f0_twists) {
    auto erase_row = [](PolyMatrix& M, size_t r) {
        M.entries.erase(M.entries.begin() + r * M.ncols, M.entries.begin() + (r + 1) * M.ncols);
        M.row_twists.erase(M.row_twists.begin() + r);
        --M.nrows;
    };
    auto erase_col = [](PolyMatrix& M, size_t c) {
        for (size_t i = M.nrows; i-- > 0;)
            M.entries.erase(M.entries.begin() + i * M.ncols + c);
        M.col_twists.erase(M.col_twists.begin() + c);
        --M.ncols;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t lvl = 0; lvl < maps.size(); ++lvl) {
            PolyMatrix& D = maps[lvl];
            const PrimeField& F = D.ring->field();
            size_t pr = SIZE_MAX, pk = SIZE_MAX;
            uint32_t unit = 0;
            for (size_t i = 0; i < D.nrows && pr == SIZE_MAX; ++i)
                for (size_t j = 0; j < D.ncols; ++j) {
                    const Poly& e = D.at(i, j);
                    if (!e.is_zero() && e.is_constant()) {
                        pr = i;
                        pk = j;
                        unit = e.lead_coeff();
                        break;
                    }
                }
            if (pr == SIZE_MAX) continue;
            changed = true;
            uint32_t cinv = F.inv(unit);
            // clear row pr across other columns; mirror as row ops on maps[lvl+1]
            for (size_t k2 = 0; k2 < D.ncols; ++k2) {
                if (k2 == pk) continue;
                Poly q = D.at(pr, k2).scaled(cinv);
                if (q.is_zero()) continue;
                for (size_t i = 0; i < D.nrows; ++i)
                    D.at(i, k2) = D.at(i, k2) - q * D.at(i, pk);
                if (lvl + 1 < maps.size()) {
                    PolyMatrix& E = maps[lvl + 1];
                    for (size_t j = 0; j < E.ncols; ++j)
                        E.at(pk, j) = E.at(pk, j) + q * E.at(k2, j);
                }
            }
            // clear column pk across other rows; mirror as column ops on maps[lvl-1]
            for (size_t r2 = 0; r2 < D.nrows; ++r2) {
                if (r2 == pr) continue;
                Poly q = D.at(r2, pk).scaled(cinv);
                if (q.is_zero()) continue;
                for (size_t j = 0; j < D.ncols; ++j)
                    D.at(r2, j) = D.at(r2, j) - q * D.at(pr, j);
                if (lvl > 0) {
                    PolyMatrix& C = maps[lvl - 1];
                    for (size_t i = 0; i < C.nrows; ++i)
                        C.at(i, pr) = C.at(i, pr) + q * C.at(i, r2);
                }
            }
            // drop the cancelled generator pair
            if (lvl + 1 < maps.size()) erase_row(maps[lvl + 1], pk);
            erase_col(D, pk);
            if (lvl > 0) {
                erase_col(maps[lvl - 1], pr);
            } else {
                f0_twists.erase(f0_twists.begin() + pr);
            }
            erase_row(D, pr);
        }
    }
    while (!maps.empty() && (maps.back().ncols == 0 || matrix_is_zero(maps.back())))
        maps.pop_back();
}

}  // namespace

Resolution free_resolution(const FreeModule& F0, const std::vector<ModPoly>& gens,
                           int max_length) {
    Resolution res;
    res.f0_twists = F0.twists;
    FreeModule cur = F0;
    std::vector<ModPoly> cols = gens;
    for (int step = 0; step < max_length; ++step) {
        bool all_zero = true;
        for (const ModPoly& c : cols)
            if (!c.is_zero()) all_zero = false;
        if (all_zero) break;
        PolyMatrix S = syzygy_matrix(cur, cols);
        // record the current map
        PolyMatrix D(F0.ring, cur.rank(), cols.size());
        D.row_twists = cur.twists;
        for (size_t j = 0; j < cols.size(); ++j) {
            int d = cols[j].homogeneous_degree(cur.twists);
            if (d == -2) throw InhomogeneousInput();
            D.col_twists[j] = d >= 0 ? d : 0;
            for (size_t i = 0; i < cur.rank(); ++i) D.at(i, j) = cols[j].component(uint32_t(i));
        }
        res.maps.push_back(D);
        if (S.ncols == 0) break;
        // next level: columns of S as module elements
        cur = FreeModule{F0.ring, D.col_twists};
        cols.clear();
        for (size_t j = 0; j < S.ncols; ++j) {
            std::vector<ModTerm> ts;
            for (size_t i = 0; i < S.nrows; ++i)
                for (const Term& t : S.at(i, j).terms()) ts.push_back({t.m, uint32_t(i), t.c});
            cols.push_back(ModPoly::from_terms(F0.ring, ModOrder::TOP, std::move(ts)));
        }
    }
    minimalize_chain(res.maps, res.f0_twists);
    for (int t : res.f0_twists) ++res.betti.table[{0, t}];
    for (size_t i = 0; i < res.maps.size(); ++i)
        for (int t : res.maps[i].col_twists) ++res.betti.table[{int(i) + 1, t}];
    return res;
}

Resolution free_resolution_of_quotient(const std::vector<Poly>& ideal_gens, int max_length) {
    if (ideal_gens.empty()) throw std::invalid_argument("empty generator list");
    RingPtr R = ideal_gens[0].ring();
    FreeModule F0{R, {0}};
    std::vector<ModPoly> cols;
    for (const Poly& g : ideal_gens) cols.push_back(ModPoly::from_poly(g, 0, ModOrder::TOP));
    return free_resolution(F0, cols, max_length);
}

std::string BettiReport::str() const {
    std::string s;
    for (auto& [key, cnt] : table) {
        s += "(" + std::to_string(key.first) + "," + std::to_string(key.second) +
             "):" + std::to_string(cnt) + " ";
    }
    return s;
}

}  // namespace fano
