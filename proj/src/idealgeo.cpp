#include <algorithm>
#include <functional>
#include <map>

#include "fanokernel/ideal.hpp"
#include "fanokernel/invariants.hpp"
#include "fanokernel/linalg.hpp"

namespace fano {

// ---------- point configurations and linear systems ----------

void PointConfiguration::validate(const PrimeField& F) const {
    if (points.size() != multiplicities.size())
        throw std::invalid_argument("one multiplicity per point required");
    for (const auto& p : points) {
        bool nonzero = false;
        for (uint32_t c : p)
            if (c % F.modulus()) nonzero = true;
        if (!nonzero) throw std::invalid_argument("point has all-zero coordinates");
    }
    for (int m : multiplicities)
        if (m < 1) throw std::invalid_argument("multiplicities must be positive");
    // pairwise distinct as projective points: rank of every pair is 2
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j) {
            MatFp A(F, 2, points[i].size());
            for (size_t k = 0; k < points[i].size(); ++k) {
                A.at(0, k) = points[i][k] % F.modulus();
                A.at(1, k) = points[j][k] % F.modulus();
            }
            if (A.rank() < 2) throw std::invalid_argument("points are not pairwise distinct");
        }
}

bool PointConfiguration::general_linear_position(const PrimeField& F) const {
    const size_t n = points.empty() ? 0 : points[0].size();
    // every subset of size <= n spans
    std::vector<size_t> idx;
    bool ok = true;
    std::function<void(size_t, size_t)> rec = [&](size_t start, size_t want) {
        if (!ok) return;
        if (idx.size() == want) {
            MatFp A(F, want, n);
            for (size_t r = 0; r < want; ++r)
                for (size_t c = 0; c < n; ++c) A.at(r, c) = points[idx[r]][c] % F.modulus();
            if (A.rank() < want) ok = false;
            return;
        }
        for (size_t i = start; i < points.size(); ++i) {
            idx.push_back(i);
            rec(i + 1, want);
            idx.pop_back();
        }
    };
    size_t want = std::min(points.size(), n);
    rec(0, want);
    return ok;
}

namespace {

// rows expressing "multiplicity >= m at p" as Hasse-derivative conditions on
// the coefficients of a degree-d form
void append_multiplicity_rows(MatFp& A, const PolyRing& R, const std::vector<Mono>& monos,
                              const std::vector<uint32_t>& p_in, int mult, int d) {
    const PrimeField& F = R.field();
    const int n = R.nvars();
    std::vector<uint32_t> p(n);
    for (int i = 0; i < n; ++i) p[i] = p_in[i] % F.modulus();
    int chart = -1;
    for (int i = 0; i < n; ++i)
        if (p[i]) chart = i;  // last nonzero coordinate
    uint32_t inv = F.inv(p[chart]);
    for (int i = 0; i < n; ++i) p[i] = F.mul(p[i], inv);

    // enumerate beta over the chart-complement with |beta| < mult
    std::vector<int> beta(n, 0);
    auto emit_row = [&]() {
        std::vector<uint32_t> row(monos.size(), 0);
        for (size_t j = 0; j < monos.size(); ++j) {
            uint32_t v = 1;
            bool zero = false;
            for (int i = 0; i < n && !zero; ++i) {
                if (i == chart) continue;
                int a = monos[j].exp(i), b = beta[i];
                if (b > a) {
                    zero = true;
                    break;
                }
                if (b) v = F.mul(v, binom_mod(a, b, F));
                if (a - b) v = F.mul(v, F.pow(p[i], a - b));
            }
            row[j] = zero ? 0 : v;
        }
        A.append_row(row);
    };
    (void)d;
    for (int total = 0; total < mult; ++total) {
        std::function<void(int, int)> walk = [&](int var, int rem) {
            if (var == n) {
                if (rem == 0) emit_row();
                return;
            }
            if (var == chart) {
                walk(var + 1, rem);
                return;
            }
            for (int e = 0; e <= rem; ++e) {
                beta[var] = e;
                walk(var + 1, rem - e);
            }
            beta[var] = 0;
        };
        walk(0, total);
    }
}

// normal forms of all degree-d monomials against gb, as dense vectors over
// the standard monomials of that degree
struct MonomialNFTable {
    std::vector<Mono> std_monos;
    std::vector<std::vector<uint32_t>> nf;  // one per monomial of the degree

    MonomialNFTable(const PolyRing& R, const std::vector<Poly>& gb, int d) {
        const PrimeField& F = R.field();
        const auto& monos = degree_monomials(R, d);
        std::vector<int> reducer(monos.size(), -1);
        std::vector<int> std_index(monos.size(), -1);
        for (size_t i = 0; i < monos.size(); ++i) {
            for (size_t g = 0; g < gb.size(); ++g)
                if (gb[g].lead_mono().divides(monos[i])) {
                    reducer[i] = int(g);
                    break;
                }
            if (reducer[i] < 0) {
                std_index[i] = int(std_monos.size());
                std_monos.push_back(monos[i]);
            }
        }
        nf.assign(monos.size(), {});
        // descending order: reductions only reference smaller monomials
        for (size_t i = 0; i < monos.size(); ++i) {
            std::vector<uint32_t> v(std_monos.size(), 0);
            if (std_index[i] >= 0) {
                v[size_t(std_index[i])] = 1;
            } else {
                const Poly& g = gb[size_t(reducer[i])];
                Mono q = monos[i] / g.lead_mono();
                uint32_t scale = F.inv(g.lead_coeff());
                for (size_t k = 1; k < g.terms().size(); ++k) {
                    size_t idx = mono_rank(R, monos, g.terms()[k].m * q);
                    uint32_t c = F.neg(F.mul(scale, g.terms()[k].c));
                    const std::vector<uint32_t>& sub = nf[idx];
                    for (size_t s = 0; s < sub.size(); ++s)
                        if (sub[s]) v[s] = F.add(v[s], F.mul(c, sub[s]));
                }
            }
            nf[i] = std::move(v);
        }
    }
};

std::vector<Poly> kernel_to_polys(RingPtr R, const MatFp& K, const std::vector<Mono>& monos) {
    std::vector<Poly> out;
    for (size_t r = 0; r < K.rows(); ++r) {
        std::vector<Term> ts;
        for (size_t j = 0; j < K.cols(); ++j)
            if (K.at(r, j)) ts.push_back({monos[j], K.at(r, j)});
        out.push_back(Poly::from_terms(R, std::move(ts)));
    }
    return out;
}

}  // namespace

GradedPieceBasis graded_piece(RingPtr R, const PointConfiguration& pc, int d,
                              const std::vector<Ideal>& containment) {
    const PrimeField& F = R->field();
    pc.validate(F);
    const auto& monos = degree_monomials(*R, d);
    MatFp A(F, 0, monos.size());
    for (size_t i = 0; i < pc.points.size(); ++i)
        append_multiplicity_rows(A, *R, monos, pc.points[i], pc.multiplicities[i], d);
    for (const Ideal& W : containment) {
        if (!W.ring()->same_ring(*R)) throw RingMismatch();
        MonomialNFTable tab(*R, W.gb(), d);
        // one condition row per standard monomial of the quotient
        for (size_t s = 0; s < tab.std_monos.size(); ++s) {
            std::vector<uint32_t> row(monos.size(), 0);
            for (size_t j = 0; j < monos.size(); ++j) row[j] = tab.nf[j].empty() ? 0 : tab.nf[j][s];
            A.append_row(row);
        }
    }
    MatFp K = A.kernel();
    GradedPieceBasis out;
    out.degree = d;
    out.basis = kernel_to_polys(R, K, monos);
    return out;
}

GradedPieceBasis graded_piece(const Ideal& I, int d) {
    RingPtr R = I.ring();
    Ideal S = saturate_irrelevant(I);
    // basis of the degree-d piece: row space of { m * g } for GB elements g
    const PrimeField& F = R->field();
    const auto& monos = degree_monomials(*R, d);
    MatFp A(F, 0, monos.size());
    for (const Poly& g : S.gb()) {
        int dg = g.degree();
        if (dg > d) continue;
        for (Mono m : degree_monomials(*R, d - dg)) {
            Poly mg = g.mono_mul(m);
            std::vector<uint32_t> row(monos.size(), 0);
            for (const Term& t : mg.terms()) row[mono_rank(*R, monos, t.m)] = t.c;
            A.append_row(row);
        }
    }
    std::vector<size_t> piv = A.rref();
    GradedPieceBasis out;
    out.degree = d;
    for (size_t r = 0; r < piv.size(); ++r) {
        std::vector<Term> ts;
        for (size_t j = 0; j < monos.size(); ++j)
            if (A.at(r, j)) ts.push_back({monos[j], A.at(r, j)});
        out.basis.push_back(Poly::from_terms(R, std::move(ts)));
    }
    return out;
}

// ---------- singular loci ----------

Ideal singular_locus(const Ideal& I) {
    RingPtr R = I.ring();
    if (I.is_zero_ideal() || I.is_unit()) return Ideal::unit(R);
    NumericInvariants ni = numeric_invariants(I);
    int codim = (R->nvars() - 1) - ni.dim;
    std::vector<Poly> gens = min_gens(I);
    PolyMatrix J = jacobian(gens);
    std::vector<Poly> mins = minors(codim, J);
    std::vector<Poly> out = I.gens();
    for (Poly& m : mins)
        if (!m.is_zero()) out.push_back(std::move(m));
    return Ideal(R, std::move(out));
}

// ---------- kernels and images of maps ----------

namespace {

RingPtr graph_ring(const PolyRing& src, int nforms, int form_degree) {
    std::vector<std::string> names = src.names();
    std::vector<int> grading = src.grading();
    for (int j = 0; j < nforms; ++j) {
        names.push_back("y" + std::to_string(j));
        grading.push_back(form_degree);
    }
    return PolyRing::make(src.field().modulus(), src.nvars() + nforms,
                          MonomialOrder::elim(src.nvars()), names, grading);
}

Poly inject(const Poly& f, RingPtr big) {
    std::vector<Term> ts(f.terms().begin(), f.terms().end());
    return Poly::from_terms(big, std::move(ts));
}

int common_degree(const std::vector<Poly>& forms) {
    if (forms.empty()) throw std::invalid_argument("empty form list");
    int d = -1;
    for (const Poly& f : forms) {
        int df;
        if (!f.is_homogeneous(&df)) throw InhomogeneousInput();
        if (f.is_zero()) continue;
        if (d >= 0 && df != d) throw InhomogeneousInput();
        d = df;
    }
    if (d < 0) throw AllFormsVanish();
    return d;
}

// kernel forms of degree e of the map given by `forms` on V(I), by linear
// algebra on normal forms of the power products
struct KernelByDegree {
    RingPtr R;                      // source ring
    RingPtr T;                      // target ring, one var per form
    const std::vector<Poly>* forms;
    const std::vector<Poly>* gb;
    int df;
    // memo: target monomial -> normal form as sparse terms of the source
    std::map<uint64_t, std::vector<Term>> memo;

    std::vector<Term> nf_of(Mono ym) {
        auto it = memo.find(ym.e);
        if (it != memo.end()) return it->second;
        int l = -1;
        for (int j = 0; j < T->nvars(); ++j)
            if (ym.exp(j)) l = j;
        std::vector<Term> result;
        if (l < 0) {
            result = {{Mono::one(), 1}};
        } else {
            std::vector<Term> prev = nf_of(ym / Mono::var(l));
            // multiply by forms[l], then reduce densely
            int d = 0;
            for (const Term& t : prev) d = std::max(d, t.m.degree());
            int target_deg = d + df;
            const auto& monos = degree_monomials(*R, target_deg);
            std::vector<uint32_t> dense(monos.size(), 0);
            const PrimeField& F = R->field();
            for (const Term& a : prev)
                for (const Term& b : (*forms)[size_t(l)].terms()) {
                    size_t idx = mono_rank(*R, monos, a.m * b.m);
                    dense[idx] = F.add(dense[idx], F.mul(a.c, b.c));
                }
            dense_reduce(*R, *gb, target_deg, monos, dense);
            for (size_t i = 0; i < monos.size(); ++i)
                if (dense[i]) result.push_back({monos[i], dense[i]});
        }
        memo[ym.e] = result;
        return result;
    }

    // basis of { F in T_e : F(forms) in I }
    std::vector<Poly> kernel(int e) {
        const PrimeField& F = R->field();
        const auto& ymons = degree_monomials(*T, e);
        const auto& smons = degree_monomials(*R, df * e);
        // column per y-monomial, rows indexed by source monomials
        MatFp A(F, smons.size(), ymons.size());
        for (size_t j = 0; j < ymons.size(); ++j)
            for (const Term& t : nf_of(ymons[j]))
                A.at(mono_rank(*R, smons, t.m), j) = t.c;
        MatFp K = A.kernel();
        return kernel_to_polys(T, K, ymons);
    }
};

}  // namespace

Ideal map_kernel(const std::vector<Poly>& forms, const Ideal& I) {
    RingPtr R = forms.empty() ? nullptr : forms[0].ring();
    if (!R) throw std::invalid_argument("empty form list");
    if (!I.is_zero_ideal() && !I.ring()->same_ring(*R)) throw RingMismatch();
    int df = common_degree(forms);
    {
        bool all_in = true;
        for (const Poly& f : forms)
            if (!f.is_zero() && !(I.is_zero_ideal() ? f.is_zero() : I.contains(f))) all_in = false;
        if (all_in) throw AllFormsVanish();
    }
    const int n = R->nvars(), t = int(forms.size());
    if (n + t <= Mono::kMaxVars) {
        // eliminate the source variables from I + (y_j - f_j)
        RingPtr C = graph_ring(*R, t, df);
        std::vector<Poly> gens;
        for (const Poly& g : I.gens()) gens.push_back(inject(g, C));
        for (int j = 0; j < t; ++j)
            gens.push_back(Poly::variable(C, n + j) - inject(forms[size_t(j)], C));
        Ideal G(C, std::move(gens));
        std::vector<int> elim_vars;
        for (int i = 0; i < n; ++i) elim_vars.push_back(i);
        Ideal K = eliminate(G, elim_vars);
        // re-grade the target ring to the standard grading
        RingPtr T = PolyRing::make(R->field().modulus(), t, MonomialOrder::grevlex(),
                                   K.ring()->names());
        std::vector<Poly> out;
        for (const Poly& g : K.gens()) {
            std::vector<Term> ts(g.terms().begin(), g.terms().end());
            out.push_back(Poly::from_terms(T, std::move(ts)));
        }
        return Ideal(T, std::move(out));
    }
    // hypersurface path: the image must be cut out by a single form, found
    // degree by degree and certified irreducible (rank >= 3 quadric) plus a
    // finite-fiber dimension check by the caller
    RingPtr T = PolyRing::make(R->field().modulus(), t, MonomialOrder::grevlex());
    KernelByDegree kbd{R, T, &forms, &I.gb(), df, {}};
    for (int e = 1; e <= 6; ++e) {
        std::vector<Poly> ker = kbd.kernel(e);
        if (ker.empty()) continue;
        if (ker.size() != 1)
            throw std::runtime_error("map_kernel: image is not a hypersurface (engine cap)");
        return Ideal(T, {ker[0]});
    }
    throw std::runtime_error("map_kernel: no kernel found up to degree 6 (engine cap)");
}

namespace {

std::vector<std::vector<uint32_t>> sample_points(const Ideal& I, int dim, int count,
                                                 uint64_t seed);

}  // namespace

ImageInvariants image_invariants(const std::vector<Poly>& forms, const Ideal& I, uint64_t seed) {
    RingPtr R = forms.at(0).ring();
    int df = common_degree(forms);
    NumericInvariants nv = numeric_invariants(I);
    const int dimV = I.is_zero_ideal() ? R->nvars() - 1 : nv.dim;
    if (dimV < 1) throw std::invalid_argument("image invariants need positive-dimensional source");
    const PrimeField& F = R->field();
    Rng rng(seed);
    std::string last_error = "projection retries exhausted";
    for (int attempt = 0; attempt < 4; ++attempt) {
        Rng sub = rng.fork(attempt + 1);
        const int tproj = std::min<int>(dimV + 2, int(forms.size()));
        std::vector<Poly> combos;
        for (int l = 0; l < tproj; ++l) {
            Poly c = Poly::zero(R);
            for (const Poly& f : forms) c = c + f.scaled(sub.field_element(F.modulus()));
            combos.push_back(c);
        }
        RingPtr T = PolyRing::make(F.modulus(), tproj, MonomialOrder::grevlex());
        KernelByDegree kbd{R, T, &combos, &I.gb(), df, {}};
        int e0 = -1;
        std::vector<Poly> ker;
        for (int e = 1; e <= 8; ++e) {
            ker = kbd.kernel(e);
            if (!ker.empty()) {
                e0 = e;
                break;
            }
        }
        if (e0 < 0 || ker.size() != 1) {
            last_error = "no principal kernel up to degree 8";
            continue;
        }
        // fiber dimension certificate at a sampled point
        auto pts = sample_points(I, dimV, 1, seed + 101 * (attempt + 1));
        if (pts.empty()) {
            last_error = "no rational point for the fiber check";
            continue;
        }
        const auto& q = pts[0];
        std::vector<uint32_t> cq;
        bool allzero = true;
        for (const Poly& c : combos) {
            cq.push_back(c.eval(q));
            if (cq.back()) allzero = false;
        }
        if (allzero) {
            last_error = "sampled point is a base point";
            continue;
        }
        std::vector<Poly> fib = I.gens();
        for (int a = 0; a < tproj; ++a)
            for (int b = a + 1; b < tproj; ++b)
                fib.push_back(combos[size_t(a)].scaled(cq[size_t(b)]) -
                              combos[size_t(b)].scaled(cq[size_t(a)]));
        NumericInvariants fi = numeric_invariants(Ideal(R, std::move(fib)));
        int dim_img = dimV - std::max(fi.dim, 0);
        if (dim_img != tproj - 2) {
            last_error = "fiber dimension rejects the hypersurface claim";
            continue;
        }
        return {dim_img, (long long)e0};
    }
    throw ProjectionNotGeneric();
}

long long map_degree(const std::vector<Poly>& forms, const Ideal& I, uint64_t seed) {
    RingPtr R = forms.at(0).ring();
    const PrimeField& F = R->field();
    Rng rng(seed ^ 0xabcdef12345ull);
    ImageInvariants img = image_invariants(forms, I, seed);
    // base locus of the system on V(I)
    std::vector<Poly> all = I.gens();
    for (const Poly& f : forms) all.push_back(f);
    Ideal B = saturate_irrelevant(Ideal(R, all));
    for (int attempt = 0; attempt < 4; ++attempt) {
        Rng sub = rng.fork(attempt);
        std::vector<Poly> cut = I.gens();
        for (int l = 0; l < 2; ++l) {
            Poly c = Poly::zero(R);
            for (const Poly& f : forms) c = c + f.scaled(sub.field_element(F.modulus()));
            cut.push_back(c);
        }
        Ideal Z = saturate_irrelevant(Ideal(R, cut));
        Ideal Zmov = saturate(Z, B);
        NumericInvariants zi = numeric_invariants(Zmov);
        if (zi.dim != 0) continue;  // the two members were not general enough
        if (zi.degree % img.degree) continue;
        return zi.degree / img.degree;
    }
    throw ProjectionNotGeneric();
}

// ---------- rational points ----------

namespace {

// f(u*a + v*b) as a binary form, coefficients of u^i v^(d-i)
std::vector<uint32_t> restrict_to_pencil(const Poly& f, const std::vector<uint32_t>& a,
                                         const std::vector<uint32_t>& b) {
    const PolyRing& R = *f.ring();
    const PrimeField& F = R.field();
    int d = f.degree();
    std::vector<uint32_t> out(size_t(d) + 1, 0);
    for (const Term& t : f.terms()) {
        // expand prod_i (a_i u + b_i v)^{e_i}
        std::vector<uint32_t> acc = {t.c};
        for (int i = 0; i < R.nvars(); ++i) {
            int e = t.m.exp(i);
            for (int k = 0; k < e; ++k) {
                std::vector<uint32_t> nxt(acc.size() + 1, 0);
                for (size_t j = 0; j < acc.size(); ++j) {
                    nxt[j + 1] = F.add(nxt[j + 1], F.mul(acc[j], a[i]));
                    nxt[j] = F.add(nxt[j], F.mul(acc[j], b[i]));
                }
                acc = std::move(nxt);
            }
        }
        for (size_t j = 0; j < acc.size(); ++j) out[j] = F.add(out[j], acc[j]);
    }
    return out;
}

std::vector<uint32_t> binary_gcd(std::vector<uint32_t> A, std::vector<uint32_t> B,
                                 const PrimeField& F) {
    auto trim = [](std::vector<uint32_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(A);
    trim(B);
    while (!B.empty()) {
        // A mod B
        while (A.size() >= B.size() && !A.empty()) {
            uint32_t c = F.div(A.back(), B.back());
            size_t off = A.size() - B.size();
            for (size_t i = 0; i < B.size(); ++i) A[off + i] = F.sub(A[off + i], F.mul(c, B[i]));
            trim(A);
        }
        std::swap(A, B);
    }
    trim(A);
    return A;
}

}  // namespace

std::vector<std::vector<uint32_t>> points_on_curve(const Ideal& I, int count, uint64_t seed) {
    RingPtr R = I.ring();
    const PrimeField& F = R->field();
    const uint32_t p = F.modulus();
    const int n = R->nvars();
    Rng rng(seed);
    std::vector<std::vector<uint32_t>> found;
    auto normalize = [&](std::vector<uint32_t> pt) {
        int last = -1;
        for (int i = 0; i < n; ++i)
            if (pt[i]) last = i;
        uint32_t inv = F.inv(pt[size_t(last)]);
        for (auto& c : pt) c = F.mul(c, inv);
        return pt;
    };
    auto on_curve = [&](const std::vector<uint32_t>& pt) {
        for (const Poly& g : I.gens())
            if (g.eval(pt) != 0) return false;
        return true;
    };
    for (int attempt = 0; attempt < 120 && int(found.size()) < count; ++attempt) {
        // slice with a random hyperplane: a curve meets it in finitely many
        // points, some of them rational with decent probability
        MatFp H(F, 1, n);
        for (int j = 0; j < n; ++j) H.at(0, j) = rng.field_element(p);
        MatFp K = H.kernel();
        if (K.rows() != size_t(n - 1)) continue;
        // restrict the curve equations to the hyperplane (coords y_0..y_{n-2})
        RingPtr Q = PolyRing::make(p, n - 1);
        std::vector<Poly> restr;
        {
            std::vector<Poly> imgs;  // x_i -> sum_j K[j][i] y_j
            for (int i = 0; i < n; ++i) {
                std::vector<Term> ts;
                for (int j = 0; j < n - 1; ++j)
                    if (K.at(j, i)) ts.push_back({Mono::var(j), K.at(j, i)});
                imgs.push_back(Poly::from_terms(Q, std::move(ts)));
            }
            RingMap rm(R, Q, imgs);
            for (const Poly& g : I.gens()) restr.push_back(rm.apply(g));
        }
        // eliminate down to the last two slice coordinates
        std::vector<int> elim_vars;
        for (int i = 0; i + 2 < n - 1; ++i) elim_vars.push_back(i);
        std::vector<uint32_t> uni;
        try {
            Ideal E = eliminate(Ideal(Q, restr), elim_vars);
            // gcd of the binary generators is the univariate polynomial
            bool first = true;
            for (const Poly& g : E.gens()) {
                std::vector<uint32_t> bin(size_t(g.degree()) + 1, 0);
                for (const Term& t : g.terms()) bin[size_t(t.m.exp(0))] = t.c;
                uni = first ? bin : binary_gcd(uni, bin, F);
                first = false;
            }
        } catch (const std::exception&) {
            continue;
        }
        // roots of the univariate by exhaustive evaluation, then lift through
        // the remaining small projective spaces
        std::vector<std::pair<uint32_t, uint32_t>> roots;  // (u : v)
        for (uint32_t t = 0; t < p; ++t) {
            uint64_t acc = 0;
            for (size_t i = uni.size(); i-- > 0;) acc = (acc * t + uni[i]) % p;
            if (acc == 0) roots.push_back({t, 1});
        }
        if (!uni.empty() && uni.back() == 0) roots.push_back({1, 0});
        if (uni.empty()) continue;  // hyperplane not generic for this trick
        for (auto [ru, rv] : roots) {
            // lift: enumerate the fibre over (y_{n-3} : y_{n-2}) = (ru : rv)
            // within the hyperplane, checking the original equations
            int free_vars = n - 3;  // y_0..y_{n-4} plus the scale w
            std::vector<uint32_t> y(size_t(n - 1), 0);
            std::function<void(int)> walk = [&](int idx) {
                if (int(found.size()) >= count) return;
                if (idx == free_vars) {
                    for (uint32_t w = 0; w <= 1u; ++w) {
                        // w = 0 handles points with the last two coords zero
                        // only when all free vars vary; w = 1 is the generic lift
                        y[size_t(n - 3)] = F.mul(ru, w);
                        y[size_t(n - 2)] = F.mul(rv, w);
                        bool any = false;
                        for (auto c : y)
                            if (c) any = true;
                        if (!any) continue;
                        bool ok = true;
                        for (const Poly& g : restr)
                            if (g.eval(y) != 0) {
                                ok = false;
                                break;
                            }
                        if (!ok) continue;
                        std::vector<uint32_t> x(size_t(n), 0);
                        for (int i = 0; i < n; ++i) {
                            uint64_t acc = 0;
                            for (int j = 0; j < n - 1; ++j) acc += uint64_t(K.at(j, i)) * y[size_t(j)];
                            x[size_t(i)] = F.reduce(acc);
                        }
                        if (!on_curve(x)) continue;
                        auto nx = normalize(x);
                        bool dup = false;
                        for (const auto& e : found)
                            if (e == nx) dup = true;
                        if (!dup) found.push_back(nx);
                        if (int(found.size()) >= count) return;
                    }
                    return;
                }
                for (uint32_t v = 0; v < p; ++v) {
                    y[size_t(idx)] = v;
                    walk(idx + 1);
                    if (int(found.size()) >= count) return;
                }
                y[size_t(idx)] = 0;
            };
            walk(0);
            if (int(found.size()) >= count) break;
        }
    }
    if (int(found.size()) < count) throw NoRationalPoint();
    found.resize(size_t(count));
    return found;
}

namespace {

std::vector<std::vector<uint32_t>> sample_points(const Ideal& I, int dim, int count,
                                                 uint64_t seed) {
    RingPtr R = I.ring();
    const PrimeField& F = R->field();
    if (I.is_zero_ideal()) {
        Rng rng(seed);
        std::vector<std::vector<uint32_t>> out;
        for (int k = 0; k < count; ++k) {
            std::vector<uint32_t> q(size_t(R->nvars()));
            for (auto& c : q) c = rng.field_element(F.modulus());
            q.back() = 1;
            out.push_back(q);
        }
        return out;
    }
    Ideal cur = I;
    Rng rng(seed * 31 + 7);
    for (int cut = 0; cut < dim - 1; ++cut) {
        std::vector<Poly> gens = cur.gens();
        std::vector<Term> ts;
        for (int i = 0; i < R->nvars(); ++i)
            ts.push_back({Mono::var(i), rng.field_element(F.modulus())});
        gens.push_back(Poly::from_terms(R, std::move(ts)));
        cur = saturate_irrelevant(Ideal(R, gens), seed + cut);
    }
    try {
        return points_on_curve(cur, count, seed + 1000);
    } catch (const NoRationalPoint&) {
        return {};
    }
}

}  // namespace

// ---------- the rational normal quartic through seven points ----------

RationalNormalQuartic rnc_through_seven(RingPtr R,
                                        const std::vector<std::vector<uint32_t>>& pts) {
    const PrimeField& F = R->field();
    const int n = R->nvars();
    if (n != 5 || pts.size() != 7) throw std::invalid_argument("needs 7 points of P^4");
    // frame transform: columns lambda_i * p_i send the coordinate simplex and
    // the unit point to p_0..p_5
    MatFp P5(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) P5.at(i, j) = pts[size_t(j)][size_t(i)] % F.modulus();
    std::vector<uint32_t> lambda;
    {
        std::vector<uint32_t> rhs(static_cast<size_t>(n), 0u);
        for (int i = 0; i < n; ++i) rhs[size_t(i)] = pts[5][size_t(i)] % F.modulus();
        if (!P5.solve(rhs, lambda)) throw DegeneratePosition("first five points are degenerate");
    }
    MatFp M(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (lambda[size_t(j)] == 0) throw DegeneratePosition("unit point is degenerate");
            M.at(i, j) = F.mul(P5.at(i, j), lambda[size_t(j)]);
        }
    MatFp Minv = M.inverse();
    // frame coordinates of the seventh point
    std::vector<uint32_t> x(static_cast<size_t>(n), 0u);
    for (int i = 0; i < n; ++i) {
        uint64_t acc = 0;
        for (int j = 0; j < n; ++j) acc += uint64_t(Minv.at(i, j)) * (pts[6][size_t(j)] % F.modulus());
        x[size_t(i)] = F.reduce(acc);
    }
    std::vector<uint32_t> a(static_cast<size_t>(n), 0u);
    for (int i = 0; i < n; ++i) {
        if (x[size_t(i)] == 0) throw DegeneratePosition("seventh point lies on a frame hyperplane");
        a[size_t(i)] = F.neg(F.inv(x[size_t(i)]));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a[size_t(i)] == a[size_t(j)])
                throw DegeneratePosition("repeated parameter in the quartic normal form");
    // f_j(t,s) = prod_{k != j} (t - a_k s)
    RingPtr TS = PolyRing::make(F.modulus(), 2, MonomialOrder::grevlex(), {"t", "s"});
    std::vector<Poly> frame_param;
    for (int j = 0; j < n; ++j) {
        Poly f = Poly::constant(TS, 1);
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            f = f * (Poly::variable(TS, 0) - Poly::variable(TS, 1).scaled(a[size_t(k)]));
        }
        frame_param.push_back(f);
    }
    Ideal frame_ideal = map_kernel(frame_param, Ideal::zero(TS));
    // pull the frame ideal back through M^{-1}
    std::vector<Poly> images;
    for (int i = 0; i < n; ++i) {
        std::vector<Term> ts;
        for (int j = 0; j < n; ++j)
            if (Minv.at(i, j)) ts.push_back({Mono::var(j), Minv.at(i, j)});
        images.push_back(Poly::from_terms(R, std::move(ts)));
    }
    RingMap pull(frame_ideal.ring(), R, images);
    std::vector<Poly> gens;
    for (const Poly& g : frame_ideal.gens()) gens.push_back(pull.apply(g));
    RationalNormalQuartic out{Ideal(R, reduce_basis(buchberger(gens))), {}};
    // actual-coordinates parametrization M * f(t,s)
    for (int i = 0; i < n; ++i) {
        Poly c = Poly::zero(TS);
        for (int j = 0; j < n; ++j) c = c + frame_param[size_t(j)].scaled(M.at(i, j));
        out.parametrization.push_back(c);
    }
    return out;
}

// ---------- components through a point (witness-jet interpolation) ----------

namespace {

struct Series {  // truncated power series over GF(p)
    std::vector<uint32_t> c;

    static Series zero(size_t N) { return {std::vector<uint32_t>(N, 0)}; }
    static Series constant(uint32_t v, size_t N) {
        Series s = zero(N);
        s.c[0] = v;
        return s;
    }
};

Series ser_mul(const Series& a, const Series& b, const PrimeField& F) {
    size_t N = a.c.size();
    Series out = Series::zero(N);
    for (size_t i = 0; i < N; ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j + i < N; ++j)
            if (b.c[j]) out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
    }
    return out;
}

Series eval_poly_series(const Poly& f, const std::vector<Series>& coords,
                        const PrimeField& F) {
    size_t N = coords[0].c.size();
    Series out = Series::zero(N);
    const PolyRing& R = *f.ring();
    // cache powers per variable
    std::vector<std::vector<Series>> pows(size_t(R.nvars()));
    for (int i = 0; i < R.nvars(); ++i) pows[size_t(i)].push_back(Series::constant(1, N));
    for (const Term& t : f.terms()) {
        Series term = Series::constant(t.c, N);
        for (int i = 0; i < R.nvars(); ++i) {
            int e = t.m.exp(i);
            auto& cache = pows[size_t(i)];
            while (int(cache.size()) <= e) cache.push_back(ser_mul(cache.back(), coords[size_t(i)], F));
            if (e) term = ser_mul(term, cache[size_t(e)], F);
        }
        for (size_t k = 0; k < N; ++k) out.c[k] = F.add(out.c[k], term.c[k]);
    }
    return out;
}

}  // namespace

Ideal component_through_point(const Ideal& I, const std::vector<uint32_t>& q_in) {
    RingPtr R = I.ring();
    const PrimeField& F = R->field();
    const int n = R->nvars();
    Ideal S = saturate_irrelevant(I);
    std::vector<uint32_t> q(q_in);
    for (auto& c : q) c %= F.modulus();
    for (const Poly& g : S.gens())
        if (g.eval(q) != 0) throw PointNotOnVariety();
    NumericInvariants ni = numeric_invariants(S);
    if (ni.dim != 1)
        throw std::invalid_argument("component extraction implemented for curves");
    long long degbound = ni.degree;

    // chart with q_chart = 1
    int chart = -1;
    for (int i = 0; i < n; ++i)
        if (q[size_t(i)]) chart = i;
    uint32_t qinv = F.inv(q[size_t(chart)]);
    for (auto& c : q) c = F.mul(c, qinv);

    const auto& gens = S.gb();
    // affine jacobian at q over the non-chart variables
    std::vector<int> avars;
    for (int i = 0; i < n; ++i)
        if (i != chart) avars.push_back(i);
    MatFp J(F, gens.size(), avars.size());
    for (size_t r = 0; r < gens.size(); ++r)
        for (size_t c = 0; c < avars.size(); ++c)
            J.at(r, c) = gens[r].derivative(avars[c]).eval(q);
    MatFp K = J.kernel();
    if (K.rows() != 1)
        throw std::invalid_argument("point is singular on the curve; cannot take a branch jet");
    // local parameter: affine variable with nonzero tangent component
    int tpar = -1;
    for (size_t c = 0; c < avars.size(); ++c)
        if (K.at(0, c)) tpar = int(c);
    // branch lift to high order
    int Dmax = 5;
    size_t N = size_t(Dmax * degbound + 2);
    std::vector<Series> coords(size_t(n), Series::zero(N));
    for (int i = 0; i < n; ++i) coords[size_t(i)].c[0] = q[size_t(i)];
    for (size_t c = 0; c < avars.size(); ++c)
        coords[size_t(avars[c])].c[1] = K.at(0, c);
    // solve order by order; the parameter coordinate stays exact
    MatFp Jsub(F, gens.size(), avars.size() - 1);
    std::vector<int> solve_vars;
    for (size_t c = 0; c < avars.size(); ++c)
        if (int(c) != tpar) solve_vars.push_back(int(c));
    for (size_t r = 0; r < gens.size(); ++r)
        for (size_t c = 0; c < solve_vars.size(); ++c)
            Jsub.at(r, c) = J.at(r, size_t(solve_vars[c]));
    for (size_t order = 2; order < N; ++order) {
        std::vector<uint32_t> resid(gens.size());
        bool allzero = true;
        for (size_t r = 0; r < gens.size(); ++r) {
            Series v = eval_poly_series(gens[r], coords, F);
            resid[r] = F.neg(v.c[order]);
            if (resid[r]) allzero = false;
        }
        if (allzero) continue;
        std::vector<uint32_t> delta;
        if (!Jsub.solve(resid, delta))
            throw std::runtime_error("jet lifting failed; branch not smooth enough");
        for (size_t c = 0; c < solve_vars.size(); ++c)
            coords[size_t(avars[size_t(solve_vars[c])])].c[order] = delta[c];
    }
    // verify the jet
    for (const Poly& g : gens) {
        Series v = eval_poly_series(g, coords, F);
        for (uint32_t cc : v.c)
            if (cc) throw std::runtime_error("jet does not satisfy the curve equations");
    }

    // interpolate forms vanishing on the branch to order > d * degbound
    std::vector<Poly> found;
    for (int d = 1; d <= Dmax; ++d) {
        size_t need = size_t(d * degbound + 1);
        const auto& monos = degree_monomials(*R, d);
        MatFp A(F, need, monos.size());
        for (size_t j = 0; j < monos.size(); ++j) {
            Series v = Series::constant(1, N);
            for (int i = 0; i < n; ++i) {
                int e = monos[j].exp(i);
                for (int k = 0; k < e; ++k) v = ser_mul(v, coords[size_t(i)], F);
            }
            for (size_t r = 0; r < need; ++r) A.at(r, j) = v.c[r];
        }
        std::vector<Poly> ker = kernel_to_polys(R, A.kernel(), monos);
        size_t before = found.size();
        for (const Poly& g : ker) found.push_back(g);
        if (!found.empty() && d >= 2) {
            Ideal Csat = saturate_irrelevant(Ideal(R, found));
            NumericInvariants ci = numeric_invariants(Csat);
            bool grown = found.size() > before && before > 0 &&
                         long(ker.size()) > long(graded_piece(Csat, d).basis.size()) - 0;
            (void)grown;
            if (ci.dim == 1 && is_subset(S, Csat)) {
                bool onpoint = true;
                for (const Poly& g : Csat.gens())
                    if (g.eval(q) != 0) onpoint = false;
                if (onpoint) return Csat;
            }
        }
    }
    Ideal C = saturate_irrelevant(Ideal(R, found));
    if (!is_subset(S, C)) throw std::runtime_error("component interpolation failed");
    return C;
}

}  // namespace fano
