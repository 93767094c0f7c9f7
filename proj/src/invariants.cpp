#include "fanokernel/invariants.hpp"

#include <algorithm>

namespace fano {

namespace {

using LPoly = std::vector<long long>;  // integer polynomial in t

LPoly lp_mul(const LPoly& a, const LPoly& b) {
    LPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

LPoly lp_add_shifted(LPoly a, const LPoly& b, size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
    return a;
}

void minimize_monomial(std::vector<Mono>& gens) {
    std::sort(gens.begin(), gens.end(),
              [](Mono a, Mono b) { return a.degree() < b.degree() || (a.degree() == b.degree() && a.e < b.e); });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Mono> out;
    for (Mono m : gens) {
        bool dominated = false;
        for (Mono k : out)
            if (k.divides(m)) {
                dominated = true;
                break;
            }
        if (!dominated) out.push_back(m);
    }
    gens = std::move(out);
}

// numerator of the Hilbert series of R/(monomial ideal) over (1-t)^n,
// by the pivot-splitting recursion
LPoly hilbert_numerator(std::vector<Mono> gens, int nvars) {
    minimize_monomial(gens);
    if (gens.empty()) return {1};
    if (gens.size() == 1 && gens[0].is_one()) return {0};
    bool coprime = true;
    for (size_t i = 0; i < gens.size() && coprime; ++i)
        for (size_t j = i + 1; j < gens.size() && coprime; ++j)
            if (!gens[i].coprime(gens[j])) coprime = false;
    if (coprime) {
        LPoly n = {1};
        for (Mono g : gens) {
            LPoly f(size_t(g.degree()) + 1, 0);
            f[0] = 1;
            f[size_t(g.degree())] -= 1;
            n = lp_mul(n, f);
        }
        return n;
    }
    // pivot on the most frequent variable
    int counts[Mono::kMaxVars] = {0};
    for (Mono g : gens)
        for (int v = 0; v < nvars; ++v)
            if (g.exp(v)) ++counts[v];
    int pv = 0;
    for (int v = 1; v < nvars; ++v)
        if (counts[v] > counts[pv]) pv = v;
    std::vector<Mono> plus = gens, colon;
    plus.push_back(Mono::var(pv));
    colon.reserve(gens.size());
    for (Mono g : gens) {
        if (g.exp(pv) > 0)
            colon.push_back(g / Mono::var(pv));
        else
            colon.push_back(g);
    }
    LPoly a = hilbert_numerator(std::move(plus), nvars);
    LPoly b = hilbert_numerator(std::move(colon), nvars);
    return lp_add_shifted(std::move(a), b, 1);
}

long long binom_ll(long long m, int k) {
    // polynomial extension of C(m, k); exact for any integer m
    long long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num *= (m - i);
        den *= (i + 1);
    }
    return num / den;
}

}  // namespace

long long HilbertData::hilbert_function(int d) const {
    if (d < 0) return 0;
    long long s = 0;
    for (size_t j = 0; j < numerator.size(); ++j) {
        long long m = d - (long long)j;
        if (m < 0) continue;
        s += numerator[j] * binom_ll(m + nvars - 1, nvars - 1);
    }
    return s;
}

long long HilbertData::hilbert_polynomial(long long d) const {
    if (cone_dim == 0) return 0;
    long long s = 0;
    for (size_t j = 0; j < reduced_numerator.size(); ++j)
        s += reduced_numerator[j] * binom_ll(d - (long long)j + cone_dim - 1, cone_dim - 1);
    return s;
}

HilbertData hilbert_series(const Ideal& I) {
    RingPtr R = I.ring();
    if (!R->standard_grading())
        throw std::invalid_argument("hilbert series requires the standard grading");
    const int n = R->nvars();
    std::vector<Mono> leads;
    for (const Poly& g : I.gb()) leads.push_back(g.lead_mono());
    HilbertData H;
    H.nvars = n;
    H.numerator = hilbert_numerator(std::move(leads), n);

    // strip (1-t) factors
    LPoly red = H.numerator;
    bool zero = std::all_of(red.begin(), red.end(), [](long long c) { return c == 0; });
    int e = 0;
    if (zero) {
        H.cone_dim = 0;
        H.dim = -1;
        H.degree = 0;
        H.reduced_numerator = {0};
        return H;
    }
    for (;;) {
        long long at1 = 0;
        for (long long c : red) at1 += c;
        if (at1 != 0) break;
        // divide by (1-t): q_i = sum_{j<=i} red_j
        LPoly q(red.size() - 1, 0);
        long long run = 0;
        for (size_t i = 0; i + 1 < red.size(); ++i) {
            run += red[i];
            q[i] = run;
        }
        red = std::move(q);
        ++e;
    }
    H.reduced_numerator = red;
    H.cone_dim = n - e;
    H.dim = H.cone_dim - 1;
    long long deg = 0;
    for (long long c : red) deg += c;
    H.degree = deg;
    if (H.cone_dim == 2) {
        // arithmetic genus of the projective curve: 1 - HP(0)
        H.genus = 1 - H.hilbert_polynomial(0);
    }
    return H;
}

NumericInvariants numeric_invariants(const Ideal& I) {
    HilbertData H = hilbert_series(I);
    NumericInvariants out;
    out.dim = H.dim;
    out.degree = H.degree;
    out.genus = H.genus;
    return out;
}

bool is_smooth(const Ideal& I) {
    Ideal S = singular_locus(I);
    return saturate_irrelevant(S).is_unit();
}

}  // namespace fano
