#include "fanokernel/poly.hpp"

#include <algorithm>

namespace fano {

Poly Poly::constant(RingPtr R, uint32_t c) {
    Poly f(std::move(R));
    c %= f.R_->field().modulus();
    if (c) f.ts_.push_back({Mono::one(), c});
    return f;
}

Poly Poly::variable(RingPtr R, int i) {
    if (i < 0 || i >= R->nvars()) throw std::invalid_argument("variable index out of range");
    Poly f(std::move(R));
    f.ts_.push_back({Mono::var(i), 1});
    return f;
}

Poly Poly::term(RingPtr R, Mono m, uint32_t c) {
    Poly f(std::move(R));
    c %= f.R_->field().modulus();
    if (c) f.ts_.push_back({m, c});
    return f;
}

Poly Poly::from_terms(RingPtr R, std::vector<Term> ts) {
    Poly f(std::move(R));
    const PolyRing& ring = *f.R_;
    std::sort(ts.begin(), ts.end(),
              [&ring](const Term& a, const Term& b) { return ring.cmp(a.m, b.m) > 0; });
    const PrimeField& F = ring.field();
    for (const Term& t : ts) {
        uint32_t c = t.c % F.modulus();
        if (!f.ts_.empty() && f.ts_.back().m == t.m) {
            f.ts_.back().c = F.add(f.ts_.back().c, c);
            if (f.ts_.back().c == 0) f.ts_.pop_back();
        } else if (c) {
            f.ts_.push_back({t.m, c});
        }
    }
    return f;
}

int Poly::degree() const { return ts_.empty() ? -1 : R_->weighted_degree(ts_.front().m); }

int Poly::total_degree() const {
    int d = -1;
    for (const Term& t : ts_) d = std::max(d, R_->weighted_degree(t.m));
    return d;
}

bool Poly::is_homogeneous(int* deg) const {
    if (ts_.empty()) {
        if (deg) *deg = -1;
        return true;
    }
    int d = R_->weighted_degree(ts_.front().m);
    for (const Term& t : ts_)
        if (R_->weighted_degree(t.m) != d) return false;
    if (deg) *deg = d;
    return true;
}

Poly Poly::operator+(const Poly& o) const {
    check_ring(o);
    const PolyRing& ring = *R_;
    const PrimeField& F = ring.field();
    Poly out(R_);
    out.ts_.reserve(ts_.size() + o.ts_.size());
    size_t i = 0, j = 0;
    while (i < ts_.size() && j < o.ts_.size()) {
        int c = ring.cmp(ts_[i].m, o.ts_[j].m);
        if (c > 0) {
            out.ts_.push_back(ts_[i++]);
        } else if (c < 0) {
            out.ts_.push_back(o.ts_[j++]);
        } else {
            uint32_t s = F.add(ts_[i].c, o.ts_[j].c);
            if (s) out.ts_.push_back({ts_[i].m, s});
            ++i, ++j;
        }
    }
    for (; i < ts_.size(); ++i) out.ts_.push_back(ts_[i]);
    for (; j < o.ts_.size(); ++j) out.ts_.push_back(o.ts_[j]);
    return out;
}

Poly Poly::operator-() const {
    Poly out(R_);
    const PrimeField& F = R_->field();
    out.ts_.reserve(ts_.size());
    for (const Term& t : ts_) out.ts_.push_back({t.m, F.neg(t.c)});
    return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    check_ring(o);
    if (is_zero() || o.is_zero()) return Poly(R_);
    if (o.ts_.size() == 1) return mono_mul(o.ts_[0].m, o.ts_[0].c);
    if (ts_.size() == 1) return o.mono_mul(ts_[0].m, ts_[0].c);
    std::vector<Term> prod;
    prod.reserve(ts_.size() * o.ts_.size());
    const PrimeField& F = R_->field();
    for (const Term& a : ts_)
        for (const Term& b : o.ts_) prod.push_back({a.m * b.m, F.mul(a.c, b.c)});
    return from_terms(R_, std::move(prod));
}

bool Poly::operator==(const Poly& o) const {
    if (!R_->same_ring(*o.R_)) return false;
    if (ts_.size() != o.ts_.size()) return false;
    for (size_t i = 0; i < ts_.size(); ++i)
        if (ts_[i].m != o.ts_[i].m || ts_[i].c != o.ts_[i].c) return false;
    return true;
}

Poly Poly::scaled(uint32_t c) const {
    const PrimeField& F = R_->field();
    c %= F.modulus();
    if (c == 0) return Poly(R_);
    Poly out(R_);
    out.ts_.reserve(ts_.size());
    for (const Term& t : ts_) out.ts_.push_back({t.m, F.mul(t.c, c)});
    return out;
}

Poly Poly::mono_mul(Mono m, uint32_t c) const {
    // multiplying by a fixed monomial preserves any multiplicative order
    const PrimeField& F = R_->field();
    c %= F.modulus();
    if (c == 0) return Poly(R_);
    Poly out(R_);
    out.ts_.reserve(ts_.size());
    for (const Term& t : ts_) out.ts_.push_back({t.m * m, F.mul(t.c, c)});
    return out;
}

Poly Poly::axpy_sub(uint32_t c, Mono m, const Poly& g) const {
    const PolyRing& ring = *R_;
    const PrimeField& F = ring.field();
    Poly out(R_);
    out.ts_.reserve(ts_.size() + g.ts_.size());
    size_t i = 0, j = 0;
    while (i < ts_.size() && j < g.ts_.size()) {
        Mono gm = g.ts_[j].m * m;
        int cc = ring.cmp(ts_[i].m, gm);
        if (cc > 0) {
            out.ts_.push_back(ts_[i++]);
        } else if (cc < 0) {
            out.ts_.push_back({gm, F.neg(F.mul(c, g.ts_[j].c))});
            ++j;
        } else {
            uint32_t s = F.sub(ts_[i].c, F.mul(c, g.ts_[j].c));
            if (s) out.ts_.push_back({ts_[i].m, s});
            ++i, ++j;
        }
    }
    for (; i < ts_.size(); ++i) out.ts_.push_back(ts_[i]);
    for (; j < g.ts_.size(); ++j)
        out.ts_.push_back({g.ts_[j].m * m, F.neg(F.mul(c, g.ts_[j].c))});
    return out;
}

Poly Poly::monic() const {
    if (is_zero() || lead_coeff() == 1) return *this;
    return scaled(R_->field().inv(lead_coeff()));
}

Poly Poly::pow(unsigned k) const {
    Poly result = Poly::constant(R_, 1);
    Poly base = *this;
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

uint32_t Poly::eval(const std::vector<uint32_t>& point) const {
    const PrimeField& F = R_->field();
    if (point.size() != size_t(R_->nvars())) throw std::invalid_argument("point size mismatch");
    uint64_t acc = 0;
    uint64_t cnt = 0;
    const uint64_t limit = F.accumulation_limit();
    for (const Term& t : ts_) {
        uint32_t v = t.c;
        for (int i = 0; i < R_->nvars(); ++i) {
            int e = t.m.exp(i);
            if (e) v = F.mul(v, F.pow(point[i], e));
        }
        acc += v;
        if (++cnt == limit) {
            acc = F.reduce(acc);
            cnt = 0;
        }
    }
    return F.reduce(acc);
}

Poly Poly::derivative(int var) const {
    // char-p rule: p-th powers differentiate to zero silently
    const PrimeField& F = R_->field();
    std::vector<Term> out;
    for (const Term& t : ts_) {
        int e = t.m.exp(var);
        if (!e) continue;
        uint32_t c = F.mul(t.c, uint32_t(e % F.modulus()));
        if (!c) continue;
        Mono m = t.m;
        m.e -= uint64_t(1) << (8 * var);
        out.push_back({m, c});
    }
    return from_terms(R_, std::move(out));  // order already fine, but normalize anyway
}

uint32_t Poly::coeff_of(Mono m) const {
    const PolyRing& ring = *R_;
    auto it = std::lower_bound(ts_.begin(), ts_.end(), m, [&ring](const Term& t, Mono mm) {
        return ring.cmp(t.m, mm) > 0;
    });
    if (it != ts_.end() && it->m == m) return it->c;
    return 0;
}

std::string Poly::str() const {
    if (ts_.empty()) return "0";
    std::string s;
    const PolyRing& R = *R_;
    uint32_t p = R.field().modulus();
    for (size_t i = 0; i < ts_.size(); ++i) {
        uint32_t c = ts_[i].c;
        bool neg = c > p / 2;  // print balanced representatives for readability
        uint32_t mag = neg ? p - c : c;
        if (i == 0) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        if (ts_[i].m.is_one()) {
            s += std::to_string(mag);
        } else {
            if (mag != 1) s += std::to_string(mag) + "*";
            s += R.mono_str(ts_[i].m);
        }
    }
    return s;
}

Poly poly_arith(const Poly& f, const Poly& g, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return f + g;
        case ArithOp::Sub: return f - g;
        case ArithOp::Mul: return f * g;
    }
    return f;
}

RingMap::RingMap(RingPtr src, RingPtr tgt, std::vector<Poly> imgs)
    : source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
    if (images.size() != size_t(source->nvars()))
        throw std::invalid_argument("ring map needs one image per source variable");
    for (const Poly& f : images)
        if (!f.ring()->same_ring(*target)) throw RingMismatch();
}

Poly RingMap::apply(const Poly& f) const {
    if (!f.ring()->same_ring(*source)) throw RingMismatch();
    // cache variable powers up to the max exponent seen
    int n = source->nvars();
    std::vector<std::vector<Poly>> pow_cache(n);
    for (int i = 0; i < n; ++i) pow_cache[i].push_back(Poly::constant(target, 1));
    Poly out = Poly::zero(target);
    for (const Term& t : f.terms()) {
        Poly term = Poly::constant(target, t.c);
        for (int i = 0; i < n; ++i) {
            int e = t.m.exp(i);
            if (!e) continue;
            auto& cache = pow_cache[i];
            while (int(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
            term = term * cache[e];
        }
        out = out + term;
    }
    return out;
}

PolyMatrix::PolyMatrix(RingPtr R, size_t r, size_t c)
    : ring(std::move(R)), nrows(r), ncols(c), entries(r * c, Poly(ring)),
      row_twists(r, 0), col_twists(c, 0) {
    for (auto& e : entries) e = Poly::zero(ring);
}

bool PolyMatrix::is_graded() const {
    for (size_t i = 0; i < nrows; ++i)
        for (size_t j = 0; j < ncols; ++j) {
            const Poly& f = at(i, j);
            if (f.is_zero()) continue;
            int d;
            if (!f.is_homogeneous(&d)) return false;
            if (d != col_twists[j] - row_twists[i]) return false;
        }
    return true;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix T(ring, ncols, nrows);
    for (size_t i = 0; i < nrows; ++i)
        for (size_t j = 0; j < ncols; ++j) T.at(j, i) = at(i, j);
    T.row_twists = col_twists;
    T.col_twists = row_twists;
    return T;
}

namespace {

Poly det_recursive(const PolyMatrix& M, const std::vector<int>& rows,
                   const std::vector<int>& cols) {
    const size_t k = rows.size();
    if (k == 1) return M.at(rows[0], cols[0]);
    const PrimeField& F = M.ring->field();
    Poly acc = Poly::zero(M.ring);
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < k; ++j) {
        const Poly& e = M.at(rows[0], cols[j]);
        if (e.is_zero()) continue;
        std::vector<int> subcols;
        subcols.reserve(k - 1);
        for (size_t jj = 0; jj < k; ++jj)
            if (jj != j) subcols.push_back(cols[jj]);
        Poly sub = det_recursive(M, subrows, subcols);
        Poly piece = e * sub;
        acc = (j % 2 == 0) ? acc + piece : acc - piece;
        (void)F;
    }
    return acc;
}

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::vector<Poly> minors(int k, const PolyMatrix& M) {
    if (k < 1 || size_t(k) > M.nrows || size_t(k) > M.ncols) throw SizeExceeded();
    std::vector<Poly> out;
    combinations(int(M.nrows), k, [&](const std::vector<int>& rows) {
        combinations(int(M.ncols), k, [&](const std::vector<int>& cols) {
            out.push_back(det_recursive(M, rows, cols));
        });
    });
    return out;
}

PolyMatrix jacobian(const std::vector<Poly>& gens) {
    if (gens.empty()) throw std::invalid_argument("jacobian of empty generator list");
    RingPtr R = gens[0].ring();
    for (const Poly& g : gens)
        if (!g.ring()->same_ring(*R)) throw RingMismatch();
    PolyMatrix J(R, gens.size(), R->nvars());
    for (size_t i = 0; i < gens.size(); ++i) {
        int d = gens[i].total_degree();
        J.row_twists[i] = 1 - std::max(d, 1);
        for (int j = 0; j < R->nvars(); ++j) J.at(i, j) = gens[i].derivative(j);
    }
    for (int j = 0; j < R->nvars(); ++j) J.col_twists[j] = 0;
    // twists: entry degree = deg(g_i) - 1 = col 0 - row (1 - deg)
    return J;
}

Poly random_form(RingPtr R, int degree, Rng& rng) {
    if (degree < 0) throw NegativeDegree();
    uint32_t p = R->field().modulus();
    std::vector<Term> ts;
    for (Mono m : R->monomials_of_degree(degree)) {
        uint32_t c = rng.field_element(p);
        if (c) ts.push_back({m, c});
    }
    return Poly::from_terms(R, std::move(ts));
}

PolyMatrix random_graded_matrix(RingPtr R, const std::vector<int>& row_twists,
                                const std::vector<int>& col_twists, uint64_t seed) {
    PolyMatrix M(R, row_twists.size(), col_twists.size());
    M.row_twists = row_twists;
    M.col_twists = col_twists;
    Rng rng(seed);
    for (size_t i = 0; i < M.nrows; ++i)
        for (size_t j = 0; j < M.ncols; ++j) {
            int d = col_twists[j] - row_twists[i];
            if (d < 0) throw NegativeDegree();
            M.at(i, j) = random_form(R, d, rng);
        }
    return M;
}

}  // namespace fano
