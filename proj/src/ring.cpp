#include "fanokernel/ring.hpp"

#include <algorithm>
#include <bit>

namespace fano {

namespace {

inline int cmp_grevlex_bytes(uint64_t a, uint64_t b) {
    // assumes equal degree on the bytes covered; smaller exponent in the
    // highest differing variable wins
    uint64_t x = a ^ b;
    if (x == 0) return 0;
    int byte = (63 - std::countl_zero(x)) >> 3;
    int ea = int((a >> (8 * byte)) & 0xff), eb = int((b >> (8 * byte)) & 0xff);
    return ea < eb ? 1 : -1;
}

inline int degree_of(uint64_t e) { return int((e * 0x0101010101010101ull) >> 56); }

inline int cmp_grevlex(uint64_t a, uint64_t b) {
    int da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db ? -1 : 1;
    return cmp_grevlex_bytes(a, b);
}

inline int cmp_lex(uint64_t a, uint64_t b) {
    uint64_t x = a ^ b;
    if (x == 0) return 0;
    int byte = std::countr_zero(x) >> 3;
    int ea = int((a >> (8 * byte)) & 0xff), eb = int((b >> (8 * byte)) & 0xff);
    return ea > eb ? 1 : -1;
}

}  // namespace

int order_compare(Mono a, Mono b, const MonomialOrder& ord, int nvars) {
    switch (ord.kind) {
        case OrderKind::Grevlex:
            return cmp_grevlex(a.e, b.e);
        case OrderKind::Lex:
            return cmp_lex(a.e, b.e);
        case OrderKind::WGrevlex: {
            long wa = 0, wb = 0;
            for (int i = 0; i < nvars; ++i) {
                wa += long(ord.weights[i]) * a.exp(i);
                wb += long(ord.weights[i]) * b.exp(i);
            }
            if (wa != wb) return wa < wb ? -1 : 1;
            return cmp_grevlex(a.e, b.e);
        }
        case OrderKind::Elim: {
            uint64_t mask = ord.elim_block >= 8 ? ~0ull : ((1ull << (8 * ord.elim_block)) - 1);
            uint64_t a1 = a.e & mask, b1 = b.e & mask;
            int c = cmp_grevlex(a1, b1);
            if (c != 0) return c;
            return cmp_grevlex(a.e & ~mask, b.e & ~mask);
        }
    }
    return 0;
}

PolyRing::PolyRing(uint32_t p, int n, MonomialOrder ord, std::vector<std::string> names,
                   std::vector<int> grading)
    : F_(p), n_(n), ord_(std::move(ord)), names_(std::move(names)), grading_(std::move(grading)) {
    if (n < 1 || n > Mono::kMaxVars)
        throw std::invalid_argument("variable count must be between 1 and 8");
    if (names_.empty()) {
        for (int i = 0; i < n; ++i) names_.push_back("x" + std::to_string(i));
    }
    if (names_.size() != size_t(n)) throw std::invalid_argument("variable name count mismatch");
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable names");
    if (grading_.empty()) grading_.assign(n, 1);
    if (grading_.size() != size_t(n)) throw std::invalid_argument("grading size mismatch");
    std_grading_ = true;
    for (int w : grading_) {
        if (w <= 0) throw std::invalid_argument("grading weights must be positive");
        if (w != 1) std_grading_ = false;
    }
    if (ord_.kind == OrderKind::Elim && (ord_.elim_block < 1 || ord_.elim_block >= n))
        throw std::invalid_argument("elimination block out of range");
    if (ord_.kind == OrderKind::WGrevlex && ord_.weights.size() != size_t(n))
        throw std::invalid_argument("order weight count mismatch");
    if (ord_.kind == OrderKind::Elim)
        block_mask_ = ord_.elim_block >= 8 ? ~0ull : ((1ull << (8 * ord_.elim_block)) - 1);
}

RingPtr PolyRing::make(uint32_t p, int nvars, MonomialOrder ord, std::vector<std::string> names,
                       std::vector<int> grading) {
    return RingPtr(new PolyRing(p, nvars, std::move(ord), std::move(names), std::move(grading)));
}

RingPtr PolyRing::with_order(MonomialOrder ord) const {
    return make(F_.modulus(), n_, std::move(ord), names_, grading_);
}

int PolyRing::cmp(Mono a, Mono b) const {
    switch (ord_.kind) {
        case OrderKind::Grevlex:
            return cmp_grevlex(a.e, b.e);
        case OrderKind::Lex:
            return cmp_lex(a.e, b.e);
        case OrderKind::Elim: {
            int c = cmp_grevlex(a.e & block_mask_, b.e & block_mask_);
            if (c != 0) return c;
            return cmp_grevlex(a.e & ~block_mask_, b.e & ~block_mask_);
        }
        case OrderKind::WGrevlex:
            return order_compare(a, b, ord_, n_);
    }
    return 0;
}

bool PolyRing::same_ring(const PolyRing& o) const {
    if (this == &o) return true;
    return F_ == o.F_ && n_ == o.n_ && ord_ == o.ord_ && names_ == o.names_ &&
           grading_ == o.grading_;
}

std::vector<Mono> PolyRing::monomials_of_degree(int d) const {
    if (d > 127) throw std::invalid_argument("degree exceeds monomial capacity");
    std::vector<Mono> out;
    Mono cur;
    // depth-first over exponent vectors, then sort by the ring order
    struct Rec {
        int n;
        std::vector<Mono>* out;
        void go(int var, int rem, Mono m) {
            if (var == n - 1) {
                m.e |= uint64_t(rem) << (8 * var);
                out->push_back(m);
                return;
            }
            for (int e = rem; e >= 0; --e) {
                Mono next = m;
                next.e |= uint64_t(e) << (8 * var);
                go(var + 1, rem - e, next);
            }
        }
    } rec{n_, &out};
    rec.go(0, d, cur);
    std::sort(out.begin(), out.end(), [this](Mono a, Mono b) { return cmp(a, b) > 0; });
    return out;
}

std::string PolyRing::mono_str(Mono m) const {
    if (m.is_one()) return "1";
    std::string s;
    for (int i = 0; i < n_; ++i) {
        int e = m.exp(i);
        if (!e) continue;
        if (!s.empty()) s += "*";
        s += names_[i];
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace fano
