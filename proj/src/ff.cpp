#include "fanokernel/ff.hpp"

namespace fano {

namespace {

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((__uint128_t(a) * b) % m);
}

uint64_t powmod64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

// Deterministic Miller-Rabin; the base set below is exact for n < 3.2e18,
// far beyond the 2^31 cap enforced at construction.
bool PrimeField::is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
    if (p < 2 || p >= (1u << 31) || !is_prime(p)) throw CompositeModulus(p);
    uint64_t sq = uint64_t(p - 1) * uint64_t(p - 1);
    acc_limit_ = sq == 0 ? ~0ull : ~0ull / sq;
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
    uint64_t r = 1, b = a;
    while (e) {
        if (e & 1) r = (r * b) % p_;
        b = (b * b) % p_;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

uint32_t PrimeField::inv(uint32_t a) const {
    if (a == 0) throw DivisionByZero();
    // extended Euclid
    int64_t t = 0, newt = 1, r = p_, newr = a;
    while (newr != 0) {
        int64_t q = r / newr;
        int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<uint32_t>(t);
}

std::vector<uint32_t> PrimeField::batch_invert(const std::vector<uint32_t>& xs) const {
    const size_t n = xs.size();
    std::vector<uint32_t> out(n);
    if (n == 0) return out;
    std::vector<uint32_t> prefix(n);
    uint32_t acc = 1;
    for (size_t i = 0; i < n; ++i) {
        if (xs[i] == 0) throw DivisionByZero(static_cast<long>(i));
        prefix[i] = acc;
        acc = mul(acc, xs[i]);
    }
    uint32_t run = inv(acc);
    for (size_t i = n; i-- > 0;) {
        out[i] = mul(run, prefix[i]);
        run = mul(run, xs[i]);
    }
    return out;
}

void FieldElement::check(const FieldElement& o) const {
    if (!field || !o.field || *field != *o.field)
        throw std::invalid_argument("field mismatch between elements");
}

}  // namespace fano
