#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fanokernel/groebner.hpp"
#include "fanokernel/linalg.hpp"

using namespace fano;

namespace {

RingPtr R5() { return PolyRing::make(67, 5); }
Poly P(RingPtr R, const std::string& s) { return parse_poly(R, s); }

// the paper's eight points of P^4 over GF(67)
std::vector<std::vector<uint32_t>> eight_points(const PrimeField& F) {
    std::vector<std::vector<uint32_t>> pts;
    for (int i = 0; i < 5; ++i) {
        std::vector<uint32_t> e(5, 0);
        e[i] = 1;
        pts.push_back(e);
    }
    pts.push_back({1, 1, 1, 1, 1});
    auto chain = [&](uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
        std::vector<uint32_t> p(5);
        p[4] = 1;
        p[3] = d % F.modulus();
        p[2] = F.mul(c, p[3]);
        p[1] = F.mul(b, p[2]);
        p[0] = F.mul(a, p[1]);
        return p;
    };
    pts.push_back(chain(3, 7, 11, 13));
    pts.push_back(chain(17, 23, 29, 31));
    return pts;
}

// forms of degree d vanishing at the given points, by evaluation kernel
std::vector<Poly> vanishing_forms(RingPtr R, const std::vector<std::vector<uint32_t>>& pts,
                                  int d) {
    const PrimeField& F = R->field();
    auto mons = R->monomials_of_degree(d);
    MatFp A(F, pts.size(), mons.size());
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < mons.size(); ++j) {
            uint32_t v = 1;
            for (int k = 0; k < R->nvars(); ++k) {
                int e = mons[j].exp(k);
                if (e) v = F.mul(v, F.pow(pts[i][k], e));
            }
            A.at(i, j) = v;
        }
    MatFp K = A.kernel();
    std::vector<Poly> out;
    for (size_t r = 0; r < K.rows(); ++r) {
        std::vector<Term> ts;
        for (size_t j = 0; j < mons.size(); ++j)
            if (K.at(r, j)) ts.push_back({mons[j], K.at(r, j)});
        out.push_back(Poly::from_terms(R, std::move(ts)));
    }
    return out;
}

long standard_monomial_count(RingPtr R, const std::vector<Poly>& gb, int d) {
    long cnt = 0;
    for (Mono m : R->monomials_of_degree(d)) {
        bool divisible = false;
        for (const Poly& g : gb)
            if (g.lead_mono().divides(m)) {
                divisible = true;
                break;
            }
        if (!divisible) ++cnt;
    }
    return cnt;
}

}  // namespace

TEST_CASE("normal form basics") {
    auto R = R5();
    CHECK(normal_form(P(R, "x0^2"), {P(R, "x0")}).is_zero());
    Poly f = P(R, "x0^3 + x1*x2 - 5");
    CHECK(normal_form(f, {}) == f);
    // NF(f, G) subtracts multiples: f - NF(f) must lie in the ideal
    auto gb = buchberger({P(R, "x0^2 - x1*x2"), P(R, "x1^3 - x4^3")});
    Poly g = P(R, "x0^4 + x1^4");
    Poly nf = normal_form(g, gb);
    for (const Term& t : nf.terms())
        for (const Poly& b : gb) CHECK(!b.lead_mono().divides(t.m));
    CHECK(normal_form(g - nf, gb).is_zero());
}

TEST_CASE("buchberger trivial cases") {
    auto R = R5();
    auto gb1 = buchberger({P(R, "x0^2 + x1^2")});
    REQUIRE(gb1.size() == 1);
    CHECK(gb1[0] == P(R, "x0^2 + x1^2"));

    auto gb2 = buchberger({P(R, "x0 + x1"), P(R, "x0 - x1")});
    REQUIRE(gb2.size() == 2);
    CHECK(((gb2[0] == P(R, "x1") && gb2[1] == P(R, "x0")) ||
           (gb2[0] == P(R, "x0") && gb2[1] == P(R, "x1"))));
}

TEST_CASE("reduce_basis") {
    auto R = R5();
    auto red = reduce_basis({P(R, "x0"), P(R, "x0 + x1")});
    REQUIRE(red.size() == 2);
    CHECK(red[0] == P(R, "x1"));
    CHECK(red[1] == P(R, "x0"));
}

TEST_CASE("eight general points: standard monomials count 8 in degrees >= 2") {
    auto R = R5();
    auto pts = eight_points(R->field());
    // ideal generated by the interpolation kernels in degrees 2 and 3
    std::vector<Poly> gens = vanishing_forms(R, pts, 2);
    CHECK(gens.size() == 7);  // 15 - 8
    for (const Poly& c : vanishing_forms(R, pts, 3)) gens.push_back(c);
    auto gb = reduce_basis(buchberger(gens));
    for (int d = 2; d <= 6; ++d) CHECK(standard_monomial_count(R, gb, d) == 8);
    CHECK(standard_monomial_count(R, gb, 1) == 5);
}

TEST_CASE("reduced GB unique under generator shuffles and rescaling") {
    auto R = R5();
    Rng rng(2024);
    std::vector<Poly> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(random_form(R, 2, rng));
    auto ref = reduce_basis(buchberger(gens));
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Poly> shuffled = gens;
        for (size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        for (Poly& g : shuffled) g = g.scaled(rng.nonzero_field_element(67));
        auto gb = reduce_basis(buchberger(shuffled));
        REQUIRE(gb.size() == ref.size());
        for (size_t i = 0; i < gb.size(); ++i) CHECK(gb[i] == ref[i]);
    }
}

TEST_CASE("NF membership vs linear-algebra span oracle") {
    auto R = R5();
    const PrimeField& F = R->field();
    Rng rng(31);
    std::vector<Poly> gens = {random_form(R, 2, rng), random_form(R, 2, rng),
                              random_form(R, 3, rng)};
    auto gb = buchberger(gens);
    for (int d = 2; d <= 6; ++d) {
        auto mons = R->monomials_of_degree(d);
        // span of m*g for deg(m*g) = d, as row space
        MatFp A(F, 0, mons.size());
        for (const Poly& g : gens) {
            int dg = g.degree();
            if (dg > d) continue;
            for (Mono m : R->monomials_of_degree(d - dg)) {
                Poly mg = g.mono_mul(m);
                std::vector<uint32_t> row(mons.size(), 0);
                for (const Term& t : mg.terms()) {
                    auto it = std::lower_bound(
                        mons.begin(), mons.end(), t.m,
                        [&](Mono a, Mono b) { return R->cmp(a, b) > 0; });
                    row[size_t(it - mons.begin())] = t.c;
                }
                A.append_row(row);
            }
        }
        MatFp B = A;
        size_t rank = B.rank();
        // ideal dimension in degree d from GB lead terms must match
        long std_cnt = standard_monomial_count(R, gb, d);
        CHECK(long(mons.size()) - std_cnt == long(rank));
        // random element of the span has NF zero; random poly usually not
        for (int t = 0; t < 3; ++t) {
            Poly member = Poly::zero(R);
            for (const Poly& g : gens) {
                int dg = g.degree();
                if (dg > d) continue;
                member = member + g * random_form(R, d - dg, rng);
            }
            CHECK(normal_form(member, gb).is_zero());
        }
    }
}

TEST_CASE("syzygies") {
    auto R = R5();
    FreeModule F{R, {0}};
    std::vector<ModPoly> gens = {ModPoly::from_poly(P(R, "x0"), 0, ModOrder::TOP),
                                 ModPoly::from_poly(P(R, "x1"), 0, ModOrder::TOP)};
    PolyMatrix S = syzygy_matrix(F, gens);
    REQUIRE(S.ncols == 1);
    // Koszul relation (x1, -x0) up to scalar
    Poly a = S.at(0, 0), b = S.at(1, 0);
    CHECK(a * P(R, "x0") + b * P(R, "x1") == Poly::zero(R));
    CHECK(!a.is_zero());

    // all syzygies annihilate the generators exactly (product-vanishing oracle)
    Rng rng(5);
    std::vector<Poly> gens2 = {random_form(R, 2, rng), random_form(R, 2, rng),
                               random_form(R, 3, rng)};
    std::vector<ModPoly> mg;
    for (const Poly& g : gens2) mg.push_back(ModPoly::from_poly(g, 0, ModOrder::TOP));
    PolyMatrix S2 = syzygy_matrix(F, mg);
    CHECK(S2.ncols > 0);
    for (size_t j = 0; j < S2.ncols; ++j) {
        Poly acc = Poly::zero(R);
        for (size_t i = 0; i < gens2.size(); ++i) acc = acc + S2.at(i, j) * gens2[i];
        CHECK(acc.is_zero());
    }
    CHECK(S2.is_graded());
}

TEST_CASE("module buchberger reduces to ideal case in rank 1") {
    auto R = R5();
    FreeModule F{R, {0}};
    std::vector<ModPoly> gens = {ModPoly::from_poly(P(R, "x0 + x1"), 0, ModOrder::TOP),
                                 ModPoly::from_poly(P(R, "x0 - x1"), 0, ModOrder::TOP)};
    auto res = module_buchberger(F, gens);
    CHECK(res.basis.size() == 2);
}

TEST_CASE("koszul resolution of a point ideal in P4") {
    auto R = R5();
    std::vector<Poly> pt = {P(R, "x1"), P(R, "x2"), P(R, "x3"), P(R, "x4")};
    Resolution res = free_resolution_of_quotient(pt, 10);
    // Betti counts (4,6,4,1) in homological degrees 1..4
    BettiReport expect;
    expect.table[{0, 0}] = 1;
    expect.table[{1, 1}] = 4;
    expect.table[{2, 2}] = 6;
    expect.table[{3, 3}] = 4;
    expect.table[{4, 4}] = 1;
    CHECK(res.betti == expect);
    // complex property: consecutive maps compose to zero
    for (size_t i = 0; i + 1 < res.maps.size(); ++i) {
        const PolyMatrix &A = res.maps[i], &B = res.maps[i + 1];
        for (size_t r = 0; r < A.nrows; ++r)
            for (size_t c = 0; c < B.ncols; ++c) {
                Poly acc = Poly::zero(R);
                for (size_t k = 0; k < A.ncols; ++k) acc = acc + A.at(r, k) * B.at(k, c);
                CHECK(acc.is_zero());
            }
    }
    // minimality: no unit entries
    for (const PolyMatrix& M : res.maps)
        for (const Poly& e : M.entries) CHECK((e.is_zero() || !e.is_constant()));
    CHECK(res.maps.size() <= 5);  // Hilbert syzygy bound
}

TEST_CASE("resolution exactness spot-check in low degrees") {
    // rank of d_i plus rank of d_{i+1} accounts for the full degree piece
    auto R = R5();
    Rng rng(77);
    std::vector<Poly> gens = {random_form(R, 2, rng), random_form(R, 2, rng),
                              random_form(R, 2, rng)};
    Resolution res = free_resolution_of_quotient(gens, 6);
    REQUIRE(res.maps.size() >= 2);
    const PrimeField& F = R->field();
    // check im(d2)_e = ker(d1)_e for e = 2..6 by dimension count
    for (int e = 2; e <= 6; ++e) {
        auto piece_dims = [&](const std::vector<int>& tw) {
            size_t n = 0;
            for (int t : tw)
                if (e - t >= 0) n += R->monomials_of_degree(e - t).size();
            return n;
        };
        auto matrix_in_degree = [&](const PolyMatrix& M) {
            // map (F_next)_e -> (F_prev)_e as dense matrix
            std::vector<std::pair<size_t, Mono>> dom;  // (col gen, monomial)
            for (size_t j = 0; j < M.ncols; ++j)
                if (e - M.col_twists[j] >= 0)
                    for (Mono mm : R->monomials_of_degree(e - M.col_twists[j]))
                        dom.push_back({j, mm});
            std::vector<std::pair<size_t, Mono>> cod;
            std::vector<std::vector<Mono>> cod_mons(M.nrows);
            for (size_t i = 0; i < M.nrows; ++i)
                if (e - M.row_twists[i] >= 0) cod_mons[i] = R->monomials_of_degree(e - M.row_twists[i]);
            size_t cod_dim = 0;
            std::vector<size_t> cod_off(M.nrows, 0);
            for (size_t i = 0; i < M.nrows; ++i) {
                cod_off[i] = cod_dim;
                cod_dim += cod_mons[i].size();
            }
            MatFp A(F, cod_dim, dom.size());
            for (size_t cidx = 0; cidx < dom.size(); ++cidx) {
                auto [j, mm] = dom[cidx];
                for (size_t i = 0; i < M.nrows; ++i) {
                    Poly img = M.at(i, j).mono_mul(mm);
                    for (const Term& t : img.terms()) {
                        auto& mons = cod_mons[i];
                        auto it = std::lower_bound(mons.begin(), mons.end(), t.m,
                                                   [&](Mono x, Mono y) { return R->cmp(x, y) > 0; });
                        A.at(cod_off[i] + size_t(it - mons.begin()), cidx) = t.c;
                    }
                }
            }
            return A;
        };
        MatFp D1 = matrix_in_degree(res.maps[0]);
        MatFp D2 = matrix_in_degree(res.maps[1]);
        size_t rank1 = D1.rank(), rank2 = D2.rank();
        size_t dom1 = D1.cols();
        // exactness at F_1: dim ker(d1)_e = rank(d2)_e
        CHECK(dom1 - rank1 == rank2);
    }
}

TEST_CASE("degree-truncated buchberger") {
    auto R = R5();
    Rng rng(13);
    std::vector<Poly> gens = {random_form(R, 2, rng), random_form(R, 2, rng)};
    GBOptions opt;
    opt.degree_cap = 3;
    auto full = buchberger(gens);
    auto trunc = buchberger(gens, opt);
    // truncated lead terms agree with the full GB in degrees <= cap
    for (int d = 2; d <= 3; ++d)
        CHECK(standard_monomial_count(R, trunc, d) == standard_monomial_count(R, full, d));
}
