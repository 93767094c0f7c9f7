#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "fanokernel/poly.hpp"

using namespace fano;

namespace {
RingPtr R5() { return PolyRing::make(67, 5); }

Poly P(RingPtr R, const std::string& s) { return parse_poly(R, s); }
}  // namespace

TEST_CASE("order_compare basics") {
    // grevlex: x0^2 vs x0*x1
    Mono a = Mono::var(0, 2), b = Mono::var(0) * Mono::var(1);
    CHECK(order_compare(a, b, MonomialOrder::grevlex(), 5) > 0);
    // lex ignores degree: x0 > x1^3
    CHECK(order_compare(Mono::var(0), Mono::var(1, 3), MonomialOrder::lex(), 5) > 0);
    // elimination: x0 beats x1^10
    CHECK(order_compare(Mono::var(0), Mono::var(1, 10), MonomialOrder::elim(1), 5) > 0);
}

TEST_CASE("block elimination definition-check oracle") {
    // any monomial containing an eliminated variable beats any without,
    // checked over all monomial pairs of degree <= 4 in 3 variables
    auto R = PolyRing::make(67, 3, MonomialOrder::elim(1));
    std::vector<Mono> all;
    for (int d = 0; d <= 4; ++d)
        for (Mono m : R->monomials_of_degree(d)) all.push_back(m);
    for (Mono m1 : all)
        for (Mono m2 : all) {
            if (m1.exp(0) > 0 && m2.exp(0) == 0) CHECK(R->cmp(m1, m2) > 0);
            int c12 = R->cmp(m1, m2), c21 = R->cmp(m2, m1);
            CHECK(c12 == -c21);  // antisymmetry
            if (m1 == m2) CHECK(c12 == 0);
        }
}

TEST_CASE("strict total order on degree-5 monomials in 5 vars") {
    auto R = R5();
    auto mons = R->monomials_of_degree(5);
    CHECK(mons.size() == 126);
    for (size_t i = 0; i < mons.size(); ++i)
        for (size_t j = i + 1; j < mons.size(); ++j) CHECK(R->cmp(mons[i], mons[j]) > 0);
    // multiplicativity on a sample
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        Mono m1 = mons[rng.below(mons.size())], m2 = mons[rng.below(mons.size())];
        Mono n = mons[rng.below(mons.size())];
        int c = R->cmp(m1, m2);
        CHECK(R->cmp(m1 * n, m2 * n) == c);
    }
}

TEST_CASE("poly arithmetic") {
    auto R = R5();
    Poly f = P(R, "x0 + x1");
    CHECK(f * f == P(R, "x0^2 + 2*x0*x1 + x1^2"));
    CHECK((f * Poly::zero(R)).is_zero());

    auto R2 = PolyRing::make(2, 5);
    Poly g = P(R2, "x0 + x1");
    CHECK(g * g == P(R2, "x0^2 + x1^2"));  // Frobenius

    // ring mismatch
    CHECK_THROWS_AS(poly_arith(f, g, ArithOp::Add), RingMismatch);

    // commutativity/associativity on random triples
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        Poly a = random_form(R, 2, rng), b = random_form(R, 3, rng), c = random_form(R, 1, rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("apply_map") {
    auto R = R5();
    // identity
    std::vector<Poly> id;
    for (int i = 0; i < 5; ++i) id.push_back(Poly::variable(R, i));
    RingMap idmap(R, R, id);
    Rng rng(5);
    Poly f = random_form(R, 3, rng);
    CHECK(idmap.apply(f) == f);

    // evaluation at a point: constants as images
    std::vector<Poly> consts;
    std::vector<uint32_t> pt = {1, 2, 3, 4, 5};
    for (uint32_t v : pt) consts.push_back(Poly::constant(R, v));
    RingMap ev(R, R, consts);
    Poly fe = ev.apply(f);
    CHECK(fe.is_constant());
    CHECK((fe.is_zero() ? 0 : fe.lead_coeff()) == f.eval(pt));

    // composition oracle on random cubics
    std::vector<Poly> phi_im, psi_im;
    Rng r2(17);
    for (int i = 0; i < 5; ++i) phi_im.push_back(random_form(R, 1, r2));
    for (int i = 0; i < 5; ++i) psi_im.push_back(random_form(R, 1, r2));
    RingMap phi(R, R, phi_im), psi(R, R, psi_im);
    std::vector<Poly> comp_im;
    for (int i = 0; i < 5; ++i) comp_im.push_back(phi.apply(psi_im[i]));
    RingMap comp(R, R, comp_im);
    for (int t = 0; t < 100; ++t) {
        Poly c = random_form(R, 3, r2);
        CHECK(comp.apply(c) == phi.apply(psi.apply(c)));
    }
}

TEST_CASE("jacobian") {
    auto R = R5();
    PolyMatrix J = jacobian({P(R, "x0^2")});
    CHECK(J.at(0, 0) == P(R, "2*x0"));
    for (int j = 1; j < 5; ++j) CHECK(J.at(0, j).is_zero());

    // char-p derivative drops p-th powers
    auto R7 = PolyRing::make(7, 5);
    PolyMatrix J7 = jacobian({parse_poly(R7, "x0^7")});
    CHECK(J7.at(0, 0).is_zero());

    // degree bookkeeping oracle: jacobian of the 6 minors of a generic
    // 4x2 (2,3)-matrix has homogeneous entries of degree 4 (from quintics)
    PolyMatrix M = random_graded_matrix(R, {0, 0, 0, 0}, {2, 3}, 99);
    auto mins = minors(2, M);
    CHECK(mins.size() == 6);
    PolyMatrix JM = jacobian(mins);
    for (const Poly& e : JM.entries) {
        int d;
        CHECK(e.is_homogeneous(&d));
        if (!e.is_zero()) CHECK(d == 4);
    }
}

TEST_CASE("minors") {
    auto R = R5();
    PolyMatrix M(R, 2, 2);
    M.at(0, 0) = P(R, "x0");
    M.at(0, 1) = P(R, "x1");
    M.at(1, 0) = P(R, "x2");
    M.at(1, 1) = P(R, "x3");
    auto m1 = minors(1, M);
    CHECK(m1.size() == 4);
    auto m2 = minors(2, M);
    REQUIRE(m2.size() == 1);
    CHECK(m2[0] == P(R, "x0*x3 - x1*x2"));
    CHECK_THROWS_AS(minors(3, M), SizeExceeded);
}

TEST_CASE("random graded matrix") {
    auto R = R5();
    PolyMatrix M = random_graded_matrix(R, {0, 0, 0, 0}, {2, 3}, 42);
    CHECK(M.nrows == 4);
    CHECK(M.ncols == 2);
    CHECK(M.is_graded());
    for (size_t i = 0; i < 4; ++i) {
        CHECK(M.at(i, 0).degree() == 2);
        CHECK(M.at(i, 1).degree() == 3);
        CHECK(M.at(i, 0).size() <= 15);  // monomial count bound in 5 vars
    }
    PolyMatrix M2 = random_graded_matrix(R, {0, 0, 0, 0}, {2, 3}, 42);
    for (size_t k = 0; k < M.entries.size(); ++k) CHECK(M.entries[k] == M2.entries[k]);
    CHECK_THROWS_AS(random_graded_matrix(R, {1}, {0}, 1), NegativeDegree);
}

TEST_CASE("parser and printer") {
    auto R = R5();
    Poly f = P(R, "x0^2 + 2*x0*x1");
    CHECK(f.size() == 2);
    CHECK(f.lead_mono() == Mono::var(0, 2));

    CHECK_THROWS_AS(parse_poly(R, "x0 +"), SyntaxError);
    CHECK_THROWS_AS(parse_poly(R, "y0"), SyntaxError);
    CHECK_THROWS_AS(parse_poly(R, ""), SyntaxError);

    // round-trip on random quintics (fuzz oracle)
    Rng rng(123);
    for (int t = 0; t < 500; ++t) {
        Poly g = random_form(R, 5, rng);
        CHECK(parse_poly(R, g.str()) == g);
    }

    // ring header round-trip
    auto R2 = parse_ring_header("ring p=67 vars=5 order=grevlex");
    CHECK(R2->same_ring(*R));
    auto R3 = parse_ring_header("ring p=67 vars=6 order=elim:1");
    CHECK(R3->order().kind == OrderKind::Elim);
    CHECK(ring_header(*R3) == "ring p=67 vars=6 order=elim:1");

    // ideal text round-trip
    std::string txt = print_ideal_text("J", {f, P(R, "x4^3 - x2")});
    ParsedIdeal pi = parse_ideal_text(txt);
    CHECK(pi.name == "J");
    REQUIRE(pi.gens.size() == 2);
    CHECK(pi.gens[0] == f);
}

TEST_CASE("canonical form validator") {
    auto R = R5();
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        Poly f = random_form(R, 4, rng) + random_form(R, 4, rng);
        // strictly descending, no zero coefficients
        for (size_t i = 0; i + 1 < f.terms().size(); ++i)
            CHECK(R->cmp(f.terms()[i].m, f.terms()[i + 1].m) > 0);
        for (const Term& t2 : f.terms()) CHECK(t2.c != 0);
        for (const Term& t2 : f.terms()) CHECK(t2.c < 67);
    }
}
