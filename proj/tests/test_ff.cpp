#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fanokernel/ff.hpp"
#include "fanokernel/linalg.hpp"
#include "fanokernel/rng.hpp"

using namespace fano;

TEST_CASE("field construction") {
    PrimeField F(67);
    CHECK(F.modulus() == 67);
    CHECK_NOTHROW(PrimeField(2));
    CHECK_THROWS_AS(PrimeField(6), CompositeModulus);
    CHECK_THROWS_AS(PrimeField(1), CompositeModulus);
    CHECK_THROWS_AS(PrimeField(0), CompositeModulus);
    CHECK_NOTHROW(PrimeField(2147483647));  // 2^31 - 1 is prime
}

TEST_CASE("basic arithmetic in GF(67)") {
    PrimeField F(67);
    CHECK(F.add(33, 34) == 0);
    CHECK(F.mul(5, 1) == 5);
    CHECK(F.div(1, 2) == 34);
    CHECK(F.mul(2, 34) == 1);  // extended-Euclid oracle: 2*34 = 1 mod 67
    CHECK_THROWS_AS(F.div(1, 0), DivisionByZero);
}

TEST_CASE("field laws on random elements") {
    PrimeField F(67);
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        uint32_t a = rng.field_element(67), b = rng.field_element(67), c = rng.field_element(67);
        CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
        CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        if (a != 0) CHECK(F.pow(a, 66) == 1);  // a^(p-1) = 1
    }
}

TEST_CASE("batch_invert") {
    PrimeField F7(7);
    CHECK(F7.batch_invert({}).empty());
    // per-element Fermat-power oracle: x^(p-2)
    std::vector<uint32_t> xs = {1, 2, 4};
    auto inv = F7.batch_invert(xs);
    CHECK(inv == std::vector<uint32_t>{1, 4, 2});
    for (size_t i = 0; i < xs.size(); ++i) CHECK(inv[i] == F7.pow(xs[i], 5));

    try {
        F7.batch_invert({3, 0, 1});
        CHECK(false);
    } catch (const DivisionByZero& e) {
        CHECK(e.index == 1);
    }

    PrimeField F(67);
    Rng rng(99);
    std::vector<uint32_t> ys;
    for (int i = 0; i < 50; ++i) ys.push_back(rng.nonzero_field_element(67));
    auto bi = F.batch_invert(ys);
    for (size_t i = 0; i < ys.size(); ++i) CHECK(bi[i] == F.div(1, ys[i]));
}

TEST_CASE("bound elements check fields") {
    PrimeField F(67), G(7);
    FieldElement a(3, F), b(5, F), c(2, G);
    CHECK((a + b).value == 8);
    CHECK_THROWS(a + c);
}

TEST_CASE("dense linear algebra over GF(p)") {
    PrimeField F(67);
    MatFp A(F, 3, 3);
    uint32_t vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A.at(i, j) = vals[i][j];
    CHECK(A.rank() == 3);
    CHECK(A.det() == F.reduce_signed(-3));
    MatFp Ainv = A.inverse();
    MatFp prod = A.multiply(Ainv);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(prod.at(i, j) == (i == j ? 1u : 0u));

    // singular matrix: kernel vector annihilates
    MatFp B(F, 2, 3);
    B.at(0, 0) = 1; B.at(0, 1) = 2; B.at(0, 2) = 3;
    B.at(1, 0) = 2; B.at(1, 1) = 4; B.at(1, 2) = 6;
    CHECK(B.rank() == 1);
    MatFp K = B.kernel();
    CHECK(K.rows() == 2);
    for (size_t r = 0; r < K.rows(); ++r) {
        for (size_t i = 0; i < 2; ++i) {
            uint64_t acc = 0;
            for (size_t j = 0; j < 3; ++j) acc += uint64_t(B.at(i, j)) * K.at(r, j);
            CHECK(F.reduce(acc) == 0);
        }
    }

    // solve
    MatFp C(F, 2, 2);
    C.at(0, 0) = 1; C.at(0, 1) = 1; C.at(1, 0) = 1; C.at(1, 1) = 66;
    std::vector<uint32_t> x;
    CHECK(C.solve({5, 1}, x));
    CHECK(F.add(x[0], x[1]) == 5);
    CHECK(F.sub(x[0], x[1]) == 1);
}
