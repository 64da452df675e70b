#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace unisphere;
using testutil::random_elem;
using testutil::random_unit;

TEST_CASE("ring spec grammar") {
    RingPtr q = make_ring("Q");
    CHECK(q->kind == RingKind::Rationals);

    RingPtr k = make_ring("Q(sqrt:-7)");
    CHECK(k->kind == RingKind::Quadratic);
    CHECK(k->discriminant == -7);

    RingPtr gauss = make_ring("Q(sqrt:-1)");
    CHECK(gauss->discriminant == -1);

    RingPtr f7 = make_ring("Fp:7");
    CHECK(f7->kind == RingKind::PrimeField);
    CHECK(f7->prime == 7);

    RingPtr z2 = make_ring("Z2:50");
    CHECK(z2->kind == RingKind::ModPrimePower);
    CHECK(z2->prime == 2);
    CHECK(z2->exponent == 50);
    CHECK(z2->modulus == mpz_class(1) << 50);

    CHECK_THROWS_AS(make_ring("Fp:4"), std::invalid_argument);
    CHECK_THROWS_AS(make_ring("Fp:1"), std::invalid_argument);
    CHECK_THROWS_AS(make_ring("Q(sqrt:0)"), std::invalid_argument);
    CHECK_THROWS_AS(make_ring("Q(sqrt:1)"), std::invalid_argument);
    CHECK_THROWS_AS(make_ring("Q(sqrt:12)"), std::invalid_argument);  // 12 = 4*3
    CHECK_THROWS_AS(make_ring("Q(sqrt:-4)"), std::invalid_argument);
    CHECK_THROWS_AS(make_ring("Z2:0"), std::invalid_argument);
    CHECK_THROWS_AS(make_ring("Z3:2"), std::invalid_argument);
    CHECK_THROWS_AS(make_ring(""), std::invalid_argument);
    CHECK_THROWS_AS(make_ring("R"), std::invalid_argument);

    CHECK(make_ring("Q(sqrt:-7)")->spec() == "Q(sqrt:-7)");
    CHECK(make_ring("Z2:50")->spec() == "Z2:50");
}

TEST_CASE("ring_eval on constants") {
    RingPtr q = make_ring("Q");
    CHECK(ring_eval("3/7", q) == RingElem::rational(q, mpq_class(3, 7)));

    RingPtr k = make_ring("Q(sqrt:-7)");
    CHECK(ring_eval("w^2", k) == RingElem::from_int(k, -7));
    CHECK(ring_eval("w*w", k) == RingElem::from_int(k, -7));

    RingPtr z8 = make_ring("Z2:3");
    CHECK(ring_eval("5", z8) == RingElem::residue(z8, 5));
    CHECK(ring_eval("13", z8) == RingElem::residue(z8, 5));

    RingPtr gauss = make_ring("Q(sqrt:-1)");
    CHECK(ring_eval("i", gauss) == RingElem::generator(gauss));
    CHECK(ring_eval("i^2", gauss) == RingElem::from_int(gauss, -1));

    CHECK_THROWS_AS(ring_eval("3 +", q), std::invalid_argument);
    CHECK_THROWS_AS(ring_eval("x", q), std::invalid_argument);        // variable present
    CHECK_THROWS_AS(ring_eval("w", q), std::invalid_argument);        // no generator in Q
    CHECK_THROWS_AS(ring_eval("1/2", make_ring("Z2:4")), std::domain_error);  // 2 not a unit
}

TEST_CASE("ring arithmetic examples") {
    RingPtr k = make_ring("Q(sqrt:-7)");
    RingElem w = RingElem::generator(k);
    RingElem mw7 = RingElem::quadratic(k, 0, mpq_class(-1, 7));
    CHECK(w * mw7 == RingElem::one(k));

    RingPtr z50 = make_ring("Z2:50");
    RingElem five = RingElem::from_int(z50, 5);
    CHECK(five * five.inv() == RingElem::one(z50));
    CHECK_FALSE(RingElem::from_int(z50, 6).is_unit());
    CHECK_THROWS_AS(RingElem::from_int(z50, 6).inv(), std::domain_error);

    RingPtr q = make_ring("Q");
    CHECK_THROWS_AS(RingElem::one(q) / RingElem::zero(q), std::domain_error);

    // ring mismatch
    CHECK_THROWS_AS(RingElem::one(q) + RingElem::one(k), std::domain_error);
}

TEST_CASE("finite field stufe") {
    auto s5 = finite_field_stufe(5);
    CHECK(s5.stufe == 1);
    REQUIRE(s5.witness.size() == 1);
    CHECK(s5.witness[0] == RingElem::from_int(make_ring("Fp:5"), 2));

    auto s3 = finite_field_stufe(3);
    CHECK(s3.stufe == 2);
    REQUIRE(s3.witness.size() == 2);
    CHECK(s3.witness[0] == RingElem::from_int(make_ring("Fp:3"), 1));
    CHECK(s3.witness[1] == RingElem::from_int(make_ring("Fp:3"), 1));

    auto s7 = finite_field_stufe(7);
    CHECK(s7.stufe == 2);
    REQUIRE(s7.witness.size() == 2);
    CHECK(s7.witness[0] == RingElem::from_int(make_ring("Fp:7"), 2));
    CHECK(s7.witness[1] == RingElem::from_int(make_ring("Fp:7"), 3));

    CHECK(finite_field_stufe(2).stufe == 1);

    CHECK_THROWS_AS(finite_field_stufe(4), std::invalid_argument);
    CHECK_THROWS_AS(finite_field_stufe(1000003 * 2L), std::invalid_argument);

    // independent oracle: the witness squares really sum to -1, and
    // stufe 1 happens exactly when -1 is a quadratic residue
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 997L}) {
        auto s = finite_field_stufe(p);
        RingPtr fp = make_ring("Fp:" + std::to_string(p));
        RingElem sum = RingElem::zero(fp);
        for (auto& x : s.witness) sum = sum + x * x;
        CHECK(sum == -RingElem::one(fp));
        CHECK(static_cast<size_t>(s.stufe) == s.witness.size());
        bool residue = false;
        for (long x = 1; x < p && !residue; ++x) residue = (x * x) % p == p - 1;
        CHECK(s.stufe == (residue ? 1 : 2));
    }
}

TEST_CASE("ring axioms hold on random triples") {
    std::mt19937_64 rng(20240811);
    for (auto& ring : testutil::sample_rings()) {
        RingElem zero = RingElem::zero(ring), one = RingElem::one(ring);
        for (int it = 0; it < 1100; ++it) {
            RingElem x = random_elem(rng, ring), y = random_elem(rng, ring), z = random_elem(rng, ring);
            REQUIRE(x + y == y + x);
            REQUIRE(x * y == y * x);
            REQUIRE((x + y) + z == x + (y + z));
            REQUIRE((x * y) * z == x * (y * z));
            REQUIRE(x * (y + z) == x * y + x * z);
            REQUIRE(x + zero == x);
            REQUIRE(x * one == x);
            REQUIRE(x - x == zero);
        }
    }
}

TEST_CASE("units cancel") {
    std::mt19937_64 rng(7);
    for (auto& ring : testutil::sample_rings()) {
        for (int it = 0; it < 1000; ++it) {
            RingElem u = random_unit(rng, ring);
            RingElem x = random_elem(rng, ring);
            REQUIRE((u * x) / u == x);
        }
    }
}

TEST_CASE("canonical form is unique") {
    RingPtr q = make_ring("Q");
    CHECK(RingElem::rational(q, make_rational(2, 4)) == RingElem::rational(q, make_rational(1, 2)));
    CHECK(RingElem::rational(q, make_rational(-3, -6)).str() == "1/2");
    CHECK(RingElem::rational(q, make_rational(3, -6)).str() == "-1/2");

    std::mt19937_64 rng(99);
    for (auto& ring : testutil::sample_rings()) {
        for (int it = 0; it < 1000; ++it) {
            RingElem x = random_elem(rng, ring), y = random_elem(rng, ring);
            REQUIRE((x == y) == (x.str() == y.str()));
        }
    }
}

TEST_CASE("Z/2^k units are exactly the odd residues") {
    RingPtr z = make_ring("Z2:10");
    std::mt19937_64 rng(3);
    for (int it = 0; it < 1000; ++it) {
        RingElem x = random_elem(rng, z);
        REQUIRE(x.is_unit() == (x.residue_value() % 2 == 1));
    }
}

TEST_CASE("element serialization") {
    RingPtr k = make_ring("Q(sqrt:-7)");
    CHECK(RingElem::quadratic(k, mpq_class(1, 2), mpq_class(-3, 4)).str() == "1/2-3/4*w");
    CHECK(RingElem::quadratic(k, 0, 1).str() == "w");
    CHECK(RingElem::quadratic(k, 0, -1).str() == "-w");
    CHECK(RingElem::quadratic(k, -5, 0).str() == "-5");
    CHECK(RingElem::zero(k).str() == "0");
    CHECK(ring_eval("1/2-3/4*w", k) == RingElem::quadratic(k, mpq_class(1, 2), mpq_class(-3, 4)));
}
