#include "logkernel/classgroup.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace logkernel;

TEST_CASE("class group examples")
{
    // D = -23: Z/3, via the forms (1,1,6), (2,+-1,3)
    ClassGroupData cl23(QuadField::make(-23));
    CHECK(cl23.class_number() == 3);
    CHECK(cl23.elementary_divisors() == std::vector<Int>{3});

    // D = -4: trivial, only (1,0,1)
    ClassGroupData cl4(QuadField::make(-1));
    CHECK(cl4.class_number() == 1);
    CHECK(cl4.elementary_divisors().empty());

    // D = 8: trivial narrow group (the cycle oracle sees one cycle)
    ClassGroupData cl8(QuadField::make(2));
    CHECK(cl8.class_number() == 1);

    // D = 12: narrow class number 2 (the unit has norm +1)
    ClassGroupData cl12(QuadField::make(3));
    CHECK(cl12.class_number() == 2);
    CHECK(cl12.elementary_divisors() == std::vector<Int>{2});

    CHECK(ClassGroupData(QuadField::rationals()).class_number() == 1);
    CHECK_THROWS_AS(ClassGroupData(QuadField::make(-23), 10), resource_limit);
}

TEST_CASE("group axioms via composition")
{
    for (Int d : {Int(-23), Int(-47), Int(79), Int(-5), Int(10)}) {
        ClassGroupData cl(QuadField::make(d));
        int id = cl.identity();
        for (int i = 0; i < cl.size(); ++i) {
            CHECK(cl.compose(i, id) == i);
            CHECK(cl.compose(i, cl.inverse(i)) == id);
            CHECK(cl.power(i, cl.order_of(i)) == id);
            for (int j = 0; j < cl.size(); ++j) CHECK(cl.compose(i, j) == cl.compose(j, i));
        }
        Int prod = 1;
        for (auto& e : cl.elementary_divisors()) prod *= e;
        CHECK(prod == cl.class_number());
    }
}

TEST_CASE("structure matches the form-table oracle")
{
    std::vector<Int> ds = {-23, -47, -71, -87, -119, -145, 79, 145, 82, 226, 235};
    for (const Int& d : ds) {
        QuadField K = QuadField::make(d);
        ClassGroupData cl(K);
        auto want = oracle::class_group_structure(K.disc());
        CHECK(cl.elementary_divisors() == want);
    }
}

TEST_CASE("prime classes and discrete logs in the 3-Sylow")
{
    QuadField K = QuadField::make(-23);
    ClassGroupData cl(K);
    auto syl = cl.sylow(3);
    REQUIRE(syl.basis.size() == 1);
    CHECK(syl.basis_exponents == std::vector<int>{1});
    CHECK(syl.dlog.size() == 3);

    // the split prime over 3 is a generator
    int p3 = cl.index_of_ideal(QuadIdeal::prime(K, 3, 0));
    CHECK(cl.order_of(p3) == 3);
    auto co = syl.coords(p3);
    REQUIRE(co.size() == 1);
    CHECK(mod_floor(co[0], 3) != 0);

    // dlog recombination reproduces the class
    int rebuilt = cl.power(syl.basis[0], co[0]);
    CHECK(rebuilt == p3);
}

TEST_CASE("sylow of a larger group")
{
    // D = -4027 has class group Z/3 x Z/3 (classical example with 3-rank 2)
    QuadField K = QuadField::make(-4027);
    ClassGroupData cl(K);
    CHECK(cl.class_number() == 9);
    auto syl = cl.sylow(3);
    CHECK(syl.basis_exponents == std::vector<int>{1, 1});
    CHECK(syl.dlog.size() == 9);
    for (auto& [el, co] : syl.dlog) {
        int rebuilt = cl.identity();
        for (size_t i = 0; i < syl.basis.size(); ++i)
            rebuilt = cl.compose(rebuilt, cl.power(syl.basis[i], co[i]));
        CHECK(rebuilt == el);
    }
}
