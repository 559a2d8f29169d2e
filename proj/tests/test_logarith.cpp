#include "logkernel/logarith.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace logkernel;

TEST_CASE("log_inertia decision table")
{
    // inert place: the unramified quadratic is locally cyclotomic
    auto l1 = log_inertia(QuadField::make(-1), 3, 3);
    REQUIRE(l1.size() == 1);
    CHECK(l1[0].f == 2);
    CHECK(l1[0].e_tilde == 1);
    CHECK(l1[0].f_tilde == 2);

    // odd ramified: never inside Z^ x Z_q
    auto l2 = log_inertia(QuadField::make(-6), 3, 3);
    REQUIRE(l2.size() == 1);
    CHECK(l2[0].e == 2);
    CHECK(l2[0].e_tilde == 2);
    CHECK(l2[0].f_tilde == 1);

    // q = 2: class of 2 is cyclotomic (first layer of the plus tower)
    auto l3 = log_inertia(QuadField::make(2), 2, 3);
    REQUIRE(l3.size() == 1);
    CHECK(l3[0].e == 2);
    CHECK(l3[0].e_tilde == 1);
    CHECK(l3[0].f_tilde == 2);

    // q = 2: class of -1 is not
    auto l4 = log_inertia(QuadField::make(-1), 2, 3);
    CHECK(l4[0].e_tilde == 2);
    CHECK(l4[0].f_tilde == 1);

    // e f = e~ f~ = local degree on a sample
    for (Int d : {Int(-1), Int(2), Int(-6), Int(5), Int(-23), Int(30)}) {
        QuadField K = QuadField::make(d);
        for (long long q : {2, 3, 5, 7}) {
            for (auto& loc : log_inertia(K, q, 3)) {
                int deg = loc.place.type == SplitType::split ? 1 : 2;
                CHECK(loc.e * loc.f == deg);
                CHECK(loc.e_tilde * loc.f_tilde == deg);
                // prime-to-q parts of f and f~ agree
                if (loc.place.q != 2) CHECK(loc.f == loc.f_tilde);
            }
        }
    }
}

TEST_CASE("place degrees")
{
    QuadField Q = QuadField::rationals();
    CHECK(place_degree(Q, split_prime(Q, 3)[0], 3, 3).value() == 3);

    QuadField K = QuadField::make(-1);
    CHECK(place_degree(K, split_prime(K, 3)[0], 3, 3).value() == 6);

    // deg 2 = Log_Iw(2) = 24 mod 27
    CHECK(place_degree(Q, split_prime(Q, 2)[0], 3, 3).value() == 24);
}

TEST_CASE("log_valuation over the rationals")
{
    QuadField Q = QuadField::rationals();
    PlaceId p3 = split_prime(Q, 3)[0];
    CHECK(log_valuation(Q, p3, QuadElement(3, 0), 3, 3).is_zero());
    // -Log(4)/3 = -7 = 2 mod 9
    CHECK(log_valuation(Q, p3, QuadElement(4, 0), 3, 2).value() == 2);
    // away from ell, v~ = v
    PlaceId p5 = split_prime(Q, 5)[0];
    CHECK(log_valuation(Q, p5, QuadElement(5, 0), 3, 3).value() == 1);
    CHECK(log_valuation(Q, p5, QuadElement(50, 0), 3, 3).value() == 2);
}

TEST_CASE("log divisor of sqrt(2), the spec worked example")
{
    QuadField K = QuadField::make(2);
    QuadElement root2(0, 1);
    LogDivisor div = log_divisor(K, root2, 3, 3);
    PlaceId p2 = split_prime(K, 2)[0];
    PlaceId p3 = split_prime(K, 3)[0];
    REQUIRE(div.support.count(p2) == 1);
    REQUIRE(div.support.count(p3) == 1);
    // v~ at 2 is v/2 = 1/2 = 14 mod 27
    CHECK(div.support.at(p2).value() == 14);
    // v~ at 3 is -Log(-2)/6 = -24/6 mod 27
    CHECK(div.support.at(p3).value() == mod_floor(Int(-4), 27));
    CHECK(div.degree.is_zero());
}

TEST_CASE("logarithmic units")
{
    QuadField Q = QuadField::rationals();
    CHECK(is_log_unit(Q, QuadElement(3, 0), 3, 4));
    CHECK_FALSE(is_log_unit(Q, QuadElement(4, 0), 3, 4));
    CHECK(is_log_unit(Q, QuadElement(-1, 0), 3, 4));

    QuadField K2 = QuadField::make(2);
    CHECK(is_log_unit(K2, QuadElement(1, 1), 3, 4)); // 1 + sqrt2, norm -1

    QuadField K3 = QuadField::make(-3);
    CHECK(is_log_unit(K3, QuadElement(-1, 1, 2), 3, 4)); // zeta_3 torsion
}

TEST_CASE("log class groups of the three exact fields")
{
    auto rq = log_class_group(QuadField::rationals(), 3);
    CHECK(rq.structure.trivial());
    CHECK(rq.structure.stabilized);
    CHECK(rq.structure.finiteness_certificate);

    auto r3 = log_class_group(QuadField::make(-3), 3);
    CHECK(r3.structure.trivial());
    CHECK(r3.structure.stabilized);

    auto r23 = log_class_group(QuadField::make(-23), 3);
    CHECK(r23.structure.trivial());
    CHECK(r23.structure.stabilized);
}

TEST_CASE("product formula over the S u T system")
{
    for (Int d : {Int(-23), Int(2), Int(-6), Int(79), Int(105), Int(-31)}) {
        QuadField K = QuadField::make(d);
        auto res = log_class_group(K, 3);
        int m = res.structure.precision_used;
        for (auto& g : res.sunits.generators) {
            PadicInt acc(3, 0, m);
            for (auto& p : res.places)
                acc = acc + log_valuation(K, p, g, 3, m) * place_degree(K, p, 3, m);
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("robustness: T-independence, rescaling, precision monotonicity")
{
    for (Int d : {Int(-23), Int(-31), Int(79), Int(-107)}) {
        QuadField K = QuadField::make(d);
        auto base = log_class_group(K, 3);

        LogClassOptions skip;
        skip.t_skip = 1;
        auto alt = log_class_group(K, 3, skip);
        CHECK(base.structure.exponents == alt.structure.exponents);

        LogClassOptions resc;
        // unit multipliers per place (sized generously; extra entries unused)
        auto probe = log_class_group(K, 3);
        resc.rescale_units.assign(probe.places.size(), Int(1));
        for (size_t i = 0; i < resc.rescale_units.size(); ++i)
            resc.rescale_units[i] = 1 + 3 * Int(i + 1) + 9; // units mod 3
        auto scaled = log_class_group(K, 3, resc);
        CHECK(base.structure.exponents == scaled.structure.exponents);

        LogClassOptions deeper;
        deeper.m_start = base.structure.precision_used + 2;
        auto again = log_class_group(K, 3, deeper);
        CHECK(base.structure.exponents == again.structure.exponents);
        CHECK(again.structure.stabilized);
    }
}

TEST_CASE("surjectivity normalization probes")
{
    for (Int d : {Int(-23), Int(79)}) {
        QuadField K = QuadField::make(d);
        auto res = log_class_group(K, 3);
        int m = 8;
        for (auto& p : res.places) {
            if (p.q == 3) {
                // 1+ell pushed through the local norm: v~ has valuation 0
                PadicInt u(3, 4, m + 3);
                PadicInt lg = unit_iwasawa_log(u);
                PadicInt deg = place_degree(K, p, 3, m + 3);
                CHECK(lg.valuation() == deg.valuation());
            } else {
                // a uniformizer: second HNF generator of p, fixed up by +q
                QuadIdeal P = QuadIdeal::prime(K, p.q, p.index);
                QuadElement alpha = QuadElement::from_w_coords(K, P.r(), P.s());
                if (element_valuation(K, alpha, p.q, p.index) != 1)
                    alpha = QuadElement(alpha.a + p.q, alpha.b, 1);
                REQUIRE(element_valuation(K, alpha, p.q, p.index) == 1);
                CHECK(log_valuation(K, p, alpha, 3, m).valuation() == 0);
            }
        }
    }
}
