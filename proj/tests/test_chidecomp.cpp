#include "logkernel/abelian.hpp"
#include "logkernel/chidecomp.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace logkernel;

namespace {

bool is_idempotent(const GroupSpec& g, const std::vector<Int>& e, const Int& mod)
{
    auto sq = algebra_product(g, e, e, mod);
    for (size_t i = 0; i < e.size(); ++i)
        if (mod_floor(sq[i] - e[i], mod) != 0) return false;
    return true;
}

} // namespace

TEST_CASE("V4 idempotent table mod 27")
{
    GroupSpec v4 = GroupSpec::v4();
    IdempotentTable t = idempotents(v4, 3, 3);
    // 1/4 = 7 mod 27; elements ordered 1, tau, sigma, tau*sigma
    auto e1 = t.of(make_character(v4, {0, 0}));
    auto ew = t.of(make_character(v4, {1, 0}));
    auto ephi = t.of(make_character(v4, {0, 1}));
    auto ephistar = t.of(make_character(v4, {1, 1}));
    CHECK(e1 == std::vector<Int>{7, 7, 7, 7});
    CHECK(ew == std::vector<Int>{7, 20, 7, 20});
    CHECK(ephi == std::vector<Int>{7, 7, 20, 20});
    CHECK(ephistar == std::vector<Int>{7, 20, 20, 7});
}

TEST_CASE("C2 idempotents are (1 +- tau)/2")
{
    GroupSpec c2 = GroupSpec::c2();
    IdempotentTable t = idempotents(c2, 3, 3);
    CHECK(t.of(make_character(c2, {0})) == std::vector<Int>{14, 14});
    CHECK(t.of(make_character(c2, {1})) == std::vector<Int>{14, 13});
}

TEST_CASE("idempotent identities hold exactly")
{
    for (int m : {2, 5, 12, 32}) {
        for (auto g : {GroupSpec::c2(), GroupSpec::v4()}) {
            Int mod = pow_int(3, m);
            IdempotentTable t = idempotents(g, 3, m);
            std::vector<Int> sum(g.order(), 0);
            for (size_t i = 0; i < t.characters.size(); ++i) {
                CHECK(is_idempotent(g, t.coefficients[i], mod));
                for (size_t j = 0; j < i; ++j) {
                    auto prod = algebra_product(g, t.coefficients[i], t.coefficients[j], mod);
                    for (auto& c : prod) CHECK(c == 0);
                }
                for (int x = 0; x < g.order(); ++x)
                    sum[x] = mod_floor(sum[x] + t.coefficients[i][x], mod);
            }
            CHECK(sum[0] == 1);
            for (int x = 1; x < g.order(); ++x) CHECK(sum[x] == 0);
        }
    }
    CHECK_THROWS_AS(idempotents(GroupSpec::c2(), 2, 4), invalid_input);
}

TEST_CASE("mirror involution")
{
    GroupSpec v4 = GroupSpec::v4();
    CharacterId one = make_character(v4, {0, 0});
    CharacterId omega = make_character(v4, {1, 0});
    CharacterId phi = make_character(v4, {0, 1});
    CharacterId phi_star = make_character(v4, {1, 1});
    CHECK(one.is_unit);
    CHECK(omega.is_cyclotomic);
    CHECK(mirror(v4, one) == omega);
    CHECK(mirror(v4, omega) == one);
    CHECK(mirror(v4, phi) == phi_star); // phi* = omega phi
    for (auto& chi : all_characters(v4)) CHECK(mirror(v4, mirror(v4, chi)) == chi);
    for (auto& chi : all_characters(GroupSpec::c2()))
        CHECK(mirror(GroupSpec::c2(), mirror(GroupSpec::c2(), chi)) == chi);
}

TEST_CASE("component dispatch depends only on parity")
{
    CHECK(component_dispatch(0, FieldRole::k).source == FieldRole::k);
    CHECK(component_dispatch(1, FieldRole::k).source == FieldRole::kstar);
    CHECK(component_dispatch(-2, FieldRole::k).source == FieldRole::k);
    CHECK(component_dispatch(1, FieldRole::kstar).source == FieldRole::k);
    for (long long i = -6; i <= 6; ++i) {
        CHECK(component_dispatch(i, FieldRole::k).source ==
              component_dispatch(i % 2 == 0 ? 0 : 1, FieldRole::k).source);
        CHECK(component_dispatch(i, FieldRole::k).component ==
              component_dispatch(i + 2, FieldRole::k).component);
    }
}

TEST_CASE("component dimensions add up on the regular module")
{
    // regular representation of (Z/3^m)[Delta]: the images of the four
    // idempotents partition the module
    GroupSpec v4 = GroupSpec::v4();
    int m = 5;
    Int mod = pow_int(3, m);
    IdempotentTable t = idempotents(v4, 3, m);
    long long total = 0;
    for (auto& coeff : t.coefficients) {
        PMatrix action(3, m, v4.order(), v4.order());
        for (int z = 0; z < v4.order(); ++z)
            for (int y = 0; y < v4.order(); ++y)
                action.set(z, y, coeff[v4.compose(z, v4.inverse(y))]);
        SnfResult s = smith_normal_form(action);
        for (int d : s.exponents) total += m - std::min(d, m);
    }
    CHECK(total == 4LL * m);
}
