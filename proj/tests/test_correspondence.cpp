#include "fixtures.hpp"

#include <doctest.h>

#include <loopkit/correspondence.hpp>
#include <loopkit/elements.hpp>
#include <loopkit/structure.hpp>
#include <loopkit/subloops.hpp>

#include <random>

using namespace loopkit;

namespace {

bool comm_wip(const LoopTable & l)
{
    return l.has_inverses() && check_identity(l, IdentityId::COMM).holds && check_identity(l, IdentityId::WIP).holds;
}

} // namespace

TEST_CASE("pointed quasigroups need an idempotent base")
{
    auto z3 = fixtures::cyclic(3).table();
    CHECK_NOTHROW(PointedQuasigroup(z3, 0));
    try {
        PointedQuasigroup(z3, 1);
        FAIL("expected BadBase");
    } catch (const LoopError & e) {
        CHECK(e.kind() == ErrorKind::BadBase);
    }
}

TEST_CASE("quasi of small groups")
{
    auto q3 = quasi(fixtures::cyclic(3));
    CHECK(q3.base() == 0);
    for (Element x = 0; x < 3; ++x)
        for (Element y = 0; y < 3; ++y)
            CHECK(q3.table().mul(x, y) == (6 - x - y) % 3);
    auto r3 = ts_report(q3);
    CHECK(r3.holds("ts"));
    CHECK(r3.holds("idempotent"));
    CHECK(r3.holds("dist"));

    auto klein = fixtures::klein();
    auto qk = quasi(klein);
    CHECK(qk.table() == klein.table());
    auto rk = ts_report(qk);
    CHECK(rk.holds("unipotent"));
    CHECK(rk.idempotents.members() == std::vector<Element>{qk.base()});

    auto z6 = fixtures::cyclic(6);
    auto q6 = quasi(z6);
    auto r6 = ts_report(q6);
    CHECK(r6.holds("ts"));
    CHECK(r6.holds("q1"));
    CHECK(r6.holds("q2"));
    REQUIRE(r6.squaring_onto_idempotents);
    CHECK(*r6.squaring_onto_idempotents);
    CHECK(deloop(q6) == z6);

    CHECK_THROWS_AS(quasi(fixtures::example7_loop()), LoopError);
}

TEST_CASE("deloop")
{
    auto q3 = quasi(fixtures::cyclic(3));
    CHECK(deloop(q3) == fixtures::cyclic(3));
    auto fano_q = steiner_quasigroup(fixtures::fano());
    auto fano_l = steiner_adjoin(fano_q);
    try {
        deloop(fano_l.table(), 1);
        FAIL("expected NotTS");
    } catch (const LoopError & e) {
        CHECK(e.kind() == ErrorKind::NotTS);
    }
    CHECK_THROWS_AS(deloop(fixtures::example7(), 0), LoopError);
}

TEST_CASE("round trips on the corpus")
{
    int loops = 0;
    for (auto & l : fixtures::small_loops())
        if (comm_wip(l)) {
            auto q = quasi(l);
            CHECK(check_identity(q.table(), IdentityId::TS).holds);
            CHECK(deloop(q) == l);
            ++loops;
        }
    for (auto & nl : fixtures::constructed())
        if (comm_wip(nl.loop))
            CHECK(deloop(quasi(nl.loop)) == nl.loop);
    CHECK(loops > 0);

    int quasigroups = 0;
    for (auto & t : fixtures::ts_quasigroups())
        for (Element b = 0; b < static_cast<Element>(t.order()); ++b) {
            if (t.mul(b, b) != b)
                continue;
            PointedQuasigroup q(t, b);
            auto l = deloop(q);
            CHECK(check_identity(l, IdentityId::WIP).holds);
            CHECK(check_identity(l, IdentityId::COMM).holds);
            CHECK(quasi(l) == q);
            ++quasigroups;
        }
    CHECK(quasigroups > 0);
}

TEST_CASE("Moufang exponent 3 corresponds to distributive TS")
{
    auto cml = fixtures::cml81();
    auto q = quasi(cml);
    auto r = ts_report(q);
    CHECK(r.holds("ts"));
    CHECK(r.holds("dist"));
    CHECK(r.holds("idempotent"));

    auto back = deloop(PointedQuasigroup(fixtures::affine_sts9_quasigroup(), 0));
    CHECK(check_identity(back, IdentityId::MFG1).holds);
    CHECK(check_identity(back, IdentityId::COMM).holds);
    CHECK(order_profile(back).exponent == 3);
}

TEST_CASE("Q1 and Q2 quasigroups give commutative RIF loops of exponent dividing 6")
{
    for (auto & t : fixtures::ts_quasigroups())
        for (Element b = 0; b < static_cast<Element>(t.order()); ++b) {
            if (t.mul(b, b) != b)
                continue;
            PointedQuasigroup q(t, b);
            auto r = ts_report(q);
            if (! r.holds("q1") || ! r.holds("q2"))
                continue;
            REQUIRE(r.squaring_onto_idempotents);
            CHECK(*r.squaring_onto_idempotents);
            auto l = deloop(q);
            CHECK(check_identity(l, IdentityId::RIF1).holds);
            CHECK(check_identity(l, IdentityId::IP).holds);
            CHECK(6 % order_profile(l).exponent == 0);
        }
    for (auto & l : fixtures::crif8()) {
        auto r = ts_report(quasi(l));
        if (6 % order_profile(l).exponent == 0) {
            CHECK(r.holds("q1"));
            CHECK(r.holds("q2"));
        }
    }
}

TEST_CASE("TS decomposition")
{
    std::vector<LoopTable> factors{fixtures::klein(), fixtures::cyclic(3)};
    auto l12 = direct_product(std::span<const LoopTable>(factors));
    auto q = quasi(l12);
    auto d = ts_decompose(q);
    CHECK(d.idempotent_part.table().order() == 3);
    CHECK(d.steiner_part.order() == 4);
    CHECK(is_isomorphic(d.steiner_part, fixtures::klein()));
    CHECK(is_isomorphic(d.idempotent_part.table(), quasi(fixtures::cyclic(3)).table()));
    CHECK(is_homomorphism(q.table(), d.product, d.isomorphism.image()));

    auto idem = ts_decompose(quasi(fixtures::cyclic(3)));
    CHECK(idem.idempotent_part.table().order() == 3);
    CHECK(idem.steiner_part.order() == 1);
    auto uni = ts_decompose(quasi(fixtures::klein()));
    CHECK(uni.idempotent_part.table().order() == 1);
    CHECK(uni.steiner_part.order() == 4);

    CHECK_THROWS_AS(ts_decompose(quasi(fixtures::cyclic(4))), LoopError);
}

TEST_CASE("restrict_table")
{
    auto q = quasi(fixtures::cyclic(6));
    auto idem = ts_report(q).idempotents;
    auto sub = restrict_table(q.table(), idem);
    CHECK(sub.order() == idem.size());
    CHECK_THROWS_AS(restrict_table(q.table(), ElementSet(6, {0, 1})), LoopError);
}

TEST_CASE("Steiner constructions")
{
    auto q3 = quasi(fixtures::cyclic(3)).table();
    auto k = steiner_adjoin(q3);
    CHECK(k.order() == 4);
    CHECK(k.neutral() == 0);
    CHECK(is_isomorphic(k, fixtures::klein()));

    auto fano = steiner_quasigroup(fixtures::fano());
    CHECK(check_identity(fano, IdentityId::TS).holds);
    CHECK(check_identity(fano, IdentityId::IDEMPOTENT).holds);
    auto l8 = steiner_adjoin(fano);
    CHECK(l8.order() == 8);
    CHECK(check_identity(l8, IdentityId::C).holds);
    CHECK(order_profile(l8).exponent == 2);
    CHECK(fixtures::naive_identity(fixtures::grid(l8.table()), IdentityId::C));
    auto back = steiner_delete(l8);
    CHECK(back == fano);

    auto sts9 = sts_extract(fixtures::affine_sts9_quasigroup());
    CHECK(sts9.points.size() == 9);
    CHECK(sts9.blocks.size() == 12);

    auto fano_blocks = sts_extract(fano);
    CHECK(fano_blocks.blocks.size() == 7);
    auto text = serialize_triple_system(fano_blocks);
    auto parsed = parse_triple_system(text);
    CHECK(steiner_quasigroup(parsed) == fano);

    try {
        steiner_adjoin(fixtures::example7());
        FAIL("expected NotSteiner");
    } catch (const LoopError & e) {
        CHECK(e.kind() == ErrorKind::NotSteiner);
    }
    CHECK_THROWS_AS(steiner_delete(fixtures::cyclic(3)), LoopError);
    CHECK_THROWS_AS(parse_triple_system("a b c\na b d\n"), LoopError);
    CHECK_THROWS_AS(parse_triple_system("a b c\na d e\n"), LoopError);
}

TEST_CASE("Steiner adjoin and delete are inverse up to relabeling")
{
    std::mt19937 rng(5);
    auto s10 = fixtures::steiner10();
    auto q9 = steiner_delete(s10);
    CHECK(is_isomorphic(q9, fixtures::affine_sts9_quasigroup()));
    auto again = steiner_adjoin(q9);
    CHECK(is_isomorphic(again, s10));
    auto shuffled = fixtures::relabel(q9, fixtures::random_permutation(9, rng, false));
    CHECK(is_isomorphic(steiner_adjoin(shuffled), s10));
}
