#include "fixtures.hpp"

#include <doctest.h>

#include <loopkit/elements.hpp>
#include <loopkit/search.hpp>

#include <functional>

using namespace loopkit;

namespace {

SearchSpec spec(std::size_t n, std::vector<IdentityId> require = {}, std::vector<IdentityId> forbid = {})
{
    SearchSpec s;
    s.n = n;
    s.require = std::move(require);
    s.forbid = std::move(forbid);
    return s;
}

ErrorKind kind_of(const std::function<void()> & f)
{
    try {
        f();
    } catch (const LoopError & e) {
        return e.kind();
    }
    return ErrorKind::MalformedInput;
}

} // namespace

TEST_CASE("unconstrained counts are the reduced Latin square counts")
{
    for (std::size_t n = 1; n <= 5; ++n) {
        auto s = spec(n);
        s.mode = SearchMode::Count;
        auto r = search(s);
        CHECK(r.exhaustive);
        CHECK(r.count == fixtures::naive_reduced_latin_count(static_cast<int>(n)));
        CHECK(r.tables.empty());
    }
    std::vector<std::uint64_t> expected{1, 1, 1, 4, 56, 9408};
    for (std::size_t n = 1; n <= 6; ++n) {
        auto s = spec(n);
        s.mode = SearchMode::Count;
        CHECK(search(s).count == expected[n - 1]);
    }
}

TEST_CASE("serial and parallel search agree")
{
    std::vector<SearchSpec> specs{spec(6), spec(7, {IdentityId::FLEX, IdentityId::IP}),
        spec(6, {IdentityId::COMM}, {IdentityId::ASSOC}), spec(5, {}, {IdentityId::FLEX})};
    auto ts = spec(7, {IdentityId::TS});
    ts.has_neutral = false;
    specs.push_back(ts);
    for (auto s : specs) {
        for (auto w : {1, 2, 4}) {
            s.workers = w;
            auto a = search_serial(s);
            auto b = search(s);
            CHECK(a.tables == b.tables);
            CHECK(a.count == b.count);
            CHECK(a.nodes == b.nodes);
            CHECK(a.exhaustive == b.exhaustive);
        }
        s.limit = 3;
        s.workers = 3;
        auto a = search_serial(s);
        auto b = search(s);
        CHECK(a.tables == b.tables);
    }
}

TEST_CASE("emitted tables satisfy the spec and the oracle")
{
    auto s = spec(6, {IdentityId::COMM}, {IdentityId::ASSOC});
    auto r = search(s);
    CHECK(r.count == 396);
    for (auto & t : r.tables) {
        CHECK(satisfies_spec(t, s));
        auto g = fixtures::grid(t);
        CHECK(fixtures::naive_identity(g, IdentityId::COMM));
        CHECK_FALSE(fixtures::naive_identity(g, IdentityId::ASSOC));
    }
    // completeness against a filter of the unconstrained enumeration
    std::size_t filtered = 0;
    for (auto & l : fixtures::small_loops())
        if (l.order() == 6 && satisfies_spec(l.table(), s))
            ++filtered;
    CHECK(filtered == 396);
}

TEST_CASE("required identities filter exactly")
{
    for (auto id : all_identities()) {
        auto s = spec(5, {id});
        s.mode = SearchMode::Count;
        std::size_t filtered = 0;
        for (auto & l : fixtures::small_loops())
            if (l.order() == 5 && satisfies_spec(l.table(), spec(5, {id})))
                ++filtered;
        CHECK_MESSAGE(search(s).count == filtered, tag(id));
        auto f = spec(5, {}, {id});
        f.mode = SearchMode::Count;
        CHECK_MESSAGE(search(f).count == 56 - filtered, tag(id));
    }
}

TEST_CASE("commutative groups of order 4")
{
    auto s = spec(4, {IdentityId::ASSOC, IdentityId::COMM});
    CHECK(search(s).count == 4);
    s.commutative = true;
    s.require = {IdentityId::ASSOC};
    CHECK(search(s).count == 4);
}

TEST_CASE("limits and modes")
{
    auto s = spec(6);
    s.limit = 10;
    auto r = search(s);
    CHECK(r.tables.size() == 10);
    CHECK_FALSE(r.exhaustive);
    auto all = search(spec(6));
    CHECK(std::equal(r.tables.begin(), r.tables.end(), all.tables.begin()));

    s.limit = 0;
    s.mode = SearchMode::Exists;
    auto e = search(s);
    CHECK(e.count == 1);
    REQUIRE(e.tables.size() == 1);
    CHECK(e.tables[0] == all.tables[0]);
}

TEST_CASE("minimal orders")
{
    std::vector<IdentityId> flex_ip{IdentityId::FLEX, IdentityId::IP};
    std::vector<IdentityId> lalt{IdentityId::LALT};
    auto r = min_order_witness(flex_ip, lalt, 8);
    REQUIRE(r.order);
    CHECK(*r.order == 7);
    REQUIRE(r.table);
    LoopTable l(*r.table);
    CHECK(check_identity(l, IdentityId::FLEX).holds);
    CHECK(check_identity(l, IdentityId::IP).holds);
    CHECK_FALSE(check_identity(l, IdentityId::LALT).holds);
    REQUIRE(r.sweeps.size() == 7);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(r.sweeps[i].exhaustive);
        CHECK_FALSE(r.sweeps[i].found);
    }

    std::vector<IdentityId> comm{IdentityId::COMM};
    std::vector<IdentityId> assoc{IdentityId::ASSOC};
    auto c = min_order_witness(comm, assoc, 7);
    REQUIRE(c.order);
    CHECK(*c.order == 6);

    auto none = min_order_witness(comm, comm, 5);
    CHECK_FALSE(none.order);
    CHECK(none.sweeps.empty());

    auto nothing = min_order_witness(assoc, comm, 3);
    CHECK_FALSE(nothing.order);
    CHECK(nothing.sweeps.size() == 3);
}

TEST_CASE("order-7 flexible IP loops match the example table")
{
    auto r = search(spec(7, {IdentityId::FLEX, IdentityId::IP}));
    CHECK(r.count == 150);
    auto classes = isomorphism_classes(r.tables);
    CHECK(classes.size() == 2);
    bool found = false;
    for (auto & t : classes)
        found = found || is_isomorphic(LoopTable(t), fixtures::example7_loop());
    CHECK(found);
}

TEST_CASE("quasigroup search")
{
    auto s = spec(7, {IdentityId::TS, IdentityId::IDEMPOTENT});
    s.has_neutral = false;
    s.mode = SearchMode::Count;
    CHECK(search(s).count == 30);
    auto t = spec(3, {IdentityId::TS});
    t.has_neutral = false;
    for (auto & q : search(t).tables)
        CHECK(check_identity(q, IdentityId::TS).holds);
}

TEST_CASE("invalid specs")
{
    CHECK(kind_of([] { validate(spec(0)); }) == ErrorKind::SpecInvalid);
    CHECK(kind_of([] { validate(spec(64)); }) == ErrorKind::SpecInvalid);
    CHECK(kind_of([] { search(spec(4, {IdentityId::COMM}, {IdentityId::COMM})); }) == ErrorKind::SpecInvalid);
    auto s = spec(4, {IdentityId::WIP});
    s.has_neutral = false;
    CHECK(kind_of([&] { validate(s); }) == ErrorKind::SpecInvalid);
}

TEST_CASE("spec text")
{
    auto s = parse_search_spec("n=7 require=flex,ip forbid=lalt mode=exists limit=1");
    CHECK(s.n == 7);
    CHECK(s.require == std::vector<IdentityId>{IdentityId::FLEX, IdentityId::IP});
    CHECK(s.forbid == std::vector<IdentityId>{IdentityId::LALT});
    CHECK(s.mode == SearchMode::Exists);
    CHECK(s.limit == 1);
    auto again = parse_search_spec(format_search_spec(s));
    CHECK(format_search_spec(again) == format_search_spec(s));
    CHECK(again.require == s.require);

    auto q = parse_search_spec("n=9 require=ts neutral=false commutative=true workers=2 mode=count");
    CHECK_FALSE(q.has_neutral);
    CHECK(q.commutative);
    CHECK(q.workers == 2);
    CHECK(format_search_spec(parse_search_spec(format_search_spec(q))) == format_search_spec(q));

    for (auto bad : {"require=flex", "n=x", "n=5 require=nope", "n=5 mode=fast", "n=5 bogus=1", "n=5 n=6"})
        CHECK_MESSAGE(kind_of([&] { parse_search_spec(bad); }) == ErrorKind::SpecInvalid, bad);
}

TEST_CASE("workers resolution")
{
    CHECK(resolve_workers(3) == 3);
    CHECK(resolve_workers(0) >= 1);
}
