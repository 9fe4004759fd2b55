#include <loopkit/elements.hpp>
#include <loopkit/structure.hpp>

#include <numeric>
#include <sstream>

namespace loopkit {

namespace {
    [[noreturn]] void precondition(const LoopTable & loop, std::string_view what, const CheckResult & r)
    {
        std::string msg = std::string(what);
        if (r.witness)
            msg += " (" + format_witness(loop.table(), *r.witness) + ")";
        throw LoopError(ErrorKind::PreconditionFailed, msg);
    }

    void require_power_associative(const LoopTable & loop)
    {
        auto r = is_power_associative(loop);
        if (! r.holds)
            throw LoopError(ErrorKind::NotPowerAssociative, format_witness(loop.table(), *r.witness));
    }

    long order_of(const LoopTable & loop, Element x)
    {
        Element p = x;
        for (long k = 1; k <= static_cast<long>(loop.order()); ++k) {
            if (p == loop.neutral())
                return k;
            p = loop.mul(x, p);
        }
        return 0;
    }

    OrderProfile orders_unchecked(const LoopTable & loop)
    {
        OrderProfile profile;
        for (std::size_t x = 0; x < loop.order(); ++x) {
            auto k = order_of(loop, static_cast<Element>(x));
            profile.orders.push_back(k);
            profile.exponent = std::lcm(profile.exponent, k);
        }
        return profile;
    }

    struct Group {
        std::string descriptor;
        long modulus;
    };

    // Splits the loop along coprime moduli whose product is the exponent. Each part is Q_[m]; the
    // projection onto it is x -> x^(n s mod N) with m r + n s = 1, n = N / m.
    Decomposition decompose(const LoopTable & loop, const std::vector<Group> & groups, long exponent)
    {
        auto n = loop.order();
        Decomposition d{{}, loop, PermutationMap::identity(n), {}};
        std::vector<std::vector<Element>> projections;
        std::vector<LoopTable> factor_tables;
        std::vector<std::vector<Element>> positions;
        for (auto & g : groups) {
            long e;
            if (g.modulus == 1)
                e = 0;
            else if (g.modulus == exponent)
                e = 1;
            else {
                auto [r, s] = bezout(g.modulus, exponent / g.modulus);
                e = ((exponent / g.modulus) * s) % exponent;
                if (e < 0)
                    e += exponent;
            }
            d.projection_exponents.push_back(e);
            std::vector<Element> proj(n);
            for (std::size_t x = 0; x < n; ++x)
                proj[x] = power(loop, static_cast<Element>(x), e);
            projections.push_back(std::move(proj));

            Subloop part(loop, k_torsion(loop, g.modulus));
            factor_tables.push_back(part.as_loop());
            std::vector<Element> pos(n, -1);
            auto members = part.embedding();
            for (std::size_t i = 0; i < members.size(); ++i)
                pos[static_cast<std::size_t>(members[i])] = static_cast<Element>(i);
            positions.push_back(std::move(pos));
            d.parts.push_back({g.descriptor, std::move(part), {}});
        }

        d.external = direct_product(std::span<const LoopTable>(factor_tables));
        if (d.external.order() != n)
            throw LoopError(ErrorKind::PreconditionFailed, "parts do not multiply to the loop order");
        std::vector<Element> phi(n);
        for (std::size_t x = 0; x < n; ++x) {
            long index = 0;
            for (std::size_t j = 0; j < groups.size(); ++j) {
                auto c = positions[j][static_cast<std::size_t>(projections[j][x])];
                if (c < 0)
                    throw LoopError(ErrorKind::PreconditionFailed, "projection leaves its component");
                index = index * static_cast<long>(factor_tables[j].order()) + c;
            }
            phi[x] = static_cast<Element>(index);
        }
        std::vector<bool> hit(n, false);
        for (auto v : phi) {
            if (hit[static_cast<std::size_t>(v)])
                throw LoopError(ErrorKind::PreconditionFailed, "component map is not injective");
            hit[static_cast<std::size_t>(v)] = true;
        }
        if (! is_homomorphism(loop.table(), d.external.table(), phi))
            throw LoopError(ErrorKind::PreconditionFailed, "component map is not a homomorphism");
        d.isomorphism = PermutationMap(std::move(phi));

        std::vector<Subloop> parts;
        for (auto & p : d.parts)
            parts.push_back(p.part);
        auto check = is_internal_direct_product(loop, parts);
        if (! check.holds)
            throw LoopError(ErrorKind::PreconditionFailed,
                "internal direct product condition (" + check.failed_condition + ") fails: " + check.detail);
        return d;
    }

    void require_commutative_diassociative(const LoopTable & loop)
    {
        auto c = check_identity(loop, IdentityId::COMM);
        if (! c.holds)
            precondition(loop, "loop is not commutative", c);
        auto d = is_diassociative(loop);
        if (! d.holds)
            precondition(loop, "loop is not diassociative", d);
    }
}

bool is_prime(long p)
{
    if (p < 2)
        return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

std::vector<std::pair<long, int>> factorize(long n)
{
    std::vector<std::pair<long, int>> result;
    for (long p = 2; p * p <= n; ++p) {
        int a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        if (a)
            result.emplace_back(p, a);
    }
    if (n > 1)
        result.emplace_back(n, 1);
    return result;
}

std::pair<long, long> bezout(long m, long n)
{
    // extended Euclid on (m, n)
    long old_r = m, r = n, old_s = 1, s = 0;
    while (r != 0) {
        auto q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1)
        throw LoopError(ErrorKind::PreconditionFailed, "moduli are not coprime");
    long coef_m = old_s % n;
    if (coef_m < 0)
        coef_m += n;
    if (n == 1)
        coef_m = 0;
    long coef_n = (1 - m * coef_m) / n;
    return {coef_m, coef_n};
}

OrderProfile order_profile(const LoopTable & loop)
{
    require_power_associative(loop);
    return orders_unchecked(loop);
}

ElementSet k_torsion(const LoopTable & loop, long k)
{
    auto profile = order_profile(loop);
    ElementSet result(loop.order());
    for (std::size_t x = 0; x < loop.order(); ++x)
        if (k % profile.orders[x] == 0)
            result.insert(static_cast<Element>(x));
    return result;
}

ElementSet primary_component(const LoopTable & loop, long p)
{
    if (! is_prime(p))
        throw LoopError(ErrorKind::PreconditionFailed, std::to_string(p) + " is not prime");
    auto profile = order_profile(loop);
    ElementSet result(loop.order());
    for (std::size_t x = 0; x < loop.order(); ++x) {
        auto k = profile.orders[x];
        while (k % p == 0)
            k /= p;
        if (k == 1)
            result.insert(static_cast<Element>(x));
    }
    return result;
}

Decomposition primary_decomposition(const LoopTable & loop)
{
    require_commutative_diassociative(loop);
    auto profile = order_profile(loop);
    std::vector<Group> groups;
    for (auto [p, a] : factorize(profile.exponent)) {
        long m = 1;
        for (int i = 0; i < a; ++i)
            m *= p;
        groups.push_back({"p=" + std::to_string(p), m});
    }
    if (groups.empty())
        groups.push_back({"trivial", 1});
    return decompose(loop, groups, profile.exponent);
}

CheckResult central_power_report(const LoopTable & loop, long n)
{
    require_power_associative(loop);
    auto center = element_class(loop, ElementClassId::CENTER);
    for (std::size_t x = 0; x < loop.order(); ++x) {
        auto p = power(loop, static_cast<Element>(x), n);
        if (! center.contains(p))
            return CheckResult{false, Witness{{{"x", static_cast<Element>(x)}}, p, -1, "x^n central"}, 1};
    }
    return CheckResult{};
}

Decomposition rif_decomposition(const LoopTable & loop, bool split_primes)
{
    if (! loop.has_inverses())
        throw LoopError(ErrorKind::PreconditionFailed, "loop has no two-sided inverses");
    auto ip = check_identity(loop, IdentityId::IP);
    if (! ip.holds)
        precondition(loop, "loop is not IP", ip);
    auto crif = check_identity(loop, IdentityId::CRIF);
    if (! crif.holds)
        precondition(loop, "loop does not satisfy crif", crif);

    auto profile = order_profile(loop);
    long two = 1, three = 1, rest = 1;
    std::vector<Group> groups;
    std::vector<Group> rest_groups;
    for (auto [p, a] : factorize(profile.exponent)) {
        long m = 1;
        for (int i = 0; i < a; ++i)
            m *= p;
        if (p == 2)
            two = m;
        else if (p == 3)
            three = m;
        else {
            rest *= m;
            rest_groups.push_back({"abelian p=" + std::to_string(p), m});
        }
    }
    groups.push_back({"C 2-loop", two});
    groups.push_back({"Moufang 3-loop", three});
    if (split_primes)
        groups.insert(groups.end(), rest_groups.begin(), rest_groups.end());
    else
        groups.push_back({"abelian prime-to-6", rest});
    if (split_primes && rest_groups.empty())
        groups.push_back({"abelian prime-to-6", 1});

    auto d = decompose(loop, groups, profile.exponent);

    auto verify = [&](DecompositionPart & part, std::initializer_list<IdentityId> ids) {
        auto sub = part.part.as_loop();
        for (auto id : ids) {
            auto r = check_identity(sub, id);
            if (! r.holds)
                precondition(sub, part.descriptor + " part fails " + std::string(tag(id)), r);
            part.verified.emplace_back(tag(id));
        }
    };
    verify(d.parts[0], {IdentityId::C});
    verify(d.parts[1], {IdentityId::MFG1, IdentityId::MFG2, IdentityId::MFG3, IdentityId::MFG4});
    for (std::size_t i = 2; i < d.parts.size(); ++i) {
        verify(d.parts[i], {IdentityId::ASSOC, IdentityId::COMM});
        for (auto x : d.parts[i].part.members().members())
            if (std::gcd(profile.orders[static_cast<std::size_t>(x)], 6L) != 1)
                throw LoopError(ErrorKind::PreconditionFailed, "element " + loop.label(x) + " of the abelian part has order "
                        + std::to_string(profile.orders[static_cast<std::size_t>(x)]));
        d.parts[i].verified.emplace_back("order prime to 6");
    }
    return d;
}

std::string format_decomposition(const LoopTable & loop, const Decomposition & d)
{
    std::ostringstream out;
    out << "parts: " << d.parts.size() << '\n';
    for (auto & p : d.parts) {
        out << "part: " << p.descriptor << " order=" << p.part.size()
            << " members=" << format_labels(loop.table(), p.part.members());
        if (! p.verified.empty()) {
            out << " verified=";
            for (std::size_t i = 0; i < p.verified.size(); ++i)
                out << (i ? "," : "") << p.verified[i];
        }
        out << '\n';
    }
    for (std::size_t x = 0; x < loop.order(); ++x)
        out << "iso: " << loop.label(static_cast<Element>(x)) << " -> "
            << d.external.label(d.isomorphism(static_cast<Element>(x))) << '\n';
    return out.str();
}

} // namespace loopkit
