#pragma once

#include <loopkit/correspondence.hpp>
#include <loopkit/identities.hpp>
#include <loopkit/search.hpp>
#include <loopkit/table.hpp>

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using loopkit::CayleyTable;
using loopkit::Element;
using loopkit::IdentityId;
using loopkit::LoopTable;

extern const char * const example7_text;

CayleyTable example7();
LoopTable example7_loop();

LoopTable cyclic(std::size_t n);
LoopTable product(std::initializer_list<LoopTable> factors);
LoopTable klein();
/// Z3^k as a loop.
LoopTable elementary_abelian3(int k);

/// Steiner quasigroup of the affine plane of order 3: x y = -x - y over Z3^2.
CayleyTable affine_sts9_quasigroup();
/// Steiner loop of order 10 obtained by adjoining a neutral element to the above.
LoopTable steiner10();
/// Fano plane with points 1..7.
loopkit::TripleSystem fano();
/// Commutative Moufang loop of exponent 3 and order 81 on Z3^4:
/// x y = x + y + (x4 - y4)(x2 y3 - x3 y2) e1.
LoopTable cml81();

/// Table relabeled by a permutation p: (p x)(p y) = p(x y).
CayleyTable relabel(const CayleyTable & t, const std::vector<Element> & p);
std::vector<Element> random_permutation(std::size_t n, std::mt19937 & rng, bool fix_zero);

// Independent brute-force oracles on plain nested vectors.
using Grid = std::vector<std::vector<int>>;
Grid grid(const CayleyTable & t);
std::optional<int> naive_neutral(const Grid & g);
bool naive_latin(const Grid & g);
/// Hand-written check of one identity; identities with inverses fail without two-sided inverses.
bool naive_identity(const Grid & g, IdentityId id);
/// Number of Latin squares of order n whose first row and column are 0..n-1.
std::uint64_t naive_reduced_latin_count(int n);
/// Element orders by repeated left multiplication (0 when the neutral is never reached).
std::vector<int> naive_orders(const Grid & g);
/// Closure of a seed under multiplication and both divisions, plus the neutral.
std::vector<bool> naive_generated(const Grid & g, const std::vector<bool> & seed);
/// Normality via xS = Sx, (xS)y = x(Sy), x(yS) = (xy)S.
bool naive_normal(const Grid & g, const std::vector<bool> & members);

struct NamedLoop {
    std::string name;
    LoopTable loop;
};

/// Every loop of order 1..6 with neutral 0 (unconstrained search).
const std::vector<LoopTable> & small_loops();
/// Flexible IP loops of order 7.
const std::vector<LoopTable> & flex_ip7();
/// Commutative IP loops of order 8 satisfying CRIF.
const std::vector<LoopTable> & crif8();
/// The first 40 nonassociative commutative IP loops of order 10 satisfying CRIF, in search order.
const std::vector<LoopTable> & rif10();
/// Hand-built tables: cyclic groups, products, Steiner loops, the order-81 commutative Moufang loop.
const std::vector<NamedLoop> & constructed();
/// Totally symmetric quasigroups of order 1..7 without a fixed neutral element.
const std::vector<CayleyTable> & ts_quasigroups();

} // namespace fixtures
