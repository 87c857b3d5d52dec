#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include <sortsupport/nae.hpp>
#include <sortsupport/reduction.hpp>
#include <sortsupport/solver.hpp>

#include <random>

using namespace sortsupport;

namespace {

IntegerSet S(Value lo, Value hi) { return IntegerSet::interval(lo, hi); }
IntegerSet S(Value x) { return IntegerSet::singleton(x); }

std::vector<IntegerSet> random_p(std::mt19937_64& rng, std::size_t n)
{
	std::vector<IntegerSet> p;
	for (std::size_t i = 0; i < n; ++i) {
		p.push_back(oracle::to_integer_set(oracle::random_nonempty_subset(rng, 1, static_cast<Value>(n), 2)));
	}
	return p;
}

void check_verdict(const SortInstance& inst, const Verdict& v, bool expected, const SolveOptions& opts = {})
{
	REQUIRE(v.outcome != Outcome::limit);
	CHECK(v.yes() == expected);
	CHECK(v.witness.has_value() == v.yes());
	if (v.witness) {
		WitnessChecks checks{opts.respect_p.value_or(inst.has_p()), opts.respect_stability.value_or(inst.stable())};
		CHECK(validate_witness(inst, *v.witness, checks).valid());
		for (const auto& pin : opts.pins) {
			if (pin.side == Side::V) {
				CHECK(v.witness->values[pin.index] == pin.value);
			} else {
				CHECK(v.witness->values[v.witness->perm[pin.index]] == pin.value);
			}
		}
	}
}

} // namespace

TEST_CASE("small instances")
{
	const SortInstance yes({S(2), S(1)}, {S(1, 2), S(2)});
	auto v = decide_support(yes);
	check_verdict(yes, v, true);
	CHECK(v.witness->values == std::vector<Value>{1, 2});
	CHECK(v.witness->sigma == std::vector<std::size_t>{1, 0});

	const SortInstance no({S(5), S(5)}, {S(5), S(4)});
	check_verdict(no, decide_support(no), false);
	check_verdict(no, brute_force_support(no), false);

	check_verdict(SortInstance({S(3)}, {S(3)}), brute_force_support(SortInstance({S(3)}, {S(3)})), true);
	check_verdict(SortInstance({S(3)}, {S(4)}), brute_force_support(SortInstance({S(3)}, {S(4)})), false);
}

TEST_CASE("weak chain is not enough")
{
	// The only bijection pairs v_j with u_j and yields Q = [{5},{1,10},{2}].
	const SortInstance inst({S(5), IntegerSet::normalize({{1, 1}, {10, 10}}), S(2)},
							{S(5), IntegerSet::normalize({{1, 1}, {10, 10}}), S(2)});
	const auto q = q_sets(inst, Matching{{0, 1, 2}});
	CHECK(weak_chain_holds(q));
	check_verdict(inst, decide_support(inst), false);
	check_verdict(inst, brute_force_support(inst), false);
}

TEST_CASE("example reduction and the unit clause")
{
	const CnfFormula example{3, {make_clause(-1, 2, 3), make_clause(1, -2, -3)}};
	const auto r = reduce(example);
	check_verdict(r.instance, decide_support(r.instance), true);

	// v_19 is d'_1; its lower bound is m + 1 = 145.
	SolveOptions pinned;
	pinned.pins.push_back({Side::V, 18, 145});
	check_verdict(r.instance, decide_support(r.instance, pinned), true, pinned);

	CnfFormula unit{1, {make_clause(1, 1, 1)}};
	const auto ru = reduce(balance_occurrences(unit));
	check_verdict(ru.instance, decide_support(ru.instance), false);
}

TEST_CASE("decide_support agrees with both oracles on random instances")
{
	std::mt19937_64 rng(77);
	for (int round = 0; round < 400; ++round) {
		const auto inst = oracle::random_instance(rng, 5, 0, 10);
		const bool expected = oracle::has_support(inst, false, false);
		check_verdict(inst, decide_support(inst), expected);
		check_verdict(inst, brute_force_support(inst), expected);

		SolveOptions plain;
		plain.matching_prune = false;
		plain.nogood_cache = false;
		check_verdict(inst, decide_support(inst, plain), expected, plain);
	}
}

TEST_CASE("permutation domains and stability against enumeration")
{
	std::mt19937_64 rng(78);
	for (int round = 0; round < 300; ++round) {
		auto inst = oracle::random_instance(rng, 5, 0, 6);
		inst = inst.with_p(random_p(rng, inst.size()));
		for (bool respect_p : {false, true}) {
			for (bool stable : {false, true}) {
				SolveOptions opts;
				opts.respect_p = respect_p;
				opts.respect_stability = stable;
				const bool expected = oracle::has_support(inst, respect_p, stable);
				check_verdict(inst, decide_support(inst, opts), expected, opts);
				check_verdict(inst, brute_force_support(inst, opts), expected, opts);
			}
		}
	}
}

TEST_CASE("options default to the instance's own P domains and stable flag")
{
	const SortInstance inst({S(1), S(1)}, {S(1), S(1)}, std::vector<IntegerSet>{S(2), S(1)}, true);
	// u_1 must go to position 2 and u_2 to position 1, so equal values come
	// out in reverse U order.
	check_verdict(inst, decide_support(inst), false);
	SolveOptions no_stability;
	no_stability.respect_stability = false;
	check_verdict(inst, decide_support(inst, no_stability), true, no_stability);
	SolveOptions no_p;
	no_p.respect_p = false;
	check_verdict(inst, decide_support(inst, no_p), true, no_p);
}

TEST_CASE("stability needs a larger value when equal ones would be out of order")
{
	// P puts u_2 = 3 first, so u_1 may not repeat 3 after it.
	const SortInstance inst({S(3, 4), S(3)}, {S(3), S(3, 4)}, std::vector<IntegerSet>{S(2), S(1)}, true);
	const auto v = decide_support(inst);
	check_verdict(inst, v, true);
	CHECK(v.witness->values == std::vector<Value>{3, 4});
	const auto loose = decide_support(inst.with_stable(false));
	CHECK(loose.witness->values == std::vector<Value>{3, 3});
}

TEST_CASE("pin coherence")
{
	std::mt19937_64 rng(79);
	for (int round = 0; round < 150; ++round) {
		const auto inst = oracle::random_instance(rng, 4, 0, 6);
		const auto supported = oracle::supported_values(inst, false, false);
		const std::size_t n = inst.size();
		for (Side side : {Side::U, Side::V}) {
			for (std::size_t i = 0; i < n; ++i) {
				for (Value x : oracle::elements(inst.domain(side, i))) {
					SolveOptions opts;
					opts.pins.push_back({side, i, x});
					const bool expected = supported[(side == Side::U ? 0 : n) + i].contains(x);
					check_verdict(inst, decide_support(inst, opts), expected, opts);
				}
			}
		}
	}
}

TEST_CASE("invalid pins")
{
	const SortInstance inst({S(2), S(1)}, {S(1, 2), S(2)});
	SolveOptions outside;
	outside.pins.push_back({Side::V, 1, 1});
	CHECK_THROWS_AS(decide_support(inst, outside), InputError);
	CHECK_THROWS_AS(brute_force_support(inst, outside), InputError);
	SolveOptions out_of_range;
	out_of_range.pins.push_back({Side::U, 2, 1});
	CHECK_THROWS_AS(decide_support(inst, out_of_range), InputError);
}

TEST_CASE("node limit yields LIMIT, never NO")
{
	std::vector<IntegerSet> u, v;
	// Pigeonhole: 9 U variables share 8 values, so the search must fail,
	// and with pruning off it takes many nodes to find out.
	for (int i = 0; i < 9; ++i) {
		u.push_back(S(1, 8));
		v.push_back(S(1, 9));
	}
	u.back() = S(20);
	const SortInstance inst(u, v);
	SolveOptions opts;
	opts.node_limit = 50;
	opts.matching_prune = false;
	opts.nogood_cache = false;
	const auto verdict = decide_support(inst, opts);
	CHECK(verdict.outcome == Outcome::limit);
	CHECK_FALSE(verdict.witness.has_value());
	CHECK(std::string(to_string(verdict.outcome)) == "LIMIT");

	opts.node_limit = std::nullopt;
	opts.matching_prune = true;
	CHECK(decide_support(inst, opts).outcome == Outcome::no);
}

TEST_CASE("brute force guards its size")
{
	std::vector<IntegerSet> d(9, S(1));
	CHECK_THROWS_AS(brute_force_support(SortInstance(d, d)), InputError);
}

TEST_CASE("max_matching")
{
	auto complete = [](std::size_t half) {
		std::vector<IntegerSet> u(half, S(1)), v(half, S(1));
		return build_intersection_graph(SortInstance(u, v));
	};
	for (std::size_t half : {1, 2, 3, 5}) {
		CHECK(max_matching(complete(half)) == half);
	}
	const SortInstance apart({S(1), S(2)}, {S(3), S(4)});
	CHECK(max_matching(build_intersection_graph(apart)) == 0);
	const SortInstance star({S(1), S(10), S(20)}, {S(1), S(1), S(1)});
	CHECK(max_matching(build_intersection_graph(star)) == 1);
	CHECK(max_matching(complete(3), [](std::size_t u, std::size_t) { return u != 1; }) == 2);
}

TEST_CASE("max_matching agrees with exhaustive search")
{
	std::mt19937_64 rng(81);
	for (int round = 0; round < 200; ++round) {
		const auto inst = oracle::random_instance(rng, 6, 0, 12);
		const auto g = build_intersection_graph(inst);
		const std::size_t n = inst.size();
		std::size_t best = 0;
		std::vector<std::size_t> perm(n);
		std::iota(perm.begin(), perm.end(), 0);
		do {
			std::size_t size = 0;
			for (std::size_t j = 0; j < n; ++j) {
				size += g.has_edge(perm[j], j) ? 1 : 0;
			}
			best = std::max(best, size);
		} while (std::next_permutation(perm.begin(), perm.end()));
		CHECK(max_matching(g) == best);
	}
}
