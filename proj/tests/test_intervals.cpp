#include "catch_amalgamated.hpp"
#include "oracles.hpp"

#include <sortsupport/intervals.hpp>

#include <random>

using namespace sortsupport;

namespace {

IntegerSet set_of(std::initializer_list<Interval> parts) { return IntegerSet::normalize(parts); }

std::vector<Interval> parts_of(const IntegerSet& s) { return {s.intervals().begin(), s.intervals().end()}; }

} // namespace

TEST_CASE("normalize merges, sorts and deduplicates")
{
	CHECK(parts_of(set_of({{1, 3}, {4, 6}})) == std::vector<Interval>{{1, 6}});
	CHECK(parts_of(set_of({{5, 6}, {1, 2}})) == std::vector<Interval>{{1, 2}, {5, 6}});
	CHECK(parts_of(set_of({{3, 4}, {3, 4}})) == std::vector<Interval>{{3, 4}});
	CHECK(parts_of(set_of({{1, 10}, {2, 3}, {12, 12}})) == std::vector<Interval>{{1, 10}, {12, 12}});
	CHECK(set_of({}).empty());
	CHECK_THROWS_AS(set_of({{4, 3}}), InputError);
}

TEST_CASE("normalize is idempotent and keeps the canonical invariants")
{
	std::mt19937_64 rng(11);
	for (int round = 0; round < 500; ++round) {
		std::vector<Interval> pairs;
		const int count = static_cast<int>(rng() % 6);
		for (int c = 0; c < count; ++c) {
			Value lo = static_cast<Value>(rng() % 30);
			pairs.push_back({lo, lo + static_cast<Value>(rng() % 5)});
		}
		const IntegerSet s = IntegerSet::normalize(pairs);
		CHECK(IntegerSet::normalize(parts_of(s)) == s);
		for (std::size_t i = 0; i < s.intervals().size(); ++i) {
			CHECK(s.intervals()[i].lo <= s.intervals()[i].hi);
			if (i > 0) {
				CHECK(s.intervals()[i - 1].hi + 1 < s.intervals()[i].lo);
			}
		}
		oracle::ValueSet expected;
		for (const auto& p : pairs) {
			for (Value x = p.lo; x <= p.hi; ++x) {
				expected.insert(x);
			}
		}
		CHECK(oracle::elements(s) == expected);
	}
}

TEST_CASE("intersect")
{
	CHECK(set_of({{3, 6}}).intersect(set_of({{5, 8}, {13, 16}})) == set_of({{5, 6}}));
	CHECK(set_of({{9, 12}}).intersect(set_of({{7, 10}})) == set_of({{9, 10}}));
	CHECK(set_of({{1, 2}}).intersect(set_of({{3, 4}})).empty());
	CHECK_FALSE(set_of({{1, 2}}).intersects(set_of({{3, 4}})));
	CHECK(set_of({{1, 2}}).is_disjoint_from(set_of({{3, 4}})));
}

TEST_CASE("set operations agree with element-wise semantics on [0..30]")
{
	std::mt19937_64 rng(2024);
	for (int round = 0; round < 1000; ++round) {
		const auto a = oracle::random_subset(rng, 0, 30);
		const auto b = oracle::random_subset(rng, 0, 30);
		const IntegerSet sa = oracle::to_integer_set(a);
		const IntegerSet sb = oracle::to_integer_set(b);
		CHECK(oracle::elements(sa) == a);

		oracle::ValueSet inter, uni;
		for (Value x : a) {
			(b.contains(x) ? inter : uni).insert(x);
		}
		uni.insert(b.begin(), b.end());
		uni.insert(inter.begin(), inter.end());
		CHECK(oracle::elements(sa.intersect(sb)) == inter);
		CHECK(oracle::elements(sa.unite(sb)) == uni);
		CHECK(sa.intersects(sb) == !inter.empty());
		CHECK(sa.is_subset_of(sb) == std::includes(b.begin(), b.end(), a.begin(), a.end()));
		CHECK(sa.size() == a.size());

		for (Value x = -1; x <= 32; ++x) {
			CHECK(sa.contains(x) == a.contains(x));
			auto it = a.lower_bound(x);
			auto got = sa.least_geq(x);
			if (it == a.end()) {
				CHECK_FALSE(got.has_value());
			} else {
				REQUIRE(got.has_value());
				CHECK(*got == *it);
			}
		}
		if (!a.empty()) {
			CHECK(sa.min() == *a.begin());
			CHECK(sa.max() == *a.rbegin());
			CHECK(sa.hull() == IntegerSet::interval(*a.begin(), *a.rbegin()));
			oracle::ValueSet shifted;
			for (Value x : a) {
				shifted.insert(x + 7);
			}
			CHECK(oracle::elements(sa.shift(7)) == shifted);
		}
		if (!a.empty() && !b.empty()) {
			CHECK(lex_leq(sa, sb) == oracle::lex_leq(a, b));
		}
	}
}

TEST_CASE("lex_leq")
{
	CHECK(lex_leq(set_of({{5, 6}}), set_of({{9, 10}})));
	CHECK_FALSE(lex_leq(set_of({{9, 10}}), set_of({{5, 6}})));
	CHECK(lex_leq(IntegerSet::singleton(7), IntegerSet::singleton(7)));
	CHECK(lex_leq(IntegerSet::singleton(5), set_of({{1, 1}, {10, 10}})));
	CHECK_THROWS_AS(lex_leq(IntegerSet{}, IntegerSet::singleton(1)), InputError);
	CHECK_THROWS_AS(lex_leq(IntegerSet::singleton(1), IntegerSet{}), InputError);

	// Neither antisymmetric nor transitive.
	const auto a = set_of({{1, 1}, {10, 10}});
	const auto b = IntegerSet::singleton(5);
	CHECK(lex_leq(a, b));
	CHECK(lex_leq(b, a));
	CHECK(a != b);
	const auto c = IntegerSet::singleton(3);
	CHECK(lex_leq(IntegerSet::singleton(5), set_of({{1, 1}, {10, 10}})));
	CHECK(lex_leq(set_of({{1, 1}, {10, 10}}), c));
	CHECK_FALSE(lex_leq(IntegerSet::singleton(5), c));
}

TEST_CASE("lex_leq is reflexive on non-empty sets")
{
	std::mt19937_64 rng(5);
	for (int round = 0; round < 200; ++round) {
		const auto s = oracle::to_integer_set(oracle::random_nonempty_subset(rng, 0, 20));
		CHECK(lex_leq(s, s));
	}
}

TEST_CASE("least_geq")
{
	CHECK(set_of({{1, 2}, {10, 10}}).least_geq(5) == 10);
	CHECK_FALSE(set_of({{1, 2}}).least_geq(5).has_value());
	CHECK(set_of({{3, 8}}).least_geq(3) == 3);
}

TEST_CASE("min and max of the empty set throw")
{
	CHECK_THROWS_AS(IntegerSet{}.min(), InputError);
	CHECK_THROWS_AS(IntegerSet{}.max(), InputError);
}

TEST_CASE("text form")
{
	const auto s = set_of({{3, 6}, {147, 148}, {151, 152}});
	CHECK(to_string(s) == "3..6,147..148,151..152");
	CHECK(parse_integer_set("3..6,147..148,151..152") == s);
	CHECK(parse_integer_set(" 3 .. 6 , 147..148,\t151 ..152 ") == s);
	CHECK(to_string(IntegerSet::singleton(-4)) == "-4");
	CHECK(parse_integer_set("-4") == IntegerSet::singleton(-4));
	CHECK(parse_integer_set("-10..-8,2") == set_of({{-10, -8}, {2, 2}}));
	CHECK(to_string(IntegerSet{}) == "{}");
	CHECK(parse_integer_set("{}").empty());
	CHECK(parse_integer_set("1..3,4..6") == IntegerSet::interval(1, 6));
	CHECK_THROWS_AS(parse_integer_set("5..3"), ParseError);
	CHECK_THROWS_AS(parse_integer_set("1..3,"), ParseError);
	CHECK_THROWS_AS(parse_integer_set("a"), ParseError);
	CHECK_THROWS_AS(parse_integer_set(""), ParseError);

	std::mt19937_64 rng(9);
	for (int round = 0; round < 200; ++round) {
		const auto s = oracle::to_integer_set(oracle::random_subset(rng, -15, 15));
		CHECK(parse_integer_set(to_string(s)) == s);
	}
}
