#pragma once

#include <sortsupport/error.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sortsupport {

using Value = std::int64_t;

struct Interval
{
	Value lo;
	Value hi;

	friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite set of integers stored as sorted, disjoint, non-adjacent closed
/// intervals. The representation is canonical, so two sets are equal iff
/// their interval sequences are equal.
class IntegerSet
{
public:
	IntegerSet() = default;

	/// Canonical set covering the union of `pairs`. Throws InputError on a
	/// pair with lo > hi.
	static IntegerSet normalize(std::span<const Interval> pairs)
	{
		std::vector<Interval> sorted(pairs.begin(), pairs.end());
		for (const auto& p : sorted) {
			if (p.lo > p.hi) {
				throw InputError("interval [" + std::to_string(p.lo) + ".." + std::to_string(p.hi) +
								 "] has lo > hi");
			}
		}
		std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) {
			return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
		});
		IntegerSet out;
		for (const auto& p : sorted) {
			// hi + 1 would overflow at the top of the range; compare as lo - 1 instead.
			if (!out.parts_.empty() && p.lo - 1 <= out.parts_.back().hi) {
				out.parts_.back().hi = std::max(out.parts_.back().hi, p.hi);
			} else {
				out.parts_.push_back(p);
			}
		}
		return out;
	}

	static IntegerSet normalize(std::initializer_list<Interval> pairs)
	{
		return normalize(std::span<const Interval>(pairs.begin(), pairs.size()));
	}

	static IntegerSet interval(Value lo, Value hi) { return normalize({Interval{lo, hi}}); }

	static IntegerSet singleton(Value v) { return IntegerSet(std::vector<Interval>{{v, v}}); }

	static IntegerSet from_values(std::span<const Value> values)
	{
		std::vector<Interval> pairs;
		pairs.reserve(values.size());
		for (Value v : values) {
			pairs.push_back({v, v});
		}
		return normalize(pairs);
	}

	std::span<const Interval> intervals() const { return parts_; }
	bool empty() const { return parts_.empty(); }

	Value min() const
	{
		require_non_empty("min");
		return parts_.front().lo;
	}

	Value max() const
	{
		require_non_empty("max");
		return parts_.back().hi;
	}

	/// Number of integers in the set.
	std::uint64_t size() const
	{
		std::uint64_t total = 0;
		for (const auto& p : parts_) {
			total += static_cast<std::uint64_t>(p.hi - p.lo) + 1;
		}
		return total;
	}

	bool contains(Value v) const
	{
		auto it = std::upper_bound(parts_.begin(), parts_.end(), v,
								   [](Value x, const Interval& p) { return x < p.lo; });
		return it != parts_.begin() && std::prev(it)->hi >= v;
	}

	/// Smallest element >= x, if any.
	std::optional<Value> least_geq(Value x) const
	{
		auto it = std::lower_bound(parts_.begin(), parts_.end(), x,
								   [](const Interval& p, Value y) { return p.hi < y; });
		if (it == parts_.end()) {
			return std::nullopt;
		}
		return std::max(it->lo, x);
	}

	IntegerSet intersect(const IntegerSet& other) const
	{
		IntegerSet out;
		auto a = parts_.begin();
		auto b = other.parts_.begin();
		while (a != parts_.end() && b != other.parts_.end()) {
			Value lo = std::max(a->lo, b->lo);
			Value hi = std::min(a->hi, b->hi);
			if (lo <= hi) {
				out.parts_.push_back({lo, hi});
			}
			if (a->hi < b->hi) {
				++a;
			} else {
				++b;
			}
		}
		return out;
	}

	bool intersects(const IntegerSet& other) const
	{
		auto a = parts_.begin();
		auto b = other.parts_.begin();
		while (a != parts_.end() && b != other.parts_.end()) {
			if (std::max(a->lo, b->lo) <= std::min(a->hi, b->hi)) {
				return true;
			}
			if (a->hi < b->hi) {
				++a;
			} else {
				++b;
			}
		}
		return false;
	}

	bool is_disjoint_from(const IntegerSet& other) const { return !intersects(other); }

	IntegerSet unite(const IntegerSet& other) const
	{
		std::vector<Interval> all(parts_.begin(), parts_.end());
		all.insert(all.end(), other.parts_.begin(), other.parts_.end());
		return normalize(all);
	}

	IntegerSet shift(Value offset) const
	{
		IntegerSet out = *this;
		for (auto& p : out.parts_) {
			p.lo += offset;
			p.hi += offset;
		}
		return out;
	}

	/// [min..max], or empty.
	IntegerSet hull() const
	{
		if (empty()) {
			return {};
		}
		return interval(min(), max());
	}

	bool is_subset_of(const IntegerSet& other) const { return intersect(other) == *this; }

	friend bool operator==(const IntegerSet&, const IntegerSet&) = default;

private:
	explicit IntegerSet(std::vector<Interval> parts)
		: parts_(std::move(parts))
	{
	}

	void require_non_empty(const char* op) const
	{
		if (parts_.empty()) {
			throw InputError(std::string(op) + " of an empty set");
		}
	}

	std::vector<Interval> parts_;
};

/// D <=lex E: some d in D and e in E with d <= e. Not an order on sets; it is
/// reflexive on non-empty sets and neither antisymmetric nor transitive.
inline bool lex_leq(const IntegerSet& d, const IntegerSet& e)
{
	if (d.empty() || e.empty()) {
		throw InputError("lex_leq is only defined on non-empty sets");
	}
	return d.min() <= e.max();
}

/// Renders as `a..b` / `a` items separated by commas; the empty set is `{}`.
inline std::string to_string(const IntegerSet& s)
{
	if (s.empty()) {
		return "{}";
	}
	std::string out;
	for (const auto& p : s.intervals()) {
		if (!out.empty()) {
			out += ',';
		}
		out += std::to_string(p.lo);
		if (p.hi != p.lo) {
			out += "..";
			out += std::to_string(p.hi);
		}
	}
	return out;
}

namespace detail {

inline void skip_space(std::string_view text, std::size_t& pos)
{
	while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
		++pos;
	}
}

inline Value parse_value(std::string_view text, std::size_t& pos)
{
	Value v = 0;
	auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
	if (ec != std::errc()) {
		throw ParseError("expected an integer at offset " + std::to_string(pos) + " in '" +
						 std::string(text) + "'");
	}
	pos = static_cast<std::size_t>(end - text.data());
	return v;
}

} // namespace detail

/// Inverse of to_string. Whitespace is allowed around items and separators.
inline IntegerSet parse_integer_set(std::string_view text)
{
	std::size_t pos = 0;
	detail::skip_space(text, pos);
	if (text.substr(pos).starts_with("{}")) {
		pos += 2;
		detail::skip_space(text, pos);
		if (pos != text.size()) {
			throw ParseError("trailing characters after '{}' in '" + std::string(text) + "'");
		}
		return {};
	}
	std::vector<Interval> pairs;
	while (true) {
		detail::skip_space(text, pos);
		Value lo = detail::parse_value(text, pos);
		Value hi = lo;
		detail::skip_space(text, pos);
		if (text.substr(pos).starts_with("..")) {
			pos += 2;
			detail::skip_space(text, pos);
			hi = detail::parse_value(text, pos);
			detail::skip_space(text, pos);
		}
		if (lo > hi) {
			throw ParseError("interval " + std::to_string(lo) + ".." + std::to_string(hi) + " is reversed");
		}
		pairs.push_back({lo, hi});
		if (pos == text.size()) {
			break;
		}
		if (text[pos] != ',') {
			throw ParseError("expected ',' at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
		}
		++pos;
	}
	return IntegerSet::normalize(pairs);
}

} // namespace sortsupport
