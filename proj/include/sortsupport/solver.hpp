#pragma once

#include <sortsupport/error.hpp>
#include <sortsupport/instance.hpp>
#include <sortsupport/intervals.hpp>
#include <sortsupport/matching.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace sortsupport {

/// Forces variable `index` on `side` to take `value`.
struct Pin
{
	Side side;
	std::size_t index;
	Value value;

	friend bool operator==(const Pin&, const Pin&) = default;
};

struct SolveOptions
{
	std::vector<Pin> pins;
	/// Honor P domains. Unset: honor them iff the instance has them.
	std::optional<bool> respect_p;
	/// Require stability. Unset: follow the instance's stable flag.
	std::optional<bool> respect_stability;
	std::optional<std::uint64_t> node_limit = 10'000'000;
	/// Perfect-matching feasibility test at every node.
	bool matching_prune = true;
	/// Remember failed (used-set, lower-bound) states.
	bool nogood_cache = true;
};

enum class Outcome { yes, no, limit };

inline const char* to_string(Outcome o)
{
	switch (o) {
	case Outcome::yes: return "YES";
	case Outcome::no: return "NO";
	case Outcome::limit: return "LIMIT";
	}
	return "?";
}

struct SolveStats
{
	std::uint64_t nodes = 0;
	std::uint64_t prunes = 0;
};

struct Verdict
{
	Outcome outcome = Outcome::no;
	std::optional<SupportWitness> witness;
	SolveStats stats;

	bool yes() const { return outcome == Outcome::yes; }
};

namespace detail {

struct EffectiveProblem
{
	SortInstance inst;
	bool respect_p;
	bool respect_stability;
};

inline EffectiveProblem apply_options(const SortInstance& inst, const SolveOptions& opts)
{
	SortInstance pinned = inst;
	for (const auto& pin : opts.pins) {
		if (pin.index >= inst.size()) {
			throw InputError(std::string("pin ") + side_char(pin.side) + std::to_string(pin.index + 1) +
							 " is out of range");
		}
		const IntegerSet& dom = pinned.domain(pin.side, pin.index);
		if (!dom.contains(pin.value)) {
			throw InputError(std::string("pin value ") + std::to_string(pin.value) + " is outside Dom(" +
							 side_char(pin.side) + std::to_string(pin.index + 1) + ")");
		}
		pinned = pinned.with_domain(pin.side, pin.index, IntegerSet::singleton(pin.value));
	}
	return {std::move(pinned), opts.respect_p.value_or(inst.has_p()) && inst.has_p(),
			opts.respect_stability.value_or(inst.stable())};
}

struct BitsetHash
{
	std::size_t operator()(const std::vector<std::uint64_t>& bits) const noexcept
	{
		std::uint64_t h = 0x9e3779b97f4a7c15ULL;
		for (std::uint64_t w : bits) {
			h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		}
		return static_cast<std::size_t>(h);
	}
};

struct LimitReached
{
};

/// Depth-first search over sigma(v_1), ..., sigma(v_n) in V order. For a fixed
/// prefix the smallest feasible value at each position dominates every larger
/// one, so values are chosen greedily and only the matching is branched on.
class SupportSearch
{
public:
	SupportSearch(const SortInstance& inst, bool respect_p, bool respect_stability, const SolveOptions& opts)
		: inst_(inst)
		, n_(inst.size())
		, stability_(respect_stability)
		, opts_(opts)
		, candidates_(n_)
		, sigma_(n_, unmatched)
		, values_(n_, 0)
		, used_(n_, 0)
		, used_bits_((n_ + 63) / 64, 0)
		, matcher_(n_, n_)
		, top_(n_ * n_, std::numeric_limits<Value>::min())
	{
		for (std::size_t j = 0; j < n_; ++j) {
			for (std::size_t i = 0; i < n_; ++i) {
				if (respect_p && !inst.position_allowed(i, j)) {
					continue;
				}
				if (!inst.u(i).intersects(inst.v(j))) {
					continue;
				}
				IntegerSet q = inst.u(i).intersect(inst.v(j));
				const Value top = q.max();
				top_[j * n_ + i] = top;
				candidates_[j].push_back({i, std::move(q), top});
			}
		}
	}

	Verdict run()
	{
		Verdict verdict;
		try {
			bool found = feasible_after(0, std::numeric_limits<Value>::min()) &&
						 dfs(0, std::numeric_limits<Value>::min(), no_run);
			if (found) {
				verdict.outcome = Outcome::yes;
				verdict.witness = SupportWitness::from_sigma(sigma_, values_);
			} else {
				verdict.outcome = Outcome::no;
			}
		} catch (const LimitReached&) {
			verdict.outcome = Outcome::limit;
		}
		verdict.stats = stats_;
		return verdict;
	}

private:
	static constexpr std::size_t no_run = unmatched;

	struct Candidate
	{
		std::size_t u;
		IntegerSet q;
		Value top;
	};

	struct Failure
	{
		Value floor;
		std::size_t run;
	};

	// Larger run index is more restrictive: the next equal value needs a
	// U index above it. no_run is the least restrictive.
	static bool run_at_least(std::size_t run, std::size_t failed_run)
	{
		if (failed_run == no_run) {
			return true;
		}
		return run != no_run && run >= failed_run;
	}

	bool dominated(Value floor, std::size_t run) const
	{
		auto it = nogoods_.find(used_bits_);
		if (it == nogoods_.end()) {
			return false;
		}
		for (const auto& f : it->second) {
			if (floor > f.floor || (floor == f.floor && (!stability_ || run_at_least(run, f.run)))) {
				return true;
			}
		}
		return false;
	}

	void record_failure(Value floor, std::size_t run)
	{
		if (nogoods_.size() > max_nogoods) {
			nogoods_.clear();
		}
		nogoods_[used_bits_].push_back({floor, run});
	}

	void set_used(std::size_t u, bool on)
	{
		used_[u] = on ? 1 : 0;
		if (on) {
			used_bits_[u / 64] |= (std::uint64_t{1} << (u % 64));
		} else {
			used_bits_[u / 64] &= ~(std::uint64_t{1} << (u % 64));
		}
	}

	// Can positions `from`..n-1 still be matched to unused U variables using
	// only edges whose intersection reaches `floor`?
	bool feasible_after(std::size_t from, Value floor)
	{
		if (!opts_.matching_prune || from >= n_) {
			return true;
		}
		auto neighbors = [&](std::size_t j, auto&& visit) {
			for (const auto& c : candidates_[j]) {
				if (!used_[c.u] && c.top >= floor) {
					visit(c.u);
				}
			}
		};
		auto has_edge = [&](std::size_t j, std::size_t u) { return !used_[u] && top_[j * n_ + u] >= floor; };
		return matcher_.resolve(neighbors, has_edge, [from](std::size_t j) { return j >= from; }, true) == n_ - from;
	}

	bool dfs(std::size_t j, Value floor, std::size_t run)
	{
		if (j == n_) {
			return true;
		}
		if (++stats_.nodes > opts_.node_limit.value_or(std::numeric_limits<std::uint64_t>::max())) {
			throw LimitReached{};
		}
		if (opts_.nogood_cache && dominated(floor, run)) {
			++stats_.prunes;
			return false;
		}
		for (const auto& c : candidates_[j]) {
			if (used_[c.u]) {
				continue;
			}
			auto value = c.q.least_geq(floor);
			if (stability_ && value && *value == floor && run != no_run && c.u < run) {
				value = (floor == std::numeric_limits<Value>::max()) ? std::nullopt : c.q.least_geq(floor + 1);
			}
			if (!value) {
				continue;
			}
			const std::size_t next_run = (*value == floor && run != no_run) ? std::max(run, c.u) : c.u;
			sigma_[j] = c.u;
			values_[j] = *value;
			set_used(c.u, true);
			if (!feasible_after(j + 1, *value)) {
				++stats_.prunes;
			} else if (dfs(j + 1, *value, next_run)) {
				return true;
			}
			set_used(c.u, false);
			sigma_[j] = unmatched;
		}
		if (opts_.nogood_cache) {
			record_failure(floor, run);
		}
		return false;
	}

	static constexpr std::size_t max_nogoods = 1'000'000;

	const SortInstance& inst_;
	std::size_t n_;
	bool stability_;
	const SolveOptions& opts_;
	std::vector<std::vector<Candidate>> candidates_;
	std::vector<std::size_t> sigma_;
	std::vector<Value> values_;
	std::vector<char> used_;
	std::vector<std::uint64_t> used_bits_;
	std::unordered_map<std::vector<std::uint64_t>, std::vector<Failure>, BitsetHash> nogoods_;
	BipartiteMatcher matcher_;
	std::vector<Value> top_; // max of Dom(u) & Dom(v_j) at [j * n + u]; minimum when disjoint
	SolveStats stats_;
};

} // namespace detail

/// Decides whether the instance has a support: a bijection sigma: V -> U and
/// nondecreasing values with values[j] in Dom(v_j) and Dom(sigma(v_j)),
/// honoring pins, P domains and stability as configured. Throws InputError
/// for a pin outside its variable's domain.
inline Verdict decide_support(const SortInstance& inst, const SolveOptions& opts = {})
{
	auto problem = detail::apply_options(inst, opts);
	detail::SupportSearch search(problem.inst, problem.respect_p, problem.respect_stability, opts);
	return search.run();
}

inline constexpr std::size_t brute_force_max_n = 8;

/// Exhaustive oracle: tries all n! bijections in lexicographic order. For
/// each, values come from `representatives`, or, when stability is required,
/// from a direct enumeration of value tuples.
inline Verdict brute_force_support(const SortInstance& inst, const SolveOptions& opts = {})
{
	if (inst.size() > brute_force_max_n) {
		throw InputError("brute_force_support is limited to n <= " + std::to_string(brute_force_max_n));
	}
	auto problem = detail::apply_options(inst, opts);
	const SortInstance& pi = problem.inst;
	const std::size_t n = pi.size();

	std::vector<std::size_t> sigma(n);
	std::iota(sigma.begin(), sigma.end(), 0);
	Verdict verdict;
	do {
		++verdict.stats.nodes;
		bool ok = true;
		for (std::size_t j = 0; j < n && ok; ++j) {
			ok = !problem.respect_p || pi.position_allowed(sigma[j], j);
		}
		if (!ok) {
			continue;
		}
		std::vector<IntegerSet> q = q_sets(pi, Matching{sigma});
		std::optional<std::vector<Value>> values;
		if (!problem.respect_stability) {
			values = representatives(q);
		} else {
			std::vector<Value> chosen(n);
			// Plain enumeration of each Q_j in ascending order.
			auto enumerate = [&](auto&& self, std::size_t j) -> bool {
				if (j == n) {
					return true;
				}
				for (const auto& part : q[j].intervals()) {
					for (Value x = part.lo; x <= part.hi; ++x) {
						if (j > 0 && x < chosen[j - 1]) {
							continue;
						}
						if (j > 0 && x == chosen[j - 1] && sigma[j - 1] > sigma[j]) {
							continue;
						}
						chosen[j] = x;
						if (self(self, j + 1)) {
							return true;
						}
					}
				}
				return false;
			};
			if (enumerate(enumerate, 0)) {
				values = chosen;
			}
		}
		if (values) {
			verdict.outcome = Outcome::yes;
			verdict.witness = SupportWitness::from_sigma(sigma, std::move(*values));
			return verdict;
		}
	} while (std::next_permutation(sigma.begin(), sigma.end()));
	verdict.outcome = Outcome::no;
	return verdict;
}

/// Size of a maximum matching of `graph` restricted to edges (u, v) for which
/// `allowed(u, v)` holds.
template<typename Allowed>
std::size_t max_matching(const IntersectionGraph& graph, Allowed&& allowed)
{
	BipartiteMatcher matcher(graph.n, graph.n);
	return matcher.solve([&](std::size_t v, auto&& visit) {
		for (std::size_t u : graph.by_v[v]) {
			if (allowed(u, v)) {
				visit(u);
			}
		}
	});
}

inline std::size_t max_matching(const IntersectionGraph& graph)
{
	return max_matching(graph, [](std::size_t, std::size_t) { return true; });
}

} // namespace sortsupport
