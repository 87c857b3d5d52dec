#pragma once

#include <sortsupport/instance.hpp>
#include <sortsupport/intervals.hpp>
#include <sortsupport/solver.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sortsupport {

// Definition-level consistency checks for sort(U,V) (and its P / stable
// variants, via SolveOptions). Each support question is one exact solver call
// with a pin, so these are exponential in the worst case. Only U and V
// variables are checked; P domains are honored but never relaxed or pruned.

enum class ConsistencyLevel { domain, bounds_d, bounds_z };

inline const char* to_string(ConsistencyLevel l)
{
	switch (l) {
	case ConsistencyLevel::domain: return "domain";
	case ConsistencyLevel::bounds_d: return "boundsD";
	case ConsistencyLevel::bounds_z: return "boundsZ";
	}
	return "?";
}

enum class Support { supported, unsupported, unknown };

inline const char* to_string(Support s)
{
	switch (s) {
	case Support::supported: return "supported";
	case Support::unsupported: return "unsupported";
	case Support::unknown: return "unknown";
	}
	return "?";
}

struct BoundCheck
{
	Value value = 0;
	Support status = Support::unknown;
};

struct VariableReport
{
	Side side = Side::U;
	std::size_t index = 0;
	IntegerSet domain;
	// Domain level.
	IntegerSet supported;
	IntegerSet unknown; // solver hit its node limit on these values
	// Bounds levels.
	std::optional<BoundCheck> inf;
	std::optional<BoundCheck> sup;
};

struct ConsistencyReport
{
	ConsistencyLevel level = ConsistencyLevel::domain;
	std::vector<VariableReport> variables; // u_1..u_n then v_1..v_n
	/// Every checked value or bound was proven supported.
	bool consistent = false;
	std::size_t unknown_count = 0;
	/// Domain level: the supported (plus unknown) values of every variable,
	/// u_1..u_n then v_1..v_n. Some may be empty.
	std::vector<IntegerSet> pruned_domains;
	/// Domain level, when no pruned domain is empty.
	std::optional<SortInstance> pruned_instance;
};

/// Is there a support assigning `value` to the variable? Throws InputError if
/// the value is outside its domain. nullopt when the solver hit its limit.
inline std::optional<bool> has_support_with(const SortInstance& inst, Side side, std::size_t index, Value value,
											SolveOptions opts = {})
{
	opts.pins.push_back({side, index, value});
	auto verdict = decide_support(inst, opts);
	if (verdict.outcome == Outcome::limit) {
		return std::nullopt;
	}
	return verdict.yes();
}

inline bool domain_consistent(const SortInstance& inst, Side side, std::size_t index, Value value,
							  const SolveOptions& opts = {})
{
	auto r = has_support_with(inst, side, index, value, opts);
	if (!r) {
		throw InputError("node limit reached while checking support");
	}
	return *r;
}

namespace detail {

inline Support to_support(std::optional<bool> r)
{
	if (!r) {
		return Support::unknown;
	}
	return *r ? Support::supported : Support::unsupported;
}

inline std::vector<VariableReport> blank_reports(const SortInstance& inst)
{
	std::vector<VariableReport> out;
	for (Side side : {Side::U, Side::V}) {
		for (std::size_t i = 0; i < inst.size(); ++i) {
			VariableReport r;
			r.side = side;
			r.index = i;
			r.domain = inst.domain(side, i);
			out.push_back(std::move(r));
		}
	}
	return out;
}

inline ConsistencyReport bounds_report(const SortInstance& checked, const SortInstance& original,
									   ConsistencyLevel level, const SolveOptions& opts)
{
	ConsistencyReport report;
	report.level = level;
	report.variables = blank_reports(original);
	report.consistent = true;
	for (auto& var : report.variables) {
		const IntegerSet& dom = original.domain(var.side, var.index);
		var.inf = BoundCheck{dom.min(), to_support(has_support_with(checked, var.side, var.index, dom.min(), opts))};
		var.sup = (dom.max() == dom.min())
					  ? *var.inf
					  : BoundCheck{dom.max(), to_support(has_support_with(checked, var.side, var.index, dom.max(), opts))};
		for (const auto* b : {&*var.inf, &*var.sup}) {
			if (b->status != Support::supported) {
				report.consistent = false;
			}
			if (b->status == Support::unknown) {
				++report.unknown_count;
			}
		}
	}
	return report;
}

} // namespace detail

/// Domain-consistency closure: keeps exactly the values that occur in some
/// support. Supports are global, so one pass is a fixed point. Each witness
/// found marks all of its values supported, which saves most solver calls.
inline ConsistencyReport prune_domain_consistency(const SortInstance& inst, const SolveOptions& opts = {})
{
	const std::size_t n = inst.size();
	ConsistencyReport report;
	report.level = ConsistencyLevel::domain;
	report.variables = detail::blank_reports(inst);
	std::vector<std::set<Value>> known(2 * n);
	std::vector<std::vector<Value>> unknown(2 * n);
	auto slot = [n](Side side, std::size_t i) { return (side == Side::U ? 0 : n) + i; };
	auto mark = [&](const SupportWitness& w) {
		for (std::size_t j = 0; j < n; ++j) {
			known[slot(Side::V, j)].insert(w.values[j]);
			known[slot(Side::U, w.sigma[j])].insert(w.values[j]);
		}
	};

	for (auto& var : report.variables) {
		auto& seen = known[slot(var.side, var.index)];
		for (const auto& part : var.domain.intervals()) {
			for (Value x = part.lo; x <= part.hi; ++x) {
				if (seen.contains(x)) {
					continue;
				}
				SolveOptions pinned = opts;
				pinned.pins.push_back({var.side, var.index, x});
				auto verdict = decide_support(inst, pinned);
				if (verdict.outcome == Outcome::yes) {
					mark(*verdict.witness);
				} else if (verdict.outcome == Outcome::limit) {
					unknown[slot(var.side, var.index)].push_back(x);
				}
			}
		}
	}

	report.consistent = true;
	bool all_non_empty = true;
	for (auto& var : report.variables) {
		const auto& found = known[slot(var.side, var.index)];
		var.supported = IntegerSet::from_values(std::vector<Value>(found.begin(), found.end())).intersect(var.domain);
		var.unknown = IntegerSet::from_values(unknown[slot(var.side, var.index)]);
		report.unknown_count += var.unknown.size();
		if (var.supported != var.domain) {
			report.consistent = false;
		}
		IntegerSet kept = var.supported.unite(var.unknown);
		all_non_empty = all_non_empty && !kept.empty();
		report.pruned_domains.push_back(std::move(kept));
	}
	if (all_non_empty) {
		std::vector<IntegerSet> u(report.pruned_domains.begin(), report.pruned_domains.begin() + static_cast<long>(n));
		std::vector<IntegerSet> v(report.pruned_domains.begin() + static_cast<long>(n), report.pruned_domains.end());
		report.pruned_instance = SortInstance(std::move(u), std::move(v), inst.p_domains(), inst.stable());
	}
	return report;
}

/// For every variable, whether its minimum and its maximum each belong to a
/// support over the original domains.
inline ConsistencyReport bounds_d_consistent(const SortInstance& inst, const SolveOptions& opts = {})
{
	return detail::bounds_report(inst, inst, ConsistencyLevel::bounds_d, opts);
}

/// As bounds_d_consistent, but the other variables range over the integer
/// hulls [min..max] of their domains. The pinned bound belongs to the
/// original domain, so pinning inside the hulled instance is equivalent.
inline ConsistencyReport bounds_z_consistent(const SortInstance& inst, const SolveOptions& opts = {})
{
	return detail::bounds_report(inst.hulled(), inst, ConsistencyLevel::bounds_z, opts);
}

inline ConsistencyReport check_consistency(const SortInstance& inst, ConsistencyLevel level,
										   const SolveOptions& opts = {})
{
	switch (level) {
	case ConsistencyLevel::domain: return prune_domain_consistency(inst, opts);
	case ConsistencyLevel::bounds_d: return bounds_d_consistent(inst, opts);
	case ConsistencyLevel::bounds_z: return bounds_z_consistent(inst, opts);
	}
	return {};
}

} // namespace sortsupport
