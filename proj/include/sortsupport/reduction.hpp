#pragma once

#include <sortsupport/error.hpp>
#include <sortsupport/instance.hpp>
#include <sortsupport/intervals.hpp>
#include <sortsupport/nae.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sortsupport {

// NAE-3SAT -> SortSupport. Every literal occurrence (clause i, slot s) gets a
// six-vertex unit graph a,b,c in U and a',b',c' in V laid out in its own
// block of t = 24 integers. The unit graphs of one variable form a circular
// consistency component; the three unit graphs of a clause, plus d_i, e_i in
// U and d'_i, e'_i in V, form its truth component; the (e_i, e'_s), i != s,
// edges form the completion component.
//
// Index layout (0-based), with k clauses and h the block of a unit graph:
//   U: a = 3h, b = 3h+1, c = 3h+2, d_i = 9k+i, e_i = 10k+i
//   V: a'= 3h, b'= 3h+1, c'= 3h+2, d'_i= 9k+i, e'_i= 10k+i
// The V indices realize the required V order: components CC_1..CC_p in
// variable order, then d'_1..d'_k, then e'_1..e'_k.

enum class Variant { overlapping, disjoint };

inline const char* to_string(Variant v) { return v == Variant::overlapping ? "overlapping" : "disjoint"; }

enum class Polarity { positive, negative };

enum class EdgeKind { up, down, up_linking, down_linking, lateral, completion };

inline const char* to_string(EdgeKind k)
{
	switch (k) {
	case EdgeKind::up: return "up";
	case EdgeKind::down: return "down";
	case EdgeKind::up_linking: return "up-linking";
	case EdgeKind::down_linking: return "down-linking";
	case EdgeKind::lateral: return "lateral";
	case EdgeKind::completion: return "completion";
	}
	return "?";
}

enum class GadgetKind { a, b, c, a_prime, b_prime, c_prime, d, d_prime, e, e_prime };

struct GadgetLabel
{
	GadgetKind kind;
	std::size_t clause = 0; // 1-based
	int slot = 0;			// 1..3 for unit-graph vertices, 0 for d/e
	int variable = 0;		// 0 for d/e
	std::optional<std::size_t> block;

	friend bool operator==(const GadgetLabel&, const GadgetLabel&) = default;
};

inline std::string label_name(const GadgetLabel& l)
{
	static constexpr const char* letters[] = {"a", "b", "c", "a'", "b'", "c'", "d", "d'", "e", "e'"};
	std::string name = letters[static_cast<int>(l.kind)];
	if (l.block) {
		return name + "(x" + std::to_string(l.variable) + ",H" + std::to_string(l.clause) + "." +
			   std::to_string(l.slot) + ")";
	}
	return name + "(H" + std::to_string(l.clause) + ")";
}

struct UnitGraph
{
	std::size_t block = 0;	// h
	std::size_t clause = 0; // 1-based
	int slot = 0;			// 1..3
	int variable = 0;
	Polarity polarity = Polarity::positive;
	std::size_t cc_position = 0; // 1-based position r in its component
	std::size_t a = 0, b = 0, c = 0;
	std::size_t a_prime = 0, b_prime = 0, c_prime = 0;

	bool positive() const { return polarity == Polarity::positive; }

	/// The U endpoint of its d'_i/e'_i lateral edges (a if positive, c if negative).
	std::size_t lateral_u() const { return positive() ? a : c; }
	/// The V endpoint of its d_i/e_i lateral edges (a' if positive, c' if negative).
	std::size_t lateral_v() const { return positive() ? a_prime : c_prime; }

	friend bool operator==(const UnitGraph&, const UnitGraph&) = default;
};

struct TraceEdge
{
	std::size_t u = 0;
	std::size_t v = 0;
	EdgeKind kind = EdgeKind::up;

	friend bool operator==(const TraceEdge&, const TraceEdge&) = default;
};

/// One segment of the overlapping layout that several U domains shared, and
/// where each of those U domains lives after the disjoint transform.
struct SegmentSplit
{
	Interval original;
	Interval widened;
	std::vector<std::pair<std::size_t, Interval>> parts; // U index -> sub-segment

	friend bool operator==(const SegmentSplit&, const SegmentSplit&) = default;
};

struct ReductionTrace
{
	Variant variant = Variant::overlapping;
	Value t = 24;
	Value k = 0;
	Value m = 0;
	Value q = 0;
	std::size_t n = 0;
	CnfFormula formula; // the balanced input
	std::vector<UnitGraph> units; // ordered by block
	std::vector<std::size_t> d, e, d_prime, e_prime; // indexed by clause - 1
	std::vector<GadgetLabel> u_labels, v_labels;
	std::vector<TraceEdge> edges;	  // intended edge list, sorted by (u, v)
	std::vector<SegmentSplit> splits; // disjoint variant only

	/// Unit graph for (clause, slot), both 1-based.
	const UnitGraph& unit_for(std::size_t clause, int slot) const
	{
		for (const auto& u : units) {
			if (u.clause == clause && u.slot == slot) {
				return u;
			}
		}
		throw InputError("no unit graph for clause " + std::to_string(clause) + " slot " + std::to_string(slot));
	}

	/// Units of variable j in component order.
	std::vector<const UnitGraph*> component(int variable) const
	{
		std::vector<const UnitGraph*> out;
		for (const auto& u : units) {
			if (u.variable == variable) {
				out.push_back(&u);
			}
		}
		std::sort(out.begin(), out.end(),
				  [](const UnitGraph* x, const UnitGraph* y) { return x->cc_position < y->cc_position; });
		return out;
	}

	friend bool operator==(const ReductionTrace&, const ReductionTrace&) = default;
};

struct ReductionResult
{
	SortInstance instance;
	ReductionTrace trace;
};

/// Edges the construction is meant to induce, derived from the unit-graph
/// table alone (no interval arithmetic). Sorted by (u, v).
inline std::vector<TraceEdge> intended_edges(const ReductionTrace& trace)
{
	std::vector<TraceEdge> out;
	for (const auto& g : trace.units) {
		out.push_back({g.a, g.b_prime, EdgeKind::up});
		out.push_back({g.b, g.c_prime, EdgeKind::up});
		out.push_back({g.b, g.a_prime, EdgeKind::down});
		out.push_back({g.c, g.b_prime, EdgeKind::down});
		const std::size_t ci = g.clause - 1;
		out.push_back({trace.d[ci], g.lateral_v(), EdgeKind::lateral});
		out.push_back({trace.e[ci], g.lateral_v(), EdgeKind::lateral});
		out.push_back({g.lateral_u(), trace.d_prime[ci], EdgeKind::lateral});
		out.push_back({g.lateral_u(), trace.e_prime[ci], EdgeKind::lateral});
	}
	for (int j = 1; j <= trace.formula.num_vars; ++j) {
		auto cc = trace.component(j);
		for (std::size_t r = 0; r < cc.size(); ++r) {
			const UnitGraph& cur = *cc[r];
			const UnitGraph& next = *cc[(r + 1) % cc.size()];
			if (cur.positive()) {
				out.push_back({cur.c, next.a_prime, EdgeKind::down_linking});
			} else {
				out.push_back({cur.a, next.c_prime, EdgeKind::up_linking});
			}
		}
	}
	for (std::size_t i = 0; i < trace.e.size(); ++i) {
		for (std::size_t s = 0; s < trace.e_prime.size(); ++s) {
			if (i != s) {
				out.push_back({trace.e[i], trace.e_prime[s], EdgeKind::completion});
			}
		}
	}
	std::sort(out.begin(), out.end(), [](const TraceEdge& x, const TraceEdge& y) {
		return std::pair(x.u, x.v) < std::pair(y.u, y.v);
	});
	return out;
}

namespace detail {

struct BlockDomains
{
	IntegerSet a, b, c, a_prime, b_prime, c_prime;
	IntegerSet y, z; // secondary domains of a' and c', reused by d_i and e_i
};

inline BlockDomains unit_domains(const UnitGraph& g, bool last_in_component, Value occ, const IntegerSet& d_prime_dom,
								 const IntegerSet& e_prime_dom, Value t)
{
	const Value h = static_cast<Value>(g.block);
	const Value base = h * t;
	auto iv = [](Value lo, Value hi) { return IntegerSet::interval(lo, hi); };
	const IntegerSet lateral = d_prime_dom.unite(e_prime_dom);

	IntegerSet x, tt, y, z;
	if (g.positive()) {
		x = lateral;
		y = iv(base + 1, base + 2);
		z = iv(base + 21, base + 22);
	} else {
		// The last negative graph of a component wraps to the first block.
		const Value target = last_in_component ? h + 1 - occ : h + 1;
		x = iv(target * t + 21, target * t + 22);
		tt = lateral;
		y = iv(base - 7, base - 4);
		z = iv(base + 23, base + 24);
	}
	BlockDomains out;
	out.a = iv(base + 3, base + 6).unite(x);
	out.b = iv(base + 9, base + 12);
	out.c = iv(base + 15, base + 18).unite(tt);
	out.a_prime = iv(base + 7, base + 10).unite(y);
	out.b_prime = IntegerSet::normalize({Interval{base + 5, base + 8}, Interval{base + 13, base + 16}});
	out.c_prime = iv(base + 11, base + 14).unite(z);
	out.y = y;
	out.z = z;
	return out;
}

} // namespace detail

/// Fills u_labels / v_labels from the unit-graph table and the per-clause
/// d, e, d', e' indices.
inline void assign_labels(ReductionTrace& trace)
{
	const std::size_t n = trace.n;
	const std::size_t k = trace.d.size();
	trace.u_labels.resize(n);
	trace.v_labels.resize(n);
	for (const auto& g : trace.units) {
		auto label = [&](GadgetKind kind) { return GadgetLabel{kind, g.clause, g.slot, g.variable, g.block}; };
		trace.u_labels[g.a] = label(GadgetKind::a);
		trace.u_labels[g.b] = label(GadgetKind::b);
		trace.u_labels[g.c] = label(GadgetKind::c);
		trace.v_labels[g.a_prime] = label(GadgetKind::a_prime);
		trace.v_labels[g.b_prime] = label(GadgetKind::b_prime);
		trace.v_labels[g.c_prime] = label(GadgetKind::c_prime);
	}
	for (std::size_t i = 0; i < k; ++i) {
		trace.u_labels[trace.d[i]] = GadgetLabel{GadgetKind::d, i + 1, 0, 0, std::nullopt};
		trace.u_labels[trace.e[i]] = GadgetLabel{GadgetKind::e, i + 1, 0, 0, std::nullopt};
		trace.v_labels[trace.d_prime[i]] = GadgetLabel{GadgetKind::d_prime, i + 1, 0, 0, std::nullopt};
		trace.v_labels[trace.e_prime[i]] = GadgetLabel{GadgetKind::e_prime, i + 1, 0, 0, std::nullopt};
	}
}

inline constexpr Value block_width = 24;

inline ReductionResult disjointify(const SortInstance& inst, const ReductionTrace& trace);

/// Builds the SortSupport instance for a balanced formula in which every
/// variable occurs. Throws InputError otherwise. The disjoint variant is the
/// overlapping construction followed by `disjointify`.
inline ReductionResult reduce(const CnfFormula& f, Variant variant = Variant::overlapping)
{
	if (f.clauses.empty()) {
		throw InputError("the formula has no clauses");
	}
	const auto occ = count_occurrences(f);
	for (int j = 1; j <= f.num_vars; ++j) {
		const auto& o = occ[static_cast<std::size_t>(j - 1)];
		if (o.total() == 0) {
			throw InputError("variable x" + std::to_string(j) + " does not occur");
		}
		if (o.positive != o.negative) {
			throw InputError("variable x" + std::to_string(j) + " is unbalanced (" + std::to_string(o.positive) +
							 " positive, " + std::to_string(o.negative) + " negative occurrences)");
		}
	}

	ReductionTrace trace;
	trace.variant = Variant::overlapping;
	trace.formula = f;
	trace.t = block_width;
	trace.k = static_cast<Value>(f.clauses.size());
	trace.m = 3 * trace.k * trace.t;
	trace.q = trace.m + 2 * trace.k;
	const std::size_t k = f.clauses.size();
	trace.n = 11 * k;
	const std::size_t n = trace.n;

	// Alternating component order: i-th positive occurrence, then i-th
	// negative occurrence, both in (clause, slot) order.
	std::size_t block = 0;
	for (int j = 1; j <= f.num_vars; ++j) {
		std::vector<std::pair<std::size_t, int>> pos, neg;
		for (std::size_t i = 0; i < k; ++i) {
			for (int s = 0; s < 3; ++s) {
				const Literal& l = f.clauses[i].literals[static_cast<std::size_t>(s)];
				if (l.variable() == j) {
					(l.positive() ? pos : neg).emplace_back(i + 1, s + 1);
				}
			}
		}
		for (std::size_t r = 0; r < pos.size() + neg.size(); ++r) {
			const auto& [clause, slot] = (r % 2 == 0) ? pos[r / 2] : neg[r / 2];
			UnitGraph g;
			g.block = block;
			g.clause = clause;
			g.slot = slot;
			g.variable = j;
			g.polarity = (r % 2 == 0) ? Polarity::positive : Polarity::negative;
			g.cc_position = r + 1;
			g.a = g.a_prime = 3 * block;
			g.b = g.b_prime = 3 * block + 1;
			g.c = g.c_prime = 3 * block + 2;
			trace.units.push_back(g);
			++block;
		}
	}
	for (std::size_t i = 0; i < k; ++i) {
		trace.d.push_back(9 * k + i);
		trace.e.push_back(10 * k + i);
		trace.d_prime.push_back(9 * k + i);
		trace.e_prime.push_back(10 * k + i);
	}

	assign_labels(trace);

	std::vector<IntegerSet> u(n), v(n);
	std::vector<IntegerSet> d_dom(k);
	for (std::size_t i = 0; i < k; ++i) {
		const Value ii = static_cast<Value>(i + 1);
		v[trace.d_prime[i]] = IntegerSet::interval(trace.m + 2 * ii - 1, trace.m + 2 * ii);
		v[trace.e_prime[i]] = IntegerSet::interval(trace.q + 2 * ii - 1, trace.q + 2 * ii);
	}
	for (const auto& g : trace.units) {
		const std::size_t ci = g.clause - 1;
		const Value occ_j = occ[static_cast<std::size_t>(g.variable - 1)].total();
		const bool last = static_cast<Value>(g.cc_position) == occ_j;
		auto doms = detail::unit_domains(g, last, occ_j, v[trace.d_prime[ci]], v[trace.e_prime[ci]], trace.t);
		u[g.a] = doms.a;
		u[g.b] = doms.b;
		u[g.c] = doms.c;
		v[g.a_prime] = doms.a_prime;
		v[g.b_prime] = doms.b_prime;
		v[g.c_prime] = doms.c_prime;
		d_dom[ci] = d_dom[ci].unite(g.positive() ? doms.y : doms.z);
	}
	for (std::size_t i = 0; i < k; ++i) {
		u[trace.d[i]] = d_dom[i];
		IntegerSet e = d_dom[i];
		for (std::size_t s = 0; s < k; ++s) {
			if (s != i) {
				e = e.unite(v[trace.e_prime[s]]);
			}
		}
		u[trace.e[i]] = e;
	}

	trace.edges = intended_edges(trace);
	ReductionResult result{SortInstance(std::move(u), std::move(v)), std::move(trace)};
	if (variant == Variant::disjoint) {
		return disjointify(result.instance, result.trace);
	}
	return result;
}

struct StructureReport
{
	std::vector<TraceEdge> missing;						// intended but not built
	std::vector<std::pair<std::size_t, std::size_t>> extra; // built but not intended
	std::vector<std::string> problems;					// count / size mismatches
	std::size_t built_edges = 0;

	bool ok() const { return missing.empty() && extra.empty() && problems.empty(); }
};

/// Compares the intersection graph of `inst` with the intended edge list
/// recomputed from the trace's unit-graph table.
inline StructureReport verify_structure(const SortInstance& inst, const ReductionTrace& trace)
{
	StructureReport report;
	const std::size_t k = trace.formula.clauses.size();
	if (inst.size() != trace.n || trace.n != 11 * k) {
		report.problems.push_back("n = " + std::to_string(inst.size()) + " but 11k = " + std::to_string(11 * k));
		return report;
	}
	const auto intended = intended_edges(trace);
	if (intended != trace.edges) {
		report.problems.push_back("stored edge list differs from the one derived from the unit-graph table");
	}
	if (intended.size() != k * k + 26 * k) {
		report.problems.push_back("intended edge count " + std::to_string(intended.size()) + " != k^2 + 26k = " +
								  std::to_string(k * k + 26 * k));
	}
	const auto built = build_intersection_graph(inst).edges();
	report.built_edges = built.size();
	std::size_t a = 0;
	std::size_t b = 0;
	while (a < intended.size() || b < built.size()) {
		if (b == built.size() ||
			(a < intended.size() && std::pair(intended[a].u, intended[a].v) < built[b])) {
			report.missing.push_back(intended[a++]);
		} else if (a == intended.size() || built[b] < std::pair(intended[a].u, intended[a].v)) {
			report.extra.push_back(built[b++]);
		} else {
			++a;
			++b;
		}
	}
	return report;
}

// ---------------------------------------------------------------------------
// Matching structure inside consistency components
// ---------------------------------------------------------------------------

enum class UnitOrientation { up, down, mixed };

struct MatchingStructure
{
	std::vector<UnitOrientation> units; // parallel to trace.units
	std::vector<std::string> violations;

	bool ok() const { return violations.empty(); }
};

/// Checks a perfect matching (sigma: V -> U) against the two structural
/// lemmas: each unit graph contributes exactly its two up-edges or its two
/// down-edges, and every consistency component is uniform, using the
/// down-linking edges when up and the up-linking edges when down.
inline MatchingStructure check_matching_structure(const ReductionTrace& trace, const std::vector<std::size_t>& sigma)
{
	MatchingStructure out;
	if (sigma.size() != trace.n) {
		out.violations.push_back("matching has the wrong size");
		return out;
	}
	for (const auto& g : trace.units) {
		const bool up = sigma[g.b_prime] == g.a && sigma[g.c_prime] == g.b;
		const bool down = sigma[g.a_prime] == g.b && sigma[g.b_prime] == g.c;
		out.units.push_back(up ? UnitOrientation::up : down ? UnitOrientation::down : UnitOrientation::mixed);
		if (!up && !down) {
			out.violations.push_back("unit graph " + label_name(trace.u_labels[g.a]) +
									 " has neither both up-edges nor both down-edges");
		}
	}
	if (!out.ok()) {
		return out;
	}
	for (int j = 1; j <= trace.formula.num_vars; ++j) {
		auto cc = trace.component(j);
		if (cc.empty()) {
			continue;
		}
		const UnitOrientation first = out.units[cc.front()->block];
		for (std::size_t r = 0; r < cc.size(); ++r) {
			const UnitGraph& cur = *cc[r];
			const UnitGraph& next = *cc[(r + 1) % cc.size()];
			if (out.units[cur.block] != first) {
				out.violations.push_back("component of x" + std::to_string(j) + " mixes up and down unit graphs");
				break;
			}
			if (first == UnitOrientation::up && cur.positive() && sigma[next.a_prime] != cur.c) {
				out.violations.push_back("down-linking edge after " + label_name(trace.u_labels[cur.c]) +
										 " is not matched");
			}
			if (first == UnitOrientation::down && !cur.positive() && sigma[next.c_prime] != cur.a) {
				out.violations.push_back("up-linking edge after " + label_name(trace.u_labels[cur.a]) +
										 " is not matched");
			}
		}
	}
	return out;
}

/// Reads x_j off the first unit graph of its component: true iff its
/// up-edges are matched. Throws StructureError if the matching breaks the
/// component structure, or if the result does not NAE-satisfy the formula.
inline Assignment extract_assignment(const ReductionTrace& trace, const SupportWitness& w)
{
	auto structure = check_matching_structure(trace, w.sigma);
	if (!structure.ok()) {
		throw StructureError("matching violates the unit-graph structure: " + structure.violations.front());
	}
	Assignment a(static_cast<std::size_t>(trace.formula.num_vars));
	for (int j = 1; j <= trace.formula.num_vars; ++j) {
		auto cc = trace.component(j);
		a[static_cast<std::size_t>(j - 1)] = structure.units[cc.front()->block] == UnitOrientation::up;
	}
	if (!nae_check(trace.formula, a)) {
		throw StructureError("extracted assignment does not NAE-satisfy the formula");
	}
	return a;
}

struct WitnessConstruction
{
	SupportWitness witness;
	std::vector<std::size_t> unsaturated_e;		  // clauses (1-based) whose e_i is left for completion
	std::vector<std::size_t> unsaturated_e_prime; // clauses (1-based) whose e'_i is left for completion
	bool completion_complete_bipartite = false;
};

/// Builds a support from a NAE-satisfying assignment: per clause, the first
/// true occurrence gets its d'-close edges and is tied to d_i, the first false
/// occurrence gets its d-close edges and is tied to d'_i, and the third
/// occurrence is tied to e_i (true) or e'_i (false). Linking edges follow each
/// component's orientation, the leftover e/e' vertices are paired
/// lowest-index first, and values are the greedy representatives.
inline WitnessConstruction build_witness_detailed(const SortInstance& inst, const ReductionTrace& trace,
												  const Assignment& a)
{
	if (!nae_check(trace.formula, a)) {
		throw InputError("assignment does not NAE-satisfy the formula");
	}
	const std::size_t n = trace.n;
	const std::size_t k = trace.formula.clauses.size();
	std::vector<std::size_t> sigma(n, unmatched);
	auto var_true = [&](int j) { return static_cast<bool>(a[static_cast<std::size_t>(j - 1)]); };

	for (const auto& g : trace.units) {
		if (var_true(g.variable)) {
			sigma[g.b_prime] = g.a;
			sigma[g.c_prime] = g.b;
		} else {
			sigma[g.a_prime] = g.b;
			sigma[g.b_prime] = g.c;
		}
	}
	for (int j = 1; j <= trace.formula.num_vars; ++j) {
		auto cc = trace.component(j);
		for (std::size_t r = 0; r < cc.size(); ++r) {
			const UnitGraph& cur = *cc[r];
			const UnitGraph& next = *cc[(r + 1) % cc.size()];
			if (var_true(j) && cur.positive()) {
				sigma[next.a_prime] = cur.c;
			} else if (!var_true(j) && !cur.positive()) {
				sigma[next.c_prime] = cur.a;
			}
		}
	}

	WitnessConstruction out;
	for (std::size_t i = 0; i < k; ++i) {
		const Clause& clause = trace.formula.clauses[i];
		int first_true = 0;
		int first_false = 0;
		for (int s = 1; s <= 3; ++s) {
			const bool value = clause.literals[static_cast<std::size_t>(s - 1)].eval(a);
			if (value && first_true == 0) {
				first_true = s;
			} else if (!value && first_false == 0) {
				first_false = s;
			}
		}
		const int third = 6 - first_true - first_false;
		const UnitGraph& gt = trace.unit_for(i + 1, first_true);
		const UnitGraph& gf = trace.unit_for(i + 1, first_false);
		const UnitGraph& g3 = trace.unit_for(i + 1, third);
		// A true occurrence leaves its lateral V vertex free, a false one its
		// lateral U vertex.
		sigma[gt.lateral_v()] = trace.d[i];
		sigma[trace.d_prime[i]] = gf.lateral_u();
		if (clause.literals[static_cast<std::size_t>(third - 1)].eval(a)) {
			sigma[g3.lateral_v()] = trace.e[i];
			out.unsaturated_e_prime.push_back(i + 1);
		} else {
			sigma[trace.e_prime[i]] = g3.lateral_u();
			out.unsaturated_e.push_back(i + 1);
		}
	}
	if (out.unsaturated_e.size() != out.unsaturated_e_prime.size()) {
		throw StructureError("completion component is unbalanced: " + std::to_string(out.unsaturated_e.size()) +
							 " free e vertices vs " + std::to_string(out.unsaturated_e_prime.size()) + " free e'");
	}
	out.completion_complete_bipartite = true;
	for (std::size_t ei : out.unsaturated_e) {
		for (std::size_t es : out.unsaturated_e_prime) {
			if (!inst.u(trace.e[ei - 1]).intersects(inst.v(trace.e_prime[es - 1]))) {
				out.completion_complete_bipartite = false;
			}
		}
	}
	for (std::size_t r = 0; r < out.unsaturated_e.size(); ++r) {
		sigma[trace.e_prime[out.unsaturated_e_prime[r] - 1]] = trace.e[out.unsaturated_e[r] - 1];
	}

	Matching m{sigma};
	if (!m.is_total() || !m.is_injective()) {
		throw StructureError("constructed matching is not perfect");
	}
	auto values = representatives(q_sets(inst, m));
	if (!values) {
		throw StructureError("constructed matching admits no sorted values");
	}
	out.witness = SupportWitness::from_sigma(std::move(sigma), std::move(*values));
	return out;
}

inline SupportWitness build_witness(const SortInstance& inst, const ReductionTrace& trace, const Assignment& a)
{
	return build_witness_detailed(inst, trace, a).witness;
}

// ---------------------------------------------------------------------------
// Disjoint-domain variant
// ---------------------------------------------------------------------------

/// Makes the U domains pairwise disjoint without changing the intersection
/// graph. The integer line is cut into atomic segments (maximal runs on which
/// the set of containing domains is constant). A segment of length L shared by
/// s > 1 U domains is widened to s * L integers: each of those U domains keeps
/// its own length-L slice (in U index order) and every V domain containing the
/// segment covers the whole widened range. Segments are then laid out again
/// on consecutive integers in their original order.
inline ReductionResult disjointify(const SortInstance& inst, const ReductionTrace& trace)
{
	const std::size_t n = inst.size();
	std::vector<Value> cuts;
	auto add_cuts = [&](const IntegerSet& s) {
		for (const auto& p : s.intervals()) {
			cuts.push_back(p.lo);
			cuts.push_back(p.hi + 1);
		}
	};
	for (std::size_t i = 0; i < n; ++i) {
		add_cuts(inst.u(i));
		add_cuts(inst.v(i));
	}
	std::sort(cuts.begin(), cuts.end());
	cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

	std::vector<std::vector<Interval>> u_parts(n), v_parts(n);
	ReductionTrace out_trace = trace;
	out_trace.variant = Variant::disjoint;
	out_trace.splits.clear();

	// Segment s is [cuts[s] .. cuts[s+1]-1]; collect the domains covering it.
	std::vector<std::vector<std::size_t>> seg_u(cuts.size()), seg_v(cuts.size());
	auto cover = [&](const IntegerSet& dom, std::size_t i, std::vector<std::vector<std::size_t>>& seg) {
		for (const auto& p : dom.intervals()) {
			auto s = static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), p.lo) - cuts.begin());
			for (; cuts[s] <= p.hi; ++s) {
				seg[s].push_back(i);
			}
		}
	};
	for (std::size_t i = 0; i < n; ++i) {
		cover(inst.u(i), i, seg_u);
		cover(inst.v(i), i, seg_v);
	}

	Value cursor = cuts.front();
	for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
		const Value lo = cuts[s];
		const Value len = cuts[s + 1] - lo;
		const auto& us = seg_u[s];
		const auto& vs = seg_v[s];
		const Value copies = us.size() > 1 ? static_cast<Value>(us.size()) : 1;
		const Interval widened{cursor, cursor + copies * len - 1};
		for (std::size_t j : vs) {
			v_parts[j].push_back(widened);
		}
		if (us.size() > 1) {
			SegmentSplit split{{lo, lo + len - 1}, widened, {}};
			for (std::size_t r = 0; r < us.size(); ++r) {
				const Interval slice{cursor + static_cast<Value>(r) * len, cursor + static_cast<Value>(r + 1) * len - 1};
				u_parts[us[r]].push_back(slice);
				split.parts.emplace_back(us[r], slice);
			}
			out_trace.splits.push_back(std::move(split));
		} else if (us.size() == 1) {
			u_parts[us[0]].push_back(widened);
		}
		cursor += copies * len;
	}

	std::vector<IntegerSet> u, v;
	for (std::size_t i = 0; i < n; ++i) {
		u.push_back(IntegerSet::normalize(u_parts[i]));
		v.push_back(IntegerSet::normalize(v_parts[i]));
	}
	return {SortInstance(std::move(u), std::move(v), inst.p_domains(), inst.stable()), std::move(out_trace)};
}

/// True iff the U domains are pairwise disjoint.
inline bool u_domains_pairwise_disjoint(const SortInstance& inst)
{
	std::vector<Interval> all;
	for (const auto& d : inst.u_domains()) {
		all.insert(all.end(), d.intervals().begin(), d.intervals().end());
	}
	std::sort(all.begin(), all.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
	for (std::size_t i = 1; i < all.size(); ++i) {
		if (all[i].lo <= all[i - 1].hi) {
			return false;
		}
	}
	return true;
}

} // namespace sortsupport
