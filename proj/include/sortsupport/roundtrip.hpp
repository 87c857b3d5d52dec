#pragma once

#include <sortsupport/instance.hpp>
#include <sortsupport/nae.hpp>
#include <sortsupport/reduction.hpp>
#include <sortsupport/solver.hpp>
#include <sortsupport/trace_io.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sortsupport {

struct CounterexampleBundle
{
	std::string formula;  // DIMACS, after balancing
	std::string instance; // instance file format
	std::string trace;	  // JSON trace
};

struct RoundtripReport
{
	Variant variant = Variant::overlapping;
	CnfFormula formula; // balanced
	std::optional<Assignment> nae_assignment;
	Outcome outcome = Outcome::no;
	SolveStats stats;
	/// Unit-graph / linking structure of the solver's witness, on YES.
	std::optional<MatchingStructure> structure;
	std::optional<Assignment> extracted;
	std::optional<WitnessConstruction> constructed;
	std::vector<std::string> issues;
	std::optional<CounterexampleBundle> counterexample;

	bool nae_yes() const { return nae_assignment.has_value(); }
	bool agree() const { return outcome != Outcome::limit && nae_yes() == (outcome == Outcome::yes); }
	bool ok() const { return issues.empty(); }
};

/// Balances `f`, reduces it, and checks both directions of the equivalence:
/// the NAE oracle and the solver must agree; a solver witness must respect
/// the unit-graph structure and yield a NAE-satisfying assignment; and a
/// witness built from the oracle's assignment must validate.
inline RoundtripReport roundtrip_verify(const CnfFormula& f, Variant variant, const SolveOptions& opts = {})
{
	RoundtripReport report;
	report.variant = variant;
	report.formula = balance_occurrences(f);
	const auto reduced = reduce(report.formula, variant);
	const auto& inst = reduced.instance;
	const auto& trace = reduced.trace;
	auto& issues = report.issues;

	auto structure = verify_structure(inst, trace);
	if (!structure.ok()) {
		issues.push_back("intersection graph differs from the intended edge list");
	}
	if (variant == Variant::disjoint && !u_domains_pairwise_disjoint(inst)) {
		issues.push_back("U domains are not pairwise disjoint");
	}

	report.nae_assignment = nae_brute_force(report.formula);
	const auto verdict = decide_support(inst, opts);
	report.outcome = verdict.outcome;
	report.stats = verdict.stats;
	if (verdict.outcome == Outcome::limit) {
		issues.push_back("solver hit its node limit");
	} else if (!report.agree()) {
		issues.push_back(std::string("NAE oracle says ") + (report.nae_yes() ? "YES" : "NO") + " but solver says " +
						 to_string(verdict.outcome));
	}

	if (verdict.yes()) {
		const auto& w = *verdict.witness;
		if (!validate_witness(inst, w).valid()) {
			issues.push_back("solver witness does not validate");
		}
		if (!weak_chain_holds(q_sets(inst, w.matching()))) {
			issues.push_back("solver witness satisfies the strong but not the weak chain condition");
		}
		report.structure = check_matching_structure(trace, w.sigma);
		for (const auto& v : report.structure->violations) {
			issues.push_back("matching structure: " + v);
		}
		try {
			report.extracted = extract_assignment(trace, w);
		} catch (const StructureError& e) {
			issues.push_back(std::string("extraction failed: ") + e.what());
		}
	}

	if (report.nae_assignment) {
		try {
			report.constructed = build_witness_detailed(inst, trace, *report.nae_assignment);
			const auto& c = *report.constructed;
			if (!validate_witness(inst, c.witness).valid()) {
				issues.push_back("witness built from the NAE assignment does not validate");
			}
			const std::size_t half = report.formula.clauses.size() / 2;
			if (c.unsaturated_e.size() != half || c.unsaturated_e_prime.size() != half) {
				issues.push_back("unsaturated e / e' counts differ from k/2");
			}
			if (!c.completion_complete_bipartite) {
				issues.push_back("unsaturated completion subgraph is not complete bipartite");
			}
		} catch (const std::exception& e) {
			issues.push_back(std::string("witness construction failed: ") + e.what());
		}
	}

	if (!report.ok()) {
		report.counterexample = CounterexampleBundle{render_dimacs(report.formula), render_instance(inst),
													 render_trace(trace)};
	}
	return report;
}

} // namespace sortsupport
