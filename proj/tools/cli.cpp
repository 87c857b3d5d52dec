#include "cli.hpp"

#include <sortsupport/sortsupport.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace sortsupport::cli {

namespace {

using nlohmann::json;

enum class Format { text, json };

std::string read_file(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		throw InputError("cannot open '" + path + "'");
	}
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

void write_file(const std::string& path, const std::string& text)
{
	std::ofstream out(path, std::ios::binary);
	if (!out || !(out << text)) {
		throw InputError("cannot write '" + path + "'");
	}
}

/// `u:3=17` or `v:19=145`, 1-based index.
Pin parse_pin(const std::string& s)
{
	const auto colon = s.find(':');
	const auto eq = s.find('=');
	if (colon != 1 || eq == std::string::npos || eq < colon + 2 || (s[0] != 'u' && s[0] != 'v')) {
		throw InputError("bad pin '" + s + "', expected u:<index>=<value> or v:<index>=<value>");
	}
	try {
		std::size_t used = 0;
		const std::string idx = s.substr(colon + 1, eq - colon - 1);
		const std::string val = s.substr(eq + 1);
		long long index = std::stoll(idx, &used);
		if (used != idx.size() || index < 1) {
			throw InputError("");
		}
		long long value = std::stoll(val, &used);
		if (used != val.size()) {
			throw InputError("");
		}
		return {s[0] == 'u' ? Side::U : Side::V, static_cast<std::size_t>(index - 1), value};
	} catch (const std::exception&) {
		throw InputError("bad pin '" + s + "', expected u:<index>=<value> or v:<index>=<value>");
	}
}

std::string render_witness(const SupportWitness& w)
{
	const std::size_t n = w.sigma.size();
	std::ostringstream out;
	out << "sortsupport " << n << '\n';
	for (std::size_t i = 0; i < n; ++i) {
		out << "u " << i + 1 << ' ' << w.values[w.perm[i]] << '\n';
	}
	for (std::size_t j = 0; j < n; ++j) {
		out << "v " << j + 1 << ' ' << w.values[j] << '\n';
	}
	out << "values:";
	for (Value x : w.values) {
		out << ' ' << x;
	}
	out << "\nperm:";
	for (std::size_t p : w.perm) {
		out << ' ' << p + 1;
	}
	out << '\n';
	return out.str();
}

json witness_json(const SupportWitness& w)
{
	std::vector<std::size_t> sigma, perm;
	for (std::size_t u : w.sigma) {
		sigma.push_back(u + 1);
	}
	for (std::size_t p : w.perm) {
		perm.push_back(p + 1);
	}
	return {{"sigma", sigma}, {"values", w.values}, {"perm", perm}};
}

std::string assignment_string(const Assignment& a)
{
	std::string s;
	for (bool b : a) {
		s += b ? '1' : '0';
	}
	return s;
}

std::string variable_name(Side side, std::size_t i) { return side_char(side) + std::to_string(i + 1); }

// ---------------------------------------------------------------------------

struct ReduceArgs
{
	std::string cnf;
	std::string variant = "overlapping";
	std::string out;
	std::string trace;
};

int cmd_reduce(const ReduceArgs& a, std::ostream& out, std::ostream& err)
{
	CnfFormula f;
	try {
		f = parse_dimacs(read_file(a.cnf));
	} catch (const ParseError& e) {
		err << a.cnf << ": " << e.what() << '\n';
		return exit_input;
	}
	if (f.clauses.empty()) {
		err << a.cnf << ": formula has no clauses; nothing to reduce\n";
		return exit_unfixable;
	}
	CnfFormula compact = compact_variables(f);
	if (compact.num_vars != f.num_vars) {
		err << "note: " << f.num_vars - compact.num_vars
			<< " variable(s) without occurrences dropped; the rest are renumbered in order\n";
	}
	CnfFormula balanced = balance_occurrences(compact);
	if (balanced.clauses.size() != compact.clauses.size()) {
		err << "note: added " << balanced.clauses.size() - compact.clauses.size() << " padding clause(s) to balance occurrences\n";
	}
	const Variant variant = a.variant == "disjoint" ? Variant::disjoint : Variant::overlapping;
	std::optional<ReductionResult> reduced;
	try {
		reduced = reduce(balanced, variant);
	} catch (const InputError& e) {
		err << a.cnf << ": " << e.what() << '\n';
		return exit_unfixable;
	}
	const auto& r = *reduced;
	if (variant == Variant::disjoint && !u_domains_pairwise_disjoint(r.instance)) {
		err << "internal error: disjoint variant produced overlapping U domains\n";
		return exit_unfixable;
	}
	const auto& t = r.trace;
	std::ostringstream summary;
	summary << "n=" << t.n << " k=" << t.k << " t=" << t.t << " m=" << t.m << " q=" << t.q
			<< " edges=" << t.edges.size() << '\n';
	if (!a.trace.empty()) {
		write_file(a.trace, render_trace(t));
	}
	if (a.out.empty()) {
		out << render_instance(r.instance);
		err << summary.str();
	} else {
		write_file(a.out, render_instance(r.instance));
		out << summary.str();
	}
	return exit_ok;
}

// ---------------------------------------------------------------------------

struct SolveArgs
{
	std::string instance;
	std::vector<std::string> pins;
	bool perm = false;
	bool stable = false;
	bool witness = false;
	bool no_prune = false;
	std::uint64_t node_limit = 10'000'000;
	Format format = Format::text;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err)
{
	SortInstance inst = parse_instance(read_file(a.instance));
	SolveOptions opts;
	for (const auto& p : a.pins) {
		opts.pins.push_back(parse_pin(p));
	}
	if (a.perm) {
		if (!inst.has_p()) {
			inst = inst.with_p(std::vector<IntegerSet>(inst.size(), IntegerSet::interval(1, static_cast<Value>(inst.size()))));
		}
		opts.respect_p = true;
	}
	if (a.stable) {
		opts.respect_stability = true;
	}
	opts.node_limit = a.node_limit;
	opts.matching_prune = !a.no_prune;
	const Verdict v = decide_support(inst, opts);

	if (a.format == Format::json) {
		json doc{{"verdict", to_string(v.outcome)}, {"nodes", v.stats.nodes}, {"prunes", v.stats.prunes}};
		if (a.witness && v.witness) {
			doc["witness"] = witness_json(*v.witness);
		}
		out << doc.dump(2) << '\n';
	} else {
		out << to_string(v.outcome) << '\n';
		out << "# nodes=" << v.stats.nodes << " prunes=" << v.stats.prunes << '\n';
		if (a.witness && v.witness) {
			out << render_witness(*v.witness);
		}
	}
	if (v.witness && !validate_witness(inst, *v.witness, {opts.respect_p.value_or(inst.has_p()),
														 opts.respect_stability.value_or(inst.stable())})) {
		err << "internal error: witness does not validate\n";
	}
	switch (v.outcome) {
	case Outcome::yes: return exit_ok;
	case Outcome::no: return exit_no;
	case Outcome::limit: return exit_limit;
	}
	return exit_no;
}

// ---------------------------------------------------------------------------

struct RoundtripArgs
{
	std::string cnf;
	std::vector<int> random; // p k count
	std::uint64_t seed = 1;
	std::string variant = "overlapping";
	std::uint64_t node_limit = 10'000'000;
	Format format = Format::text;
};

int cmd_verify_roundtrip(const RoundtripArgs& a, std::ostream& out, std::ostream& err)
{
	std::vector<CnfFormula> formulas;
	if (!a.random.empty()) {
		if (a.random.size() != 3 || a.random[0] < 1 || a.random[1] < 1 || a.random[2] < 0) {
			err << "--random expects three positive numbers: p k count\n";
			return exit_input;
		}
		std::mt19937_64 rng(a.seed);
		for (int c = 0; c < a.random[2]; ++c) {
			formulas.push_back(random_formula(a.random[0], a.random[1], rng));
		}
	} else if (!a.cnf.empty()) {
		CnfFormula f = parse_dimacs(read_file(a.cnf));
		if (f.clauses.empty()) {
			err << a.cnf << ": formula has no clauses\n";
			return exit_unfixable;
		}
		formulas.push_back(compact_variables(f));
	} else {
		err << "give a CNF file or --random p k count\n";
		return exit_input;
	}
	std::vector<Variant> variants;
	if (a.variant != "disjoint") {
		variants.push_back(Variant::overlapping);
	}
	if (a.variant != "overlapping") {
		variants.push_back(Variant::disjoint);
	}

	SolveOptions opts;
	opts.node_limit = a.node_limit;
	std::size_t cases = 0;
	std::size_t failures = 0;
	json doc_cases = json::array();
	for (std::size_t idx = 0; idx < formulas.size(); ++idx) {
		for (Variant variant : variants) {
			++cases;
			const auto r = roundtrip_verify(formulas[idx], variant, opts);
			if (!r.ok()) {
				++failures;
			}
			if (a.format == Format::json) {
				json c{{"case", idx + 1},
					   {"variant", to_string(variant)},
					   {"k", r.formula.clauses.size()},
					   {"nae", r.nae_yes() ? "YES" : "NO"},
					   {"assignment", r.nae_assignment ? assignment_string(*r.nae_assignment) : ""},
					   {"solver", to_string(r.outcome)},
					   {"nodes", r.stats.nodes},
					   {"ok", r.ok()},
					   {"issues", r.issues}};
				if (r.counterexample) {
					c["counterexample"] = {{"formula", r.counterexample->formula},
										   {"instance", r.counterexample->instance},
										   {"trace", json::parse(r.counterexample->trace)}};
				}
				doc_cases.push_back(std::move(c));
			} else {
				out << "case " << idx + 1 << ' ' << to_string(variant) << " k=" << r.formula.clauses.size()
					<< " nae=" << (r.nae_yes() ? "YES x=" + assignment_string(*r.nae_assignment) : "NO") << " solver=" << to_string(r.outcome)
					<< " nodes=" << r.stats.nodes << (r.ok() ? " ok" : " MISMATCH") << '\n';
				for (const auto& issue : r.issues) {
					out << "  " << issue << '\n';
				}
				if (r.counterexample) {
					err << "counterexample for case " << idx + 1 << " (" << to_string(variant) << ")\n"
						<< r.counterexample->formula << r.counterexample->instance << r.counterexample->trace;
				}
			}
		}
	}
	if (a.format == Format::json) {
		out << json{{"cases", cases}, {"failures", failures}, {"results", doc_cases}}.dump(2) << '\n';
	} else {
		out << "cases=" << cases << " failures=" << failures << '\n';
	}
	return failures == 0 ? exit_ok : exit_no;
}

// ---------------------------------------------------------------------------

struct StructureArgs
{
	std::string instance;
	std::string trace;
	Format format = Format::text;
};

int cmd_check_structure(const StructureArgs& a, std::ostream& out, std::ostream&)
{
	const SortInstance inst = parse_instance(read_file(a.instance));
	const ReductionTrace trace = parse_trace(read_file(a.trace));
	const auto report = verify_structure(inst, trace);
	if (a.format == Format::json) {
		json missing = json::array();
		json extra = json::array();
		for (const auto& e : report.missing) {
			missing.push_back({{"u", e.u + 1}, {"v", e.v + 1}, {"kind", to_string(e.kind)}});
		}
		for (const auto& [u, v] : report.extra) {
			extra.push_back({{"u", u + 1}, {"v", v + 1}});
		}
		out << json{{"ok", report.ok()},
					{"edges", report.built_edges},
					{"missing", missing},
					{"extra", extra},
					{"problems", report.problems}}
				   .dump(2)
			<< '\n';
	} else {
		for (const auto& p : report.problems) {
			out << "problem: " << p << '\n';
		}
		for (const auto& e : report.missing) {
			out << "missing " << to_string(e.kind) << " edge u" << e.u + 1 << " -- v" << e.v + 1 << '\n';
		}
		for (const auto& [u, v] : report.extra) {
			out << "extra edge u" << u + 1 << " -- v" << v + 1 << '\n';
		}
		out << (report.ok() ? "ok" : "FAILED") << " edges=" << report.built_edges << '\n';
	}
	return report.ok() ? exit_ok : exit_no;
}

// ---------------------------------------------------------------------------

struct ConsistencyArgs
{
	std::string instance;
	std::string level = "domain";
	std::uint64_t node_limit = 10'000'000;
	Format format = Format::text;
};

std::string status_of(const std::optional<BoundCheck>& b) { return b ? to_string(b->status) : "-"; }

int cmd_consistency(const ConsistencyArgs& a, std::ostream& out, std::ostream&)
{
	const SortInstance inst = parse_instance(read_file(a.instance));
	ConsistencyLevel level = ConsistencyLevel::domain;
	if (a.level == "boundsD") {
		level = ConsistencyLevel::bounds_d;
	} else if (a.level == "boundsZ") {
		level = ConsistencyLevel::bounds_z;
	}
	SolveOptions opts;
	opts.node_limit = a.node_limit;
	const auto report = check_consistency(inst, level, opts);

	if (a.format == Format::json) {
		json vars = json::object();
		for (const auto& v : report.variables) {
			json entry{{"domain", to_string(v.domain)}};
			if (level == ConsistencyLevel::domain) {
				entry["supported"] = to_string(v.supported);
				entry["unknown"] = to_string(v.unknown);
			} else {
				entry["inf"] = {{"value", v.inf->value}, {"status", to_string(v.inf->status)}};
				entry["sup"] = {{"value", v.sup->value}, {"status", to_string(v.sup->status)}};
			}
			vars[variable_name(v.side, v.index)] = std::move(entry);
		}
		out << json{{"level", to_string(level)},
					{"consistent", report.consistent},
					{"unknown", report.unknown_count},
					{"variables", vars}}
				   .dump(2)
			<< '\n';
	} else {
		out << "level " << to_string(level) << '\n';
		for (const auto& v : report.variables) {
			out << variable_name(v.side, v.index) << ' ' << to_string(v.domain);
			if (level == ConsistencyLevel::domain) {
				out << " supported " << to_string(v.supported);
				if (!v.unknown.empty()) {
					out << " unknown " << to_string(v.unknown);
				}
			} else {
				out << " inf " << v.inf->value << ' ' << status_of(v.inf) << " sup " << v.sup->value << ' '
					<< status_of(v.sup);
			}
			out << '\n';
		}
		out << (report.consistent ? "consistent" : "inconsistent");
		if (report.unknown_count) {
			out << " unknown=" << report.unknown_count;
		}
		out << '\n';
	}
	if (report.unknown_count) {
		return exit_limit;
	}
	return report.consistent ? exit_ok : exit_no;
}

// ---------------------------------------------------------------------------

struct DotArgs
{
	std::string instance;
	std::string trace;
	std::string out;
};

int cmd_export_dot(const DotArgs& a, std::ostream& out, std::ostream&)
{
	const SortInstance inst = parse_instance(read_file(a.instance));
	std::optional<ReductionTrace> trace;
	if (!a.trace.empty()) {
		trace = parse_trace(read_file(a.trace));
		if (trace->n != inst.size()) {
			throw InputError("trace describes " + std::to_string(trace->n) + " variables per side, instance has " +
							 std::to_string(inst.size()));
		}
	}
	const std::string dot = render_dot(inst, trace ? &*trace : nullptr);
	if (a.out.empty()) {
		out << dot;
	} else {
		write_file(a.out, dot);
	}
	return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Sortedness constraint support checking and the NAE-3SAT reduction"};
	app.name("sortsupport");
	app.require_subcommand(1);

	const std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}};
	auto format_option = [&](CLI::App* sub, Format& target) {
		sub->add_option("--format", target, "Output format")
			->transform(CLI::CheckedTransformer(formats))
			->option_text("TEXT:{text,json}");
	};

	ReduceArgs reduce_args;
	auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a NAE-3SAT formula (DIMACS) to a SortSupport instance");
	reduce_cmd->add_option("cnf", reduce_args.cnf, "DIMACS CNF file")->required();
	reduce_cmd->add_option("--variant", reduce_args.variant)->check(CLI::IsMember({"overlapping", "disjoint"}));
	reduce_cmd->add_option("-o,--out", reduce_args.out, "Instance output file (default: stdout)");
	reduce_cmd->add_option("--trace", reduce_args.trace, "Trace output file (JSON)");

	SolveArgs solve_args;
	auto* solve_cmd = app.add_subcommand("solve", "Decide whether an instance has a support");
	solve_cmd->add_option("instance", solve_args.instance)->required();
	solve_cmd->add_option("--pin", solve_args.pins, "Force a variable, e.g. v:19=145");
	solve_cmd->add_flag("--perm", solve_args.perm, "Honor P domains (full [1..n] if the instance has none)");
	solve_cmd->add_flag("--stable", solve_args.stable, "Require stable sorting");
	solve_cmd->add_flag("--witness", solve_args.witness, "Print the support found");
	solve_cmd->add_flag("--no-prune", solve_args.no_prune, "Disable the matching feasibility prune");
	solve_cmd->add_option("--node-limit", solve_args.node_limit);
	format_option(solve_cmd, solve_args.format);

	RoundtripArgs rt_args;
	auto* rt_cmd = app.add_subcommand("verify-roundtrip", "Check the reduction against a NAE brute-force oracle");
	rt_cmd->add_option("cnf", rt_args.cnf, "DIMACS CNF file");
	rt_cmd->add_option("--random", rt_args.random, "Random formulas: p k count")->expected(3);
	rt_cmd->add_option("--seed", rt_args.seed);
	rt_cmd->add_option("--variant", rt_args.variant)->check(CLI::IsMember({"overlapping", "disjoint", "both"}));
	rt_cmd->add_option("--node-limit", rt_args.node_limit);
	format_option(rt_cmd, rt_args.format);

	StructureArgs st_args;
	auto* st_cmd = app.add_subcommand("check-structure", "Compare an instance's intersection graph with its trace");
	st_cmd->add_option("instance", st_args.instance)->required();
	st_cmd->add_option("trace", st_args.trace)->required();
	format_option(st_cmd, st_args.format);

	ConsistencyArgs cons_args;
	auto* cons_cmd = app.add_subcommand("consistency", "Domain or bounds consistency of an instance");
	cons_cmd->add_option("instance", cons_args.instance)->required();
	cons_cmd->add_option("--level", cons_args.level)->check(CLI::IsMember({"domain", "boundsD", "boundsZ"}));
	cons_cmd->add_option("--node-limit", cons_args.node_limit);
	format_option(cons_cmd, cons_args.format);

	DotArgs dot_args;
	auto* dot_cmd = app.add_subcommand("export-dot", "Write the intersection graph in DOT");
	dot_cmd->add_option("instance", dot_args.instance)->required();
	dot_cmd->add_option("--trace", dot_args.trace, "Trace file for labels and edge kinds");
	dot_cmd->add_option("-o,--out", dot_args.out);

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::ParseError& e) {
		if (e.get_exit_code() == 0) {
			out << app.help();
			return exit_ok;
		}
		err << e.what() << '\n';
		return exit_input;
	}

	try {
		if (reduce_cmd->parsed()) {
			return cmd_reduce(reduce_args, out, err);
		}
		if (solve_cmd->parsed()) {
			return cmd_solve(solve_args, out, err);
		}
		if (rt_cmd->parsed()) {
			return cmd_verify_roundtrip(rt_args, out, err);
		}
		if (st_cmd->parsed()) {
			return cmd_check_structure(st_args, out, err);
		}
		if (cons_cmd->parsed()) {
			return cmd_consistency(cons_args, out, err);
		}
		if (dot_cmd->parsed()) {
			return cmd_export_dot(dot_args, out, err);
		}
	} catch (const ParseError& e) {
		err << "parse error: " << e.what() << '\n';
		return exit_input;
	} catch (const InputError& e) {
		err << "error: " << e.what() << '\n';
		return exit_input;
	}
	return exit_input;
}

} // namespace sortsupport::cli
