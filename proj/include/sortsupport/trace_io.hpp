#pragma once

#include <sortsupport/error.hpp>
#include <sortsupport/intervals.hpp>
#include <sortsupport/reduction.hpp>

#include "json.hpp"

#include <string>
#include <string_view>

namespace sortsupport {

// Reduction traces are stored as JSON. All variable indices in the document
// are 1-based, matching the instance text format.

inline nlohmann::json trace_to_json(const ReductionTrace& trace)
{
	using nlohmann::json;
	json doc;
	doc["format"] = "sortsupport-trace";
	doc["version"] = 1;
	doc["variant"] = to_string(trace.variant);
	doc["constants"] = {{"k", trace.k}, {"t", trace.t}, {"m", trace.m}, {"q", trace.q}, {"n", trace.n}};

	json clauses = json::array();
	json unit_clauses = json::array();
	for (std::size_t i = 0; i < trace.formula.clauses.size(); ++i) {
		const auto& c = trace.formula.clauses[i];
		clauses.push_back({c.literals[0].value, c.literals[1].value, c.literals[2].value});
		if (c.from_unit) {
			unit_clauses.push_back(i + 1);
		}
	}
	doc["formula"] = {{"num_vars", trace.formula.num_vars}, {"clauses", clauses}, {"unit_clauses", unit_clauses}};

	json units = json::array();
	for (const auto& g : trace.units) {
		units.push_back({{"block", g.block},
						 {"clause", g.clause},
						 {"slot", g.slot},
						 {"variable", g.variable},
						 {"polarity", g.positive() ? "+" : "-"},
						 {"cc_position", g.cc_position},
						 {"u", {{"a", g.a + 1}, {"b", g.b + 1}, {"c", g.c + 1}}},
						 {"v", {{"a'", g.a_prime + 1}, {"b'", g.b_prime + 1}, {"c'", g.c_prime + 1}}}});
	}
	doc["units"] = units;

	json truth = json::array();
	for (std::size_t i = 0; i < trace.d.size(); ++i) {
		truth.push_back({{"clause", i + 1},
						 {"d", trace.d[i] + 1},
						 {"e", trace.e[i] + 1},
						 {"d'", trace.d_prime[i] + 1},
						 {"e'", trace.e_prime[i] + 1}});
	}
	doc["truth"] = truth;

	json u_names = json::array();
	json v_names = json::array();
	for (const auto& l : trace.u_labels) {
		u_names.push_back(label_name(l));
	}
	for (const auto& l : trace.v_labels) {
		v_names.push_back(label_name(l));
	}
	doc["labels"] = {{"u", u_names}, {"v", v_names}};

	json edges = json::array();
	for (const auto& e : trace.edges) {
		edges.push_back({{"kind", to_string(e.kind)}, {"u", e.u + 1}, {"v", e.v + 1}});
	}
	doc["edges"] = edges;

	json splits = json::array();
	for (const auto& sp : trace.splits) {
		json parts = json::array();
		for (const auto& [u, iv] : sp.parts) {
			parts.push_back({{"u", u + 1}, {"range", to_string(IntegerSet::interval(iv.lo, iv.hi))}});
		}
		splits.push_back({{"original", to_string(IntegerSet::interval(sp.original.lo, sp.original.hi))},
						  {"widened", to_string(IntegerSet::interval(sp.widened.lo, sp.widened.hi))},
						  {"parts", parts}});
	}
	doc["splits"] = splits;
	return doc;
}

inline std::string render_trace(const ReductionTrace& trace) { return trace_to_json(trace).dump(2) + "\n"; }

namespace detail {

inline EdgeKind parse_edge_kind(const std::string& s)
{
	for (EdgeKind k : {EdgeKind::up, EdgeKind::down, EdgeKind::up_linking, EdgeKind::down_linking, EdgeKind::lateral,
					   EdgeKind::completion}) {
		if (s == to_string(k)) {
			return k;
		}
	}
	throw ParseError("unknown edge kind '" + s + "'");
}

inline Interval parse_single_interval(const std::string& s)
{
	auto set = parse_integer_set(s);
	if (set.intervals().size() != 1) {
		throw ParseError("expected a single interval, got '" + s + "'");
	}
	return set.intervals().front();
}

} // namespace detail

inline ReductionTrace parse_trace(std::string_view text)
{
	try {
		const auto doc = nlohmann::json::parse(text);
		if (doc.at("format") != "sortsupport-trace" || doc.at("version") != 1) {
			throw ParseError("not a version 1 sortsupport trace");
		}
		ReductionTrace trace;
		const std::string variant = doc.at("variant");
		if (variant == "overlapping") {
			trace.variant = Variant::overlapping;
		} else if (variant == "disjoint") {
			trace.variant = Variant::disjoint;
		} else {
			throw ParseError("unknown variant '" + variant + "'");
		}
		const auto& c = doc.at("constants");
		trace.k = c.at("k");
		trace.t = c.at("t");
		trace.m = c.at("m");
		trace.q = c.at("q");
		trace.n = c.at("n");

		const auto& f = doc.at("formula");
		trace.formula.num_vars = f.at("num_vars");
		for (const auto& cl : f.at("clauses")) {
			if (cl.size() != 3) {
				throw ParseError("trace clauses must have three literals");
			}
			trace.formula.clauses.push_back(make_clause(cl[0], cl[1], cl[2]));
		}
		for (std::size_t i : f.at("unit_clauses")) {
			trace.formula.clauses.at(i - 1).from_unit = true;
		}

		auto index = [&](const nlohmann::json& j) {
			std::size_t x = j;
			if (x == 0 || x > trace.n) {
				throw ParseError("variable index " + std::to_string(x) + " out of range");
			}
			return x - 1;
		};
		for (const auto& u : doc.at("units")) {
			UnitGraph g;
			g.block = u.at("block");
			g.clause = u.at("clause");
			g.slot = u.at("slot");
			g.variable = u.at("variable");
			g.polarity = u.at("polarity") == "+" ? Polarity::positive : Polarity::negative;
			g.cc_position = u.at("cc_position");
			g.a = index(u.at("u").at("a"));
			g.b = index(u.at("u").at("b"));
			g.c = index(u.at("u").at("c"));
			g.a_prime = index(u.at("v").at("a'"));
			g.b_prime = index(u.at("v").at("b'"));
			g.c_prime = index(u.at("v").at("c'"));
			trace.units.push_back(g);
		}
		for (const auto& t : doc.at("truth")) {
			trace.d.push_back(index(t.at("d")));
			trace.e.push_back(index(t.at("e")));
			trace.d_prime.push_back(index(t.at("d'")));
			trace.e_prime.push_back(index(t.at("e'")));
		}
		if (trace.d.size() != trace.formula.clauses.size()) {
			throw ParseError("truth table must have one row per clause");
		}
		for (const auto& e : doc.at("edges")) {
			trace.edges.push_back({index(e.at("u")), index(e.at("v")), detail::parse_edge_kind(e.at("kind"))});
		}
		for (const auto& sp : doc.at("splits")) {
			SegmentSplit split{detail::parse_single_interval(sp.at("original")),
							   detail::parse_single_interval(sp.at("widened")),
							   {}};
			for (const auto& part : sp.at("parts")) {
				split.parts.emplace_back(index(part.at("u")), detail::parse_single_interval(part.at("range")));
			}
			trace.splits.push_back(std::move(split));
		}
		assign_labels(trace);
		return trace;
	} catch (const nlohmann::json::exception& e) {
		throw ParseError(std::string("invalid trace document: ") + e.what());
	}
}

} // namespace sortsupport
