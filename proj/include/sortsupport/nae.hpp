#pragma once

#include <sortsupport/error.hpp>

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace sortsupport {

/// Signed DIMACS literal: +j is x_j, -j is its negation. Never zero.
struct Literal
{
	int value = 0;

	int variable() const { return std::abs(value); }
	bool positive() const { return value > 0; }
	Literal negated() const { return Literal{-value}; }

	/// Truth of the literal under an assignment indexed by variable - 1.
	bool eval(const std::vector<bool>& assignment) const
	{
		bool x = assignment[static_cast<std::size_t>(variable() - 1)];
		return positive() ? x : !x;
	}

	friend bool operator==(const Literal&, const Literal&) = default;
	friend auto operator<=>(const Literal&, const Literal&) = default;
};

struct Clause
{
	std::array<Literal, 3> literals;
	/// Came from a one-literal input clause; stored as (l, l, l), which no
	/// assignment can make not-all-equal.
	bool from_unit = false;

	friend bool operator==(const Clause&, const Clause&) = default;
};

struct CnfFormula
{
	int num_vars = 0;
	std::vector<Clause> clauses;

	std::size_t num_clauses() const { return clauses.size(); }

	friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Truth values for x_1..x_p (index j-1 holds x_j).
using Assignment = std::vector<bool>;

struct Occurrences
{
	int positive = 0;
	int negative = 0;

	int total() const { return positive + negative; }
};

/// Per-variable occurrence counts; entry j-1 is for x_j.
inline std::vector<Occurrences> count_occurrences(const CnfFormula& f)
{
	std::vector<Occurrences> occ(static_cast<std::size_t>(f.num_vars));
	for (const auto& c : f.clauses) {
		for (const auto& l : c.literals) {
			auto& o = occ[static_cast<std::size_t>(l.variable() - 1)];
			(l.positive() ? o.positive : o.negative) += 1;
		}
	}
	return occ;
}

inline bool is_balanced(const CnfFormula& f)
{
	for (const auto& o : count_occurrences(f)) {
		if (o.positive != o.negative) {
			return false;
		}
	}
	return true;
}

inline Clause make_clause(int a, int b, int c) { return Clause{{Literal{a}, Literal{b}, Literal{c}}, false}; }

/// Parses DIMACS CNF. Two-literal clauses get their last literal duplicated
/// ((a|b) is NAE-equivalent to (a|b|b)); one-literal clauses are kept as
/// (l,l,l) and flagged; longer clauses are rejected.
inline CnfFormula parse_dimacs(std::string_view text)
{
	CnfFormula f;
	bool header = false;
	std::size_t declared_clauses = 0;
	std::vector<int> pending;
	std::size_t line_no = 0;

	auto finish_clause = [&](std::size_t ln) {
		if (pending.empty()) {
			throw ParseError(ln, "empty clause");
		}
		if (pending.size() > 3) {
			throw ParseError(ln, "clause has " + std::to_string(pending.size()) + " literals; at most 3 are supported");
		}
		Clause c;
		if (pending.size() == 1) {
			c = make_clause(pending[0], pending[0], pending[0]);
			c.from_unit = true;
		} else if (pending.size() == 2) {
			c = make_clause(pending[0], pending[1], pending[1]);
		} else {
			c = make_clause(pending[0], pending[1], pending[2]);
		}
		f.clauses.push_back(c);
		pending.clear();
	};

	std::istringstream in{std::string(text)};
	std::string line;
	while (std::getline(in, line)) {
		++line_no;
		std::istringstream words(line);
		std::string first;
		if (!(words >> first) || first[0] == 'c') {
			continue;
		}
		if (first[0] == '%') {
			break; // SATLIB end marker
		}
		if (first == "p") {
			std::string fmt;
			long long vars = -1, clauses = -1;
			if (header || !(words >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0) {
				throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
			}
			std::string extra;
			if (words >> extra) {
				throw ParseError(line_no, "trailing text after header");
			}
			header = true;
			f.num_vars = static_cast<int>(vars);
			declared_clauses = static_cast<std::size_t>(clauses);
			continue;
		}
		if (!header) {
			throw ParseError(line_no, "clause before 'p cnf' header");
		}
		std::istringstream tokens(line);
		std::string tok;
		while (tokens >> tok) {
			long long lit = 0;
			try {
				std::size_t used = 0;
				lit = std::stoll(tok, &used);
				if (used != tok.size()) {
					throw ParseError(line_no, "bad literal '" + tok + "'");
				}
			} catch (const std::logic_error&) {
				throw ParseError(line_no, "bad literal '" + tok + "'");
			}
			if (lit == 0) {
				finish_clause(line_no);
				continue;
			}
			if (std::llabs(lit) > f.num_vars) {
				throw ParseError(line_no, "literal " + tok + " out of range for " + std::to_string(f.num_vars) +
											  " variables");
			}
			pending.push_back(static_cast<int>(lit));
		}
	}
	if (!header) {
		throw ParseError("missing 'p cnf' header");
	}
	if (!pending.empty()) {
		throw ParseError(line_no, "last clause is not terminated by 0");
	}
	if (f.clauses.size() != declared_clauses) {
		throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses but " +
						 std::to_string(f.clauses.size()) + " were read");
	}
	return f;
}

inline std::string render_dimacs(const CnfFormula& f)
{
	std::ostringstream out;
	out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
	for (const auto& c : f.clauses) {
		for (const auto& l : c.literals) {
			out << l.value << ' ';
		}
		out << "0\n";
	}
	return out.str();
}

/// Appends (x|~x|~x) or (x|x|~x) clauses, in variable order, until every
/// variable has as many positive as negative occurrences. Both padding shapes
/// are NAE-satisfied by every assignment. Unused variables stay unused.
inline CnfFormula balance_occurrences(const CnfFormula& f)
{
	CnfFormula out = f;
	const auto occ = count_occurrences(f);
	for (int j = 1; j <= f.num_vars; ++j) {
		int excess = occ[static_cast<std::size_t>(j - 1)].positive - occ[static_cast<std::size_t>(j - 1)].negative;
		for (; excess > 0; --excess) {
			out.clauses.push_back(make_clause(j, -j, -j));
		}
		for (; excess < 0; ++excess) {
			out.clauses.push_back(make_clause(j, j, -j));
		}
	}
	return out;
}

inline bool clause_nae(const Clause& c, const Assignment& a)
{
	bool any_true = false;
	bool any_false = false;
	for (const auto& l : c.literals) {
		(l.eval(a) ? any_true : any_false) = true;
	}
	return any_true && any_false;
}

inline bool nae_check(const CnfFormula& f, const Assignment& a)
{
	if (a.size() != static_cast<std::size_t>(f.num_vars)) {
		throw InputError("assignment has " + std::to_string(a.size()) + " values for " + std::to_string(f.num_vars) +
						 " variables");
	}
	for (const auto& c : f.clauses) {
		if (!clause_nae(c, a)) {
			return false;
		}
	}
	return true;
}

inline constexpr int nae_brute_force_max_vars = 24;

/// First NAE-satisfying assignment in lexicographic order of (x_1, ..., x_p)
/// with false < true.
inline std::optional<Assignment> nae_brute_force(const CnfFormula& f)
{
	if (f.num_vars > nae_brute_force_max_vars) {
		throw InputError("nae_brute_force is limited to " + std::to_string(nae_brute_force_max_vars) + " variables");
	}
	const std::uint64_t total = std::uint64_t{1} << f.num_vars;
	Assignment a(static_cast<std::size_t>(f.num_vars));
	for (std::uint64_t bits = 0; bits < total; ++bits) {
		for (int j = 0; j < f.num_vars; ++j) {
			a[static_cast<std::size_t>(j)] = (bits >> (f.num_vars - 1 - j)) & 1U;
		}
		if (nae_check(f, a)) {
			return a;
		}
	}
	return std::nullopt;
}

inline Assignment complement(const Assignment& a)
{
	Assignment out(a.size());
	for (std::size_t j = 0; j < a.size(); ++j) {
		out[j] = !a[j];
	}
	return out;
}

/// Renumbers the variables that occur to 1..p' in order of index, dropping
/// the rest.
inline CnfFormula compact_variables(const CnfFormula& f)
{
	const auto occ = count_occurrences(f);
	std::vector<int> renamed(static_cast<std::size_t>(f.num_vars) + 1, 0);
	int next = 0;
	for (int j = 1; j <= f.num_vars; ++j) {
		if (occ[static_cast<std::size_t>(j - 1)].total() > 0) {
			renamed[static_cast<std::size_t>(j)] = ++next;
		}
	}
	CnfFormula out;
	out.num_vars = next;
	for (auto c : f.clauses) {
		for (auto& l : c.literals) {
			int r = renamed[static_cast<std::size_t>(l.variable())];
			l.value = l.positive() ? r : -r;
		}
		out.clauses.push_back(c);
	}
	return out;
}

/// Uniform bounded draw that does not depend on the standard library's
/// distribution implementation, so seeds reproduce across toolchains.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

/// `num_clauses` clauses of three literals drawn uniformly over `num_vars`
/// variables, then compacted so that every remaining variable occurs.
inline CnfFormula random_formula(int num_vars, int num_clauses, std::mt19937_64& rng)
{
	CnfFormula f;
	f.num_vars = num_vars;
	for (int i = 0; i < num_clauses; ++i) {
		Clause c;
		for (auto& l : c.literals) {
			int var = 1 + static_cast<int>(draw_below(rng, static_cast<std::uint64_t>(num_vars)));
			l.value = draw_below(rng, 2) ? var : -var;
		}
		f.clauses.push_back(c);
	}
	return compact_variables(f);
}

inline std::string to_string(const Clause& c)
{
	std::string out = "(";
	for (std::size_t s = 0; s < 3; ++s) {
		if (s) {
			out += " | ";
		}
		const auto& l = c.literals[s];
		out += (l.positive() ? "x" : "~x") + std::to_string(l.variable());
	}
	return out + ")";
}

inline std::string to_string(const CnfFormula& f)
{
	std::string out;
	for (const auto& c : f.clauses) {
		if (!out.empty()) {
			out += " & ";
		}
		out += to_string(c);
	}
	return out.empty() ? "(empty)" : out;
}

} // namespace sortsupport
