#pragma once

#include <sortsupport/error.hpp>
#include <sortsupport/intervals.hpp>
#include <sortsupport/matching.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sortsupport {

enum class Side { U, V };

inline char side_char(Side s) { return s == Side::U ? 'u' : 'v'; }

/// One SortSupport decision problem: sort(U,V), optionally with permutation
/// variables P (sort(U,V,P)) and a stability requirement (keysorting with a
/// single scalar key). Indices are 0-based in code and 1-based in text.
class SortInstance
{
public:
	SortInstance(std::vector<IntegerSet> u_domains, std::vector<IntegerSet> v_domains,
				 std::optional<std::vector<IntegerSet>> p_domains = std::nullopt, bool stable = false)
		: u_(std::move(u_domains))
		, v_(std::move(v_domains))
		, p_(std::move(p_domains))
		, stable_(stable)
	{
		if (u_.empty()) {
			throw InputError("instance needs at least one variable per side");
		}
		if (u_.size() != v_.size()) {
			throw InputError("U has " + std::to_string(u_.size()) + " variables but V has " +
							 std::to_string(v_.size()));
		}
		for (std::size_t i = 0; i < u_.size(); ++i) {
			if (u_[i].empty()) {
				throw InputError("Dom(u" + std::to_string(i + 1) + ") is empty");
			}
			if (v_[i].empty()) {
				throw InputError("Dom(v" + std::to_string(i + 1) + ") is empty");
			}
		}
		if (p_) {
			if (p_->size() != u_.size()) {
				throw InputError("P must have one variable per U variable");
			}
			const auto positions = IntegerSet::interval(1, static_cast<Value>(u_.size()));
			for (std::size_t i = 0; i < p_->size(); ++i) {
				if ((*p_)[i].empty() || !(*p_)[i].is_subset_of(positions)) {
					throw InputError("Dom(p" + std::to_string(i + 1) + ") must be a non-empty subset of [1.." +
									 std::to_string(u_.size()) + "]");
				}
			}
		}
	}

	std::size_t size() const { return u_.size(); }

	const IntegerSet& u(std::size_t i) const { return u_.at(i); }
	const IntegerSet& v(std::size_t j) const { return v_.at(j); }
	const IntegerSet& domain(Side side, std::size_t index) const { return side == Side::U ? u(index) : v(index); }

	const std::vector<IntegerSet>& u_domains() const { return u_; }
	const std::vector<IntegerSet>& v_domains() const { return v_; }
	const std::optional<std::vector<IntegerSet>>& p_domains() const { return p_; }
	bool has_p() const { return p_.has_value(); }
	bool stable() const { return stable_; }

	/// May u_i sit at V-position j (0-based)? Always true without P.
	bool position_allowed(std::size_t i, std::size_t j) const
	{
		return !p_ || (*p_)[i].contains(static_cast<Value>(j + 1));
	}

	SortInstance with_domain(Side side, std::size_t index, IntegerSet dom) const
	{
		SortInstance copy = *this;
		(side == Side::U ? copy.u_ : copy.v_).at(index) = std::move(dom);
		copy.validate_domain(side, index);
		return copy;
	}

	SortInstance with_p(std::optional<std::vector<IntegerSet>> p) const
	{
		return SortInstance(u_, v_, std::move(p), stable_);
	}

	SortInstance with_stable(bool stable) const
	{
		SortInstance copy = *this;
		copy.stable_ = stable;
		return copy;
	}

	/// Every non-empty domain replaced by [min..max].
	SortInstance hulled() const
	{
		SortInstance copy = *this;
		for (auto& d : copy.u_) {
			d = d.hull();
		}
		for (auto& d : copy.v_) {
			d = d.hull();
		}
		return copy;
	}

	friend bool operator==(const SortInstance&, const SortInstance&) = default;

private:
	void validate_domain(Side side, std::size_t index) const
	{
		if (domain(side, index).empty()) {
			throw InputError(std::string("Dom(") + side_char(side) + std::to_string(index + 1) + ") is empty");
		}
	}

	std::vector<IntegerSet> u_;
	std::vector<IntegerSet> v_;
	std::optional<std::vector<IntegerSet>> p_;
	bool stable_ = false;
};

/// Gamma(U,V): u_i -- v_j iff Dom(u_i) and Dom(v_j) intersect.
struct IntersectionGraph
{
	std::size_t n = 0;
	/// by_v[j] lists the adjacent U indices in ascending order.
	std::vector<std::vector<std::size_t>> by_v;

	std::size_t edge_count() const
	{
		std::size_t total = 0;
		for (const auto& adj : by_v) {
			total += adj.size();
		}
		return total;
	}

	/// (u, v) pairs sorted by u then v.
	std::vector<std::pair<std::size_t, std::size_t>> edges() const
	{
		std::vector<std::pair<std::size_t, std::size_t>> out;
		for (std::size_t j = 0; j < by_v.size(); ++j) {
			for (std::size_t i : by_v[j]) {
				out.emplace_back(i, j);
			}
		}
		std::sort(out.begin(), out.end());
		return out;
	}

	bool has_edge(std::size_t u, std::size_t v) const
	{
		const auto& adj = by_v.at(v);
		return std::binary_search(adj.begin(), adj.end(), u);
	}
};

inline IntersectionGraph build_intersection_graph(const SortInstance& inst)
{
	IntersectionGraph g;
	g.n = inst.size();
	g.by_v.resize(g.n);
	for (std::size_t j = 0; j < g.n; ++j) {
		for (std::size_t i = 0; i < g.n; ++i) {
			if (inst.u(i).intersects(inst.v(j))) {
				g.by_v[j].push_back(i);
			}
		}
	}
	return g;
}

/// Partial injective map from V indices to U indices; `unmatched` marks a
/// free V vertex.
struct Matching
{
	std::vector<std::size_t> assignment;

	bool is_total() const
	{
		return std::none_of(assignment.begin(), assignment.end(), [](std::size_t u) { return u == unmatched; });
	}

	bool is_injective() const
	{
		std::vector<char> seen;
		for (std::size_t u : assignment) {
			if (u == unmatched) {
				continue;
			}
			if (u >= seen.size()) {
				seen.resize(u + 1, 0);
			}
			if (seen[u]) {
				return false;
			}
			seen[u] = 1;
		}
		return true;
	}
};

/// Q_j = Dom(sigma(v_j)) /\ Dom(v_j), in V order.
inline std::vector<IntegerSet> q_sets(const SortInstance& inst, const Matching& m)
{
	if (m.assignment.size() != inst.size() || !m.is_total()) {
		throw InputError("q_sets needs a matching that is total on V");
	}
	std::vector<IntegerSet> q;
	q.reserve(inst.size());
	for (std::size_t j = 0; j < inst.size(); ++j) {
		q.push_back(inst.u(m.assignment[j]).intersect(inst.v(j)));
	}
	return q;
}

/// Q_1 <=lex Q_2 <=lex ... <=lex Q_n read as consecutive pairwise relations,
/// with every Q_j non-empty. Weaker than the existence of sorted values.
inline bool weak_chain_holds(const std::vector<IntegerSet>& q)
{
	for (const auto& s : q) {
		if (s.empty()) {
			return false;
		}
	}
	for (std::size_t j = 0; j + 1 < q.size(); ++j) {
		if (!lex_leq(q[j], q[j + 1])) {
			return false;
		}
	}
	return true;
}

/// Greedy nondecreasing system of representatives: delta_1 = min Q_1,
/// delta_j = smallest element of Q_j that is >= delta_{j-1}. Succeeds iff any
/// nondecreasing selection exists.
inline std::optional<std::vector<Value>> representatives(const std::vector<IntegerSet>& q)
{
	std::vector<Value> out;
	out.reserve(q.size());
	for (const auto& s : q) {
		auto next = out.empty() ? (s.empty() ? std::nullopt : std::optional<Value>(s.min())) : s.least_geq(out.back());
		if (!next) {
			return std::nullopt;
		}
		out.push_back(*next);
	}
	return out;
}

/// A concrete support: sigma[j] is the U index feeding V position j,
/// values[j] the shared value, perm[i] the V position (0-based) of u_i.
struct SupportWitness
{
	std::vector<std::size_t> sigma;
	std::vector<Value> values;
	std::vector<std::size_t> perm;

	static SupportWitness from_sigma(std::vector<std::size_t> sigma, std::vector<Value> values)
	{
		SupportWitness w{std::move(sigma), std::move(values), {}};
		w.perm.assign(w.sigma.size(), unmatched);
		for (std::size_t j = 0; j < w.sigma.size(); ++j) {
			if (w.sigma[j] < w.perm.size()) {
				w.perm[w.sigma[j]] = j;
			}
		}
		return w;
	}

	Matching matching() const { return Matching{sigma}; }

	friend bool operator==(const SupportWitness&, const SupportWitness&) = default;
};

struct WitnessChecks
{
	bool permutation = true;
	bool stability = false;

	static WitnessChecks for_instance(const SortInstance& inst) { return {inst.has_p(), inst.stable()}; }
};

struct WitnessReport
{
	std::vector<std::string> violations;

	bool valid() const { return violations.empty(); }
	explicit operator bool() const { return valid(); }
};

inline WitnessReport validate_witness(const SortInstance& inst, const SupportWitness& w, WitnessChecks checks)
{
	WitnessReport report;
	auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
	const std::size_t n = inst.size();
	if (w.sigma.size() != n || w.values.size() != n || w.perm.size() != n) {
		fail("witness arrays must all have length " + std::to_string(n));
		return report;
	}
	std::vector<char> seen(n, 0);
	for (std::size_t j = 0; j < n; ++j) {
		std::size_t i = w.sigma[j];
		if (i >= n) {
			fail("sigma(v" + std::to_string(j + 1) + ") is out of range");
			continue;
		}
		if (seen[i]) {
			fail("u" + std::to_string(i + 1) + " is assigned to two V positions");
		}
		seen[i] = 1;
		if (w.perm[i] != j) {
			fail("perm of u" + std::to_string(i + 1) + " disagrees with sigma");
		}
	}
	if (!report.valid()) {
		return report;
	}
	for (std::size_t j = 0; j < n; ++j) {
		const Value x = w.values[j];
		const std::size_t i = w.sigma[j];
		if (j > 0 && w.values[j - 1] > x) {
			fail("values not sorted at v" + std::to_string(j + 1));
		}
		if (!inst.v(j).contains(x)) {
			fail(std::to_string(x) + " not in Dom(v" + std::to_string(j + 1) + ")");
		}
		if (!inst.u(i).contains(x)) {
			fail(std::to_string(x) + " not in Dom(u" + std::to_string(i + 1) + ")");
		}
		if (checks.permutation && !inst.position_allowed(i, j)) {
			fail("p" + std::to_string(i + 1) + " = " + std::to_string(j + 1) + " outside Dom(p" + std::to_string(i + 1) +
				 ")");
		}
		if (checks.stability && j > 0 && w.values[j - 1] == x && w.sigma[j - 1] > i) {
			fail("unstable: u" + std::to_string(w.sigma[j - 1] + 1) + " precedes u" + std::to_string(i + 1) +
				 " with equal value " + std::to_string(x));
		}
	}
	return report;
}

inline WitnessReport validate_witness(const SortInstance& inst, const SupportWitness& w)
{
	return validate_witness(inst, w, WitnessChecks::for_instance(inst));
}

// ---------------------------------------------------------------------------
// Instance text format
//
//   sortsupport <n> [perm] [stable]
//   u <i> <interval-list>        n lines
//   v <j> <interval-list>        n lines
//   p <i> <interval-list>        n lines, only with `perm`
//
// `#` starts a comment. Indices are 1-based.
// ---------------------------------------------------------------------------

inline std::string render_instance(const SortInstance& inst)
{
	std::ostringstream out;
	out << "sortsupport " << inst.size();
	if (inst.has_p()) {
		out << " perm";
	}
	if (inst.stable()) {
		out << " stable";
	}
	out << '\n';
	for (std::size_t i = 0; i < inst.size(); ++i) {
		out << "u " << i + 1 << ' ' << to_string(inst.u(i)) << '\n';
	}
	for (std::size_t j = 0; j < inst.size(); ++j) {
		out << "v " << j + 1 << ' ' << to_string(inst.v(j)) << '\n';
	}
	if (inst.has_p()) {
		for (std::size_t i = 0; i < inst.size(); ++i) {
			out << "p " << i + 1 << ' ' << to_string((*inst.p_domains())[i]) << '\n';
		}
	}
	return out.str();
}

namespace detail {

inline std::string_view strip_comment(std::string_view line)
{
	if (auto hash = line.find('#'); hash != std::string_view::npos) {
		line = line.substr(0, hash);
	}
	while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
		line.remove_suffix(1);
	}
	while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
		line.remove_prefix(1);
	}
	return line;
}

inline std::vector<std::string_view> split_lines(std::string_view text)
{
	std::vector<std::string_view> lines;
	std::size_t start = 0;
	while (start <= text.size()) {
		std::size_t end = text.find('\n', start);
		if (end == std::string_view::npos) {
			end = text.size();
		}
		std::string_view line = text.substr(start, end - start);
		if (!line.empty() && line.back() == '\r') {
			line.remove_suffix(1);
		}
		lines.push_back(line);
		start = end + 1;
	}
	return lines;
}

} // namespace detail

inline SortInstance parse_instance(std::string_view text)
{
	std::size_t n = 0;
	bool has_header = false;
	bool perm = false;
	bool stable = false;
	std::vector<std::optional<IntegerSet>> u, v, p;

	const auto lines = detail::split_lines(text);
	for (std::size_t ln = 0; ln < lines.size(); ++ln) {
		std::string_view line = detail::strip_comment(lines[ln]);
		if (line.empty()) {
			continue;
		}
		std::istringstream in{std::string(line)};
		std::string tag;
		in >> tag;
		if (!has_header) {
			if (tag != "sortsupport" || !(in >> n) || n == 0) {
				throw ParseError(ln + 1, "expected header 'sortsupport <n> [perm] [stable]'");
			}
			std::string flag;
			while (in >> flag) {
				if (flag == "perm") {
					perm = true;
				} else if (flag == "stable") {
					stable = true;
				} else {
					throw ParseError(ln + 1, "unknown header flag '" + flag + "'");
				}
			}
			has_header = true;
			u.assign(n, std::nullopt);
			v.assign(n, std::nullopt);
			p.assign(n, std::nullopt);
			continue;
		}
		std::vector<std::optional<IntegerSet>>* target = nullptr;
		if (tag == "u") {
			target = &u;
		} else if (tag == "v") {
			target = &v;
		} else if (tag == "p" && perm) {
			target = &p;
		} else {
			throw ParseError(ln + 1, "unexpected line tag '" + tag + "'");
		}
		std::size_t index = 0;
		if (!(in >> index) || index == 0 || index > n) {
			throw ParseError(ln + 1, "index must be in [1.." + std::to_string(n) + "]");
		}
		if ((*target)[index - 1]) {
			throw ParseError(ln + 1, "duplicate " + tag + " " + std::to_string(index));
		}
		std::string rest;
		std::getline(in, rest);
		try {
			(*target)[index - 1] = parse_integer_set(rest);
		} catch (const ParseError& e) {
			throw ParseError(ln + 1, e.what());
		}
	}
	if (!has_header) {
		throw ParseError("missing 'sortsupport' header");
	}

	auto collect = [&](std::vector<std::optional<IntegerSet>>& src, char tag) {
		std::vector<IntegerSet> out;
		out.reserve(n);
		for (std::size_t i = 0; i < n; ++i) {
			if (!src[i]) {
				throw ParseError(std::string("missing line '") + tag + ' ' + std::to_string(i + 1) + "'");
			}
			out.push_back(std::move(*src[i]));
		}
		return out;
	};
	auto ud = collect(u, 'u');
	auto vd = collect(v, 'v');
	std::optional<std::vector<IntegerSet>> pd;
	if (perm) {
		pd = collect(p, 'p');
	}
	try {
		return SortInstance(std::move(ud), std::move(vd), std::move(pd), stable);
	} catch (const InputError& e) {
		throw ParseError(e.what());
	}
}

} // namespace sortsupport
