#pragma once

#include <sortsupport/instance.hpp>
#include <sortsupport/reduction.hpp>

#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace sortsupport {

inline const char* edge_color(EdgeKind k)
{
	switch (k) {
	case EdgeKind::up: return "firebrick";
	case EdgeKind::down: return "royalblue";
	case EdgeKind::up_linking: return "darkorange";
	case EdgeKind::down_linking: return "deepskyblue";
	case EdgeKind::lateral: return "forestgreen";
	case EdgeKind::completion: return "gray40";
	}
	return "black";
}

/// Intersection graph as an undirected DOT graph with U on the left and V on
/// the right. With a trace, nodes carry gadget labels and edges are colored
/// and labeled by kind.
inline std::string render_dot(const SortInstance& inst, const ReductionTrace* trace = nullptr)
{
	const auto edges = build_intersection_graph(inst).edges();
	std::map<std::pair<std::size_t, std::size_t>, EdgeKind> kinds;
	if (trace) {
		for (const auto& e : trace->edges) {
			kinds.emplace(std::pair(e.u, e.v), e.kind);
		}
	}
	std::ostringstream out;
	out << "graph sortsupport {\n  rankdir=LR;\n  node [shape=circle];\n";
	for (Side side : {Side::U, Side::V}) {
		out << "  subgraph cluster_" << side_char(side) << " {\n    label=\"" << (side == Side::U ? 'U' : 'V')
			<< "\";\n";
		for (std::size_t i = 0; i < inst.size(); ++i) {
			out << "    " << side_char(side) << i + 1 << " [label=\"" << side_char(side) << i + 1;
			if (trace && i < trace->n) {
				const auto& labels = side == Side::U ? trace->u_labels : trace->v_labels;
				out << "\\n" << label_name(labels[i]);
			}
			out << "\\n" << to_string(inst.domain(side, i)) << "\"];\n";
		}
		out << "  }\n";
	}
	for (const auto& [u, v] : edges) {
		out << "  u" << u + 1 << " -- v" << v + 1;
		auto it = kinds.find({u, v});
		if (it != kinds.end()) {
			out << " [color=" << edge_color(it->second) << ", label=\"" << to_string(it->second) << "\"]";
		}
		out << ";\n";
	}
	out << "}\n";
	return out.str();
}

} // namespace sortsupport
