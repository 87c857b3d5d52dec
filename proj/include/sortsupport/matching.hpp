#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace sortsupport {

inline constexpr std::size_t unmatched = std::numeric_limits<std::size_t>::max();

/// Maximum bipartite matching between `left` and `right` vertex sets.
/// Adjacency comes from a callable `for_each_neighbor(l, visit)` that calls
/// `visit(r)` for every right vertex adjacent to left vertex l. The callable
/// decides which edges exist, so callers can filter on the fly. Only left
/// vertices accepted by `is_active(l)` take part.
///
/// Buffers are kept between calls; one matcher can be reused across many
/// graphs of the same size.
class BipartiteMatcher
{
public:
	BipartiteMatcher(std::size_t left, std::size_t right)
		: match_left_(left, unmatched)
		, match_right_(right, unmatched)
		, dist_(left)
		, seen_(right, 0)
	{
	}

	/// Hopcroft-Karp from an empty matching.
	template<typename Neighbors, typename Active>
	std::size_t solve(Neighbors&& for_each_neighbor, Active&& is_active)
	{
		std::fill(match_left_.begin(), match_left_.end(), unmatched);
		std::fill(match_right_.begin(), match_right_.end(), unmatched);
		std::size_t size = 0;
		while (bfs(for_each_neighbor, is_active)) {
			for (std::size_t l = 0; l < match_left_.size(); ++l) {
				if (is_active(l) && match_left_[l] == unmatched && dfs(l, for_each_neighbor)) {
					++size;
				}
			}
		}
		return size;
	}

	template<typename Neighbors>
	std::size_t solve(Neighbors&& for_each_neighbor)
	{
		return solve(for_each_neighbor, [](std::size_t) { return true; });
	}

	/// Starts from the matching left by the previous call, keeps every pair
	/// for which `has_edge(l, r)` still holds, and grows it one augmenting path
	/// at a time. Cheap when the graph changed only a little. With
	/// `stop_on_miss`, returns as soon as some active vertex cannot be matched,
	/// so the result is then only a lower bound.
	template<typename Neighbors, typename HasEdge, typename Active>
	std::size_t resolve(Neighbors&& for_each_neighbor, HasEdge&& has_edge, Active&& is_active,
						bool stop_on_miss = false)
	{
		std::size_t size = 0;
		free_.clear();
		for (std::size_t l = 0; l < match_left_.size(); ++l) {
			if (!is_active(l)) {
				if (match_left_[l] != unmatched) {
					match_right_[match_left_[l]] = unmatched;
					match_left_[l] = unmatched;
				}
				continue;
			}
			const std::size_t r = match_left_[l];
			bool keep = false;
			if (r != unmatched) {
				keep = has_edge(l, r);
				if (!keep) {
					match_right_[r] = unmatched;
					match_left_[l] = unmatched;
				}
			}
			if (keep) {
				++size;
			} else {
				free_.push_back(l);
			}
		}
		for (std::size_t l : free_) {
			std::fill(seen_.begin(), seen_.end(), 0);
			if (kuhn(l, for_each_neighbor)) {
				++size;
			} else if (stop_on_miss) {
				return size;
			}
		}
		return size;
	}

	std::size_t mate_of_left(std::size_t l) const { return match_left_[l]; }
	std::size_t mate_of_right(std::size_t r) const { return match_right_[r]; }

private:
	static constexpr std::size_t infinity = std::numeric_limits<std::size_t>::max();

	template<typename Neighbors, typename Active>
	bool bfs(Neighbors& for_each_neighbor, Active& is_active)
	{
		std::queue<std::size_t> frontier;
		for (std::size_t l = 0; l < match_left_.size(); ++l) {
			if (is_active(l) && match_left_[l] == unmatched) {
				dist_[l] = 0;
				frontier.push(l);
			} else {
				dist_[l] = infinity;
			}
		}
		bool found_free = false;
		while (!frontier.empty()) {
			std::size_t l = frontier.front();
			frontier.pop();
			for_each_neighbor(l, [&](std::size_t r) {
				std::size_t next = match_right_[r];
				if (next == unmatched) {
					found_free = true;
				} else if (dist_[next] == infinity) {
					dist_[next] = dist_[l] + 1;
					frontier.push(next);
				}
			});
		}
		return found_free;
	}

	template<typename Neighbors>
	bool dfs(std::size_t l, Neighbors& for_each_neighbor)
	{
		bool augmented = false;
		for_each_neighbor(l, [&](std::size_t r) {
			if (augmented) {
				return;
			}
			std::size_t next = match_right_[r];
			if (next == unmatched || (dist_[next] == dist_[l] + 1 && dfs(next, for_each_neighbor))) {
				match_left_[l] = r;
				match_right_[r] = l;
				augmented = true;
			}
		});
		if (!augmented) {
			dist_[l] = infinity;
		}
		return augmented;
	}

	template<typename Neighbors>
	bool kuhn(std::size_t l, Neighbors& for_each_neighbor)
	{
		bool augmented = false;
		for_each_neighbor(l, [&](std::size_t r) {
			if (augmented || seen_[r]) {
				return;
			}
			seen_[r] = 1;
			std::size_t next = match_right_[r];
			if (next == unmatched || kuhn(next, for_each_neighbor)) {
				match_left_[l] = r;
				match_right_[r] = l;
				augmented = true;
			}
		});
		return augmented;
	}

	std::vector<std::size_t> match_left_;
	std::vector<std::size_t> match_right_;
	std::vector<std::size_t> dist_;
	std::vector<char> seen_;
	std::vector<std::size_t> free_;
};

} // namespace sortsupport
