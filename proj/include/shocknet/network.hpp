#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace shocknet {

/// Bit i set means link i+1 has failed.
using LinkMask = std::uint64_t;

/// Networks are limited to this many links so a failure set fits in a LinkMask.
inline constexpr std::size_t kMaxLinks = 64;

struct Link {
  int id;            // 1..n
  std::size_t u;     // node index
  std::size_t v;     // node index
};

/// Set of failed link ids.
struct FailureSet {
  std::set<int> failed;
};

/// Undirected multigraph with labeled links and a terminal set. Two-state:
/// the network is up iff every terminal lies in one component of the graph
/// restricted to surviving links. Immutable once built.
class Network {
 public:
  struct LinkSpec {
    int id;
    std::string u;
    std::string v;
  };

  /// Validates and builds. Link ids must be exactly {1..n}; endpoints and
  /// terminals must be declared nodes; at least two distinct terminals.
  static Network create(std::vector<std::string> node_ids, std::vector<LinkSpec> links,
                        std::vector<std::string> terminals);

  std::size_t link_count() const noexcept { return links_.size(); }
  std::size_t node_count() const noexcept { return node_ids_.size(); }
  const std::vector<std::string>& node_ids() const noexcept { return node_ids_; }
  /// Sorted by id; links()[i].id == i + 1.
  const std::vector<Link>& links() const noexcept { return links_; }
  const std::vector<std::size_t>& terminals() const noexcept { return terminals_; }

  std::size_t node_index(std::string_view id) const;

  /// All links failed.
  LinkMask full_mask() const noexcept;

  /// Network state for a failure mask (union-find over surviving links).
  bool up(LinkMask failed) const;

 private:
  Network() = default;

  std::vector<std::string> node_ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Link> links_;
  std::vector<std::size_t> terminals_;
};

/// Parses the line-oriented network format:
///   node <id>
///   link <int-id> <node> <node>
///   terminals <node> <node> ...
/// '#' starts a comment. Throws ParseError (with line number) or ValidationError.
Network parse_network(std::string_view text);
Network load_network(const std::string& path);

/// Rejects ids outside 1..n with ValidationError.
bool is_up(const Network& net, const FailureSet& failed);

LinkMask to_mask(const Network& net, const FailureSet& failed);

/// Structure function with a precomputed table of up/down states for small
/// networks; larger networks fall back to union-find per query.
class StructureFunction {
 public:
  /// Networks with at most this many links get a full lookup table.
  static constexpr std::size_t kTableLimit = 20;

  explicit StructureFunction(const Network& net);

  std::size_t link_count() const noexcept { return n_; }
  LinkMask full_mask() const noexcept { return full_; }
  const Network& network() const noexcept { return net_; }

  bool up(LinkMask failed) const {
    return table_.empty() ? net_.up(failed) : table_[failed] != 0;
  }
  bool cut(LinkMask failed) const { return !up(failed); }

 private:
  Network net_;
  std::size_t n_;
  LinkMask full_;
  std::vector<std::uint8_t> table_;
};

}  // namespace shocknet
