#include "shocknet/network.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "shocknet/errors.hpp"

namespace shocknet {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

}  // namespace

Network Network::create(std::vector<std::string> node_ids, std::vector<LinkSpec> links,
                        std::vector<std::string> terminals) {
  Network net;
  for (auto& id : node_ids) {
    if (!net.index_.emplace(id, net.node_ids_.size()).second)
      throw ValidationError("duplicate node '" + id + "'");
    net.node_ids_.push_back(std::move(id));
  }
  if (links.empty()) throw ValidationError("network has no links");
  if (links.size() > kMaxLinks)
    throw ValidationError("at most " + std::to_string(kMaxLinks) + " links are supported");

  std::vector<bool> seen(links.size() + 1, false);
  net.links_.resize(links.size());
  for (const auto& l : links) {
    if (l.id < 1 || static_cast<std::size_t>(l.id) > links.size())
      throw ValidationError("link id " + std::to_string(l.id) + " outside 1.." +
                            std::to_string(links.size()));
    if (seen[l.id]) throw ValidationError("duplicate link id " + std::to_string(l.id));
    seen[l.id] = true;
    for (const auto* end : {&l.u, &l.v})
      if (!net.index_.count(*end))
        throw ValidationError("link " + std::to_string(l.id) + ": unknown endpoint node '" +
                              *end + "'");
    net.links_[l.id - 1] = Link{l.id, net.index_.at(l.u), net.index_.at(l.v)};
  }

  for (const auto& t : terminals) {
    auto it = net.index_.find(t);
    if (it == net.index_.end()) throw ValidationError("unknown terminal node '" + t + "'");
    if (std::find(net.terminals_.begin(), net.terminals_.end(), it->second) !=
        net.terminals_.end())
      throw ValidationError("duplicate terminal '" + t + "'");
    net.terminals_.push_back(it->second);
  }
  if (net.terminals_.size() < 2) throw ValidationError("fewer than 2 terminals");
  return net;
}

std::size_t Network::node_index(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw ValidationError("unknown node '" + std::string(id) + "'");
  return it->second;
}

LinkMask Network::full_mask() const noexcept {
  return links_.size() == 64 ? ~LinkMask{0} : (LinkMask{1} << links_.size()) - 1;
}

bool Network::up(LinkMask failed) const {
  DisjointSets sets(node_ids_.size());
  for (std::size_t i = 0; i < links_.size(); ++i)
    if (!(failed >> i & 1)) sets.unite(links_[i].u, links_[i].v);
  const std::size_t root = sets.find(terminals_.front());
  return std::all_of(terminals_.begin() + 1, terminals_.end(),
                     [&](std::size_t t) { return sets.find(t) == root; });
}

Network parse_network(std::string_view text) {
  std::vector<std::string> nodes;
  std::vector<Network::LinkSpec> links;
  std::vector<std::string> terminals;
  bool have_terminals = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;

    const std::string& keyword = words[0];
    if (keyword == "node") {
      if (words.size() != 2) throw ParseError(line_no, "expected 'node <id>'");
      nodes.push_back(words[1]);
    } else if (keyword == "link") {
      if (words.size() != 4) throw ParseError(line_no, "expected 'link <int-id> <node> <node>'");
      int id = 0;
      std::size_t used = 0;
      try {
        id = std::stoi(words[1], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != words[1].size()) throw ParseError(line_no, "link id '" + words[1] + "' is not an integer");
      links.push_back({id, words[2], words[3]});
    } else if (keyword == "terminals") {
      if (have_terminals) throw ParseError(line_no, "terminals declared twice");
      have_terminals = true;
      terminals.assign(words.begin() + 1, words.end());
    } else {
      throw ParseError(line_no, "unknown directive '" + keyword + "'");
    }
  }
  return Network::create(std::move(nodes), std::move(links), std::move(terminals));
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open network file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

LinkMask to_mask(const Network& net, const FailureSet& failed) {
  LinkMask mask = 0;
  for (int id : failed.failed) {
    if (id < 1 || static_cast<std::size_t>(id) > net.link_count())
      throw ValidationError("unknown link id " + std::to_string(id));
    mask |= LinkMask{1} << (id - 1);
  }
  return mask;
}

bool is_up(const Network& net, const FailureSet& failed) { return net.up(to_mask(net, failed)); }

StructureFunction::StructureFunction(const Network& net)
    : net_(net), n_(net.link_count()), full_(net.full_mask()) {
  if (n_ > kTableLimit) return;
  table_.resize(std::size_t{1} << n_);
  for (LinkMask m = 0; m < table_.size(); ++m) table_[m] = net.up(m) ? 1 : 0;
}

}  // namespace shocknet
