#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "shocknet/errors.hpp"
#include "shocknet/network.hpp"

using namespace shocknet;

TEST_CASE("example 2.1 file parses to three links with terminals a and c") {
  const Network net = fixtures::load("three_link.net");
  CHECK(net.link_count() == 3);
  CHECK(net.node_count() == 3);
  REQUIRE(net.terminals().size() == 2);
  CHECK(net.node_ids()[net.terminals()[0]] == "a");
  CHECK(net.node_ids()[net.terminals()[1]] == "c");
  CHECK(net.links()[1].u == net.node_index("b"));
  CHECK(net.links()[2].v == net.node_index("c"));
}

TEST_CASE("bridge file parses with five links") {
  const Network net = fixtures::load("bridge.net");
  CHECK(net.link_count() == 5);
  CHECK(net.node_count() == 4);
}

TEST_CASE("bridge connectivity") {
  const Network net = fixtures::load("bridge.net");
  CHECK(is_up(net, {{1, 5}}));
  CHECK_FALSE(is_up(net, {{1, 2}}));
  CHECK_FALSE(is_up(net, {{4, 5}}));
  CHECK(is_up(net, {{}}));
  CHECK(is_up(net, {{3}}));
  CHECK_FALSE(is_up(net, {{1, 3, 5}}));
  CHECK_THROWS_AS(is_up(net, {{6}}), ValidationError);
  CHECK_THROWS_AS(is_up(net, {{0}}), ValidationError);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_network(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("node a\nnode b\nlnk 1 a b\nterminals a b\n") == 3);
  CHECK(line_of("node a\nnode b\nlink x a b\nterminals a b\n") == 3);
  CHECK(line_of("node a b\n") == 1);
  CHECK(line_of("node a\nnode b\n# comment\nlink 1 a\n") == 4);
  CHECK(line_of("node a\nnode b\nlink 1 a b\nterminals a b\nterminals a b\n") == 5);
}

TEST_CASE("structural validation") {
  CHECK_THROWS_WITH_AS(parse_network("node a\nnode b\nlink 1 a b\nterminals\n"),
                       doctest::Contains("fewer than 2 terminals"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_network("node a\nnode b\nlink 1 a b\n"), doctest::Contains("fewer than 2 terminals"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(parse_network("node a\nnode b\nlink 1 a b\nterminals a a\n"),
                       doctest::Contains("terminal"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_network("node a\nnode b\nlink 1 a b\nlink 1 a b\nterminals a b\n"),
                       doctest::Contains("duplicate link id"), ValidationError);
  CHECK_THROWS_WITH_AS(parse_network("node a\nnode b\nlink 1 a z\nterminals a b\n"),
                       doctest::Contains("unknown endpoint"), ValidationError);
  CHECK_THROWS_AS(parse_network("node a\nnode b\nlink 2 a b\nterminals a b\n"), ValidationError);
  CHECK_THROWS_AS(parse_network("node a\nnode a\nlink 1 a a\nterminals a a\n"), ValidationError);
  CHECK_THROWS_AS(parse_network("node a\nnode b\nlink 1 a b\nterminals a q\n"), ValidationError);
  CHECK_THROWS_AS(load_network(fixtures::data_path("missing.net")), ValidationError);
}

TEST_CASE("parallel links and self-loops") {
  const Network net = parse_network(
      "node a\nnode b\nnode c\n"
      "link 1 a b\nlink 2 a b\nlink 3 c c\nlink 4 b b\n"
      "terminals a b\n");
  CHECK(is_up(net, {{1}}));
  CHECK(is_up(net, {{2, 3, 4}}));
  CHECK_FALSE(is_up(net, {{1, 2}}));
  CHECK(is_up(net, {{3, 4}}));
  CHECK_FALSE(is_up(net, {{1, 2, 3, 4}}));
}

TEST_CASE("structure function table agrees with union-find and is coherent") {
  Rng rng(7);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 3 + rep % 6;
    const Network net = fixtures::random_network(2 + rep % 4, n, rng);
    const StructureFunction sf(net);
    CHECK(sf.up(0));
    CHECK(sf.cut(sf.full_mask()));
    for (LinkMask m = 0; m <= sf.full_mask(); ++m) {
      REQUIRE(sf.up(m) == net.up(m));
      // Monotone: failing one more link never brings the network back up.
      for (std::size_t i = 0; i < n; ++i) {
        const LinkMask more = m | (LinkMask{1} << i);
        if (!sf.up(m)) REQUIRE_FALSE(sf.up(more));
      }
    }
  }
}

TEST_CASE("union-find path for networks above the table limit") {
  const Network net = fixtures::series(24);
  const StructureFunction sf(net);
  CHECK(sf.up(0));
  CHECK(sf.cut(LinkMask{1} << 23));
  CHECK(sf.link_count() == 24);
}
