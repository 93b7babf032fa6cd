#include <doctest.h>

#include <random>

#include "spinweave/couplings.hpp"
#include "spinweave/network.hpp"

using namespace spinweave;

TEST_CASE("build_path shapes") {
  const SpinNetwork two = build_path(2);
  CHECK(two.size() == 2);
  CHECK(two.edges().size() == 1);
  CHECK(two.role(1) == SiteRole::Input);
  CHECK(two.role(2) == SiteRole::BranchEnd);

  const SpinNetwork three = build_path(3);
  CHECK(three.size() == 3);
  CHECK(three.hubs().empty());

  const SpinNetwork seven = build_path(7);
  CHECK(seven.size() == 7);
  CHECK(seven.branch_ends() == std::vector<int>{7});

  CHECK_THROWS_AS(build_path(1), InvalidArgument);
}

TEST_CASE("build_y labelling follows the clockwise convention") {
  const SpinNetwork y4 = build_y(1, 1, 1);
  CHECK(y4.size() == 4);
  CHECK(y4.hubs() == std::vector<int>{2});
  CHECK(y4.branch_ends() == std::vector<int>{3, 4});

  const SpinNetwork y333 = build_y(3, 3, 3);
  CHECK(y333.size() == 10);
  CHECK(y333.branch_ends() == std::vector<int>{7, 10});  // n2, n3
  CHECK(y333.hubs() == std::vector<int>{4});
  CHECK(y333.branch_table().size() == 3);
  CHECK(y333.branch_table()[0] == std::vector<int>{1, 2, 3});
  CHECK(y333.branch_table()[1] == std::vector<int>{5, 6, 7});
  CHECK(y333.branch_table()[2] == std::vector<int>{8, 9, 10});

  const SpinNetwork y711 = build_y(7, 1, 1);
  CHECK(y711.size() == 10);
  CHECK(y711.hubs() == std::vector<int>{8});
  CHECK(y711.branch_ends() == std::vector<int>{9, 10});

  CHECK_THROWS_AS(build_y(0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(build_y(1, 1, 0), InvalidArgument);
}

TEST_CASE("build_star shapes and the p=2 degeneration") {
  const SpinNetwork y = build_star(1, 1, 2);
  CHECK(y.size() == 4);
  CHECK(y.hubs() == std::vector<int>{2});

  const SpinNetwork fig7a = build_star(2, 1, 4);
  CHECK(fig7a.size() == 7);
  CHECK(fig7a.branch_ends() == std::vector<int>{4, 5, 6, 7});

  CHECK(build_star(3, 2, 3).size() == 10);
  CHECK_THROWS_AS(build_star(3, 2, 1), InvalidArgument);

  // star(m, l, 2) is build_y(m, l, l), including labels.
  const SpinNetwork star = build_star(2, 3, 2);
  const SpinNetwork wye = build_y(2, 3, 3);
  REQUIRE(star.size() == wye.size());
  REQUIRE(star.edges().size() == wye.edges().size());
  for (std::size_t i = 0; i < star.edges().size(); ++i) {
    CHECK(star.edges()[i].a == wye.edges()[i].a);
    CHECK(star.edges()[i].b == wye.edges()[i].b);
  }
  CHECK(star.branch_ends() == wye.branch_ends());
}

TEST_CASE("build_tree covers bifurcations and degenerate paths") {
  // Y with each output branch ending in a two-way bifurcation.
  const TreeSpec fig9{3,
                      {TreeSpec{2, {TreeSpec{1, {}}, TreeSpec{1, {}}}},
                       TreeSpec{2, {TreeSpec{1, {}}, TreeSpec{1, {}}}}}};
  const SpinNetwork net = build_tree(fig9, true);
  CHECK(net.size() == 14);
  CHECK(net.branch_ends() == std::vector<int>{8, 9, 13, 14});
  CHECK(net.hubs() == std::vector<int>{4, 7, 12});

  // Single segment, no children: a path.
  const SpinNetwork path = build_tree(TreeSpec{5, {}});
  CHECK(path.size() == 5);
  CHECK(path.hubs().empty());

  // Two-level asymmetric-weight tree: one branch plain, one bifurcating.
  const TreeSpec two_level{2,
                           {TreeSpec{3, {}},
                            TreeSpec{1, {TreeSpec{1, {}}, TreeSpec{1, {}}}}}};
  const SpinNetwork asym = build_tree(two_level, true);
  CHECK(asym.branch_ends().size() == 3);

  // Unequal output path lengths trip the transfer-timed check.
  const TreeSpec unequal{2, {TreeSpec{2, {}}, TreeSpec{3, {}}}};
  CHECK_THROWS_AS(build_tree(unequal, true), InvalidArgument);
  CHECK(build_tree(unequal, false).size() == 8);

  // A hub with a single child is not a hub.
  CHECK_THROWS_AS(build_tree(TreeSpec{2, {TreeSpec{2, {}}}}), InvalidArgument);
}

TEST_CASE("trees have N-1 edges and stay connected") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> seg(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    TreeSpec spec{seg(rng) + 1, {}};
    if (trial % 2 == 0) {
      int width = 2 + trial % 3;
      for (int b = 0; b < width; ++b) spec.children.push_back(TreeSpec{seg(rng), {}});
    }
    const SpinNetwork net = build_tree(spec);
    CHECK(static_cast<int>(net.edges().size()) == net.size() - 1);
    CHECK(net.size() == tree_site_count(spec));
  }
}

TEST_CASE("check_output_symmetry") {
  const SpinNetwork y = assign_perfect_transfer(build_y(3, 3, 3), 1.0);
  CHECK(check_output_symmetry(y));

  const SpinNetwork random = assign_random_matched(build_y(3, 3, 3), 42);
  CHECK(check_output_symmetry(random));

  // Perturb a single branch coupling.
  std::vector<double> couplings;
  for (const Edge& e : y.edges()) couplings.push_back(e.coupling);
  couplings.back() += 1e-3;
  CHECK_FALSE(check_output_symmetry(y.with_couplings(couplings)));

  // Swapping the two branch coupling sequences leaves the answer alone.
  const SpinNetwork swapped = [&] {
    std::vector<double> j;
    for (const Edge& e : random.edges()) j.push_back(e.coupling);
    // Edges (4,5),(5,6),(6,7) <-> (4,8),(8,9),(9,10) in sorted edge order.
    const SpinNetwork& n = random;
    std::vector<double> out;
    for (const Edge& e : n.edges()) {
      if (e.a == 4 && e.b == 5) out.push_back(n.coupling(4, 8));
      else if (e.a == 5) out.push_back(n.coupling(8, 9));
      else if (e.a == 6) out.push_back(n.coupling(9, 10));
      else if (e.a == 4 && e.b == 8) out.push_back(n.coupling(4, 5));
      else if (e.a == 8) out.push_back(n.coupling(5, 6));
      else if (e.a == 9) out.push_back(n.coupling(6, 7));
      else out.push_back(e.coupling);
    }
    return n.with_couplings(out);
  }();
  CHECK(check_output_symmetry(swapped) == check_output_symmetry(random));

  CHECK_THROWS_AS(check_output_symmetry(build_path(5)), InvalidArgument);
  CHECK_THROWS_AS(check_output_symmetry(build_star(1, 1, 3)), InvalidArgument);
}

TEST_CASE("network text round trip is bit exact") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  SpinNetwork net = build_y(2, 3, 3);
  std::vector<double> couplings;
  couplings.reserve(net.edges().size());
  for (std::size_t i = 0; i < net.edges().size(); ++i) couplings.push_back(u(rng));
  net = net.with_couplings(couplings);

  const std::string text = net.to_text();
  const SpinNetwork back = SpinNetwork::from_text(text);
  REQUIRE(back.size() == net.size());
  REQUIRE(back.edges().size() == net.edges().size());
  for (std::size_t i = 0; i < net.edges().size(); ++i) {
    CHECK(back.edges()[i].a == net.edges()[i].a);
    CHECK(back.edges()[i].b == net.edges()[i].b);
    CHECK(back.edges()[i].coupling == net.edges()[i].coupling);  // bitwise
  }
  CHECK(back.to_text() == text);
}

TEST_CASE("network text parse errors") {
  CHECK_THROWS_AS(SpinNetwork::from_text("1 2 0.5\n"), ParseError);
  CHECK_THROWS_AS(SpinNetwork::from_text("sites 3 input 1\n1 2 1.0\nhub x\n"), ParseError);
  CHECK_THROWS_AS(
      SpinNetwork::from_text("sites 3 input 1\nhub 2\n1 2 1.0\n2 3 1.0\n"),
      ParseError);  // degree-2 site declared as hub
}

TEST_CASE("network validation rejects malformed graphs") {
  CHECK_THROWS_AS(SpinNetwork(3, {{1, 2, 1.0}, {1, 2, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(SpinNetwork(3, {{1, 2, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(SpinNetwork(4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, -1.0}}),
                  InvalidArgument);
  CHECK_THROWS_AS(SpinNetwork(4, {{1, 2, 1.0}, {3, 4, 1.0}, {2, 1, 2.0}}),
                  InvalidArgument);
  // Input site in the middle of a chain.
  CHECK_THROWS_AS(SpinNetwork(3, {{1, 2, 1.0}, {2, 3, 1.0}}, 2), InvalidArgument);
}
