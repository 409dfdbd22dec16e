#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "k3sym/groups.hpp"

using namespace k3sym::groups;

namespace {

std::vector<const char*> all_builtin_names() {
  std::vector<const char*> v;
  for (const auto& n : builtin_names()) v.push_back(n.c_str());
  for (const auto& n : extra_names()) v.push_back(n.c_str());
  return v;
}

// split "(a,b)" at the unique top-level comma of a PermPair label
std::pair<std::string, std::string> split_pair_label(const std::string& lbl) {
  int depth = 0;
  for (std::size_t i = 1; i + 1 < lbl.size(); ++i) {
    if (lbl[i] == '(') ++depth;
    else if (lbl[i] == ')') --depth;
    else if (lbl[i] == ',' && depth == 0)
      return {lbl.substr(1, i - 1), lbl.substr(i + 1, lbl.size() - i - 2)};
  }
  throw std::runtime_error("bad pair label " + lbl);
}

}  // namespace

TEST_CASE("builtin tables cross-check") {
  for (const auto& [name, exp] : builtin_expected_table()) {
    CAPTURE(name);
    const FiniteGroup& g = builtin(name);
    CHECK(long(g.order()) == exp.order);
    auto cd = g.commutator_data();
    CHECK(long(cd.subgroup.order()) == exp.commutator_order);
    CHECK(cd.abelianization == exp.abelianization);
  }
}

TEST_CASE("group order examples") {
  CHECK(builtin("T_192").order() == 192);
  CHECK(builtin("trivial").order() == 1);
  CHECK(builtin("L_2(7)").order() == 168);
  CHECK(builtin("M_20").order() == 960);
  CHECK(builtin("l27").order() == 168);  // alias
  CHECK_THROWS_AS(builtin("nonsense"), std::invalid_argument);
}

TEST_CASE("class equation invariants") {
  for (const char* name : all_builtin_names()) {
    CAPTURE(name);
    const FiniteGroup& g = builtin(name);
    long total = 0;
    for (const auto& c : g.conjugacy_classes()) {
      total += c.size;
      CHECK(long(g.order()) % c.size == 0);
      CHECK(c.size * c.centralizer_order == long(g.order()));
    }
    CHECK(total == long(g.order()));
  }
}

TEST_CASE("L_2(7) class data") {
  const FiniteGroup& g = builtin("L_2(7)");
  std::set<int> orders;
  std::map<int, long> by_order;
  for (const auto& c : g.conjugacy_classes()) {
    orders.insert(c.element_order);
    by_order[c.element_order] += c.size;
  }
  CHECK(orders == std::set<int>{1, 2, 3, 4, 7});
  CHECK(by_order[2] == 21);
  CHECK(by_order[3] == 56);
  CHECK(by_order[4] == 42);
  CHECK(by_order[7] == 48);
}

TEST_CASE("A_6 order-3 classes") {
  const FiniteGroup& g = builtin("A_6");
  int n3 = 0;
  for (const auto& c : g.conjugacy_classes())
    if (c.element_order == 3) {
      ++n3;
      CHECK(c.centralizer_order == 9);
    }
  CHECK(n3 == 2);
  // and the centralizer subgroup itself has order 9
  CHECK(g.centralizer(g.find_element_of_order(3)).order() == 9);
}

TEST_CASE("A_4 x A_4 order-3 classes and fusion in A_{4,4}") {
  const FiniteGroup& h = builtin("A_4xA_4");
  std::vector<long> sizes;
  for (const auto& c : h.conjugacy_classes())
    if (c.element_order == 3) sizes.push_back(c.size);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<long>{4, 4, 4, 4, 16, 16, 16, 16});

  const FiniteGroup& g = builtin("A_{4,4}");
  std::vector<long> gsizes;
  int shape_a = 0, shape_b = 0, shape_diag = 0;  // (g,1) / (1,g) / (g,g)-like
  const auto& members = g.conjugacy_class_members();
  const auto& classes = g.conjugacy_classes();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i].element_order != 3) continue;
    gsizes.push_back(classes[i].size);
    bool first_trivial = true, second_trivial = true;
    for (Index m : members[i]) {
      auto [a, b] = split_pair_label(g.label(m));
      if (a != "e") first_trivial = false;
      if (b != "e") second_trivial = false;
    }
    if (second_trivial) ++shape_a;
    else if (first_trivial) ++shape_b;
    else ++shape_diag;
  }
  std::sort(gsizes.begin(), gsizes.end());
  CHECK(gsizes == std::vector<long>{8, 8, 32, 32});
  CHECK(shape_a == 1);     // represented by (g,1)
  CHECK(shape_b == 1);     // represented by (1,g)
  CHECK(shape_diag == 2);  // represented by (g,g) and (g,g^2)

  // the 8 classes of H merge pairwise in G
  auto hcd = g.commutator_data();
  REQUIRE(hcd.subgroup.order() == 144);
  const FiniteGroup& hs = hcd.subgroup;
  std::map<std::string, int> gclass_of_label;
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (Index m : members[i]) gclass_of_label[g.label(m)] = int(i);
  const auto& hcls = hs.conjugacy_classes();
  const auto& hmem = hs.conjugacy_class_members();
  std::map<int, std::set<std::size_t>> fused;  // G class -> set of H classes
  for (std::size_t i = 0; i < hcls.size(); ++i) {
    if (hcls[i].element_order != 3) continue;
    for (Index m : hmem[i]) fused[gclass_of_label.at(hs.label(m))].insert(i);
  }
  CHECK(fused.size() == 4);
  for (const auto& [gc, hcs] : fused) CHECK(hcs.size() == 2);
}

TEST_CASE("trivial group classes") {
  const auto& cls = builtin("trivial").conjugacy_classes();
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].size == 1);
}

TEST_CASE("commutator data per the group list") {
  auto s5 = builtin("S_5").commutator_data();
  CHECK(s5.subgroup.order() == 60);
  CHECK(s5.abelianization == std::vector<long>{2});
  CHECK(s5.subgroup.is_perfect());  // it is A_5

  auto l27 = builtin("L_2(7)").commutator_data();
  CHECK(l27.subgroup.order() == 168);
  CHECK(l27.abelianization.empty());

  auto h192 = builtin("H_192").commutator_data();
  CHECK(h192.subgroup.order() == 48);
  CHECK(h192.abelianization == std::vector<long>{2, 2});

  // [G,G] = G is idempotent on the perfect groups
  for (const char* name : {"L_2(7)", "A_6", "M_20"}) {
    CAPTURE(name);
    auto cd = builtin(name).commutator_data();
    CHECK(cd.subgroup.order() == builtin(name).order());
    CHECK(cd.subgroup.is_perfect());
  }

  // T_48's commutator subgroup is T_24 (same order profile)
  auto t48 = builtin("T_48").commutator_data();
  CHECK(t48.subgroup.order() == 24);
  std::map<int, int> prof, prof24;
  for (Index i = 0; i < t48.subgroup.order(); ++i) ++prof[t48.subgroup.element_order(i)];
  const FiniteGroup& t24 = builtin("T_24");
  for (Index i = 0; i < t24.order(); ++i) ++prof24[t24.element_order(i)];
  CHECK(prof == prof24);
}

TEST_CASE("centralizers") {
  const FiniteGroup& h = builtin("A_4xA_4");
  Index cc = h.index_of_label("((0 1 2),(0 1 2))");
  CHECK(h.element_order(cc) == 3);
  CHECK(h.centralizer(cc).order() == 9);

  const FiniteGroup& g = builtin("A_6");
  CHECK(g.centralizer(g.identity()).order() == g.order());
  for (const auto& c : g.conjugacy_classes())
    if (c.element_order == 3) CHECK(g.centralizer(c.representative).order() == 9);
}

TEST_CASE("normalizers") {
  const FiniteGroup& g = builtin("L_2(7)");
  Index g7 = g.find_element_of_order(7);
  auto H = g.cyclic_subgroup(g7);
  CHECK(H.size() == 7);
  auto nr = g.normalizer(H);
  CHECK(nr.subgroup.order() == 21);
  CHECK(nr.index == 8);
  // normalizer always contains H
  auto nelems = g.normalizer_elements(H);
  std::set<Index> ns(nelems.begin(), nelems.end());
  for (Index x : H) CHECK(ns.count(x) == 1);

  const FiniteGroup& t = builtin("T_24");
  auto Z3 = t.cyclic_subgroup(t.find_element_of_order(3));
  auto nt = t.normalizer(Z3);
  CHECK(nt.subgroup.order() == 6);
  CHECK(nt.index == 4);

  std::vector<Index> whole(g.order());
  std::iota(whole.begin(), whole.end(), 0);
  auto ng = g.normalizer(whole);
  CHECK(ng.subgroup.order() == g.order());
  CHECK(ng.index == 1);

  // H not a subgroup -> input error
  CHECK_THROWS_AS(g.normalizer(std::vector<Index>{g7}), std::invalid_argument);
}

TEST_CASE("commuting involutions") {
  // the quoted model: order-3 element of the A_5 part fixes 3 nonzero
  // vectors of V, giving exactly 3 commuting involutions
  const FiniteGroup& mp = builtin("M_20(perm)");
  Index g3 = mp.index_of_label("(00000|(0 1 2))");
  CHECK(mp.element_order(g3) == 3);
  CHECK(mp.commuting_involutions(g3) == 3);

  // the Mathieu M_20 behaves differently: order-3 centralizer is just <g>
  const FiniteGroup& m = builtin("M_20");
  Index m3 = m.find_element_of_order(3);
  CHECK(m.centralizer(m3).order() == 3);
  CHECK(m.commuting_involutions(m3) == 0);

  const FiniteGroup& z = builtin("(Z_2)^3");
  CHECK(z.commuting_involutions(z.identity()) == 7);

  const FiniteGroup& a6 = builtin("A_6");
  Index a5e = a6.find_element_of_order(5);
  CHECK(a6.centralizer(a5e).order() == 5);
  CHECK(a6.commuting_involutions(a5e) == 0);
}

TEST_CASE("element order spectra") {
  const FiniteGroup& z = builtin("(Z_2)^3");
  for (Index i = 0; i < z.order(); ++i) CHECK(2 % z.element_order(i) == 0);
  // all builtin element orders divide the group order
  for (const char* name : all_builtin_names()) {
    CAPTURE(name);
    const FiniteGroup& g = builtin(name);
    for (const auto& c : g.conjugacy_classes()) CHECK(long(g.order()) % c.element_order == 0);
  }
}

TEST_CASE("T_48 has a unique central involution") {
  const FiniteGroup& g = builtin("T_48");
  int involutions = 0, central = 0;
  std::string central_label;
  for (Index i = 0; i < g.order(); ++i) {
    if (g.element_order(i) != 2) continue;
    ++involutions;
    if (g.centralizer_elements(i).size() == g.order()) {
      ++central;
      central_label = g.label(i);
    }
  }
  CHECK(central == 1);
  CHECK(central_label == "(-1|e)");
}

TEST_CASE("group axioms hold on the tables") {
  std::mt19937 rng(20177);
  for (const char* name : all_builtin_names()) {
    CAPTURE(name);
    const FiniteGroup& g = builtin(name);
    std::size_t n = g.order();
    if (n <= 60) {
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
          for (Index c = 0; c < n; ++c)
            REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
    } else {
      std::uniform_int_distribution<Index> d(0, Index(n - 1));
      for (int t = 0; t < 20000; ++t) {
        Index a = d(rng), b = d(rng), c = d(rng);
        REQUIRE(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
      }
    }
    for (Index a = 0; a < n; ++a) {
      REQUIRE(g.mul(a, g.inv(a)) == g.identity());
      REQUIRE(g.mul(g.identity(), a) == a);
    }
  }
}

TEST_CASE("determinism of class output") {
  const FiniteGroup& g = builtin("A_6");
  const auto& c1 = g.conjugacy_classes();
  const auto& c2 = builtin("A_6").conjugacy_classes();
  REQUIRE(c1.size() == c2.size());
  for (std::size_t i = 0; i < c1.size(); ++i) {
    CHECK(c1[i].representative == c2[i].representative);
    CHECK(c1[i].size == c2[i].size);
  }
}
