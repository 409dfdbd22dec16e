#pragma once

// Finite groups appearing in the symplectic K3 story: the 11 maximal
// symplectic K3 groups and the auxiliary subgroups the arguments use.
// Groups are built by closing explicit element models (permutations,
// quaternion units, twisted pairs) and queried through a shared Cayley
// table, so every output is exact and deterministic.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3sym::groups {

using Index = std::uint32_t;

struct ConjugacyClassRecord {
  Index representative = 0;
  long size = 0;
  int element_order = 0;
  long centralizer_order = 0;
};

struct NormalizerResult;
struct CommutatorData;

class FiniteGroup {
 public:
  FiniteGroup() = default;

  std::size_t order() const { return d_->labels.size(); }
  const std::string& name() const { return d_->name; }
  Index identity() const { return d_->identity; }
  Index mul(Index a, Index b) const { return d_->table[a * order() + b]; }
  Index inv(Index a) const { return d_->inverse[a]; }
  const std::string& label(Index i) const { return d_->labels[i]; }

  Index index_of_label(const std::string& lbl) const {
    auto it = d_->label_index.find(lbl);
    if (it == d_->label_index.end())
      throw std::invalid_argument("no element '" + lbl + "' in " + name());
    return it->second;
  }

  int element_order(Index g) const {
    int k = 1;
    Index x = g;
    while (x != identity()) {
      x = mul(x, g);
      ++k;
    }
    return k;
  }

  Index find_element_of_order(int k) const {
    for (Index i = 0; i < order(); ++i)
      if (element_order(i) == k) return i;
    throw std::invalid_argument(name() + " has no element of order " + std::to_string(k));
  }

  // Canonically sorted: by element order, then class size, then representative.
  const std::vector<ConjugacyClassRecord>& conjugacy_classes() const {
    std::call_once(d_->classes_once, [this] { compute_classes(); });
    return d_->classes;
  }
  const std::vector<std::vector<Index>>& conjugacy_class_members() const {
    std::call_once(d_->classes_once, [this] { compute_classes(); });
    return d_->class_members;
  }

  std::vector<Index> centralizer_elements(Index g) const {
    check_element(g);
    std::vector<Index> out;
    for (Index x = 0; x < order(); ++x)
      if (mul(x, g) == mul(g, x)) out.push_back(x);
    return out;
  }

  FiniteGroup centralizer(Index g) const {
    return subgroup(centralizer_elements(g), "C_{" + name() + "}(" + label(g) + ")");
  }

  long commuting_involutions(Index g) const {
    long n = 0;
    for (Index x : centralizer_elements(g))
      if (element_order(x) == 2) ++n;
    return n;
  }

  std::vector<Index> subgroup_closure(std::vector<Index> gens) const {
    std::set<Index> seen{identity()};
    std::vector<Index> frontier{identity()};
    for (Index g : gens) {
      check_element(g);
      if (seen.insert(g).second) frontier.push_back(g);
    }
    while (!frontier.empty()) {
      std::vector<Index> next;
      for (Index a : frontier)
        for (Index g : gens) {
          for (Index x : {mul(a, g), mul(g, a)})
            if (seen.insert(x).second) next.push_back(x);
        }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  std::vector<Index> cyclic_subgroup(Index g) const { return subgroup_closure({g}); }

  bool is_subgroup_set(const std::vector<Index>& elems) const {
    std::set<Index> s(elems.begin(), elems.end());
    if (!s.count(identity())) return false;
    for (Index a : elems)
      for (Index b : elems)
        if (!s.count(mul(a, b))) return false;
    return true;
  }

  std::vector<Index> normalizer_elements(const std::vector<Index>& H) const {
    if (!is_subgroup_set(H)) throw std::invalid_argument("normalizer: H is not a subgroup of " + name());
    std::set<Index> hs(H.begin(), H.end());
    std::vector<Index> out;
    for (Index g = 0; g < order(); ++g) {
      bool ok = true;
      for (Index h : H)
        if (!hs.count(mul(mul(g, h), inv(g)))) {
          ok = false;
          break;
        }
      if (ok) out.push_back(g);
    }
    return out;
  }

  struct NormalizerResult {
    FiniteGroup subgroup;
    long index = 0;  // [G : N]
  };
  NormalizerResult normalizer(const std::vector<Index>& H) const {
    auto n = normalizer_elements(H);
    return {subgroup(n, "N_{" + name() + "}"), long(order() / n.size())};
  }
  // H given as a re-tabled subgroup value; membership recovered through labels.
  NormalizerResult normalizer(const FiniteGroup& H) const { return normalizer(embed(H)); }

  std::vector<Index> embed(const FiniteGroup& H) const {
    std::vector<Index> idx;
    idx.reserve(H.order());
    for (Index i = 0; i < H.order(); ++i) idx.push_back(index_of_label(H.label(i)));
    if (!is_subgroup_set(idx))
      throw std::invalid_argument(H.name() + " does not embed as a subgroup of " + name());
    return idx;
  }

  long subgroup_index(const FiniteGroup& H) const { return long(order() / embed(H).size()); }

  struct CommutatorData {
    FiniteGroup subgroup;
    std::vector<Index> elements;          // indices in the parent
    std::vector<long> abelianization;     // invariant factors, ascending divisibility
  };

  CommutatorData commutator_data() const {
    std::set<Index> gens;
    for (Index a = 0; a < order(); ++a)
      for (Index b = 0; b < order(); ++b)
        gens.insert(mul(mul(a, b), mul(inv(a), inv(b))));
    auto elems = subgroup_closure({gens.begin(), gens.end()});
    auto ab = abelian_invariant_factors(quotient_table(elems));
    return {subgroup(elems, "[" + name() + "," + name() + "]"), elems, ab};
  }

  bool is_perfect() const {
    auto cd = commutator_data();
    return cd.elements.size() == order();
  }

  // Re-table a closed subset as a standalone group; labels carry over so the
  // embedding into the parent stays recoverable.
  FiniteGroup subgroup(std::vector<Index> elems, std::string sub_name) const {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!is_subgroup_set(elems))
      throw std::invalid_argument("subgroup: subset of " + name() + " is not closed");
    std::map<Index, Index> pos;
    for (Index i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
    auto d = std::make_shared<Data>();
    d->name = std::move(sub_name);
    d->labels.reserve(elems.size());
    for (Index e : elems) d->labels.push_back(label(e));
    std::size_t n = elems.size();
    d->table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d->table[i * n + j] = pos.at(mul(elems[i], elems[j]));
    finalize(*d);
    FiniteGroup g;
    g.d_ = std::move(d);
    return g;
  }

  // --- construction from a concrete element model ---------------------------
  template <class T, class MulFn, class LabelFn>
  static FiniteGroup close_over(std::string name, std::vector<T> gens, T id, MulFn mul,
                                LabelFn label_of) {
    std::map<T, Index> seen;
    std::vector<T> elems;
    auto add = [&](const T& x) -> bool {
      if (seen.count(x)) return false;
      seen.emplace(x, 0);
      elems.push_back(x);
      return true;
    };
    add(id);
    std::vector<T> frontier = elems;
    for (const T& g : gens)
      if (add(g)) frontier.push_back(g);
    while (!frontier.empty()) {
      std::vector<T> next;
      for (const T& a : frontier)
        for (const T& g : gens) {
          for (const T& x : {mul(a, g), mul(g, a)})
            if (add(x)) next.push_back(x);
        }
      frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    for (Index i = 0; i < elems.size(); ++i) seen[elems[i]] = i;

    auto d = std::make_shared<Data>();
    d->name = std::move(name);
    std::size_t n = elems.size();
    d->labels.reserve(n);
    for (const T& e : elems) d->labels.push_back(label_of(e));
    d->table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto it = seen.find(mul(elems[i], elems[j]));
        if (it == seen.end())
          throw std::invalid_argument("malformed group " + d->name +
                                      ": product of elements escapes the closure");
        d->table[i * n + j] = it->second;
      }
    finalize(*d);
    FiniteGroup g;
    g.d_ = std::move(d);
    return g;
  }

 private:
  struct Data {
    std::string name;
    std::vector<std::string> labels;
    std::vector<Index> table;
    std::vector<Index> inverse;
    std::map<std::string, Index> label_index;
    Index identity = 0;
    mutable std::once_flag classes_once;
    mutable std::vector<ConjugacyClassRecord> classes;
    mutable std::vector<std::vector<Index>> class_members;
  };
  std::shared_ptr<const Data> d_;

  void check_element(Index g) const {
    if (g >= order()) throw std::invalid_argument("element index out of range in " + name());
  }

  static void finalize(Data& d) {
    std::size_t n = d.labels.size();
    // identity
    bool found = false;
    for (Index i = 0; i < n && !found; ++i) {
      bool ok = true;
      for (Index j = 0; j < n; ++j)
        if (d.table[i * n + j] != j || d.table[j * n + i] != j) {
          ok = false;
          break;
        }
      if (ok) {
        d.identity = i;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("malformed group " + d.name + ": no identity");
    d.inverse.assign(n, 0);
    for (Index i = 0; i < n; ++i) {
      bool has = false;
      for (Index j = 0; j < n; ++j)
        if (d.table[i * n + j] == d.identity) {
          d.inverse[i] = j;
          has = true;
          break;
        }
      if (!has) throw std::invalid_argument("malformed group " + d.name + ": missing inverse");
    }
    for (Index i = 0; i < n; ++i) {
      if (!d.label_index.emplace(d.labels[i], i).second)
        throw std::invalid_argument("malformed group " + d.name + ": duplicate label " + d.labels[i]);
    }
  }

  void compute_classes() const {
    const std::size_t n = order();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<Index>> members;
    for (Index i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::set<Index> cls;
      for (Index g = 0; g < n; ++g) cls.insert(mul(mul(g, i), inv(g)));
      for (Index c : cls) seen[c] = 1;
      members.emplace_back(cls.begin(), cls.end());
    }
    std::vector<ConjugacyClassRecord> recs;
    for (auto& m : members) {
      ConjugacyClassRecord r;
      r.representative = m.front();
      r.size = long(m.size());
      r.element_order = element_order(m.front());
      r.centralizer_order = long(n / m.size());
      recs.push_back(r);
    }
    std::vector<std::size_t> perm(recs.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
      const auto &x = recs[a], &y = recs[b];
      if (x.element_order != y.element_order) return x.element_order < y.element_order;
      if (x.size != y.size) return x.size < y.size;
      return x.representative < y.representative;
    });
    for (std::size_t k : perm) {
      d_->classes.push_back(recs[k]);
      d_->class_members.push_back(members[k]);
    }
    // sanity: class sizes partition the group
    long total = 0;
    for (const auto& r : d_->classes) total += r.size;
    if (total != long(n)) throw std::logic_error("conjugacy classes do not partition " + name());
  }

  // multiplication table of G / <elems> (elems must be normal); used for
  // abelianizations, where the quotient is small and abelian.
  std::vector<std::vector<Index>> quotient_table(const std::vector<Index>& elems) const {
    std::set<Index> sub(elems.begin(), elems.end());
    std::map<Index, Index> coset_of;  // element -> coset id (min member)
    std::vector<Index> reps;
    for (Index g = 0; g < order(); ++g) {
      if (coset_of.count(g)) continue;
      Index id = Index(reps.size());
      Index mn = g;
      std::vector<Index> mem;
      for (Index d : elems) mem.push_back(mul(g, d));
      for (Index m : mem) mn = std::min(mn, m);
      for (Index m : mem) {
        if (coset_of.count(m) && coset_of[m] != id)
          throw std::logic_error("quotient_table: subgroup not normal in " + name());
        coset_of[m] = id;
      }
      reps.push_back(mn);
    }
    std::size_t m = reps.size();
    std::vector<std::vector<Index>> t(m, std::vector<Index>(m));
    for (Index a = 0; a < m; ++a)
      for (Index b = 0; b < m; ++b) t[a][b] = coset_of.at(mul(reps[a], reps[b]));
    return t;
  }

  static std::vector<long> abelian_invariant_factors(std::vector<std::vector<Index>> tab) {
    std::vector<long> factors;
    while (tab.size() > 1) {
      std::size_t n = tab.size();
      Index id = 0;
      for (Index i = 0; i < n; ++i)
        if (tab[i][i] == i && tab[i][0] == 0) {  // candidate; verify
          bool ok = true;
          for (Index j = 0; j < n; ++j)
            if (tab[i][j] != j) { ok = false; break; }
          if (ok) { id = i; break; }
        }
      auto order_in = [&](Index g) {
        int k = 1;
        Index x = g;
        while (x != id) { x = tab[x][g]; ++k; }
        return k;
      };
      int omax = 1;
      Index gmax = id;
      for (Index i = 0; i < n; ++i) {
        int o = order_in(i);
        if (o > omax) { omax = o; gmax = i; }
      }
      if (omax == 1) break;
      factors.push_back(omax);
      // quotient by <gmax>
      std::vector<Index> cyc;
      Index x = id;
      do { cyc.push_back(x); x = tab[x][gmax]; } while (x != id);
      std::map<Index, Index> coset_of;
      std::vector<Index> reps;
      for (Index g = 0; g < n; ++g) {
        if (coset_of.count(g)) continue;
        Index cid = Index(reps.size());
        for (Index d : cyc) coset_of[tab[g][d]] = cid;
        reps.push_back(g);
      }
      std::size_t m = reps.size();
      std::vector<std::vector<Index>> q(m, std::vector<Index>(m));
      for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b) q[a][b] = coset_of.at(tab[reps[a]][reps[b]]);
      tab = std::move(q);
    }
    std::reverse(factors.begin(), factors.end());  // ascending divisibility
    return factors;
  }
};

// ---------------------------------------------------------------------------
// element models
// ---------------------------------------------------------------------------

namespace model {

using Perm = std::vector<std::uint8_t>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), std::uint8_t(0));
  return p;
}
inline Perm perm_mul(const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}
inline Perm perm_from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Perm p = perm_identity(n);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = std::uint8_t(c[(i + 1) % c.size()]);
  return p;
}
inline std::string perm_label(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}
inline int perm_sign(const Perm& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// Quaternion units coded 0..7: axis (0=1, 1=i, 2=j, 3=k) * 2 + sign bit.
inline std::uint8_t quat_enc(int sign, int axis) { return std::uint8_t(axis * 2 + (sign > 0 ? 0 : 1)); }
inline int quat_sign(std::uint8_t q) { return q % 2 == 0 ? 1 : -1; }
inline int quat_axis(std::uint8_t q) { return q / 2; }
inline std::uint8_t quat_mul(std::uint8_t x, std::uint8_t y) {
  int s = quat_sign(x) * quat_sign(y);
  int a1 = quat_axis(x), a2 = quat_axis(y);
  int axis, extra = 1;
  if (a1 == 0) axis = a2;
  else if (a2 == 0) axis = a1;
  else if (a1 == a2) { axis = 0; extra = -1; }
  else {
    // i j = k, j k = i, k i = j, with antisymmetry
    static const int table[4][4] = {{0,0,0,0},{0,0,3,2},{0,3,0,1},{0,2,1,0}};
    static const int sgn[4][4]   = {{1,1,1,1},{1,1,1,-1},{1,-1,1,1},{1,1,-1,1}};
    axis = table[a1][a2];
    extra = sgn[a1][a2];
  }
  return quat_enc(s * extra, axis);
}
inline std::uint8_t quat_neg(std::uint8_t q) { return quat_enc(-quat_sign(q), quat_axis(q)); }
inline std::string quat_label(std::uint8_t q) {
  static const char* base[4] = {"1", "i", "j", "k"};
  return std::string(quat_sign(q) > 0 ? "" : "-") + base[quat_axis(q)];
}
// order-3 automorphism alpha: i -> j -> k -> i, applied k times
inline std::uint8_t quat_alpha(std::uint8_t q, int k) {
  int axis = quat_axis(q);
  if (axis == 0) return q;
  static const int next[4] = {0, 2, 3, 1};
  for (int t = 0; t < k % 3; ++t) axis = next[axis];
  return quat_enc(quat_sign(q), axis);
}
// S3 acts on Q8: even permutations permute the axes, odd ones also negate.
inline std::uint8_t quat_s3(const Perm& s, std::uint8_t q) {
  if (quat_axis(q) == 0) return q;
  int axis = s[quat_axis(q) - 1] + 1;
  int sign = quat_sign(q) * perm_sign(s);
  return quat_enc(sign, axis);
}

// F4 = {0, 1, w, w2} coded 0..3; addition is xor, multiplication cyclic.
inline std::uint8_t f4_mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  static const int lg[4] = {-1, 0, 1, 2};
  static const std::uint8_t ex[3] = {1, 2, 3};
  return ex[(lg[a] + lg[b]) % 3];
}
inline const char* f4_label(std::uint8_t a) {
  static const char* s[4] = {"0", "1", "w", "w2"};
  return s[a];
}

}  // namespace model

// ---------------------------------------------------------------------------
// builtins
// ---------------------------------------------------------------------------

namespace builtin_detail {

using model::Perm;

inline FiniteGroup perm_group(std::string name, int n, std::vector<Perm> gens) {
  return FiniteGroup::close_over<Perm>(std::move(name), std::move(gens), model::perm_identity(n),
                                       model::perm_mul, model::perm_label);
}

inline FiniteGroup make_trivial() {
  return FiniteGroup::close_over<int>("trivial", {}, 0, [](int, int) { return 0; },
                                      [](int) { return std::string("e"); });
}

inline FiniteGroup make_cyclic(int n, std::string name) {
  return FiniteGroup::close_over<int>(
      std::move(name), {1 % n}, 0, [n](int a, int b) { return (a + b) % n; },
      [](int a) { return a == 0 ? std::string("e") : "g^" + std::to_string(a); });
}

inline FiniteGroup make_elementary2(int k, std::string name) {
  std::vector<int> gens;
  for (int i = 0; i < k; ++i) gens.push_back(1 << i);
  return FiniteGroup::close_over<int>(
      std::move(name), gens, 0, [](int a, int b) { return a ^ b; },
      [k](int a) {
        std::string s;
        for (int i = 0; i < k; ++i) s += (a >> i & 1) ? '1' : '0';
        return s;
      });
}

inline FiniteGroup make_q8() {
  using namespace model;
  return FiniteGroup::close_over<std::uint8_t>("Q_8", {quat_enc(1, 1), quat_enc(1, 2)},
                                               quat_enc(1, 0), quat_mul, quat_label);
}

inline FiniteGroup make_symmetric(int n, std::string name) {
  return perm_group(std::move(name), n,
                    {model::perm_from_cycles(n, {{0, 1}}),
                     [&] {
                       std::vector<int> c(n);
                       std::iota(c.begin(), c.end(), 0);
                       return model::perm_from_cycles(n, {c});
                     }()});
}

inline FiniteGroup make_alternating(int n, std::string name) {
  std::vector<Perm> gens{model::perm_from_cycles(n, {{0, 1, 2}})};
  std::vector<int> c;
  if (n % 2 == 1) {
    c.resize(n);
    std::iota(c.begin(), c.end(), 0);
  } else {
    c.resize(n - 1);
    std::iota(c.begin(), c.end(), 1);
  }
  gens.push_back(model::perm_from_cycles(n, {c}));
  return perm_group(std::move(name), n, gens);
}

inline FiniteGroup make_dihedral(int n, std::string name) {  // order 2n, on n points
  std::vector<int> rot(n);
  std::iota(rot.begin(), rot.end(), 0);
  std::vector<std::vector<int>> refl;
  for (int i = 1; i < n - i; ++i) refl.push_back({i, n - i});
  return perm_group(std::move(name), n,
                    {model::perm_from_cycles(n, {rot}), model::perm_from_cycles(n, refl)});
}

inline FiniteGroup make_l27() {
  // PSL(2,7) on the projective line over F_7; point 7 is infinity.
  auto t = model::perm_identity(8);
  for (int x = 0; x < 7; ++x) t[x] = std::uint8_t((x + 1) % 7);
  auto s = model::perm_identity(8);
  s[7] = 0;
  s[0] = 7;
  for (int x = 1; x < 7; ++x) {
    int inv = 1;
    for (int y = 1; y < 7; ++y)
      if (x * y % 7 == 1) inv = y;
    s[x] = std::uint8_t((7 - inv) % 7);
  }
  return perm_group("L_2(7)", 8, {t, s});
}

// T_24 = Q_8 x| Z_3 and T_48 = Q_8 x| S_3 share the quaternion model.
struct QuatS3 {
  std::uint8_t q;
  Perm s;
  bool operator<(const QuatS3& o) const { return std::tie(q, s) < std::tie(o.q, o.s); }
  bool operator==(const QuatS3& o) const { return q == o.q && s == o.s; }
};
inline QuatS3 quats3_mul(const QuatS3& a, const QuatS3& b) {
  return {model::quat_mul(a.q, model::quat_s3(a.s, b.q)), model::perm_mul(a.s, b.s)};
}
inline std::string quats3_label(const QuatS3& e) {
  return "(" + model::quat_label(e.q) + "|" + model::perm_label(e.s) + ")";
}

inline FiniteGroup make_t48() {
  using namespace model;
  std::vector<QuatS3> gens{{quat_enc(1, 1), perm_identity(3)},
                           {quat_enc(1, 2), perm_identity(3)},
                           {quat_enc(1, 0), perm_from_cycles(3, {{0, 1, 2}})},
                           {quat_enc(1, 0), perm_from_cycles(3, {{0, 1}})}};
  return FiniteGroup::close_over<QuatS3>("T_48", gens, {quat_enc(1, 0), perm_identity(3)},
                                         quats3_mul, quats3_label);
}

inline FiniteGroup make_t24() {
  using namespace model;
  std::vector<QuatS3> gens{{quat_enc(1, 1), perm_identity(3)},
                           {quat_enc(1, 2), perm_identity(3)},
                           {quat_enc(1, 0), perm_from_cycles(3, {{0, 1, 2}})}};
  return FiniteGroup::close_over<QuatS3>("T_24", gens, {quat_enc(1, 0), perm_identity(3)},
                                         quats3_mul, quats3_label);
}

// central product Q_8 * Q_8: unordered-sign pair, canonical representative
using QQ = std::pair<std::uint8_t, std::uint8_t>;
inline QQ qq_canon(std::uint8_t x, std::uint8_t y) {
  QQ a{x, y}, b{model::quat_neg(x), model::quat_neg(y)};
  return std::min(a, b);
}
inline QQ qq_mul(const QQ& u, const QQ& v) {
  return qq_canon(model::quat_mul(u.first, v.first), model::quat_mul(u.second, v.second));
}
inline std::string qq_label(const QQ& u) {
  return model::quat_label(u.first) + "*" + model::quat_label(u.second);
}

struct QQS3 {
  QQ u;
  Perm s;
  bool operator<(const QQS3& o) const { return std::tie(u, s) < std::tie(o.u, o.s); }
  bool operator==(const QQS3& o) const { return u == o.u && s == o.s; }
};
// phi: the rotation acts by x*y -> alpha^{-1}(x) * alpha(y); the swap by x*y -> y*x.
inline QQ qq_s3_act(const Perm& s, const QQ& u) {
  using namespace model;
  static const Perm c = perm_from_cycles(3, {{0, 1, 2}});
  static const Perm sw = perm_from_cycles(3, {{0, 1}});
  for (int eps = 0; eps <= 1; ++eps)
    for (int k = 0; k <= 2; ++k) {
      Perm cand = perm_identity(3);
      if (eps) cand = perm_mul(cand, sw);
      for (int t = 0; t < k; ++t) cand = perm_mul(cand, c);
      if (cand == s) {
        std::uint8_t x = quat_alpha(u.first, (3 - k) % 3);
        std::uint8_t y = quat_alpha(u.second, k);
        if (eps) std::swap(x, y);
        return qq_canon(x, y);
      }
    }
  throw std::logic_error("qq_s3_act: S3 decomposition failed");
}
inline QQS3 qqs3_mul(const QQS3& a, const QQS3& b) {
  return {qq_mul(a.u, qq_s3_act(a.s, b.u)), model::perm_mul(a.s, b.s)};
}
inline std::string qqs3_label(const QQS3& e) {
  return "(" + qq_label(e.u) + "|" + model::perm_label(e.s) + ")";
}

inline FiniteGroup make_t192_part(bool full, std::string name) {
  using namespace model;
  std::vector<QQS3> gens{{qq_canon(quat_enc(1, 1), quat_enc(1, 0)), perm_identity(3)},
                         {qq_canon(quat_enc(1, 2), quat_enc(1, 0)), perm_identity(3)},
                         {qq_canon(quat_enc(1, 0), quat_enc(1, 1)), perm_identity(3)},
                         {qq_canon(quat_enc(1, 0), quat_enc(1, 2)), perm_identity(3)},
                         {qq_canon(quat_enc(1, 0), quat_enc(1, 0)), perm_from_cycles(3, {{0, 1, 2}})}};
  if (full)
    gens.push_back({qq_canon(quat_enc(1, 0), quat_enc(1, 0)), perm_from_cycles(3, {{0, 1}})});
  return FiniteGroup::close_over<QQS3>(std::move(name), gens,
                                       {qq_canon(quat_enc(1, 0), quat_enc(1, 0)), perm_identity(3)},
                                       qqs3_mul, qqs3_label);
}

// H_192 = 2^4 x| (S_3 x Z_2): V = F_2^2 + F_2^2, S_3 = GL(2,2) diagonally,
// the Z_2 factor swaps the two summands.
struct H192Elem {
  std::uint8_t v;  // low 2 bits x, high 2 bits y
  Perm s;
  std::uint8_t e;
  bool operator<(const H192Elem& o) const { return std::tie(v, s, e) < std::tie(o.v, o.s, o.e); }
  bool operator==(const H192Elem& o) const { return v == o.v && s == o.s && e == o.e; }
};
inline std::uint8_t gl22_perm_act(const Perm& s, std::uint8_t x) {
  return x == 0 ? 0 : std::uint8_t(s[x - 1] + 1);
}
inline std::uint8_t h192_act(const Perm& s, std::uint8_t e, std::uint8_t v) {
  std::uint8_t x = v & 3, y = v >> 2;
  if (e) std::swap(x, y);
  return std::uint8_t(gl22_perm_act(s, x) | (gl22_perm_act(s, y) << 2));
}
inline H192Elem h192_mul(const H192Elem& a, const H192Elem& b) {
  return {std::uint8_t(a.v ^ h192_act(a.s, a.e, b.v)), model::perm_mul(a.s, b.s),
          std::uint8_t(a.e ^ b.e)};
}
inline std::string h192_label(const H192Elem& a) {
  std::string v;
  for (int i = 0; i < 4; ++i) v += (a.v >> i & 1) ? '1' : '0';
  return "(" + v + "|" + model::perm_label(a.s) + "|" + std::to_string(int(a.e)) + ")";
}
inline FiniteGroup make_h192() {
  using model::perm_from_cycles;
  using model::perm_identity;
  std::vector<H192Elem> gens{{1, perm_identity(3), 0},
                             {2, perm_identity(3), 0},
                             {4, perm_identity(3), 0},
                             {8, perm_identity(3), 0},
                             {0, perm_from_cycles(3, {{0, 1, 2}}), 0},
                             {0, perm_from_cycles(3, {{0, 1}}), 0},
                             {0, perm_identity(3), 1}};
  return FiniteGroup::close_over<H192Elem>("H_192", gens, {0, perm_identity(3), 0}, h192_mul,
                                           h192_label);
}

// M_20 = 2^4 : SL(2,4) acting on its natural module F_4^2 (the Mathieu group
// M_20, mu = 5).  v packs two F_4 coordinates, m packs a 2x2 F_4 matrix.
struct M20Elem {
  std::uint8_t v;
  std::uint8_t m;
  bool operator<(const M20Elem& o) const { return std::tie(v, m) < std::tie(o.v, o.m); }
  bool operator==(const M20Elem& o) const { return v == o.v && m == o.m; }
};
inline std::uint8_t f4mat_mul(std::uint8_t A, std::uint8_t B) {
  using model::f4_mul;
  std::uint8_t a = A & 3, b = A >> 2 & 3, c = A >> 4 & 3, d = A >> 6 & 3;
  std::uint8_t e = B & 3, f = B >> 2 & 3, g = B >> 4 & 3, h = B >> 6 & 3;
  std::uint8_t ra = f4_mul(a, e) ^ f4_mul(b, g);
  std::uint8_t rb = f4_mul(a, f) ^ f4_mul(b, h);
  std::uint8_t rc = f4_mul(c, e) ^ f4_mul(d, g);
  std::uint8_t rd = f4_mul(c, f) ^ f4_mul(d, h);
  return std::uint8_t(ra | rb << 2 | rc << 4 | rd << 6);
}
inline std::uint8_t f4mat_act(std::uint8_t A, std::uint8_t v) {
  using model::f4_mul;
  std::uint8_t a = A & 3, b = A >> 2 & 3, c = A >> 4 & 3, d = A >> 6 & 3;
  std::uint8_t x = v & 3, y = v >> 2 & 3;
  return std::uint8_t((f4_mul(a, x) ^ f4_mul(b, y)) | ((f4_mul(c, x) ^ f4_mul(d, y)) << 2));
}
inline M20Elem m20_mul(const M20Elem& p, const M20Elem& q) {
  return {std::uint8_t(p.v ^ f4mat_act(p.m, q.v)), f4mat_mul(p.m, q.m)};
}
inline std::string m20_label(const M20Elem& p) {
  using model::f4_label;
  std::string v = std::string("(") + f4_label(p.v & 3) + "," + f4_label(p.v >> 2 & 3) + ")";
  std::string m = std::string("[[") + f4_label(p.m & 3) + "," + f4_label(p.m >> 2 & 3) + "],[" +
                  f4_label(p.m >> 4 & 3) + "," + f4_label(p.m >> 6 & 3) + "]]";
  return "(" + v + "|" + m + ")";
}
inline FiniteGroup make_m20() {
  const std::uint8_t I = std::uint8_t(1 | 1 << 6);
  const std::uint8_t T1 = std::uint8_t(1 | 1 << 2 | 1 << 6);  // [[1,1],[0,1]]
  const std::uint8_t T2 = std::uint8_t(1 | 1 << 4 | 1 << 6);  // [[1,0],[1,1]]
  std::vector<M20Elem> gens{{1, I}, {2, I}, {4, I}, {8, I}, {0, T1}, {0, T2}};
  return FiniteGroup::close_over<M20Elem>("M_20", gens, {0, I}, m20_mul, m20_label);
}

// The construction quoted in the source text: V = {sum a_i = 0} in F_2^5
// with A_5 permuting coordinates.  Not isomorphic to the Mathieu M_20 (it
// has order-6 elements and mu = 4); kept as a named variant.
struct M20PElem {
  std::uint8_t v;  // 5-bit even-weight mask
  Perm p;
  bool operator<(const M20PElem& o) const { return std::tie(v, p) < std::tie(o.v, o.p); }
  bool operator==(const M20PElem& o) const { return v == o.v && p == o.p; }
};
inline std::uint8_t mask_act(const Perm& p, std::uint8_t m) {
  std::uint8_t r = 0;
  for (int i = 0; i < 5; ++i)
    if (m >> i & 1) r |= std::uint8_t(1 << p[i]);
  return r;
}
inline M20PElem m20p_mul(const M20PElem& a, const M20PElem& b) {
  return {std::uint8_t(a.v ^ mask_act(a.p, b.v)), model::perm_mul(a.p, b.p)};
}
inline std::string m20p_label(const M20PElem& a) {
  std::string v;
  for (int i = 0; i < 5; ++i) v += (a.v >> i & 1) ? '1' : '0';
  return "(" + v + "|" + model::perm_label(a.p) + ")";
}
inline FiniteGroup make_m20_perm() {
  using model::perm_from_cycles;
  using model::perm_identity;
  std::vector<M20PElem> gens{{0b00011, perm_identity(5)},
                             {0b00110, perm_identity(5)},
                             {0b01100, perm_identity(5)},
                             {0b11000, perm_identity(5)},
                             {0, perm_from_cycles(5, {{0, 1, 2}})},
                             {0, perm_from_cycles(5, {{0, 1, 2, 3, 4}})}};
  return FiniteGroup::close_over<M20PElem>("M_20(perm)", gens, {0, perm_identity(5)}, m20p_mul,
                                           m20p_label);
}

// F_384 = 4^2 : S_4 with S_4 realized inside GL(2, Z_4).
struct F384Elem {
  std::uint8_t v;  // (a, b) in Z_4^2, 2 bits each
  std::uint8_t m;  // 2x2 matrix over Z_4, 2 bits per entry
  bool operator<(const F384Elem& o) const { return std::tie(v, m) < std::tie(o.v, o.m); }
  bool operator==(const F384Elem& o) const { return v == o.v && m == o.m; }
};
inline std::uint8_t z4mat_mul(std::uint8_t A, std::uint8_t B) {
  int a = A & 3, b = A >> 2 & 3, c = A >> 4 & 3, d = A >> 6 & 3;
  int e = B & 3, f = B >> 2 & 3, g = B >> 4 & 3, h = B >> 6 & 3;
  int ra = (a * e + b * g) % 4, rb = (a * f + b * h) % 4;
  int rc = (c * e + d * g) % 4, rd = (c * f + d * h) % 4;
  return std::uint8_t(ra | rb << 2 | rc << 4 | rd << 6);
}
inline std::uint8_t z4mat_act(std::uint8_t A, std::uint8_t v) {
  int a = A & 3, b = A >> 2 & 3, c = A >> 4 & 3, d = A >> 6 & 3;
  int x = v & 3, y = v >> 2 & 3;
  return std::uint8_t(((a * x + b * y) % 4) | (((c * x + d * y) % 4) << 2));
}
inline F384Elem f384_mul(const F384Elem& p, const F384Elem& q) {
  int x1 = p.v & 3, y1 = p.v >> 2 & 3;
  std::uint8_t w = z4mat_act(p.m, q.v);
  int x = (x1 + (w & 3)) % 4, y = (y1 + (w >> 2 & 3)) % 4;
  return {std::uint8_t(x | y << 2), z4mat_mul(p.m, q.m)};
}
inline std::string f384_label(const F384Elem& p) {
  auto s = [](int t) { return std::to_string(t); };
  return "((" + s(p.v & 3) + "," + s(p.v >> 2 & 3) + ")|[[" + s(p.m & 3) + "," + s(p.m >> 2 & 3) +
         "],[" + s(p.m >> 4 & 3) + "," + s(p.m >> 6 & 3) + "]])";
}
inline FiniteGroup make_f384() {
  const std::uint8_t I = std::uint8_t(1 | 1 << 6);
  // order-3 and order-2 matrices generating an S_4 inside GL(2, Z_4)
  const std::uint8_t A = std::uint8_t(0 | 1 << 2 | 3 << 4 | 3 << 6);  // [[0,1],[3,3]]
  const std::uint8_t B = std::uint8_t(1 | 0 << 2 | 1 << 4 | 3 << 6);  // [[1,0],[1,3]]
  std::vector<F384Elem> gens{{1, I}, {2, I}, {4, I}, {8, I}, {0, A}, {0, B}};
  return FiniteGroup::close_over<F384Elem>("F_384", gens, {0, I}, f384_mul, f384_label);
}

// N_72 = 3^2 : D_8 and M_9 = 3^2 : Q_8 via explicit subgroups of GL(2,3).
struct Aff3Elem {
  std::uint8_t v;  // (a, b) in F_3^2 coded a*3+b
  std::uint8_t m;  // matrix entries base-3: a + 3b + 9c + 27d
  bool operator<(const Aff3Elem& o) const { return std::tie(v, m) < std::tie(o.v, o.m); }
  bool operator==(const Aff3Elem& o) const { return v == o.v && m == o.m; }
};
inline std::uint8_t f3mat_mul(std::uint8_t A, std::uint8_t B) {
  int a = A % 3, b = A / 3 % 3, c = A / 9 % 3, d = A / 27 % 3;
  int e = B % 3, f = B / 3 % 3, g = B / 9 % 3, h = B / 27 % 3;
  int ra = (a * e + b * g) % 3, rb = (a * f + b * h) % 3;
  int rc = (c * e + d * g) % 3, rd = (c * f + d * h) % 3;
  return std::uint8_t(ra + 3 * rb + 9 * rc + 27 * rd);
}
inline std::uint8_t f3mat_act(std::uint8_t A, std::uint8_t v) {
  int a = A % 3, b = A / 3 % 3, c = A / 9 % 3, d = A / 27 % 3;
  int x = v / 3, y = v % 3;
  int nx = (a * x + b * y) % 3, ny = (c * x + d * y) % 3;
  return std::uint8_t(nx * 3 + ny);
}
inline Aff3Elem aff3_mul(const Aff3Elem& p, const Aff3Elem& q) {
  std::uint8_t w = f3mat_act(p.m, q.v);
  int x = (p.v / 3 + w / 3) % 3, y = (p.v % 3 + w % 3) % 3;
  return {std::uint8_t(x * 3 + y), f3mat_mul(p.m, q.m)};
}
inline std::string aff3_label(const Aff3Elem& p) {
  auto s = [](int t) { return std::to_string(t); };
  int a = p.m % 3, b = p.m / 3 % 3, c = p.m / 9 % 3, d = p.m / 27 % 3;
  return "((" + s(p.v / 3) + "," + s(p.v % 3) + ")|[[" + s(a) + "," + s(b) + "],[" + s(c) + "," +
         s(d) + "]])";
}
inline std::uint8_t f3mat(int a, int b, int c, int d) {
  return std::uint8_t(a + 3 * b + 9 * c + 27 * d);
}
inline FiniteGroup make_n72() {
  const std::uint8_t I = f3mat(1, 0, 0, 1);
  const std::uint8_t R = f3mat(0, 2, 1, 0);   // rotation of order 4
  const std::uint8_t S = f3mat(1, 0, 0, 2);   // reflection
  std::vector<Aff3Elem> gens{{3, I}, {1, I}, {0, R}, {0, S}};
  return FiniteGroup::close_over<Aff3Elem>("N_72", gens, {0, I}, aff3_mul, aff3_label);
}
inline FiniteGroup make_m9() {
  const std::uint8_t I = f3mat(1, 0, 0, 1);
  const std::uint8_t Qi = f3mat(0, 2, 1, 0);
  const std::uint8_t Qj = f3mat(1, 1, 1, 2);
  std::vector<Aff3Elem> gens{{3, I}, {1, I}, {0, Qi}, {0, Qj}};
  return FiniteGroup::close_over<Aff3Elem>("M_9", gens, {0, I}, aff3_mul, aff3_label);
}

// A_{4,4} = {(a,b) in S_4 x S_4 : sgn(a) = sgn(b)}; A_4 x A_4 is its
// commutator subgroup and also exposed directly.
struct PermPair {
  Perm a, b;
  bool operator<(const PermPair& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
  bool operator==(const PermPair& o) const { return a == o.a && b == o.b; }
};
inline PermPair pp_mul(const PermPair& x, const PermPair& y) {
  return {model::perm_mul(x.a, y.a), model::perm_mul(x.b, y.b)};
}
inline std::string pp_label(const PermPair& x) {
  return "(" + model::perm_label(x.a) + "," + model::perm_label(x.b) + ")";
}
inline FiniteGroup make_a44() {
  using model::perm_from_cycles;
  using model::perm_identity;
  Perm e = perm_identity(4);
  std::vector<PermPair> gens{{perm_from_cycles(4, {{0, 1, 2}}), e},
                             {perm_from_cycles(4, {{0, 1}, {2, 3}}), e},
                             {e, perm_from_cycles(4, {{0, 1, 2}})},
                             {e, perm_from_cycles(4, {{0, 1}, {2, 3}})},
                             {perm_from_cycles(4, {{0, 1}}), perm_from_cycles(4, {{0, 1}})}};
  return FiniteGroup::close_over<PermPair>("A_{4,4}", gens, {e, e}, pp_mul, pp_label);
}
inline FiniteGroup make_a4xa4() {
  using model::perm_from_cycles;
  using model::perm_identity;
  Perm e = perm_identity(4);
  std::vector<PermPair> gens{{perm_from_cycles(4, {{0, 1, 2}}), e},
                             {perm_from_cycles(4, {{0, 1}, {2, 3}}), e},
                             {e, perm_from_cycles(4, {{0, 1, 2}})},
                             {e, perm_from_cycles(4, {{0, 1}, {2, 3}})}};
  return FiniteGroup::close_over<PermPair>("A_4xA_4", gens, {e, e}, pp_mul, pp_label);
}

}  // namespace builtin_detail

struct BuiltinExpected {
  long order = 0;
  long commutator_order = 0;
  std::vector<long> abelianization;
  std::string structure;
};

// Orders, commutator subgroups and abelianizations of the builtin groups,
// cross-checked against the constructions at test time.
inline const std::map<std::string, BuiltinExpected>& builtin_expected_table() {
  static const std::map<std::string, BuiltinExpected> table = {
      {"L_2(7)", {168, 168, {}, "PSL(2,7) on the 8-point projective line"}},
      {"A_6", {360, 360, {}, "alternating group on 6 letters"}},
      {"S_5", {120, 60, {2}, "symmetric group on 5 letters"}},
      {"M_20", {960, 960, {}, "2^4:SL(2,4), natural F_4 module (Mathieu M_20)"}},
      {"F_384", {384, 192, {2}, "4^2:S_4, S_4 realized in GL(2,Z_4)"}},
      {"A_{4,4}", {288, 144, {2}, "{(a,b) in S_4 x S_4 : sgn a = sgn b}"}},
      {"T_192", {192, 96, {2}, "(Q_8*Q_8) x| S_3, rotation twists by alpha, swap exchanges factors"}},
      {"H_192", {192, 48, {2, 2}, "2^4 x| D_12 with D_12 = S_3 x Z_2 acting on F_2^2 + F_2^2"}},
      {"N_72", {72, 18, {2, 2}, "3^2 x| D_8 inside GL(2,3)"}},
      {"M_9", {72, 18, {2, 2}, "3^2 x| Q_8 inside GL(2,3)"}},
      {"T_48", {48, 24, {2}, "Q_8 x| S_3, binary octahedral"}},
      {"Q_8", {8, 2, {2, 2}, "quaternion group"}},
      {"T_24", {24, 8, {3}, "Q_8 x| Z_3, binary tetrahedral"}},
      {"A_4xA_4", {144, 16, {3, 3}, "direct product"}},
      {"(Z_2)^3", {8, 1, {2, 2, 2}, "elementary abelian"}},
      {"M_20(perm)", {960, 960, {}, "V x| A_5, V = {sum a_i = 0} in F_2^5 (quoted model; mu = 4)"}},
      {"(Q_8*Q_8):Z_3", {96, 32, {3}, "commutator subgroup of T_192"}},
  };
  return table;
}

// The 15 names of the official list (11 maximal groups + the 4 auxiliaries).
inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "L_2(7)", "A_6", "S_5", "M_20", "F_384", "A_{4,4}", "T_192", "H_192",
      "N_72",   "M_9", "T_48", "Q_8", "T_24",  "A_4xA_4", "(Z_2)^3"};
  return names;
}

inline const std::vector<std::string>& extra_names() {
  static const std::vector<std::string> names = {
      "M_20(perm)", "(Q_8*Q_8):Z_3", "A_5", "A_4", "S_4", "S_3",
      "D_8",        "D_10",          "D_12", "trivial"};
  return names;
}

inline std::string normalize_group_name(const std::string& raw) {
  std::string out;
  for (char c : raw) {
    char l = char(std::tolower(static_cast<unsigned char>(c)));
    if ((l >= 'a' && l <= 'z') || (l >= '0' && l <= '9')) out += l;
  }
  return out;
}

inline const FiniteGroup& builtin(const std::string& name) {
  using namespace builtin_detail;
  static std::map<std::string, FiniteGroup> cache;
  static std::map<std::string, std::function<FiniteGroup()>> makers = [] {
    std::map<std::string, std::function<FiniteGroup()>> m;
    m["L_2(7)"] = make_l27;
    m["A_6"] = [] { return make_alternating(6, "A_6"); };
    m["S_5"] = [] { return make_symmetric(5, "S_5"); };
    m["M_20"] = make_m20;
    m["F_384"] = make_f384;
    m["A_{4,4}"] = make_a44;
    m["T_192"] = [] { return make_t192_part(true, "T_192"); };
    m["H_192"] = make_h192;
    m["N_72"] = make_n72;
    m["M_9"] = make_m9;
    m["T_48"] = make_t48;
    m["Q_8"] = make_q8;
    m["T_24"] = make_t24;
    m["A_4xA_4"] = make_a4xa4;
    m["(Z_2)^3"] = [] { return make_elementary2(3, "(Z_2)^3"); };
    m["M_20(perm)"] = make_m20_perm;
    m["(Q_8*Q_8):Z_3"] = [] { return make_t192_part(false, "(Q_8*Q_8):Z_3"); };
    m["A_5"] = [] { return make_alternating(5, "A_5"); };
    m["A_4"] = [] { return make_alternating(4, "A_4"); };
    m["S_4"] = [] { return make_symmetric(4, "S_4"); };
    m["S_3"] = [] { return make_symmetric(3, "S_3"); };
    m["D_8"] = [] { return make_dihedral(4, "D_8"); };
    m["D_10"] = [] { return make_dihedral(5, "D_10"); };
    m["D_12"] = [] { return make_dihedral(6, "D_12"); };
    m["trivial"] = make_trivial;
    return m;
  }();
  static std::map<std::string, std::string> aliases = [] {
    std::map<std::string, std::string> a;
    for (const auto& [canon, fn] : makers) a[normalize_group_name(canon)] = canon;
    a["l27"] = "L_2(7)";
    a["psl27"] = "L_2(7)";
    a["m20v"] = "M_20(perm)";
    a["m20perm"] = "M_20(perm)";
    a["qqz3"] = "(Q_8*Q_8):Z_3";
    a["1"] = "trivial";
    a["z23"] = "(Z_2)^3";
    return a;
  }();
  static std::mutex mu;

  std::lock_guard<std::mutex> lock(mu);
  std::string key = normalize_group_name(name);
  auto al = aliases.find(key);
  if (al == aliases.end()) throw std::invalid_argument("unknown group '" + name + "'");
  auto it = cache.find(al->second);
  if (it == cache.end()) it = cache.emplace(al->second, makers.at(al->second)()).first;
  return it->second;
}

}  // namespace k3sym::groups
