#include "esli/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "esli/error.hpp"

namespace esli {

  namespace {
    struct UnionFind {
      std::vector<elem> parent;
      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      elem find(elem x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      void unite(elem x, elem y) {
        x = find(x);
        y = find(y);
        if (x != y) {
          parent[std::max(x, y)] = std::min(x, y);
        }
      }
      Partition partition() {
        std::vector<elem> labels(parent.size());
        for (elem x = 0; x < parent.size(); ++x) {
          labels[x] = find(x);
        }
        return Partition(std::move(labels));
      }
    };

    Partition partition_by_key(std::vector<ElementSubset> const& keys) {
      std::vector<elem> labels(keys.size());
      for (elem x = 0; x < keys.size(); ++x) {
        labels[x] = x;
        for (elem y = 0; y < x; ++y) {
          if (keys[y] == keys[x]) {
            labels[x] = y;
            break;
          }
        }
      }
      return Partition(std::move(labels));
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // ElementSubset
  ////////////////////////////////////////////////////////////////////////

  ElementSubset::ElementSubset(std::size_t universe, std::vector<elem> const& members)
      : _bits(universe, false) {
    for (elem x : members) {
      insert(x);
    }
  }

  void ElementSubset::insert(elem x) {
    if (x >= _bits.size()) {
      throw Error(ErrorCode::out_of_range, "element outside subset universe", {x});
    }
    _bits[x] = true;
  }

  void ElementSubset::erase(elem x) {
    if (x < _bits.size()) {
      _bits[x] = false;
    }
  }

  std::size_t ElementSubset::count() const {
    return static_cast<std::size_t>(std::count(_bits.begin(), _bits.end(), true));
  }

  std::vector<elem> ElementSubset::members() const {
    std::vector<elem> out;
    for (elem x = 0; x < _bits.size(); ++x) {
      if (_bits[x]) {
        out.push_back(x);
      }
    }
    return out;
  }

  elem ElementSubset::front() const {
    for (elem x = 0; x < _bits.size(); ++x) {
      if (_bits[x]) {
        return x;
      }
    }
    throw Error(ErrorCode::precondition_violated, "front() of an empty subset");
  }

  ////////////////////////////////////////////////////////////////////////
  // Partition
  ////////////////////////////////////////////////////////////////////////

  Partition::Partition(std::vector<elem> labels) : _labels(std::move(labels)) {
    std::unordered_map<elem, elem> renumber;
    for (auto& l : _labels) {
      auto [it, inserted] = renumber.emplace(l, static_cast<elem>(renumber.size()));
      l                   = it->second;
    }
    _num_classes = renumber.size();
  }

  Partition Partition::discrete(std::size_t n) {
    std::vector<elem> labels(n);
    std::iota(labels.begin(), labels.end(), 0);
    return Partition(std::move(labels));
  }

  Partition Partition::universal(std::size_t n) {
    return Partition(std::vector<elem>(n, 0));
  }

  std::vector<std::vector<elem>> Partition::classes() const {
    std::vector<std::vector<elem>> out(_num_classes);
    for (elem x = 0; x < _labels.size(); ++x) {
      out[_labels[x]].push_back(x);
    }
    return out;
  }

  bool Partition::refines(Partition const& that) const {
    std::vector<std::int64_t> image(_num_classes, -1);
    for (elem x = 0; x < _labels.size(); ++x) {
      auto& img = image[_labels[x]];
      if (img == -1) {
        img = that._labels[x];
      } else if (img != that._labels[x]) {
        return false;
      }
    }
    return true;
  }

  Partition meet(Partition const& x, Partition const& y) {
    std::vector<elem> labels(x.size());
    std::size_t       k = y.num_classes();
    for (elem a = 0; a < x.size(); ++a) {
      labels[a] = static_cast<elem>(x.class_of(a) * k + y.class_of(a));
    }
    return Partition(std::move(labels));
  }

  Partition join(Partition const& x, Partition const& y) {
    UnionFind uf(x.size());
    for (auto const* p : {&x, &y}) {
      std::vector<std::int64_t> first(p->num_classes(), -1);
      for (elem a = 0; a < p->size(); ++a) {
        auto& f = first[p->class_of(a)];
        if (f == -1) {
          f = a;
        } else {
          uf.unite(static_cast<elem>(f), a);
        }
      }
    }
    return uf.partition();
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteSemigroup
  ////////////////////////////////////////////////////////////////////////

  FiniteSemigroup FiniteSemigroup::from_table(std::size_t              order,
                                              std::vector<elem>        table,
                                              std::vector<std::string> names) {
    if (order == 0) {
      throw Error(ErrorCode::out_of_range, "a semigroup needs at least one element");
    }
    if (table.size() != order * order) {
      throw Error(ErrorCode::out_of_range,
                  "table has " + std::to_string(table.size()) + " entries, expected "
                      + std::to_string(order * order));
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (table[i] >= order) {
        throw Error(ErrorCode::out_of_range,
                    "table entry " + std::to_string(table[i]) + " out of range",
                    {i / order, i % order});
      }
    }
    if (!names.empty() && names.size() != order) {
      throw Error(ErrorCode::out_of_range, "wrong number of element names");
    }
    auto const n = order;
    for (elem a = 0; a < n; ++a) {
      for (elem b = 0; b < n; ++b) {
        elem ab = table[a * n + b];
        for (elem c = 0; c < n; ++c) {
          if (table[ab * n + c] != table[a * n + table[b * n + c]]) {
            throw Error(ErrorCode::non_associative,
                        "(ab)c != a(bc) for a=" + std::to_string(a) + ", b=" + std::to_string(b)
                            + ", c=" + std::to_string(c),
                        {a, b, c});
          }
        }
      }
    }
    FiniteSemigroup S;
    S._n     = n;
    S._table = std::move(table);
    S._names = std::move(names);
    return S;
  }

  std::string FiniteSemigroup::name(elem a) const {
    return _names.empty() ? std::to_string(a) : _names[a];
  }

  ////////////////////////////////////////////////////////////////////////
  // Elements
  ////////////////////////////////////////////////////////////////////////

  ElementSubset idempotents(FiniteSemigroup const& S) {
    ElementSubset E(S.order());
    for (elem e = 0; e < S.order(); ++e) {
      if (S.product(e, e) == e) {
        E.insert(e);
      }
    }
    return E;
  }

  ElementSubset inverses_of(FiniteSemigroup const& S, elem s) {
    ElementSubset V(S.order());
    for (elem x = 0; x < S.order(); ++x) {
      if (S.product(S.product(s, x), s) == s && S.product(S.product(x, s), x) == x) {
        V.insert(x);
      }
    }
    return V;
  }

  GreenData green(FiniteSemigroup const& S) {
    auto const n = S.order();
    GreenData  G;
    G.right_ideals.assign(n, ElementSubset(n));
    G.left_ideals.assign(n, ElementSubset(n));
    for (elem a = 0; a < n; ++a) {
      G.right_ideals[a].insert(a);
      G.left_ideals[a].insert(a);
      for (elem x = 0; x < n; ++x) {
        G.right_ideals[a].insert(S.product(a, x));
        G.left_ideals[a].insert(S.product(x, a));
      }
    }
    G.r_classes = partition_by_key(G.right_ideals);
    G.l_classes = partition_by_key(G.left_ideals);
    G.h_classes = meet(G.r_classes, G.l_classes);
    G.d_classes = join(G.r_classes, G.l_classes);
    return G;
  }

  bool natural_leq(FiniteSemigroup const& S, elem a, elem b) {
    bool left = false, right = false;
    for (elem e = 0; e < S.order() && !(left && right); ++e) {
      if (S.product(e, e) != e) {
        continue;
      }
      left  = left || S.product(e, b) == a;
      right = right || S.product(b, e) == a;
    }
    return left && right;
  }

  std::vector<ElementSubset> natural_order(FiniteSemigroup const& S) {
    auto const                 n = S.order();
    auto const                 E = idempotents(S).members();
    std::vector<ElementSubset> below(n, ElementSubset(n));
    for (elem b = 0; b < n; ++b) {
      ElementSubset left(n), right(n);
      for (elem e : E) {
        left.insert(S.product(e, b));
        right.insert(S.product(b, e));
      }
      for (elem a = 0; a < n; ++a) {
        if (left.contains(a) && right.contains(a)) {
          below[b].insert(a);
        }
      }
    }
    return below;
  }

  ElementSubset sandwich_set(FiniteSemigroup const& S, elem e, elem f) {
    if (S.product(e, e) != e || S.product(f, f) != f) {
      throw Error(ErrorCode::not_idempotent, "sandwich set of non-idempotents", {e, f});
    }
    ElementSubset out(S.order());
    elem const    ef = S.product(e, f);
    for (elem g = 0; g < S.order(); ++g) {
      if (S.product(g, g) == g && S.product(g, e) == g && S.product(f, g) == g
          && S.product(S.product(e, g), f) == ef) {
        out.insert(g);
      }
    }
    return out;
  }

  elem wedge(FiniteSemigroup const& S, elem s, elem t) {
    auto const Vs = inverses_of(S, s).members();
    auto const Vt = inverses_of(S, t).members();
    if (Vs.empty() || Vt.empty()) {
      throw Error(ErrorCode::not_locally_inverse, "wedge of a non-regular element", {s, t});
    }
    std::optional<elem> result;
    for (elem ss : Vs) {
      for (elem tt : Vt) {
        auto const sw = sandwich_set(S, S.product(tt, t), S.product(s, ss));
        if (sw.count() != 1) {
          throw Error(ErrorCode::non_singleton_sandwich,
                      "sandwich set of size " + std::to_string(sw.count()),
                      {s, t, ss, tt});
        }
        elem g = sw.front();
        if (result && *result != g) {
          throw Error(ErrorCode::non_singleton_sandwich, "wedge depends on the chosen inverses",
                      {s, t});
        }
        result = g;
      }
    }
    return *result;
  }

  std::vector<elem> wedge_table(FiniteSemigroup const& S) {
    auto const n = S.order();
    // S(t*t, ss*) only depends on R_s and L_t via the idempotents ss*, t*t.
    std::vector<elem> right_id(n), left_id(n);
    for (elem s = 0; s < n; ++s) {
      auto V = inverses_of(S, s);
      if (V.empty()) {
        throw Error(ErrorCode::not_locally_inverse, "wedge table of a non-regular semigroup", {s});
      }
      elem ss     = V.front();
      right_id[s] = S.product(s, ss);
      left_id[s]  = S.product(ss, s);
    }
    std::vector<elem> table(n * n);
    for (elem s = 0; s < n; ++s) {
      for (elem t = 0; t < n; ++t) {
        auto sw = sandwich_set(S, left_id[t], right_id[s]);
        if (sw.count() != 1) {
          throw Error(ErrorCode::non_singleton_sandwich,
                      "sandwich set of size " + std::to_string(sw.count()), {s, t});
        }
        table[s * n + t] = sw.front();
      }
    }
    return table;
  }

  ////////////////////////////////////////////////////////////////////////
  // Predicates
  ////////////////////////////////////////////////////////////////////////

  bool is_regular(FiniteSemigroup const& S) {
    for (elem s = 0; s < S.order(); ++s) {
      bool found = false;
      for (elem x = 0; x < S.order() && !found; ++x) {
        found = S.product(S.product(s, x), s) == s;
      }
      if (!found) {
        return false;
      }
    }
    return true;
  }

  bool is_inverse(FiniteSemigroup const& S) {
    if (!is_regular(S)) {
      return false;
    }
    auto const E = idempotents(S).members();
    for (elem e : E) {
      for (elem f : E) {
        if (S.product(e, f) != S.product(f, e)) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_completely_regular(FiniteSemigroup const& S) {
    auto const G = green(S);
    for (elem a = 0; a < S.order(); ++a) {
      if (!G.h_related(a, S.product(a, a))) {
        return false;
      }
    }
    return true;
  }

  bool is_completely_simple(FiniteSemigroup const& S) {
    return is_completely_regular(S) && green(S).d_classes.num_classes() == 1;
  }

  bool is_locally_inverse(FiniteSemigroup const& S) {
    if (!is_regular(S)) {
      return false;
    }
    auto const E = idempotents(S).members();
    for (elem e : E) {
      for (elem f : E) {
        if (sandwich_set(S, e, f).count() != 1) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_locally_inverse_by_submonoids(FiniteSemigroup const& S) {
    if (!is_regular(S)) {
      return false;
    }
    for (elem e : idempotents(S).members()) {
      if (!is_inverse(local_submonoid(S, e).semigroup)) {
        return false;
      }
    }
    return true;
  }

  bool is_e_solid(FiniteSemigroup const& S) {
    return is_completely_regular(restrict_to(S, core(S)).semigroup);
  }

  bool is_band(FiniteSemigroup const& S) {
    return idempotents(S).count() == S.order();
  }

  bool is_commutative(FiniteSemigroup const& S) {
    for (elem a = 0; a < S.order(); ++a) {
      for (elem b = 0; b < a; ++b) {
        if (S.product(a, b) != S.product(b, a)) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_semilattice(FiniteSemigroup const& S) {
    return is_band(S) && is_commutative(S);
  }

  std::optional<elem> identity_element(FiniteSemigroup const& S) {
    for (elem e = 0; e < S.order(); ++e) {
      bool ok = true;
      for (elem x = 0; x < S.order() && ok; ++x) {
        ok = S.product(e, x) == x && S.product(x, e) == x;
      }
      if (ok) {
        return e;
      }
    }
    return std::nullopt;
  }

  bool is_group(FiniteSemigroup const& S) {
    return is_regular(S) && idempotents(S).count() == 1;
  }

  bool is_orthodox(FiniteSemigroup const& S) {
    if (!is_regular(S)) {
      return false;
    }
    auto const E = idempotents(S);
    for (elem e : E.members()) {
      for (elem f : E.members()) {
        if (!E.contains(S.product(e, f))) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subsemigroups
  ////////////////////////////////////////////////////////////////////////

  ElementSubset closure(FiniteSemigroup const& S, std::vector<elem> const& seed) {
    ElementSubset     out(S.order());
    std::vector<elem> members;
    for (elem x : seed) {
      if (!out.contains(x)) {
        out.insert(x);
        members.push_back(x);
      }
    }
    // Products of a known element by a generator reach everything.
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (elem g : seed) {
        for (elem p : {S.product(members[i], g), S.product(g, members[i])}) {
          if (!out.contains(p)) {
            out.insert(p);
            members.push_back(p);
          }
        }
      }
    }
    return out;
  }

  ElementSubset core(FiniteSemigroup const& S) {
    return closure(S, idempotents(S).members());
  }

  Subsemigroup restrict_to(FiniteSemigroup const& S, ElementSubset const& subset) {
    auto const members = subset.members();
    if (members.empty()) {
      throw Error(ErrorCode::precondition_violated, "empty subsemigroup");
    }
    std::vector<elem> local(S.order(), 0);
    for (elem i = 0; i < members.size(); ++i) {
      local[members[i]] = i;
    }
    auto const        m = members.size();
    std::vector<elem> table(m * m);
    for (elem i = 0; i < m; ++i) {
      for (elem j = 0; j < m; ++j) {
        elem p = S.product(members[i], members[j]);
        if (!subset.contains(p)) {
          throw Error(ErrorCode::precondition_violated, "subset not closed under multiplication",
                      {members[i], members[j]});
        }
        table[i * m + j] = local[p];
      }
    }
    std::vector<std::string> names;
    if (!S.names().empty()) {
      for (elem x : members) {
        names.push_back(S.name(x));
      }
    }
    return Subsemigroup{FiniteSemigroup::from_table(m, std::move(table), std::move(names)),
                        members};
  }

  Subsemigroup local_submonoid(FiniteSemigroup const& S, elem e) {
    if (S.product(e, e) != e) {
      throw Error(ErrorCode::not_idempotent, "local submonoid at a non-idempotent", {e});
    }
    ElementSubset eSe(S.order());
    for (elem x = 0; x < S.order(); ++x) {
      eSe.insert(S.product(S.product(e, x), e));
    }
    return restrict_to(S, eSe);
  }

  elem unique_below_in_R(FiniteSemigroup const& S, elem s, elem t, elem b) {
    auto const G = green(S);
    if (!natural_leq(S, s, t) || !G.r_related(b, t)) {
      throw Error(ErrorCode::precondition_violated, "need s <= t and b R t", {s, t, b});
    }
    std::optional<elem> found;
    for (elem a = 0; a < S.order(); ++a) {
      if (G.r_related(a, s) && natural_leq(S, a, b)) {
        if (found) {
          throw Error(ErrorCode::uniqueness_failure, "two elements of R_s below b",
                      {*found, a});
        }
        found = a;
      }
    }
    if (!found) {
      throw Error(ErrorCode::uniqueness_failure, "no element of R_s below b", {s, t, b});
    }
    return *found;
  }

}  // namespace esli
