#include "esli/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "esli/error.hpp"

namespace esli {

  namespace {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0);
      }
      elem find(elem x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }
      bool unite(elem x, elem y) {
        x = find(x);
        y = find(y);
        if (x == y) {
          return false;
        }
        _parent[std::max(x, y)] = std::min(x, y);
        return true;
      }
      Partition partition() {
        std::vector<elem> labels(_parent.size());
        for (elem x = 0; x < labels.size(); ++x) {
          labels[x] = find(x);
        }
        return Partition(std::move(labels));
      }

     private:
      std::vector<elem> _parent;
    };
  }  // namespace

  Congruence::Congruence(FiniteSemigroup const& parent, Partition classes)
      : _classes(std::move(classes)) {
    auto const n = parent.order();
    if (_classes.size() != n) {
      throw Error(ErrorCode::not_a_congruence, "partition size differs from the semigroup order");
    }
    // Comparing each element with the first of its class suffices.
    std::vector<elem> rep(_classes.num_classes(), 0);
    std::vector<bool> seen(_classes.num_classes(), false);
    for (elem x = 0; x < n; ++x) {
      auto c = _classes.class_of(x);
      if (!seen[c]) {
        seen[c] = true;
        rep[c]  = x;
        continue;
      }
      elem r = rep[c];
      for (elem z = 0; z < n; ++z) {
        if (!_classes.same(parent.product(z, x), parent.product(z, r))
            || !_classes.same(parent.product(x, z), parent.product(r, z))) {
          throw Error(ErrorCode::not_a_congruence, "partition not compatible", {x, r, z});
        }
      }
    }
  }

  Congruence Congruence::identity(FiniteSemigroup const& S) {
    return Congruence(S, Partition::discrete(S.order()));
  }

  Congruence Congruence::universal(FiniteSemigroup const& S) {
    return Congruence(S, Partition::universal(S.order()));
  }

  Congruence congruence_generated(FiniteSemigroup const&                   S,
                                  std::vector<std::pair<elem, elem>>  const& pairs) {
    auto const n = S.order();
    UnionFind  uf(n);
    std::vector<std::pair<elem, elem>> todo;
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw Error(ErrorCode::out_of_range, "generating pair outside the semigroup", {a, b});
      }
      if (uf.unite(a, b)) {
        todo.emplace_back(a, b);
      }
    }
    // Each successful merge (a,b) is multiplied on both sides once.
    while (!todo.empty()) {
      auto [a, b] = todo.back();
      todo.pop_back();
      for (elem c = 0; c < n; ++c) {
        for (auto [x, y] : {std::pair{S.product(c, a), S.product(c, b)},
                            std::pair{S.product(a, c), S.product(b, c)}}) {
          if (uf.unite(x, y)) {
            todo.emplace_back(x, y);
          }
        }
      }
    }
    return Congruence(S, uf.partition());
  }

  Congruence congruence_join(FiniteSemigroup const& S, Congruence const& x, Congruence const& y) {
    std::vector<std::pair<elem, elem>> pairs;
    for (auto const* c : {&x, &y}) {
      for (auto const& cls : c->classes()) {
        for (std::size_t i = 1; i < cls.size(); ++i) {
          pairs.emplace_back(cls[0], cls[i]);
        }
      }
    }
    return congruence_generated(S, pairs);
  }

  Congruence kernel_of_map(FiniteSemigroup const& S, std::vector<elem> const& map) {
    return Congruence(S, Partition(map));
  }

  QuotientMap quotient(FiniteSemigroup const& S, Congruence const& rho) {
    auto const        k = rho.num_classes();
    std::vector<elem> rep(k);
    for (elem x = S.order(); x-- > 0;) {
      rep[rho.class_of(x)] = x;
    }
    std::vector<elem> table(k * k);
    for (elem i = 0; i < k; ++i) {
      for (elem j = 0; j < k; ++j) {
        table[i * k + j] = rho.class_of(S.product(rep[i], rep[j]));
      }
    }
    return QuotientMap{rho, FiniteSemigroup::from_table(k, std::move(table)),
                       rho.partition().labels()};
  }

  ElementSubset kernel(FiniteSemigroup const& S, Congruence const& rho) {
    auto const q = quotient(S, rho);
    if (!is_inverse(q.quotient)) {
      throw Error(ErrorCode::quotient_not_inverse, "kernel needs an inverse quotient");
    }
    auto const    E = idempotents(q.quotient);
    ElementSubset out(S.order());
    for (elem x = 0; x < S.order(); ++x) {
      if (E.contains(rho.class_of(x))) {
        out.insert(x);
      }
    }
    return out;
  }

  bool is_congruence_over_cs(FiniteSemigroup const& S, Congruence const& rho) {
    auto const q = quotient(S, rho);
    if (!is_inverse(q.quotient)) {
      return false;
    }
    auto const classes = rho.classes();
    for (elem e : idempotents(q.quotient).members()) {
      ElementSubset cls(S.order(), classes[e]);
      if (!is_completely_simple(restrict_to(S, cls).semigroup)) {
        return false;
      }
    }
    return true;
  }

  Congruence least_inverse_congruence(FiniteSemigroup const& S) {
    if (!is_regular(S)) {
      throw Error(ErrorCode::not_regular, "least inverse congruence of a non-regular semigroup");
    }
    auto const E   = idempotents(S).members();
    auto       rho = Congruence::identity(S);
    while (true) {
      // Lallement: every idempotent class of the quotient contains an
      // idempotent of S, so offending pairs can be read off E directly.
      std::optional<std::pair<elem, elem>> offending;
      for (elem e : E) {
        for (elem f : E) {
          if (!rho.related(S.product(e, f), S.product(f, e))) {
            offending = std::pair{e, f};
            break;
          }
        }
        if (offending) {
          break;
        }
      }
      if (!offending) {
        return rho;
      }
      auto [e, f] = *offending;
      rho         = congruence_join(S, rho,
                            congruence_generated(S, {{S.product(e, f), S.product(f, e)}}));
    }
  }

  std::vector<Congruence> all_congruences(FiniteSemigroup const& S, std::size_t max_order) {
    auto const n = S.order();
    if (n > max_order) {
      throw Error(ErrorCode::order_bound,
                  "order " + std::to_string(n) + " exceeds bound " + std::to_string(max_order));
    }
    std::set<Partition> principal;
    for (elem a = 0; a < n; ++a) {
      for (elem b = a + 1; b < n; ++b) {
        principal.insert(congruence_generated(S, {{a, b}}).partition());
      }
    }
    std::set<Partition> all{Partition::discrete(n)};
    all.insert(principal.begin(), principal.end());
    // Every congruence is a join of principal ones.
    std::vector<Partition> frontier(principal.begin(), principal.end());
    while (!frontier.empty()) {
      std::vector<Partition> next;
      for (auto const& x : frontier) {
        for (auto const& p : principal) {
          if (p.refines(x)) {
            continue;
          }
          auto j = congruence_join(S, Congruence(S, x), Congruence(S, p)).partition();
          if (all.insert(j).second) {
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<Congruence> out;
    for (auto const& p : all) {
      out.emplace_back(S, p);
    }
    return out;
  }

}  // namespace esli
