#include "esli/constructors.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

#include "esli/error.hpp"

namespace esli {

  FiniteSemigroup rees_matrix(ReesMatrixSpec const& spec) {
    auto const& G = spec.group;
    if (!is_group(G)) {
      throw Error(ErrorCode::not_a_group, "Rees matrix over a non-group");
    }
    if (spec.i_size == 0 || spec.lambda_size == 0
        || spec.sandwich.size() != spec.i_size * spec.lambda_size) {
      throw Error(ErrorCode::out_of_range, "sandwich matrix has the wrong shape");
    }
    for (elem p : spec.sandwich) {
      if (p >= G.order()) {
        throw Error(ErrorCode::out_of_range, "sandwich entry outside the group", {p});
      }
    }
    auto const I = spec.i_size, g = G.order(), L = spec.lambda_size;
    auto const n = I * g * L;
    auto index = [&](std::size_t i, elem x, std::size_t l) {
      return static_cast<elem>((i * g + x) * L + l);
    };
    std::vector<elem>        table(n * n);
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < I; ++i) {
      for (elem x = 0; x < g; ++x) {
        for (std::size_t l = 0; l < L; ++l) {
          elem a   = index(i, x, l);
          names[a] = "(" + std::to_string(i) + "," + G.name(x) + "," + std::to_string(l) + ")";
          for (std::size_t j = 0; j < I; ++j) {
            for (elem y = 0; y < g; ++y) {
              for (std::size_t m = 0; m < L; ++m) {
                elem z = G.product(G.product(x, spec.p(l, j)), y);
                table[a * n + index(j, y, m)] = index(i, z, m);
              }
            }
          }
        }
      }
    }
    return FiniteSemigroup::from_table(n, std::move(table), std::move(names));
  }

  FiniteSemigroup strong_semilattice(StrongSemilatticeSpec const& spec) {
    auto const& Y = spec.semilattice;
    if (!is_semilattice(Y)) {
      throw Error(ErrorCode::precondition_violated, "strong semilattice over a non-semilattice");
    }
    if (spec.components.size() != Y.order()) {
      throw Error(ErrorCode::precondition_violated, "one component per semilattice element");
    }
    auto leq = [&](elem f, elem e) { return Y.product(e, f) == f; };
    auto hom = [&](elem e, elem f) -> std::vector<elem> {
      auto it = spec.homs.find({e, f});
      if (it != spec.homs.end()) {
        return it->second;
      }
      if (e == f) {
        std::vector<elem> id(spec.components[e].order());
        std::iota(id.begin(), id.end(), 0);
        return id;
      }
      throw Error(ErrorCode::incompatible_homs, "missing structure hom", {e, f});
    };
    for (auto const& [key, map] : spec.homs) {
      auto [e, f] = key;
      if (!leq(f, e) || !is_homomorphism(spec.components[e], spec.components[f], map)) {
        throw Error(ErrorCode::incompatible_homs, "structure map is not a homomorphism", {e, f});
      }
      if (e == f) {
        for (elem a = 0; a < map.size(); ++a) {
          if (map[a] != a) {
            throw Error(ErrorCode::incompatible_homs, "hom(e,e) is not the identity", {e, a});
          }
        }
      }
    }
    for (elem e = 0; e < Y.order(); ++e) {
      for (elem f = 0; f < Y.order(); ++f) {
        for (elem h = 0; h < Y.order(); ++h) {
          if (!leq(f, e) || !leq(h, f)) {
            continue;
          }
          auto ef = hom(e, f), fh = hom(f, h), eh = hom(e, h);
          for (elem a = 0; a < ef.size(); ++a) {
            if (fh[ef[a]] != eh[a]) {
              throw Error(ErrorCode::incompatible_homs, "hom(f,g) o hom(e,f) != hom(e,g)",
                          {e, f, h, a});
            }
          }
        }
      }
    }
    std::vector<std::size_t> offset(Y.order() + 1, 0);
    for (elem e = 0; e < Y.order(); ++e) {
      offset[e + 1] = offset[e] + spec.components[e].order();
    }
    auto const               n = offset.back();
    std::vector<elem>        comp_of(n), local(n);
    std::vector<std::string> names(n);
    for (elem e = 0; e < Y.order(); ++e) {
      for (elem a = 0; a < spec.components[e].order(); ++a) {
        auto x     = offset[e] + a;
        comp_of[x] = e;
        local[x]   = a;
        names[x]   = Y.name(e) + ":" + spec.components[e].name(a);
      }
    }
    std::vector<elem> table(n * n);
    for (elem x = 0; x < n; ++x) {
      for (elem y = 0; y < n; ++y) {
        elem e = comp_of[x], f = comp_of[y], m = Y.product(e, f);
        elem a = hom(e, m)[local[x]], b = hom(f, m)[local[y]];
        table[x * n + y] = static_cast<elem>(offset[m] + spec.components[m].product(a, b));
      }
    }
    return FiniteSemigroup::from_table(n, std::move(table), std::move(names));
  }

  FiniteSemigroup direct_product(FiniteSemigroup const& S, FiniteSemigroup const& T) {
    auto const               m = S.order(), k = T.order(), n = m * k;
    std::vector<elem>        table(n * n);
    std::vector<std::string> names(n);
    for (elem a = 0; a < m; ++a) {
      for (elem b = 0; b < k; ++b) {
        names[a * k + b] = "(" + S.name(a) + "," + T.name(b) + ")";
        for (elem c = 0; c < m; ++c) {
          for (elem d = 0; d < k; ++d) {
            table[(a * k + b) * n + c * k + d]
                = static_cast<elem>(S.product(a, c) * k + T.product(b, d));
          }
        }
      }
    }
    return FiniteSemigroup::from_table(n, std::move(table), std::move(names));
  }

  Subsemigroup generated_subsemigroup(FiniteSemigroup const& S, std::vector<elem> const& seed) {
    if (seed.empty()) {
      throw Error(ErrorCode::precondition_violated, "empty generating seed");
    }
    return restrict_to(S, closure(S, seed));
  }

  namespace {
    FiniteSemigroup make(std::size_t n, std::function<elem(elem, elem)> const& op,
                         std::vector<std::string> names = {}) {
      std::vector<elem> table(n * n);
      for (elem a = 0; a < n; ++a) {
        for (elem b = 0; b < n; ++b) {
          table[a * n + b] = op(a, b);
        }
      }
      return FiniteSemigroup::from_table(n, std::move(table), std::move(names));
    }

    std::size_t param(std::vector<std::size_t> const& params, std::size_t i,
                      std::string const& kind) {
      if (i >= params.size() || params[i] == 0) {
        throw Error(ErrorCode::unknown_kind, kind + " needs positive parameter " + std::to_string(i));
      }
      return params[i];
    }

    // Partial maps on {0,1} as pairs of images, 2 meaning undefined.
    FiniteSemigroup partial_maps_2(bool injective_only) {
      std::vector<std::array<elem, 2>> maps;
      for (elem a = 0; a < 3; ++a) {
        for (elem b = 0; b < 3; ++b) {
          if (injective_only && a == b && a != 2) {
            continue;
          }
          maps.push_back({a, b});
        }
      }
      auto index = [&](std::array<elem, 2> m) {
        return static_cast<elem>(std::find(maps.begin(), maps.end(), m) - maps.begin());
      };
      // Composition left to right: first x then y.
      auto op = [&](elem x, elem y) {
        std::array<elem, 2> r{};
        for (int i = 0; i < 2; ++i) {
          auto v = maps[x][i];
          r[i]   = v == 2 ? 2 : maps[y][v];
        }
        return index(r);
      };
      std::vector<std::string> names;
      for (auto m : maps) {
        auto show = [](elem v) { return v == 2 ? std::string("-") : std::to_string(v); };
        names.push_back("[" + show(m[0]) + show(m[1]) + "]");
      }
      return make(maps.size(), op, names);
    }
  }  // namespace

  FiniteSemigroup named_small(std::string const& kind, std::vector<std::size_t> const& params) {
    if (kind == "trivial") {
      return make(1, [](elem, elem) { return 0; });
    }
    if (kind == "cyclic_group") {
      auto n = param(params, 0, kind);
      return make(n, [n](elem a, elem b) { return static_cast<elem>((a + b) % n); });
    }
    if (kind == "symmetric_group_3") {
      std::vector<std::array<elem, 3>> perms;
      std::array<elem, 3>              p{0, 1, 2};
      do {
        perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
      auto op = [&](elem x, elem y) {
        std::array<elem, 3> r{};
        for (int i = 0; i < 3; ++i) {
          r[i] = perms[y][perms[x][i]];
        }
        return static_cast<elem>(std::find(perms.begin(), perms.end(), r) - perms.begin());
      };
      return make(6, op);
    }
    if (kind == "chain") {
      // Element 0 is the top.
      auto n = param(params, 0, kind);
      return make(n, [](elem a, elem b) { return std::max(a, b); });
    }
    if (kind == "diamond") {
      // 0 top, 1 and 2 incomparable, 3 bottom.
      return make(4, [](elem a, elem b) -> elem {
        if (a == b || b == 0) {
          return a;
        }
        if (a == 0) {
          return b;
        }
        return 3;
      });
    }
    if (kind == "brandt_2") {
      // Matrix units e_ij as (i,j) = 2i + j, zero is 4.
      std::vector<std::string> names{"e00", "e01", "e10", "e11", "0"};
      return make(
          5,
          [](elem a, elem b) -> elem {
            if (a == 4 || b == 4 || (a & 1) != (b >> 1)) {
              return 4;
            }
            return (a & 2) | (b & 1);
          },
          names);
    }
    if (kind == "symmetric_inverse_2") {
      return partial_maps_2(true);
    }
    if (kind == "partial_transformations_2") {
      return partial_maps_2(false);
    }
    if (kind == "left_zero") {
      return make(param(params, 0, kind), [](elem a, elem) { return a; });
    }
    if (kind == "right_zero") {
      return make(param(params, 0, kind), [](elem, elem b) { return b; });
    }
    if (kind == "rectangular_band") {
      auto m = param(params, 0, kind), k = param(params, 1, kind);
      return make(m * k, [k](elem a, elem b) {
        return static_cast<elem>((a / k) * k + b % k);
      });
    }
    if (kind == "null") {
      // 0 is the zero and every product is 0.
      return make(param(params, 0, kind), [](elem, elem) { return 0; });
    }
    throw Error(ErrorCode::unknown_kind, "unknown semigroup kind '" + kind + "'");
  }

  std::vector<elem> generating_set(FiniteSemigroup const& S) {
    std::vector<elem> gens;
    ElementSubset     reached(S.order());
    while (reached.count() < S.order()) {
      elem        best      = 0;
      std::size_t best_size = 0;
      for (elem x = 0; x < S.order(); ++x) {
        if (reached.contains(x)) {
          continue;
        }
        auto trial = gens;
        trial.push_back(x);
        auto size = closure(S, trial).count();
        if (size > best_size) {
          best      = x;
          best_size = size;
        }
      }
      gens.push_back(best);
      reached = closure(S, gens);
    }
    return gens;
  }

  bool is_homomorphism(FiniteSemigroup const& S, FiniteSemigroup const& T,
                       std::vector<elem> const& map) {
    if (map.size() != S.order()) {
      return false;
    }
    for (elem a = 0; a < S.order(); ++a) {
      if (map[a] >= T.order()) {
        return false;
      }
      for (elem b = 0; b < S.order(); ++b) {
        if (map[S.product(a, b)] != T.product(map[a], map[b])) {
          return false;
        }
      }
    }
    return true;
  }

  namespace {
    constexpr elem unset = static_cast<elem>(-1);

    // Visits every homomorphism; the visitor returns false to stop.
    void search_homs(FiniteSemigroup const&                          S,
                     FiniteSemigroup const&                          T,
                     std::function<bool(elem, elem)> const&          allowed,
                     std::function<bool(std::vector<elem> const&)> const& visit) {
      auto const gens = generating_set(S);
      std::function<bool(std::size_t, std::vector<elem> const&)> rec;
      rec = [&](std::size_t k, std::vector<elem> const& partial) -> bool {
        if (k == gens.size()) {
          return visit(partial);
        }
        for (elem c = 0; c < T.order(); ++c) {
          if (!allowed(gens[k], c)) {
            continue;
          }
          auto map     = partial;
          map[gens[k]] = c;
          // Right multiplication by generators determines the map on the closure.
          std::vector<elem> work;
          for (elem x = 0; x < S.order(); ++x) {
            if (map[x] != unset) {
              work.push_back(x);
            }
          }
          bool ok = true;
          for (std::size_t w = 0; w < work.size() && ok; ++w) {
            elem x = work[w];
            for (std::size_t j = 0; j <= k && ok; ++j) {
              elem y   = S.product(x, gens[j]);
              elem img = T.product(map[x], map[gens[j]]);
              if (map[y] == unset) {
                map[y] = img;
                work.push_back(y);
              } else {
                ok = map[y] == img;
              }
            }
          }
          if (ok && !rec(k + 1, map)) {
            return false;
          }
        }
        return true;
      };
      rec(0, std::vector<elem>(S.order(), unset));
    }

    std::pair<std::size_t, std::size_t> index_period(FiniteSemigroup const& S, elem x) {
      std::vector<elem> powers{x};
      while (true) {
        elem next = S.product(powers.back(), x);
        auto it   = std::find(powers.begin(), powers.end(), next);
        if (it != powers.end()) {
          auto idx = static_cast<std::size_t>(it - powers.begin());
          return {idx, powers.size() - idx};
        }
        powers.push_back(next);
      }
    }
  }  // namespace

  std::vector<std::vector<elem>> homomorphisms(FiniteSemigroup const& S,
                                               FiniteSemigroup const& T,
                                               std::size_t            limit) {
    std::vector<std::vector<elem>> out;
    if (limit == 0) {
      return out;
    }
    search_homs(
        S, T, [](elem, elem) { return true; },
        [&](std::vector<elem> const& map) {
          out.push_back(map);
          return out.size() < limit;
        });
    return out;
  }

  std::optional<std::vector<elem>> find_isomorphism(FiniteSemigroup const& S,
                                                    FiniteSemigroup const& T) {
    if (S.order() != T.order() || idempotents(S).count() != idempotents(T).count()) {
      return std::nullopt;
    }
    std::vector<std::pair<std::size_t, std::size_t>> sig_s(S.order()), sig_t(T.order());
    for (elem x = 0; x < S.order(); ++x) {
      sig_s[x] = index_period(S, x);
      sig_t[x] = index_period(T, x);
    }
    std::optional<std::vector<elem>> found;
    search_homs(
        S, T, [&](elem g, elem c) { return sig_s[g] == sig_t[c]; },
        [&](std::vector<elem> const& map) {
          std::vector<bool> hit(T.order(), false);
          for (elem y : map) {
            if (hit[y]) {
              return true;
            }
            hit[y] = true;
          }
          found = map;
          return false;
        });
    return found;
  }

}  // namespace esli
