#include "esli/lambda_product.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "esli/constructors.hpp"
#include "esli/error.hpp"

namespace esli {

  std::vector<elem> unique_inverses(FiniteSemigroup const& T) {
    std::vector<elem> inv(T.order());
    for (elem t = 0; t < T.order(); ++t) {
      auto V = inverses_of(T, t).members();
      if (V.size() != 1) {
        throw Error(ErrorCode::precondition_violated, "semigroup is not inverse", {t});
      }
      inv[t] = V[0];
    }
    return inv;
  }

  std::optional<ActionViolation> check_action(Action const& action) {
    auto const& T = action.t;
    auto const& K = action.k;
    if (!is_inverse(T)) {
      return ActionViolation{"acting semigroup is not inverse", {}};
    }
    if (action.eps.size() != T.order()) {
      return ActionViolation{"one map per element of T is required", {}};
    }
    for (elem t = 0; t < T.order(); ++t) {
      if (action.eps[t].size() != K.order()) {
        return ActionViolation{"map has the wrong length", {t}};
      }
      for (elem a : action.eps[t]) {
        if (a >= K.order()) {
          return ActionViolation{"map leaves K", {t, a}};
        }
      }
    }
    for (elem t = 0; t < T.order(); ++t) {
      for (elem a = 0; a < K.order(); ++a) {
        for (elem b = 0; b < K.order(); ++b) {
          if (action.act(t, K.product(a, b)) != K.product(action.act(t, a), action.act(t, b))) {
            return ActionViolation{"not an endomorphism", {t, a, b}};
          }
        }
      }
    }
    for (elem t = 0; t < T.order(); ++t) {
      for (elem u = 0; u < T.order(); ++u) {
        for (elem a = 0; a < K.order(); ++a) {
          if (action.act(t, action.act(u, a)) != action.act(T.product(t, u), a)) {
            return ActionViolation{"not an antihomomorphism into End(K)", {t, u, a}};
          }
        }
      }
    }
    return std::nullopt;
  }

  Action trivial_action(FiniteSemigroup const& k, FiniteSemigroup const& t) {
    std::vector<elem> id(k.order());
    std::iota(id.begin(), id.end(), 0);
    return Action{t, k, std::vector<std::vector<elem>>(t.order(), id)};
  }

  LambdaProduct::LambdaProduct(Action action) : _action(std::move(action)) {
    if (auto v = check_action(_action)) {
      std::vector<std::uint64_t> w(v->witness.begin(), v->witness.end());
      throw Error(ErrorCode::action_invalid, v->what, w);
    }
    auto const& T = _action.t;
    auto const& K = _action.k;
    _t_inverse    = unique_inverses(T);
    _index.assign(T.order() * K.order(), -1);
    for (elem t = 0; t < T.order(); ++t) {
      elem tt = T.product(t, _t_inverse[t]);
      for (elem a = 0; a < K.order(); ++a) {
        if (_action.act(tt, a) == a) {
          _index[t * K.order() + a] = static_cast<std::int64_t>(_carrier.size());
          _carrier.emplace_back(a, t);
        }
      }
    }
    auto const               n = _carrier.size();
    std::vector<elem>        table(n * n);
    std::vector<std::string> names(n);
    for (elem x = 0; x < n; ++x) {
      auto [a, t] = _carrier[x];
      names[x]    = "(" + K.name(a) + "," + T.name(t) + ")";
      for (elem y = 0; y < n; ++y) {
        auto [b, u] = _carrier[y];
        elem tu     = T.product(t, u);
        elem first
            = K.product(_action.act(T.product(tu, _t_inverse[tu]), a), _action.act(t, b));
        auto idx = _index[tu * K.order() + first];
        if (idx < 0) {
          throw Error(ErrorCode::action_invalid, "product left the carrier", {x, y});
        }
        table[x * n + y] = static_cast<elem>(idx);
      }
    }
    _product = FiniteSemigroup::from_table(n, std::move(table), std::move(names));
  }

  std::optional<elem> LambdaProduct::index_of(elem a, elem t) const {
    auto idx = _index[t * _action.k.order() + a];
    if (idx < 0) {
      return std::nullopt;
    }
    return static_cast<elem>(idx);
  }

  std::vector<elem> LambdaProduct::second_projection() const {
    std::vector<elem> out;
    for (auto [a, t] : _carrier) {
      out.push_back(t);
    }
    return out;
  }

  Congruence LambdaProduct::theta2() const {
    return kernel_of_map(_product, second_projection());
  }

  LambdaProduct lambda_sdp(Action action) {
    return LambdaProduct(std::move(action));
  }

  LsdtulReport verify_lsdtul(LambdaProduct const& product) {
    LsdtulReport report;
    auto const&  K   = product.action().k;
    auto const&  T   = product.action().t;
    auto const&  P   = product.semigroup();
    auto const&  act = product.action();
    auto const&  inv = product.t_inverse();
    report.precondition = is_completely_simple(K);
    if (!report.precondition) {
      for (auto& c : report.clauses) {
        c.detail = "skipped: K is not completely simple";
      }
      return report;
    }

    bool solid = is_e_solid(P), li = is_locally_inverse(P);
    report.clauses[0] = {solid && li, std::string("e_solid=") + (solid ? "1" : "0")
                                          + " locally_inverse=" + (li ? "1" : "0")};

    auto const    EK = idempotents(K), ET = idempotents(T);
    ElementSubset predicted(P.order());
    for (elem i : ET.members()) {
      for (elem e : EK.members()) {
        if (act.act(i, e) == e) {
          predicted.insert(*product.index_of(e, i));
        }
      }
    }
    report.clauses[1].pass = predicted == idempotents(P);
    report.clauses[1].detail
        = "|E| = " + std::to_string(idempotents(P).count()) + ", formula gives "
          + std::to_string(predicted.count());

    report.clauses[2].pass = true;
    for (elem x = 0; x < P.order() && report.clauses[2].pass; ++x) {
      auto [a, t]  = product.carrier()[x];
      elem          ti = inv[t];
      ElementSubset formula(P.order());
      for (elem b : inverses_of(K, act.act(ti, a)).members()) {
        if (act.act(T.product(ti, t), b) == b) {
          auto idx = product.index_of(b, ti);
          if (!idx) {
            report.clauses[2].pass   = false;
            report.clauses[2].detail = "formula inverse outside the carrier at " + P.name(x);
            break;
          }
          formula.insert(*idx);
        }
      }
      if (report.clauses[2].pass && !(formula == inverses_of(P, x))) {
        report.clauses[2].pass   = false;
        report.clauses[2].detail = "inverse formula fails at " + P.name(x);
      }
    }
    if (report.clauses[2].pass) {
      report.clauses[2].detail = "checked on all " + std::to_string(P.order()) + " elements";
    }

    auto const pi2 = product.second_projection();
    std::vector<bool> hit(T.order(), false);
    for (elem t : pi2) {
      hit[t] = true;
    }
    bool surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    bool hom        = is_homomorphism(P, T, pi2);
    auto const theta = product.theta2();
    bool over_cs     = is_congruence_over_cs(P, theta);
    report.clauses[3] = {surjective && hom && over_cs,
                         std::string("surjective=") + (surjective ? "1" : "0") + " hom="
                             + (hom ? "1" : "0") + " over_cs=" + (over_cs ? "1" : "0")};

    // Kernel against the strong semilattice of the K_e over E_T.
    auto const    ker = kernel(P, theta);
    ElementSubset ker_formula(P.order());
    auto const    e_t = ET.members();
    for (elem e : e_t) {
      for (elem a = 0; a < K.order(); ++a) {
        if (act.act(e, a) == a) {
          ker_formula.insert(*product.index_of(a, e));
        }
      }
    }
    if (!(ker == ker_formula)) {
      report.clauses[4] = {false, "kernel differs from {(a,e) : e in E_T, ea = a}"};
      return report;
    }
    auto const            Y = restrict_to(T, ET);
    StrongSemilatticeSpec spec;
    spec.semilattice = Y.semigroup;
    std::vector<std::vector<elem>> comp_members;
    for (elem e : e_t) {
      ElementSubset fixed(K.order());
      for (elem a = 0; a < K.order(); ++a) {
        if (act.act(e, a) == a) {
          fixed.insert(a);
        }
      }
      auto sub = restrict_to(K, fixed);
      spec.components.push_back(sub.semigroup);
      comp_members.push_back(sub.embedding);
    }
    auto local_of = [&](std::size_t comp, elem a) {
      auto const& m = comp_members[comp];
      return static_cast<elem>(std::find(m.begin(), m.end(), a) - m.begin());
    };
    for (elem i = 0; i < e_t.size(); ++i) {
      for (elem j = 0; j < e_t.size(); ++j) {
        if (i == j || T.product(e_t[i], e_t[j]) != e_t[j]) {
          continue;
        }
        std::vector<elem> map;
        for (elem a : comp_members[i]) {
          map.push_back(local_of(j, act.act(e_t[j], a)));
        }
        spec.homs[{i, j}] = map;
      }
    }
    FiniteSemigroup sslat;
    try {
      sslat = strong_semilattice(spec);
    } catch (Error const& err) {
      report.clauses[4] = {false, std::string("strong semilattice rejected: ") + err.what()};
      return report;
    }
    auto const        ker_sub = restrict_to(P, ker);
    std::vector<elem> offset(e_t.size() + 1, 0);
    for (elem i = 0; i < e_t.size(); ++i) {
      offset[i + 1] = offset[i] + static_cast<elem>(comp_members[i].size());
    }
    std::vector<elem> iso;
    std::vector<bool> seen(sslat.order(), false);
    bool              bijective = ker_sub.semigroup.order() == sslat.order();
    for (elem x : ker_sub.embedding) {
      auto [a, e] = product.carrier()[x];
      auto i      = static_cast<elem>(std::find(e_t.begin(), e_t.end(), e) - e_t.begin());
      elem y      = offset[i] + local_of(i, a);
      bijective   = bijective && !seen[y];
      seen[y]     = true;
      iso.push_back(y);
    }
    bool iso_hom      = bijective && is_homomorphism(ker_sub.semigroup, sslat, iso);
    report.clauses[4] = {iso_hom, "kernel of order " + std::to_string(ker_sub.semigroup.order())
                                      + (iso_hom ? " is" : " is not")
                                      + " isomorphic via (a,e) -> (e,a)"};
    return report;
  }

  std::vector<Action> enumerate_actions(FiniteSemigroup const& k,
                                        FiniteSemigroup const& t,
                                        std::size_t            limit,
                                        std::size_t            budget) {
    if (!is_inverse(t)) {
      throw Error(ErrorCode::precondition_violated, "acting semigroup is not inverse");
    }
    std::vector<Action> out;
    if (limit == 0) {
      return out;
    }
    auto const  endos  = homomorphisms(k, k);
    auto const  gens   = generating_set(t);
    std::size_t trials = 0;
    using Map          = std::vector<elem>;
    auto compose       = [&](Map const& outer, Map const& inner) {
      Map r(k.order());
      for (elem a = 0; a < k.order(); ++a) {
        r[a] = outer[inner[a]];
      }
      return r;
    };
    std::function<bool(std::size_t, std::vector<std::optional<Map>> const&)> rec;
    rec = [&](std::size_t level, std::vector<std::optional<Map>> const& partial) -> bool {
      if (level == gens.size()) {
        Action a{t, k, {}};
        for (auto const& m : partial) {
          a.eps.push_back(*m);
        }
        if (!check_action(a)) {
          out.push_back(std::move(a));
        }
        return out.size() < limit;
      }
      for (auto const& endo : endos) {
        if (++trials > budget) {
          throw Error(ErrorCode::search_budget_exceeded,
                      "action search exceeded " + std::to_string(budget) + " trials");
        }
        auto eps        = partial;
        eps[gens[level]] = endo;
        std::vector<elem> work;
        for (elem x = 0; x < t.order(); ++x) {
          if (eps[x]) {
            work.push_back(x);
          }
        }
        // The action of x g is the action of g followed by that of x.
        bool ok = true;
        for (std::size_t w = 0; w < work.size() && ok; ++w) {
          elem x = work[w];
          for (std::size_t j = 0; j <= level && ok; ++j) {
            elem y   = t.product(x, gens[j]);
            Map  img = compose(*eps[x], *eps[gens[j]]);
            if (!eps[y]) {
              eps[y] = std::move(img);
              work.push_back(y);
            } else {
              ok = *eps[y] == img;
            }
          }
        }
        if (ok && !rec(level + 1, eps)) {
          return false;
        }
      }
      return true;
    };
    rec(0, std::vector<std::optional<Map>>(t.order()));
    return out;
  }

}  // namespace esli
