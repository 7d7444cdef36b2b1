#include "esli/derived.hpp"

#include <algorithm>
#include <functional>

#include "esli/error.hpp"

namespace esli {

  ExtensionContext ExtensionContext::build(FiniteSemigroup S, Congruence rho, DaggerPolicy policy) {
    if (rho.partition().size() != S.order()) {
      throw Error(ErrorCode::precondition_violated, "congruence is on a different semigroup");
    }
    if (!is_e_solid(S)) {
      throw Error(ErrorCode::not_e_solid, "S is not E-solid");
    }
    if (!is_locally_inverse(S)) {
      throw Error(ErrorCode::not_locally_inverse, "S is not locally inverse");
    }
    if (!is_congruence_over_cs(S, rho)) {
      throw Error(ErrorCode::rho_not_over_cs,
                  "rho is not an inverse congruence over completely simple semigroups");
    }
    ExtensionContext c;
    c._t      = quotient(S, rho);
    c._policy = policy;
    auto const& T = c._t.quotient;
    for (elem a = 0; a < T.order(); ++a) {
      c._t_inverse.push_back(inverses_of(T, a).front());
    }
    for (elem s = 0; s < S.order(); ++s) {
      auto v = inverses_of(S, s).members();
      c._dagger.push_back(policy == DaggerPolicy::lowest ? v.front() : v.back());
    }
    // natural_order(X)[b] holds the elements below b.
    c._s_below = natural_order(S);
    for (auto const& below : c._s_below) {
      c._s_below_list.push_back(below.members());
    }
    c._t_below = natural_order(T);
    c._s_wedge = wedge_table(S);
    c._s_green = green(S);
    c._s       = std::move(S);
    c._rho     = std::move(rho);
    return c;
  }

  std::string to_string(Arrow const& a) {
    return "(" + std::to_string(a.source) + "," + std::to_string(a.label) + ","
           + std::to_string(a.target) + ")";
  }

  DerivedSemigroupoid::DerivedSemigroupoid(ExtensionContext ctx) : _ctx(std::move(ctx)) {
    auto const& T  = _ctx.t();
    auto const  nt = T.order();
    auto const  ns = _ctx.s().order();
    _ids.assign(nt * ns * nt, -1);
    _out.resize(nt);
    _in.resize(nt);
    for (elem alpha = 0; alpha < nt; ++alpha) {
      for (elem s = 0; s < ns; ++s) {
        elem const sigma = _ctx.project(s);
        elem const beta  = T.product(alpha, sigma);
        if (T.product(beta, _ctx.t_inverse(sigma)) == alpha) {
          Arrow a{alpha, s, beta};
          _ids[key(a)] = static_cast<std::int32_t>(_arrows.size());
          _arrows.push_back(a);
          _out[alpha].push_back(a);
          _in[beta].push_back(a);
        }
      }
    }
    _hat.assign(_arrows.size(), -1);
  }

  std::size_t DerivedSemigroupoid::key(Arrow const& a) const {
    auto const nt = _ctx.t().order();
    auto const ns = _ctx.s().order();
    return (static_cast<std::size_t>(a.source) * ns + a.label) * nt + a.target;
  }

  bool DerivedSemigroupoid::is_arrow(Arrow const& a) const {
    return id_of(a).has_value();
  }

  std::optional<std::size_t> DerivedSemigroupoid::id_of(Arrow const& a) const {
    auto const nt = _ctx.t().order();
    if (a.source >= nt || a.target >= nt || a.label >= _ctx.s().order()) {
      return std::nullopt;
    }
    auto id = _ids[key(a)];
    if (id < 0) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(id);
  }

  std::size_t DerivedSemigroupoid::require_id(Arrow const& a) const {
    auto id = id_of(a);
    if (!id) {
      throw Error(ErrorCode::precondition_violated, "not an arrow: " + to_string(a),
                  {a.source, a.label, a.target});
    }
    return *id;
  }

  Arrow DerivedSemigroupoid::compose(Arrow const& a, Arrow const& b) const {
    if (a.target != b.source) {
      throw Error(ErrorCode::not_consecutive,
                  "arrows " + to_string(a) + " and " + to_string(b) + " are not consecutive");
    }
    return {a.source, _ctx.s().product(a.label, b.label), b.target};
  }

  std::vector<Arrow> DerivedSemigroupoid::arrow_inverses(Arrow const& a) const {
    std::vector<Arrow> out;
    for (elem v : inverses_of(_ctx.s(), a.label).members()) {
      out.push_back({a.target, v, a.source});
    }
    return out;
  }

  Arrow DerivedSemigroupoid::dagger(Arrow const& a) const {
    return {a.target, _ctx.dagger(a.label), a.source};
  }

  Arrow DerivedSemigroupoid::arrow_wedge(Arrow const& a, Arrow const& b) const {
    if (a.source != b.target) {
      throw Error(ErrorCode::not_adjacent,
                  "arrows " + to_string(a) + " and " + to_string(b) + " are not adjacent");
    }
    auto const& S  = _ctx.s();
    elem const  e  = compose(dagger(b), b).label;
    elem const  f  = compose(a, dagger(a)).label;
    elem const  ef = S.product(e, f);
    // S(b'b, aa') taken among the idempotent loops at the source of a.
    std::vector<elem> found;
    for (auto const& g : _out[a.source]) {
      elem const x = g.label;
      if (g.target != a.source || S.product(x, x) != x) {
        continue;
      }
      if (S.product(x, e) == x && S.product(f, x) == x && S.product(S.product(e, x), f) == ef) {
        found.push_back(x);
      }
    }
    if (found.size() != 1) {
      throw Error(ErrorCode::non_singleton_sandwich,
                  "sandwich of " + to_string(a) + " and " + to_string(b) + " has "
                      + std::to_string(found.size()) + " elements",
                  {a.source, a.label, b.label});
    }
    return {a.source, found[0], a.source};
  }

  Arrow DerivedSemigroupoid::act(elem pi, Arrow const& a) const {
    auto const& T = _ctx.t();
    Arrow       r{T.product(pi, a.source), a.label, T.product(pi, a.target)};
    if (!is_arrow(r)) {
      throw Error(ErrorCode::precondition_violated, "action left the arrow set",
                  {pi, a.source, a.label, a.target});
    }
    return r;
  }

  bool DerivedSemigroupoid::leq(Arrow const& a, Arrow const& b) const {
    return a.source == b.source && a.target == b.target && _ctx.s_leq(a.label, b.label);
  }

  bool DerivedSemigroupoid::is_stable(Arrow const& a) const {
    auto const& T     = _ctx.t();
    elem const  sigma = _ctx.project(a.label);
    elem const  si    = _ctx.t_inverse(sigma);
    elem const  ai    = _ctx.t_inverse(a.source);
    elem const  bi    = _ctx.t_inverse(a.target);
    bool const  ca    = sigma == T.product(ai, a.target);
    bool const  cb    = T.product(sigma, si) == T.product(ai, a.source);
    bool const  cc    = T.product(si, sigma) == T.product(bi, a.target);
    if (ca != cb || ca != cc) {
      throw Error(ErrorCode::tul3_disagreement,
                  "stability clauses disagree on " + to_string(a),
                  {a.source, a.label, a.target});
    }
    return ca;
  }

  std::vector<Arrow> DerivedSemigroupoid::stable_arrows() const {
    std::vector<Arrow> out;
    for (auto const& a : _arrows) {
      if (is_stable(a)) {
        out.push_back(a);
      }
    }
    return out;
  }

  Arrow DerivedSemigroupoid::hat(Arrow const& a) const {
    auto const id = require_id(a);
    if (_hat[id] >= 0) {
      return _arrows[static_cast<std::size_t>(_hat[id])];
    }
    auto const& T    = _ctx.t();
    elem const  want = T.product(_ctx.t_inverse(a.source), a.target);
    std::vector<elem> found;
    for (elem t : _ctx.s_below(a.label)) {
      if (_ctx.project(t) == want) {
        found.push_back(t);
      }
    }
    if (found.size() != 1) {
      throw Error(ErrorCode::uniqueness_failure,
                  "arrow " + to_string(a) + " has " + std::to_string(found.size())
                      + " stable arrows below it",
                  {a.source, a.label, a.target});
    }
    Arrow h{a.source, found[0], a.target};
    _hat[id] = static_cast<std::int32_t>(require_id(h));
    return h;
  }

  bool DerivedSemigroupoid::r_related(Arrow const& a, Arrow const& b) const {
    if (a == b) {
      return true;
    }
    if (a.source != b.source) {
      return false;
    }
    auto reaches = [&](Arrow const& x, Arrow const& y) {
      for (auto const& u : _out[x.target]) {
        if (compose(x, u) == y) {
          return true;
        }
      }
      return false;
    };
    return reaches(a, b) && reaches(b, a);
  }

  bool DerivedSemigroupoid::l_related(Arrow const& a, Arrow const& b) const {
    if (a == b) {
      return true;
    }
    if (a.target != b.target) {
      return false;
    }
    auto reaches = [&](Arrow const& x, Arrow const& y) {
      for (auto const& u : _in[x.source]) {
        if (compose(u, x) == y) {
          return true;
        }
      }
      return false;
    };
    return reaches(a, b) && reaches(b, a);
  }

  namespace {
    class Checker {
     public:
      explicit Checker(std::string name) {
        _c.name = std::move(name);
      }
      // Records one instance; the first failure keeps its detail.
      void expect(bool ok, std::function<std::string()> const& detail) {
        ++_c.instances;
        if (!ok && _c.pass) {
          _c.pass   = false;
          _c.detail = detail();
        }
      }
      void fail(std::string const& detail) {
        expect(false, [&] { return detail; });
      }
      LemmaCheck result() const {
        return _c;
      }

     private:
      LemmaCheck _c;
    };
  }  // namespace

  std::vector<LemmaCheck> check_lemmas(DerivedSemigroupoid const& c) {
    auto const& ctx  = c.context();
    auto const& S    = ctx.s();
    auto const& T    = ctx.t();
    auto const& arr  = c.arrows();
    auto const  inv  = [&](elem x) { return ctx.t_inverse(x); };
    auto const  tmul = [&](elem x, elem y) { return T.product(x, y); };
    std::vector<LemmaCheck> out;

    auto guarded = [&](Checker& ch, auto&& body) {
      try {
        body();
      } catch (Error const& e) {
        ch.fail(e.what());
      }
    };

    {
      Checker ch("tul(1)");
      for (elem alpha = 0; alpha < T.order(); ++alpha) {
        for (elem beta = 0; beta < T.order(); ++beta) {
          bool const r_rel = tmul(alpha, inv(alpha)) == tmul(beta, inv(beta));
          for (elem s = 0; s < S.order(); ++s) {
            bool const rhs = r_rel && ctx.t_leq(tmul(inv(alpha), beta), ctx.project(s));
            Arrow      a{alpha, s, beta};
            ch.expect(c.is_arrow(a) == rhs, [&] { return "triple " + to_string(a); });
          }
        }
      }
      out.push_back(ch.result());
    }
    {
      Checker ch("tul(2)");
      for (auto const& a : arr) {
        elem const sigma = ctx.project(a.label);
        bool const ok    = ctx.t_leq(tmul(inv(a.source), a.source), tmul(sigma, inv(sigma)))
                        && ctx.t_leq(tmul(inv(a.target), a.target), tmul(inv(sigma), sigma));
        ch.expect(ok, [&] { return "arrow " + to_string(a); });
      }
      out.push_back(ch.result());
    }
    {
      Checker ch("tul(3)");
      for (auto const& a : arr) {
        guarded(ch, [&] {
          (void) c.is_stable(a);
          ch.expect(true, [] { return std::string(); });
        });
      }
      out.push_back(ch.result());
    }
    {
      Checker ch("Sro-basic");
      for (elem alpha = 0; alpha < T.order(); ++alpha) {
        for (elem beta = 0; beta < T.order(); ++beta) {
          if (!ctx.t_leq(beta, alpha)) {
            continue;
          }
          for (elem s = 0; s < S.order(); ++s) {
            if (ctx.project(s) != alpha) {
              continue;
            }
            std::size_t n = 0;
            for (elem t : ctx.s_below(s)) {
              n += ctx.project(t) == beta ? 1 : 0;
            }
            ch.expect(n == 1, [&] {
              return "alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta)
                     + " s=" + std::to_string(s) + " count=" + std::to_string(n);
            });
          }
        }
      }
      out.push_back(ch.result());
    }
    {
      Checker     ch("li-basic");
      auto const& g = ctx.s_green();
      for (elem t = 0; t < S.order(); ++t) {
        for (elem s : ctx.s_below(t)) {
          for (elem b = 0; b < S.order(); ++b) {
            if (!g.r_related(b, t)) {
              continue;
            }
            std::size_t n = 0;
            for (elem a : ctx.s_below(b)) {
              n += g.r_related(a, s) ? 1 : 0;
            }
            ch.expect(n == 1, [&] {
              return "s=" + std::to_string(s) + " t=" + std::to_string(t)
                     + " b=" + std::to_string(b) + " count=" + std::to_string(n);
            });
          }
        }
      }
      out.push_back(ch.result());
    }
    {
      Checker ch("tomorit");
      for (auto const& a : arr) {
        guarded(ch, [&] {
          std::vector<Arrow> below;
          for (elem t : ctx.s_below(a.label)) {
            Arrow b{a.source, t, a.target};
            if (c.is_arrow(b) && c.is_stable(b)) {
              below.push_back(b);
            }
          }
          ch.expect(below.size() == 1 && below[0] == c.hat(a),
                    [&] { return "arrow " + to_string(a); });
        });
      }
      out.push_back(ch.result());
    }
    {
      Checker ch1("ujall(1)"), ch2("ujall(2)"), ch3("ujall(3)");
      for (auto const& a : arr) {
        guarded(ch1, [&] {
          if (!c.is_stable(a)) {
            return;
          }
          for (auto const& v : c.arrow_inverses(a)) {
            ch1.expect(c.is_arrow(v) && c.is_stable(v),
                       [&] { return "inverse " + to_string(v) + " of " + to_string(a); });
          }
          for (auto const& b : arr) {
            if (b.source != a.target) {
              continue;
            }
            auto const ab = c.compose(a, b);
            ch2.expect(c.is_stable(ab) && c.r_related(a, ab)
                           && ctx.s_green().r_related(a.label, ab.label),
                       [&] { return "a=" + to_string(a) + " b=" + to_string(b); });
            auto const ba = c.arrow_wedge(b, a);
            ch3.expect(c.is_stable(ba) && c.l_related(a, ba)
                           && ctx.s_green().l_related(a.label, ba.label),
                       [&] { return "a=" + to_string(a) + " b=" + to_string(b); });
          }
        });
      }
      out.push_back(ch1.result());
      out.push_back(ch2.result());
      out.push_back(ch3.result());
    }
    {
      Checker ch1("komp(1)"), ch2("komp(2)"), ch3("komp(3)"), mono("hat monotone");
      for (auto const& a : arr) {
        guarded(ch1, [&] {
          auto const h = c.hat(a);
          ch1.expect(c.hat(h) == h && c.leq(h, a), [&] { return "arrow " + to_string(a); });
        });
        for (auto const& b : arr) {
          if (b.source == a.target) {
            guarded(ch2, [&] {
              ch2.expect(c.hat(c.compose(a, b)) == c.compose(c.hat(a), c.hat(b)),
                         [&] { return "a=" + to_string(a) + " b=" + to_string(b); });
            });
            guarded(ch3, [&] {
              ch3.expect(c.hat(c.arrow_wedge(b, a)) == c.arrow_wedge(c.hat(b), c.hat(a)),
                         [&] { return "a=" + to_string(a) + " b=" + to_string(b); });
            });
          }
          if (c.leq(a, b)) {
            guarded(mono, [&] {
              mono.expect(c.leq(c.hat(a), c.hat(b)),
                          [&] { return "a=" + to_string(a) + " b=" + to_string(b); });
            });
          }
        }
      }
      out.push_back(ch1.result());
      out.push_back(ch2.result());
      out.push_back(ch3.result());
      out.push_back(mono.result());
    }
    {
      Checker ch("wedge labels");
      for (auto const& a : arr) {
        for (auto const& b : arr) {
          if (a.source != b.target) {
            continue;
          }
          guarded(ch, [&] {
            auto const w = c.arrow_wedge(a, b);
            ch.expect(w.label == ctx.s_wedges()[a.label * S.order() + b.label]
                          && S.product(w.label, w.label) == w.label,
                      [&] { return "a=" + to_string(a) + " b=" + to_string(b); });
          });
        }
      }
      out.push_back(ch.result());
    }
    {
      Checker ch("inverses");
      for (auto const& a : arr) {
        auto const vs = c.arrow_inverses(a);
        bool       ok = vs.size() == inverses_of(S, a.label).count()
                  && std::find(vs.begin(), vs.end(), c.dagger(a)) != vs.end();
        for (auto const& v : vs) {
          ok = ok && c.is_arrow(v) && c.compose(c.compose(a, v), a) == a
               && c.compose(c.compose(v, a), v) == v;
        }
        ch.expect(ok, [&] { return "arrow " + to_string(a); });
      }
      out.push_back(ch.result());
    }
    {
      Checker ch("action");
      for (elem pi = 0; pi < T.order(); ++pi) {
        for (auto const& a : arr) {
          guarded(ch, [&] {
            auto const pa = c.act(pi, a);
            ch.expect(c.act(tmul(a.source, inv(a.source)), a) == a
                          && c.dagger(pa) == c.act(pi, c.dagger(a)),
                      [&] { return "pi=" + std::to_string(pi) + " a=" + to_string(a); });
            for (elem nu = 0; nu < T.order(); ++nu) {
              ch.expect(c.act(pi, c.act(nu, a)) == c.act(tmul(pi, nu), a), [&] {
                return "pi=" + std::to_string(pi) + " nu=" + std::to_string(nu)
                       + " a=" + to_string(a);
              });
            }
            for (auto const& b : arr) {
              if (b.source == a.target) {
                ch.expect(c.act(pi, c.compose(a, b)) == c.compose(pa, c.act(pi, b)),
                          [&] { return "pi=" + std::to_string(pi) + " a=" + to_string(a); });
              }
              if (b.target == a.source) {
                ch.expect(c.act(pi, c.arrow_wedge(a, b))
                              == c.arrow_wedge(pa, c.act(pi, b)),
                          [&] { return "pi=" + std::to_string(pi) + " a=" + to_string(a); });
              }
            }
          });
        }
      }
      out.push_back(ch.result());
    }
    return out;
  }

}  // namespace esli
