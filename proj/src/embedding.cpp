#include "esli/embedding.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "esli/error.hpp"

namespace esli {

  namespace {
    DoubledAlphabet arrow_names(std::size_t n) {
      std::vector<std::string> names;
      names.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back("a" + std::to_string(i));
      }
      return DoubledAlphabet(std::move(names));
    }

    void set_bit(std::vector<std::uint64_t>& v, std::size_t i) {
      v[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    bool get_bit(std::vector<std::uint64_t> const& v, std::size_t i) {
      return (v[i / 64] >> (i % 64) & 1U) != 0;
    }

    bool mirrored(Orientation o) {
      return o == Orientation::mirrored;
    }
  }  // namespace

  ArrowAlphabet::ArrowAlphabet(DerivedSemigroupoid c, PrimePolicy policy)
      : _c(std::move(c)), _policy(policy), _names(arrow_names(_c.arrows().size())) {
    auto const&       arrows  = _c.arrows();
    std::size_t const n       = arrows.size();
    std::size_t const objects = _c.context().t().order();
    _from.resize(objects);
    _to.resize(objects);
    for (auto const& a : arrows) {
      _from[a.source].push_back(a);
      _to[a.target].push_back(a);
    }
    _delta.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      auto const& a    = arrows[i];
      _delta[2 * i]     = _c.hat(a);
      _delta[2 * i + 1] = policy == PrimePolicy::hat_of_dagger ? _c.hat(_c.dagger(a))
                                                               : _c.dagger(_c.hat(a));
    }
    std::size_t const words = (n + 63) / 64;
    _r_reach.assign(n, std::vector<std::uint64_t>(words, 0));
    _l_reach.assign(n, std::vector<std::uint64_t>(words, 0));
    _dagger_pre.resize(n);
    _fact.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto const& a = arrows[i];
      set_bit(_r_reach[i], i);
      set_bit(_l_reach[i], i);
      for (auto const& u : _from[a.target]) {
        auto const ab = _c.compose(a, u);
        set_bit(_r_reach[i], id(ab));
        _fact[id(ab)].emplace_back(a, u);
      }
      for (auto const& u : _to[a.source]) {
        set_bit(_l_reach[i], id(_c.compose(u, a)));
      }
      _dagger_pre[id(_c.dagger(a))].push_back(a);
    }
  }

  Arrow ArrowAlphabet::arrow(letter x) const {
    if (x / 2 >= _c.arrows().size()) {
      throw Error(ErrorCode::out_of_range, "letter outside the arrow alphabet", {x});
    }
    return _c.arrows()[x / 2];
  }

  letter ArrowAlphabet::letter_of(Arrow const& a) const {
    return base_letter(static_cast<std::uint32_t>(id(a)));
  }

  std::vector<letter> ArrowAlphabet::letters() const {
    return _names.letters();
  }

  elem ArrowAlphabet::alpha(letter x, Orientation o) const {
    auto const a = arrow(x);
    return is_primed(x) != mirrored(o) ? a.target : a.source;
  }

  elem ArrowAlphabet::omega(letter x, Orientation o) const {
    auto const a = arrow(x);
    return is_primed(x) != mirrored(o) ? a.source : a.target;
  }

  elem ArrowAlphabet::alpha(Sym const& s, Orientation o) const {
    return alpha(s.first, o);
  }

  elem ArrowAlphabet::omega(Sym const& s, Orientation o) const {
    return omega(s.tau(), o);
  }

  bool ArrowAlphabet::is_path_symbol(Sym const& s, Orientation o) const {
    return !s.wedge || alpha(s.first, o) == omega(s.second, o);
  }

  Arrow ArrowAlphabet::delta(letter x) const {
    if (x >= _delta.size()) {
      throw Error(ErrorCode::out_of_range, "letter outside the arrow alphabet", {x});
    }
    return _delta[x];
  }

  Arrow ArrowAlphabet::delta(Sym const& s, Orientation o) const {
    if (!s.wedge) {
      return delta(s.first);
    }
    if (!is_path_symbol(s, o)) {
      throw Error(ErrorCode::not_a_path, "wedge letter is not a loop", {s.first, s.second});
    }
    // A mirrored word stores (x ^ y) as (y ^ x).
    letter const l = mirrored(o) ? s.second : s.first;
    letter const r = mirrored(o) ? s.first : s.second;
    auto const   key = (std::uint64_t{l} << 32) | r;
    if (auto it = _wedge_memo.find(key); it != _wedge_memo.end()) {
      return it->second;
    }
    auto const w = _c.arrow_wedge(delta(l), delta(r));
    _wedge_memo.emplace(key, w);
    return w;
  }

  bool ArrowAlphabet::r_related(Arrow const& a, Arrow const& b, Orientation o) const {
    if (mirrored(o)) {
      return l_related(a, b);
    }
    auto const i = id(a), j = id(b);
    return get_bit(_r_reach[i], j) && get_bit(_r_reach[j], i);
  }

  bool ArrowAlphabet::l_related(Arrow const& a, Arrow const& b, Orientation o) const {
    if (mirrored(o)) {
      return r_related(a, b);
    }
    auto const i = id(a), j = id(b);
    return get_bit(_l_reach[i], j) && get_bit(_l_reach[j], i);
  }

  bool ArrowAlphabet::is_idempotent(Arrow const& a) const {
    return a.source == a.target && _c.context().s().product(a.label, a.label) == a.label;
  }

  std::vector<Arrow> const& ArrowAlphabet::dagger_preimages(Arrow const& c) const {
    return _dagger_pre[id(c)];
  }

  std::vector<std::pair<Arrow, Arrow>> const& ArrowAlphabet::factorizations(Arrow const& c) const {
    return _fact[id(c)];
  }

  std::string to_string(TildeWord const& w, ArrowAlphabet const& A) {
    return to_string(w, A.names());
  }

  TildeWord parse_arrow_word(std::string_view text, ArrowAlphabet const& A) {
    return parse_tilde_word(text, A.names());
  }

  namespace {
    bool path_in(TildeWord const& w, ArrowAlphabet const& A, Orientation o) {
      if (w.empty()) {
        return false;
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!A.is_path_symbol(w[i], o)) {
          return false;
        }
        if (i > 0 && A.omega(w[i - 1], o) != A.alpha(w[i], o)) {
          return false;
        }
      }
      return true;
    }
  }  // namespace

  bool is_path(TildeWord const& w, ArrowAlphabet const& A) {
    return path_in(w, A, Orientation::forward);
  }

  std::optional<std::pair<elem, elem>> path_endpoints(TildeWord const& w, ArrowAlphabet const& A) {
    if (!is_path(w, A)) {
      return std::nullopt;
    }
    return std::pair{A.alpha(w.front()), A.omega(w.back())};
  }

  Arrow hat_eval(TildeWord const& path, ArrowAlphabet const& A, Orientation o) {
    if (!path_in(path, A, o)) {
      throw Error(ErrorCode::not_a_path, "word is not a path");
    }
    auto const& c = A.semigroupoid();
    Arrow       r = A.delta(path.front(), o);
    for (std::size_t i = 1; i < path.size(); ++i) {
      auto const d = A.delta(path[i], o);
      r            = mirrored(o) ? c.compose(d, r) : c.compose(r, d);
    }
    return r;
  }

  KappaImage kappa(ArrowAlphabet const& A, elem s) {
    auto const& ctx   = A.semigroupoid().context();
    elem const  sigma = ctx.project(s);
    Arrow const a{ctx.t().product(sigma, ctx.t_inverse(sigma)), s, sigma};
    if (!A.semigroupoid().is_stable(a)) {
      throw Error(ErrorCode::precondition_violated, "kappa letter is not stable", {s});
    }
    return {{Sym::single(A.letter_of(a))}, sigma};
  }

  // ---- steps ----

  namespace {
    constexpr std::array<std::string_view, step_kind_count> kind_names{
        "S1a", "S1b", "S21a", "S21b", "S22a", "S22b", "T3a",
        "T3b", "T4a", "T4b",  "T5a",  "T5b",  "Ia",   "Ib"};

    [[noreturn]] void no_match(DerivationStep const& s) {
      throw Error(ErrorCode::no_match,
                  std::string(step_kind_name(s.kind)) + " does not match at position "
                      + std::to_string(s.position),
                  {s.position});
    }

    void require_composition(DerivationStep const& s, ArrowAlphabet const& A) {
      if (is_primed(s.x) || is_primed(s.y) || is_primed(s.z)) {
        throw Error(ErrorCode::bad_composition, "composition parameters must be arrows");
      }
      auto const a = A.arrow(s.x), b = A.arrow(s.y), c = A.arrow(s.z);
      if (a.target != b.source || A.semigroupoid().compose(a, b) != c) {
        throw Error(ErrorCode::bad_composition,
                    to_string(a) + " o " + to_string(b) + " != " + to_string(c));
      }
    }

    bool is_letter(TildeWord const& w, std::size_t i, letter x) {
      return i < w.size() && w[i] == Sym::single(x);
    }

    bool is_wedge(TildeWord const& w, std::size_t i, letter x, letter y) {
      return i < w.size() && w[i] == Sym::wedge_of(x, y);
    }

    bool lengthens(StepKind k) {
      switch (k) {
        case StepKind::s21b:
        case StepKind::t3b:
        case StepKind::t4b:
        case StepKind::t5b:
        case StepKind::ib: return true;
        default: return false;
      }
    }
  }  // namespace

  std::string_view step_kind_name(StepKind k) noexcept {
    return kind_names[static_cast<std::size_t>(k)];
  }

  std::optional<StepKind> parse_step_kind(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kind_names.size(); ++i) {
      if (kind_names[i] == name) {
        return static_cast<StepKind>(i);
      }
    }
    return std::nullopt;
  }

  std::vector<StepKind> all_step_kinds() {
    std::vector<StepKind> out;
    for (std::size_t i = 0; i < step_kind_count; ++i) {
      out.push_back(static_cast<StepKind>(i));
    }
    return out;
  }

  std::string to_string(DerivationStep const& s, ArrowAlphabet const& A) {
    auto const& n = A.names();
    return std::string(step_kind_name(s.kind)) + " " + std::to_string(s.position) + " "
           + (s.side == Side::left ? "L" : "R") + " " + n.name(s.x) + " " + n.name(s.y) + " "
           + n.name(s.z);
  }

  namespace {
    letter parse_letter(std::string_view text, DoubledAlphabet const& names) {
      auto m = names.match(text);
      if (!m || (m->second != text.size() && text.substr(m->second) != "'")) {
        throw Error(ErrorCode::syntax_error, "unknown letter '" + std::string(text) + "'");
      }
      return m->second == text.size() ? m->first : prime(m->first);
    }
  }  // namespace

  DerivationStep parse_step(std::string_view text, ArrowAlphabet const& A) {
    std::istringstream       in{std::string(text)};
    std::vector<std::string> f;
    for (std::string t; in >> t;) {
      f.push_back(t);
    }
    if (f.size() != 6) {
      throw Error(ErrorCode::syntax_error, "a step has six fields: kind position side x y z");
    }
    auto kind = parse_step_kind(f[0]);
    if (!kind || (f[2] != "L" && f[2] != "R")
        || !std::all_of(f[1].begin(), f[1].end(), [](char ch) { return std::isdigit(ch) != 0; })) {
      throw Error(ErrorCode::syntax_error, "bad step '" + std::string(text) + "'");
    }
    DerivationStep s;
    s.kind     = *kind;
    s.position = std::stoul(f[1]);
    s.side     = f[2] == "L" ? Side::left : Side::right;
    s.x        = parse_letter(f[3], A.names());
    s.y        = parse_letter(f[4], A.names());
    s.z        = parse_letter(f[5], A.names());
    return s;
  }

  TildeWord apply_step(TildeWord const& w, DerivationStep const& s, ArrowAlphabet const& A) {
    std::size_t const p = s.position;
    TildeWord         r = w;
    auto const        at = [&](std::size_t i) { return r.begin() + static_cast<std::ptrdiff_t>(i); };
    switch (s.kind) {
      case StepKind::s1a:
        if (is_primed(s.x) || !is_letter(w, p, prime(s.x))) {
          no_match(s);
        }
        r[p] = Sym::single(A.letter_of(A.semigroupoid().dagger(A.arrow(s.x))));
        break;
      case StepKind::s1b:
        if (is_primed(s.x)
            || !is_letter(w, p, A.letter_of(A.semigroupoid().dagger(A.arrow(s.x))))) {
          no_match(s);
        }
        r[p] = Sym::single(prime(s.x));
        break;
      case StepKind::s21a:
        require_composition(s, A);
        if (!is_letter(w, p, s.x) || !is_letter(w, p + 1, s.y)) {
          no_match(s);
        }
        r[p] = Sym::single(s.z);
        r.erase(at(p + 1));
        break;
      case StepKind::s21b:
        require_composition(s, A);
        if (!is_letter(w, p, s.z)) {
          no_match(s);
        }
        r[p] = Sym::single(s.x);
        r.insert(at(p + 1), Sym::single(s.y));
        break;
      case StepKind::s22a:
      case StepKind::s22b: {
        require_composition(s, A);
        bool const fwd = s.kind == StepKind::s22a;
        if (p >= w.size() || !w[p].wedge) {
          no_match(s);
        }
        letter& slot = s.side == Side::left ? r[p].first : r[p].second;
        letter const from = s.side == Side::left ? (fwd ? s.x : s.z) : (fwd ? s.y : s.z);
        letter const to   = s.side == Side::left ? (fwd ? s.z : s.x) : (fwd ? s.z : s.y);
        if (slot != from) {
          no_match(s);
        }
        slot = to;
        break;
      }
      case StepKind::t3a:
        if (!is_wedge(w, p, s.x, s.y) || !is_wedge(w, p + 1, s.x, s.z)) {
          no_match(s);
        }
        r.erase(at(p));
        break;
      case StepKind::t3b:
        if (!is_wedge(w, p, s.x, s.z)) {
          no_match(s);
        }
        r.insert(at(p), Sym::wedge_of(s.x, s.y));
        break;
      case StepKind::t4a:
        if (!is_wedge(w, p, s.z, s.x) || !is_wedge(w, p + 1, s.y, s.x)) {
          no_match(s);
        }
        r.erase(at(p + 1));
        break;
      case StepKind::t4b:
        if (!is_wedge(w, p, s.z, s.x)) {
          no_match(s);
        }
        r.insert(at(p + 1), Sym::wedge_of(s.y, s.x));
        break;
      case StepKind::t5a:
        if (!is_letter(w, p, prime(s.x)) || !is_letter(w, p + 1, s.x)) {
          no_match(s);
        }
        r[p] = Sym::wedge_of(prime(s.x), s.x);
        r.erase(at(p + 1));
        break;
      case StepKind::t5b:
        if (!is_wedge(w, p, prime(s.x), s.x)) {
          no_match(s);
        }
        r[p] = Sym::single(prime(s.x));
        r.insert(at(p + 1), Sym::single(s.x));
        break;
      case StepKind::ia:
        if (!is_letter(w, p, s.x) || !is_letter(w, p + 1, prime(s.x)) || !is_letter(w, p + 2, s.x)) {
          no_match(s);
        }
        r.erase(at(p + 1), at(p + 3));
        break;
      case StepKind::ib:
        if (!is_letter(w, p, s.x)) {
          no_match(s);
        }
        r.insert(at(p + 1), {Sym::single(prime(s.x)), Sym::single(s.x)});
        break;
    }
    return r;
  }

  std::vector<DerivationStep> applicable_steps(TildeWord const& w, StepKind kind, ArrowAlphabet const& A) {
    std::vector<DerivationStep> out;
    auto const&                 c   = A.semigroupoid();
    auto const                  add = [&](std::size_t p, Side side, letter x, letter y, letter z) {
      out.push_back({kind, p, side, x, y, z});
    };
    for (std::size_t p = 0; p < w.size(); ++p) {
      Sym const& s    = w[p];
      bool const next = p + 1 < w.size();
      switch (kind) {
        case StepKind::s1a:
          if (!s.wedge && is_primed(s.first)) {
            add(p, Side::left, prime(s.first), 0, 0);
          }
          break;
        case StepKind::s1b:
          if (!s.wedge && !is_primed(s.first)) {
            for (auto const& a : A.dagger_preimages(A.arrow(s.first))) {
              add(p, Side::left, A.letter_of(a), 0, 0);
            }
          }
          break;
        case StepKind::s21a:
          if (next && !s.wedge && !w[p + 1].wedge && !is_primed(s.first) && !is_primed(w[p + 1].first)) {
            auto const a = A.arrow(s.first), b = A.arrow(w[p + 1].first);
            if (a.target == b.source) {
              add(p, Side::left, s.first, w[p + 1].first, A.letter_of(c.compose(a, b)));
            }
          }
          break;
        case StepKind::s21b:
          if (!s.wedge && !is_primed(s.first)) {
            for (auto const& [a, b] : A.factorizations(A.arrow(s.first))) {
              add(p, Side::left, A.letter_of(a), A.letter_of(b), s.first);
            }
          }
          break;
        case StepKind::s22a:
          if (s.wedge && !is_primed(s.first)) {
            auto const a = A.arrow(s.first);
            for (auto const& b : A.arrows_from(a.target)) {
              add(p, Side::left, s.first, A.letter_of(b), A.letter_of(c.compose(a, b)));
            }
          }
          if (s.wedge && !is_primed(s.second)) {
            auto const b = A.arrow(s.second);
            for (auto const& a : A.arrows_to(b.source)) {
              add(p, Side::right, A.letter_of(a), s.second, A.letter_of(c.compose(a, b)));
            }
          }
          break;
        case StepKind::s22b:
          if (s.wedge && !is_primed(s.first)) {
            for (auto const& [a, b] : A.factorizations(A.arrow(s.first))) {
              add(p, Side::left, A.letter_of(a), A.letter_of(b), s.first);
            }
          }
          if (s.wedge && !is_primed(s.second)) {
            for (auto const& [a, b] : A.factorizations(A.arrow(s.second))) {
              add(p, Side::right, A.letter_of(a), A.letter_of(b), s.second);
            }
          }
          break;
        case StepKind::t3a:
          if (next && s.wedge && w[p + 1].wedge && s.first == w[p + 1].first) {
            add(p, Side::left, s.first, s.second, w[p + 1].second);
          }
          break;
        case StepKind::t3b:
          if (s.wedge) {
            for (letter y : A.letters()) {
              add(p, Side::left, s.first, y, s.second);
            }
          }
          break;
        case StepKind::t4a:
          if (next && s.wedge && w[p + 1].wedge && s.second == w[p + 1].second) {
            add(p, Side::left, s.second, w[p + 1].first, s.first);
          }
          break;
        case StepKind::t4b:
          if (s.wedge) {
            for (letter y : A.letters()) {
              add(p, Side::left, s.second, y, s.first);
            }
          }
          break;
        case StepKind::t5a:
          if (next && !s.wedge && !w[p + 1].wedge && s.first == prime(w[p + 1].first)) {
            add(p, Side::left, w[p + 1].first, 0, 0);
          }
          break;
        case StepKind::t5b:
          if (s.wedge && s.first == prime(s.second)) {
            add(p, Side::left, s.second, 0, 0);
          }
          break;
        case StepKind::ia:
          if (p + 2 < w.size() && !s.wedge && w[p + 1] == Sym::single(prime(s.first))
              && w[p + 2] == s) {
            add(p, Side::left, s.first, 0, 0);
          }
          break;
        case StepKind::ib:
          if (!s.wedge) {
            add(p, Side::left, s.first, 0, 0);
          }
          break;
      }
    }
    return out;
  }

  std::optional<DerivationStep> random_step(TildeWord const&     w,
                                            ArrowAlphabet const& A,
                                            std::size_t          max_len,
                                            std::mt19937_64&     rng) {
    std::vector<std::vector<DerivationStep>> by_kind;
    for (auto k : all_step_kinds()) {
      if (w.size() >= max_len && lengthens(k)) {
        continue;
      }
      auto v = applicable_steps(w, k, A);
      if (!v.empty()) {
        by_kind.push_back(std::move(v));
      }
    }
    if (by_kind.empty()) {
      return std::nullopt;
    }
    auto const& pick = by_kind[std::uniform_int_distribution<std::size_t>(0, by_kind.size() - 1)(rng)];
    return pick[std::uniform_int_distribution<std::size_t>(0, pick.size() - 1)(rng)];
  }

  // ---- bracketed words ----

  namespace {
    void strip_into(std::vector<BracketItem> const& items, TildeWord& out) {
      for (auto const& it : items) {
        if (it.kind == ItemKind::letter) {
          out.push_back(it.sym);
        } else {
          strip_into(it.inner, out);
        }
      }
    }

    std::size_t count_brackets(std::vector<BracketItem> const& items) {
      std::size_t n = 0;
      for (auto const& it : items) {
        if (it.kind != ItemKind::letter) {
          n += 1 + count_brackets(it.inner);
        }
      }
      return n;
    }

    std::size_t depth_of(std::vector<BracketItem> const& items) {
      std::size_t d = 0;
      for (auto const& it : items) {
        if (it.kind != ItemKind::letter) {
          d = std::max(d, 1 + depth_of(it.inner));
        }
      }
      return d;
    }

    BracketItem letter_item(Sym s) {
      return {ItemKind::letter, s, {}};
    }

    BracketItem group(ItemKind k, std::vector<BracketItem> inner) {
      return {k, Sym{}, std::move(inner)};
    }

    std::vector<BracketItem> mirror_items(std::vector<BracketItem> const& items) {
      std::vector<BracketItem> out;
      out.reserve(items.size());
      for (auto it = items.rbegin(); it != items.rend(); ++it) {
        switch (it->kind) {
          case ItemKind::letter:
            out.push_back(letter_item(it->sym.wedge ? Sym::wedge_of(it->sym.second, it->sym.first)
                                                    : it->sym));
            break;
          case ItemKind::floor: out.push_back(group(ItemKind::ceil, mirror_items(it->inner))); break;
          case ItemKind::ceil: out.push_back(group(ItemKind::floor, mirror_items(it->inner))); break;
        }
      }
      return out;
    }

    void print_items(std::vector<BracketItem> const& items, DoubledAlphabet const& n, std::string& out) {
      for (auto const& it : items) {
        switch (it.kind) {
          case ItemKind::letter: out += to_string(TildeWord{it.sym}, n); break;
          case ItemKind::floor:
            out += '[';
            print_items(it.inner, n, out);
            out += ']';
            break;
          case ItemKind::ceil:
            out += '{';
            print_items(it.inner, n, out);
            out += '}';
            break;
        }
      }
    }

    class BracketParser {
     public:
      BracketParser(std::string_view text, DoubledAlphabet const& names)
          : _text(text), _names(names) {}

      std::vector<BracketItem> parse() {
        auto items = parse_items();
        skip();
        if (_pos != _text.size()) {
          fail("unexpected '" + std::string(1, _text[_pos]) + "'");
        }
        return items;
      }

     private:
      void skip() {
        while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])) != 0) {
          ++_pos;
        }
      }

      [[noreturn]] void fail(std::string const& why) const {
        throw Error(ErrorCode::syntax_error, why + " at offset " + std::to_string(_pos), {_pos});
      }

      letter parse_letter_here() {
        skip();
        auto m = _names.match(_text.substr(_pos));
        if (!m) {
          fail("expected a letter");
        }
        _pos += m->second;
        letter x = m->first;
        if (_pos < _text.size() && _text[_pos] == '\'') {
          ++_pos;
          x = prime(x);
        }
        return x;
      }

      void expect(char ch) {
        skip();
        if (_pos >= _text.size() || _text[_pos] != ch) {
          fail(std::string("expected '") + ch + "'");
        }
        ++_pos;
      }

      std::vector<BracketItem> parse_items() {
        std::vector<BracketItem> items;
        while (true) {
          skip();
          if (_pos >= _text.size() || _text[_pos] == ']' || _text[_pos] == '}') {
            return items;
          }
          char const ch = _text[_pos];
          if (ch == '[' || ch == '{') {
            ++_pos;
            auto inner = parse_items();
            if (inner.empty()) {
              fail("empty bracket");
            }
            expect(ch == '[' ? ']' : '}');
            items.push_back(group(ch == '[' ? ItemKind::floor : ItemKind::ceil, std::move(inner)));
          } else if (ch == '(') {
            ++_pos;
            letter const x = parse_letter_here();
            expect('^');
            letter const y = parse_letter_here();
            expect(')');
            items.push_back(letter_item(Sym::wedge_of(x, y)));
          } else {
            items.push_back(letter_item(Sym::single(parse_letter_here())));
          }
        }
      }

      std::string_view       _text;
      DoubledAlphabet const& _names;
      std::size_t            _pos = 0;
    };
  }  // namespace

  BracketedWord BracketedWord::from_word(TildeWord const& w) {
    BracketedWord b;
    for (auto const& s : w) {
      b.items.push_back(letter_item(s));
    }
    return b;
  }

  TildeWord BracketedWord::strip() const {
    TildeWord out;
    strip_into(items, out);
    return out;
  }

  std::size_t BracketedWord::bracket_count() const {
    return count_brackets(items);
  }

  std::size_t BracketedWord::depth() const {
    return depth_of(items);
  }

  BracketedWord mirror(BracketedWord const& w) {
    return {mirror_items(w.items)};
  }

  std::string to_string(BracketedWord const& w, ArrowAlphabet const& A) {
    std::string out;
    print_items(w.items, A.names(), out);
    return out;
  }

  BracketedWord parse_bracketed(std::string_view text, ArrowAlphabet const& A) {
    BracketedWord w{BracketParser(text, A.names()).parse()};
    if (w.empty()) {
      throw Error(ErrorCode::syntax_error, "empty bracketed word");
    }
    return w;
  }

  // ---- classification ----

  namespace {
    constexpr std::array<std::string_view, bracket_class_count> class_names{
        "W", "W^right", "W^left", "W^0|", "W^0|right", "W^left|0", "W^|0"};

    //! The form p0 B1 C1 p1 ... Bk Ck pk of an item list; B and C hold item indices.
    struct Shape {
      bool                                  valid = false;
      std::vector<TildeWord>                p;
      std::vector<std::vector<std::size_t>> b;
      std::vector<std::vector<std::size_t>> c;

      [[nodiscard]] std::size_t k() const {
        return b.size();
      }
    };

    Shape shape_of(std::vector<BracketItem> const& items) {
      Shape       sh;
      std::size_t i    = 0;
      auto const  run  = [&] {
        TildeWord r;
        while (i < items.size() && items[i].kind == ItemKind::letter) {
          r.push_back(items[i++].sym);
        }
        return r;
      };
      sh.p.push_back(run());
      while (i < items.size()) {
        std::vector<std::size_t> bs, cs;
        while (i < items.size() && items[i].kind == ItemKind::floor) {
          bs.push_back(i++);
        }
        while (i < items.size() && items[i].kind == ItemKind::ceil) {
          cs.push_back(i++);
        }
        if (i < items.size() && items[i].kind == ItemKind::floor) {
          return sh;  // a { } group followed by a [ ] group with no path between
        }
        sh.b.push_back(std::move(bs));
        sh.c.push_back(std::move(cs));
        sh.p.push_back(run());
      }
      sh.valid = !(sh.k() == 0 && sh.p[0].empty());
      return sh;
    }

    //! The role a run plays: a path, or one of the two base forms.
    enum class Role : std::uint8_t { path, right0, left0 };

    struct NodeInfo {
      Classification                                       cls;
      std::array<std::optional<TildeWord>, bracket_class_count> path{};
    };

    class Classifier {
     public:
      Classifier(ArrowAlphabet const& A, Orientation o) : _A(A), _o(o) {}

      NodeInfo analyze(std::vector<BracketItem> const& items) const {
        NodeInfo info;
        Shape const sh = shape_of(items);
        if (!sh.valid) {
          return info;
        }
        std::vector<NodeInfo> children(items.size());
        for (std::size_t i = 0; i < items.size(); ++i) {
          if (items[i].kind != ItemKind::letter) {
            children[i] = analyze(items[i].inner);
          }
        }
        for (std::size_t ci = 0; ci < bracket_class_count; ++ci) {
          auto const cls = static_cast<BracketClass>(ci);
          if (auto p = check(cls, items, sh, children)) {
            info.cls.set(cls);
            info.path[ci] = p->empty() ? std::nullopt : std::optional<TildeWord>(std::move(*p));
          }
        }
        return info;
      }

      [[nodiscard]] Arrow hat(TildeWord const& p) const {
        return hat_eval(p, _A, _o);
      }

     private:
      [[nodiscard]] bool path(TildeWord const& w) const {
        return path_in(w, _A, _o);
      }

      [[nodiscard]] bool fits(TildeWord const& w, Role r) const {
        if (w.empty()) {
          return false;
        }
        switch (r) {
          case Role::path: return path(w);
          case Role::right0: {
            Sym const& t = w.back();
            if (!t.wedge || _A.is_path_symbol(t, _o)) {
              return false;
            }
            TildeWord const q(w.begin(), w.end() - 1);
            return q.empty() || (path(q) && _A.omega(q.back(), _o) == _A.alpha(t.first, _o));
          }
          case Role::left0: {
            Sym const& t = w.front();
            if (!t.wedge || _A.is_path_symbol(t, _o)) {
              return false;
            }
            TildeWord const q(w.begin() + 1, w.end());
            return q.empty() || (path(q) && _A.omega(t.second, _o) == _A.alpha(q.front(), _o));
          }
        }
        return false;
      }

      //! The path of a run in its role; empty for an empty run.
      [[nodiscard]] static TildeWord wp_of(TildeWord const& w, Role r) {
        if (w.empty() || r == Role::path) {
          return w;
        }
        TildeWord out = w;
        if (r == Role::right0) {
          letter const y = w.back().first;
          out.back()     = Sym::wedge_of(y, prime(y));
        } else {
          letter const y = w.front().second;
          out.front()    = Sym::wedge_of(prime(y), y);
        }
        return out;
      }

      std::optional<TildeWord> check(BracketClass                      cls,
                                     std::vector<BracketItem> const&   items,
                                     Shape const&                      sh,
                                     std::vector<NodeInfo> const&      children) const {
        std::size_t const k        = sh.k();
        bool const        right    = cls == BracketClass::right || cls == BracketClass::empty_right;
        bool const        left     = cls == BracketClass::left || cls == BracketClass::left_empty;
        bool const        no_start = cls == BracketClass::empty_w || cls == BracketClass::empty_right;
        bool const        no_end   = cls == BracketClass::left_empty || cls == BracketClass::w_empty;

        if (k == 0) {
          if (no_start || no_end) {
            return std::nullopt;
          }
          Role const r = right ? Role::right0 : left ? Role::left0 : Role::path;
          return fits(sh.p[0], r) ? std::optional(wp_of(sh.p[0], r)) : std::nullopt;
        }

        std::vector<Role> roles(k + 1, Role::path);
        // p0
        if (no_start) {
          if (!sh.p[0].empty() || sh.b[0].empty()) {
            return std::nullopt;
          }
        } else if (left) {
          roles[0] = Role::left0;
          if (!fits(sh.p[0], Role::left0)) {
            return std::nullopt;
          }
        } else if (!sh.p[0].empty() && !path(sh.p[0])) {
          return std::nullopt;
        }
        // pk
        if (no_end) {
          if (!sh.p[k].empty() || sh.c[k - 1].empty()) {
            return std::nullopt;
          }
        } else if (right) {
          roles[k] = Role::right0;
          if (!fits(sh.p[k], Role::right0)) {
            return std::nullopt;
          }
        } else if (!sh.p[k].empty() && !path(sh.p[k])) {
          return std::nullopt;
        }
        for (std::size_t i = 1; i < k; ++i) {
          if (!path(sh.p[i])) {
            return std::nullopt;
          }
        }
        // (E0a)
        for (std::size_t i = 1; i <= k; ++i) {
          if (!sh.p[i - 1].empty() && !sh.p[i].empty()
              && _A.omega(sh.p[i - 1].back(), _o) != _A.alpha(sh.p[i].front(), _o)) {
            return std::nullopt;
          }
        }
        std::vector<std::optional<Arrow>> ph(k + 1);
        for (std::size_t i = 0; i <= k; ++i) {
          if (!sh.p[i].empty()) {
            ph[i] = hat(wp_of(sh.p[i], roles[i]));
          }
        }
        auto const right_slot = static_cast<std::size_t>(BracketClass::right);
        auto const left_slot  = static_cast<std::size_t>(BracketClass::left);
        for (std::size_t i = 1; i <= k; ++i) {
          // (E1)
          for (std::size_t idx : sh.b[i - 1]) {
            auto const& ch = children[idx];
            if (!ch.cls.has(BracketClass::right)) {
              return std::nullopt;
            }
            auto const& last = items[idx].inner.back();
            if (last.kind != ItemKind::letter || !last.sym.wedge) {
              continue;
            }
            auto const h = hat(*ch.path[right_slot]);
            if (!_A.is_idempotent(h) || !_A.r_related(_A.delta(last.sym.first), h, _o)) {
              return std::nullopt;
            }
            if (ph[i - 1]) {
              if (!_A.l_related(_A.delta(last.sym.second), *ph[i - 1], _o)) {
                return std::nullopt;
              }
            } else if (!(i == 1 && no_start)) {
              return std::nullopt;
            }
          }
          // (E2)
          for (std::size_t idx : sh.c[i - 1]) {
            auto const& ch = children[idx];
            if (!ch.cls.has(BracketClass::left)) {
              return std::nullopt;
            }
            auto const& first = items[idx].inner.front();
            if (first.kind != ItemKind::letter || !first.sym.wedge) {
              continue;
            }
            auto const h = hat(*ch.path[left_slot]);
            if (!_A.is_idempotent(h) || !_A.l_related(_A.delta(first.sym.second), h, _o)) {
              return std::nullopt;
            }
            if (ph[i]) {
              if (!_A.r_related(_A.delta(first.sym.first), *ph[i], _o)) {
                return std::nullopt;
              }
            } else if (!(i == k && no_end)) {
              return std::nullopt;
            }
          }
        }
        TildeWord out = wp_of(sh.p[0], roles[0]);
        for (std::size_t i = 1; i <= k; ++i) {
          auto const q = wp_of(sh.p[i], roles[i]);
          out.insert(out.end(), q.begin(), q.end());
        }
        if (!out.empty() && !path(out)) {
          return std::nullopt;
        }
        return out;
      }

      ArrowAlphabet const& _A;
      Orientation          _o;
    };
  }  // namespace

  std::string_view bracket_class_name(BracketClass c) noexcept {
    return class_names[static_cast<std::size_t>(c)];
  }

  std::string Classification::to_string() const {
    if (none()) {
      return "none";
    }
    std::string out;
    for (std::size_t i = 0; i < bracket_class_count; ++i) {
      if (has(static_cast<BracketClass>(i))) {
        out += (out.empty() ? "" : ",") + std::string(class_names[i]);
      }
    }
    return out;
  }

  BracketClass dual(BracketClass c) noexcept {
    switch (c) {
      case BracketClass::w: return BracketClass::w;
      case BracketClass::right: return BracketClass::left;
      case BracketClass::left: return BracketClass::right;
      case BracketClass::empty_w: return BracketClass::w_empty;
      case BracketClass::empty_right: return BracketClass::left_empty;
      case BracketClass::left_empty: return BracketClass::empty_right;
      case BracketClass::w_empty: return BracketClass::empty_w;
    }
    return c;
  }

  Classification dual(Classification c) noexcept {
    Classification d;
    for (std::size_t i = 0; i < bracket_class_count; ++i) {
      if (c.has(static_cast<BracketClass>(i))) {
        d.set(dual(static_cast<BracketClass>(i)));
      }
    }
    return d;
  }

  Classification classify_bracketed(BracketedWord const& w, ArrowAlphabet const& A, Orientation o) {
    return Classifier(A, o).analyze(w.items).cls;
  }

  std::optional<TildeWord> wp(BracketedWord const& w, BracketClass c, ArrowAlphabet const& A, Orientation o) {
    auto info = Classifier(A, o).analyze(w.items);
    if (!info.cls.has(c)) {
      throw Error(ErrorCode::unclassified,
                  "bracketed word is not in " + std::string(bracket_class_name(c)));
    }
    return info.path[static_cast<std::size_t>(c)];
  }

  std::optional<Arrow> wp_hat(BracketedWord const& w, BracketClass c, ArrowAlphabet const& A, Orientation o) {
    auto p = wp(w, c, A, o);
    if (!p) {
      return std::nullopt;
    }
    return hat_eval(*p, A, o);
  }

  std::optional<Arrow> wp_hat(BracketedWord const& w, ArrowAlphabet const& A) {
    auto const cls = classify_bracketed(w, A);
    for (std::size_t i = 0; i < bracket_class_count; ++i) {
      if (cls.has(static_cast<BracketClass>(i))) {
        return wp_hat(w, static_cast<BracketClass>(i), A);
      }
    }
    throw Error(ErrorCode::unclassified, "bracketed word is in none of the classes");
  }

  // ---- lifting ----

  namespace {
    constexpr std::array<std::string_view, lift_case_count> case_names{
        "path-section",       "wedge-letter",     "insert-after-letter", "insert-after-floor",
        "drop-in-run",        "drop-floor-letter", "unwrap-ceil-prefix", "drop-after-floor",
        "unwrap-last-ceil",   "split-ceil-suffix", "merge-ceils"};

    using Address = std::vector<std::size_t>;
    using Items   = std::vector<BracketItem>;

    void collect_addresses(Items const& items, Address& prefix, std::vector<Address>& out) {
      for (std::size_t i = 0; i < items.size(); ++i) {
        prefix.push_back(i);
        if (items[i].kind == ItemKind::letter) {
          out.push_back(prefix);
        } else {
          collect_addresses(items[i].inner, prefix, out);
        }
        prefix.pop_back();
      }
    }

    std::vector<Address> letter_addresses(Items const& items) {
      std::vector<Address> out;
      Address              prefix;
      collect_addresses(items, prefix, out);
      return out;
    }

    //! The item list reached by descending through the bracket items on the path.
    Items& list_at(Items& root, Address const& path, std::size_t len) {
      Items* cur = &root;
      for (std::size_t i = 0; i < len; ++i) {
        cur = &(*cur)[path[i]].inner;
      }
      return *cur;
    }

    Address parent_of(Address a) {
      a.pop_back();
      return a;
    }

    [[noreturn]] void not_covered(std::string const& why) {
      throw Error(ErrorCode::case_not_covered, why);
    }

    Items slice(Items const& v, std::size_t from, std::size_t to) {
      return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to)};
    }

    // T4b: the kept letter sits at position p and n is inserted after it.
    LiftCase lift_t4b(Items& root, std::vector<Address> const& addrs, std::size_t p, Sym kept, Sym n,
                      ArrowAlphabet const& A, Orientation o) {
      Address const& a      = addrs[p];
      Address const  parent = parent_of(a);
      Items&         list   = list_at(root, parent, parent.size());
      std::size_t const idx = a.back();
      BracketItem const ins = A.is_path_symbol(n, o) ? letter_item(n) : group(ItemKind::floor, {letter_item(n)});
      ItemKind const owner =
          parent.empty() ? ItemKind::letter : list_at(root, parent, parent.size() - 1)[parent.back()].kind;
      if (A.is_path_symbol(kept, o) || (owner == ItemKind::ceil && idx == 0)) {
        list.insert(list.begin() + static_cast<std::ptrdiff_t>(idx + 1), ins);
        return LiftCase::insert_after_letter;
      }
      if (owner == ItemKind::floor && idx + 1 == list.size()) {
        Items& grand = list_at(root, parent, parent.size() - 1);
        grand.insert(grand.begin() + static_cast<std::ptrdiff_t>(parent.back() + 1), ins);
        return LiftCase::insert_after_floor;
      }
      not_covered("T4b on a non-loop wedge letter that neither opens a { } group nor closes a [ ] group");
    }

    //! Drops the letter d opening the [ ] group at U[i]: either the whole group,
    //! or the { } group it starts, whose remainder moves out in front.
    LiftCase drop_floor_head(Items& U, std::size_t i, Sym d, ArrowAlphabet const& A, Orientation o) {
      Items const& f = U[i].inner;
      if (f.front().kind == ItemKind::letter) {
        if (f.size() != 1 || f.front().sym != d || A.is_path_symbol(d, o)) {
          not_covered("T4a into a [ ] group that is not a single non-loop wedge letter");
        }
        U.erase(U.begin() + static_cast<std::ptrdiff_t>(i));
        return LiftCase::drop_floor_letter;
      }
      if (f.front().kind != ItemKind::ceil || f.front().inner.front().kind != ItemKind::letter
          || f.front().inner.front().sym != d) {
        not_covered("T4a into a [ ] group not opened by the dropped letter");
      }
      Items repl = slice(f.front().inner, 1, f.front().inner.size());
      if (f.size() > 1) {
        repl.push_back(group(ItemKind::floor, slice(f, 1, f.size())));
      }
      U.erase(U.begin() + static_cast<std::ptrdiff_t>(i));
      U.insert(U.begin() + static_cast<std::ptrdiff_t>(i), repl.begin(), repl.end());
      return LiftCase::unwrap_ceil_prefix;
    }

    // T4a: the letter at p is kept and the one at p + 1 dropped.
    LiftCase lift_t4a(Items& root, std::vector<Address> const& addrs, std::size_t p, ArrowAlphabet const& A,
                      Orientation o, Sym dropped) {
      Address const& a1 = addrs[p];
      Address const& a2 = addrs[p + 1];
      std::size_t    c  = 0;
      while (c < a1.size() && c < a2.size() && a1[c] == a2[c]) {
        ++c;
      }
      std::size_t const i1 = a1[c], i2 = a2[c];
      if (i2 != i1 + 1) {
        not_covered("T4a letters are not in neighbouring items");
      }
      Items&       U       = list_at(root, a1, c);
      ItemKind const k1    = U[i1].kind;
      ItemKind const k2    = U[i2].kind;
      bool const   d_loop  = A.is_path_symbol(dropped, o);
      auto const   erase_at = [&U](std::size_t i) { U.erase(U.begin() + static_cast<std::ptrdiff_t>(i)); };

      if (k1 == ItemKind::letter && k2 == ItemKind::letter) {
        erase_at(i2);
        return LiftCase::drop_in_run;
      }
      if (k2 == ItemKind::floor && k1 != ItemKind::ceil) {
        return drop_floor_head(U, i2, dropped, A, o);
      }
      if (k1 == ItemKind::floor && k2 == ItemKind::letter) {
        if (!d_loop) {
          not_covered("T4a drops a non-loop wedge letter right after a [ ] group");
        }
        erase_at(i2);
        return LiftCase::drop_after_floor;
      }
      if (k1 == ItemKind::ceil && k2 == ItemKind::letter) {
        if (d_loop || i2 + 1 != U.size()) {
          not_covered("T4a after a { } group on a letter that does not close a W^right word");
        }
        Items const ceil = U[i1].inner;
        if (ceil.size() == 1 && ceil.front().kind == ItemKind::letter) {
          U[i1] = ceil.front();
          erase_at(i2);
          return LiftCase::unwrap_last_ceil;
        }
        if (c == 0 || list_at(root, a1, c - 1)[a1[c - 1]].kind != ItemKind::floor) {
          not_covered("T4a splits a { } group outside a [ ] group");
        }
        Items u0 = slice(U, 0, i1);
        u0.push_back(ceil.front());
        Items const rest = slice(ceil, 1, ceil.size());
        Items&      G    = list_at(root, a1, c - 1);
        std::size_t const fi = a1[c - 1];
        G[fi]                = group(ItemKind::floor, std::move(u0));
        G.insert(G.begin() + static_cast<std::ptrdiff_t>(fi + 1), rest.begin(), rest.end());
        return LiftCase::split_ceil_suffix;
      }
      if (k1 == ItemKind::ceil && k2 == ItemKind::ceil) {
        if (a2.size() != c + 2 || a2[c + 1] != 0) {
          not_covered("T4a into a { } group not opened by the dropped letter");
        }
        Items merged = U[i1].inner;
        merged.insert(merged.end(), U[i2].inner.begin() + 1, U[i2].inner.end());
        U[i1].inner = std::move(merged);
        erase_at(i2);
        return LiftCase::merge_ceils;
      }
      not_covered("T4a across a [ ] group followed by a { } group");
    }

    std::pair<std::size_t, std::size_t> section_lengths(StepKind k) {
      switch (k) {
        case StepKind::s21a:
        case StepKind::t5a: return {2, 1};
        case StepKind::s21b:
        case StepKind::t5b: return {1, 2};
        case StepKind::ia: return {3, 1};
        case StepKind::ib: return {1, 3};
        default: return {1, 1};
      }
    }

    Lift lift_t4(BracketedWord const& w, DerivationStep const& s, ArrowAlphabet const& A, Orientation o) {
      TildeWord const word  = w.strip();
      auto const      addrs = letter_addresses(w.items);
      Lift            out{w, LiftCase::drop_in_run, false};
      if (s.kind == StepKind::t4a) {
        out.rule = lift_t4a(out.word.items, addrs, s.position, A, o, word[s.position + 1]);
      } else {
        out.rule = lift_t4b(out.word.items, addrs, s.position, word[s.position], Sym::wedge_of(s.y, s.x), A, o);
      }
      return out;
    }
  }  // namespace

  std::string_view lift_case_name(LiftCase c) noexcept {
    return case_names[static_cast<std::size_t>(c)];
  }

  Lift lift_step_traced(BracketedWord const& w, DerivationStep const& s, ArrowAlphabet const& A) {
    if (!classify_bracketed(w, A).has(BracketClass::w)) {
      throw Error(ErrorCode::precondition_violated, "bracketed word " + to_string(w, A) + " is not in W");
    }
    TildeWord const word = w.strip();
    TildeWord       expected;
    try {
      expected = apply_step(word, s, A);
    } catch (Error const& e) {
      throw Error(ErrorCode::precondition_violated, std::string("step does not apply: ") + e.what());
    }

    Lift out{w, LiftCase::path_section, false};
    switch (s.kind) {
      case StepKind::t3a:
      case StepKind::t3b: {
        std::size_t const n = word.size();
        DerivationStep    m = s;
        m.kind              = s.kind == StepKind::t3a ? StepKind::t4a : StepKind::t4b;
        m.position          = s.kind == StepKind::t3a ? n - 2 - s.position : n - 1 - s.position;
        auto r              = lift_t4(mirror(w), m, A, Orientation::mirrored);
        out                 = {mirror(r.word), r.rule, true};
        break;
      }
      case StepKind::t4a:
      case StepKind::t4b: out = lift_t4(w, s, A, Orientation::forward); break;
      case StepKind::s22a:
      case StepKind::s22b: {
        auto const a = letter_addresses(w.items)[s.position];
        list_at(out.word.items, a, a.size() - 1)[a.back()].sym = expected[s.position];
        out.rule                                               = LiftCase::wedge_letter;
        break;
      }
      default: {
        auto const [old_len, new_len] = section_lengths(s.kind);
        auto const  addrs             = letter_addresses(w.items);
        Address const parent          = parent_of(addrs[s.position]);
        std::size_t const first       = addrs[s.position].back();
        for (std::size_t i = 1; i < old_len; ++i) {
          auto const& a = addrs[s.position + i];
          if (parent_of(a) != parent || a.back() != first + i) {
            not_covered("path section spans several bracket levels");
          }
        }
        Items& list = list_at(out.word.items, parent, parent.size());
        auto   at   = list.begin() + static_cast<std::ptrdiff_t>(first);
        list.erase(at, at + static_cast<std::ptrdiff_t>(old_len));
        Items repl;
        for (std::size_t i = 0; i < new_len; ++i) {
          repl.push_back(letter_item(expected[s.position + i]));
        }
        list.insert(list.begin() + static_cast<std::ptrdiff_t>(first), repl.begin(), repl.end());
        break;
      }
    }
    if (out.word.strip() != expected) {
      throw Error(ErrorCode::case_not_covered, "lifted word " + to_string(out.word, A)
                                                   + " does not strip to " + to_string(expected, A));
    }
    return out;
  }

  BracketedWord lift_step(BracketedWord const& w, DerivationStep const& s, ArrowAlphabet const& A) {
    return lift_step_traced(w, s, A).word;
  }

  std::size_t non_loop_wedges(TildeWord const& w, ArrowAlphabet const& A) {
    return static_cast<std::size_t>(
        std::count_if(w.begin(), w.end(), [&](Sym const& s) { return !A.is_path_symbol(s); }));
  }

  namespace {
    class BracketingEnumerator {
     public:
      BracketingEnumerator(TildeWord const& w, std::size_t max_brackets, ArrowAlphabet const& A)
          : _w(w), _max(max_brackets) {
        for (auto const& s : w) {
          _open.push_back(!A.is_path_symbol(s));
        }
      }

      struct Entry {
        Items       items;
        std::size_t brackets;
      };

      std::vector<Entry> const& lists(std::size_t i, std::size_t j) {
        auto const key = std::pair{i, j};
        if (auto it = _memo.find(key); it != _memo.end()) {
          return it->second;
        }
        std::vector<Entry> out;
        if (i == j) {
          out.push_back({{}, 0});
        } else {
          for (auto const& t : lists(i + 1, j)) {
            Items v{letter_item(_w[i])};
            v.insert(v.end(), t.items.begin(), t.items.end());
            out.push_back({std::move(v), t.brackets});
          }
          for (std::size_t m = i + 1; m <= j; ++m) {
            // [ ] over [i, m): content ends with the non-loop wedge letter at m - 1
            if (_open[m - 1]) {
              for (auto const& c : lists(i, m - 1)) {
                Items inner = c.items;
                inner.push_back(letter_item(_w[m - 1]));
                add_group(out, ItemKind::floor, std::move(inner), c.brackets, m, j);
              }
            }
            // { } over [i, m): content starts with the non-loop wedge letter at i
            if (_open[i]) {
              for (auto const& c : lists(i + 1, m)) {
                Items inner{letter_item(_w[i])};
                inner.insert(inner.end(), c.items.begin(), c.items.end());
                add_group(out, ItemKind::ceil, std::move(inner), c.brackets, m, j);
              }
            }
          }
        }
        return _memo.emplace(key, std::move(out)).first->second;
      }

     private:
      void add_group(std::vector<Entry>& out, ItemKind k, Items inner, std::size_t used, std::size_t m,
                     std::size_t j) {
        if (used + 1 > _max) {
          return;
        }
        BracketItem const g = group(k, std::move(inner));
        for (auto const& t : lists(m, j)) {
          if (used + 1 + t.brackets > _max) {
            continue;
          }
          Items v{g};
          v.insert(v.end(), t.items.begin(), t.items.end());
          out.push_back({std::move(v), used + 1 + t.brackets});
        }
      }

      TildeWord const&                                        _w;
      std::size_t                                             _max;
      std::vector<bool>                                       _open;
      std::map<std::pair<std::size_t, std::size_t>, std::vector<Entry>> _memo;
    };
  }  // namespace

  void for_each_bracketing(TildeWord const&                                 w,
                           std::size_t                                      max_brackets,
                           ArrowAlphabet const&                             A,
                           std::function<bool(BracketedWord const&)> const& f) {
    if (w.empty()) {
      return;
    }
    BracketingEnumerator e(w, max_brackets, A);
    for (auto const& entry : e.lists(0, w.size())) {
      if (!f(BracketedWord{entry.items})) {
        return;
      }
    }
  }

  BracketedWord lift_step_oracle(BracketedWord const&  w,
                                 DerivationStep const& s,
                                 ArrowAlphabet const&  A,
                                 std::size_t           max_brackets) {
    if (!classify_bracketed(w, A).has(BracketClass::w)) {
      throw Error(ErrorCode::precondition_violated, "bracketed word " + to_string(w, A) + " is not in W");
    }
    auto const      target = wp_hat(w, BracketClass::w, A);
    TildeWord const next   = apply_step(w.strip(), s, A);
    std::optional<BracketedWord> found;
    for_each_bracketing(next, max_brackets, A, [&](BracketedWord const& b) {
      if (classify_bracketed(b, A).has(BracketClass::w) && wp_hat(b, BracketClass::w, A) == target) {
        found = b;
        return false;
      }
      return true;
    });
    if (!found) {
      throw Error(ErrorCode::no_witness_in_budget,
                  "no bracketing of " + to_string(next, A) + " in W keeps the invariant",
                  {max_brackets});
    }
    return *found;
  }

  // ---- lemma checks ----

  namespace {
    class LemmaRecorder {
     public:
      explicit LemmaRecorder(std::vector<LemmaCheck>& checks) : _checks(checks) {}

      void record(std::string const& name, bool pass, std::string const& detail) {
        auto it = std::find_if(_checks.begin(), _checks.end(), [&](LemmaCheck const& c) { return c.name == name; });
        if (it == _checks.end()) {
          _checks.push_back({name, true, 0, {}});
          it = _checks.end() - 1;
        }
        ++it->instances;
        if (!pass && it->pass) {
          it->pass   = false;
          it->detail = detail;
        }
      }

     private:
      std::vector<LemmaCheck>& _checks;
    };

    class LemmaWalker {
     public:
      LemmaWalker(ArrowAlphabet const& A, LemmaRecorder& rec) : _A(A), _cls(A, Orientation::forward), _rec(rec) {}

      void node(Items const& items, BracketClass own) {
        NodeInfo const info = _cls.analyze(items);
        std::string const text = to_string(BracketedWord{items}, _A);
        bool const single_open = items.size() == 1 && items[0].kind == ItemKind::letter
                                 && !_A.is_path_symbol(items[0].sym);
        bool const in_w     = info.cls.has(BracketClass::w);
        bool const in_right = info.cls.has(BracketClass::right);
        bool const in_left  = info.cls.has(BracketClass::left);
        _rec.record("e-r-l-disjoint",
                    !(in_w && (in_right || in_left)) && ((in_right && in_left) == single_open), text);

        if (info.cls.has(own)) {
          cut(items, own);
        }
        for (auto const& it : items) {
          if (it.kind == ItemKind::floor) {
            node(it.inner, BracketClass::right);
          } else if (it.kind == ItemKind::ceil) {
            deformed(it.inner);
            node(it.inner, BracketClass::left);
          }
        }
      }

     private:
      void cut(Items const& items, BracketClass own) {
        for (std::size_t j = 1; j < items.size(); ++j) {
          Items const  v = slice(items, j, items.size());
          BracketClass expect;
          if (items[j].kind == ItemKind::floor) {
            expect = own == BracketClass::right ? BracketClass::empty_right : BracketClass::empty_w;
          } else {
            expect = own == BracketClass::right ? BracketClass::right : BracketClass::w;
          }
          NodeInfo const info      = _cls.analyze(v);
          bool const     all_floor = std::all_of(v.begin(), v.end(), [](BracketItem const& b) {
            return b.kind == ItemKind::floor;
          });
          bool const ok = info.cls.has(expect)
                          && (!info.path[static_cast<std::size_t>(expect)].has_value() == all_floor);
          _rec.record("cut", ok,
                      to_string(BracketedWord{v}, _A) + " expected in " + std::string(bracket_class_name(expect)));
        }
      }

      void deformed(Items const& u) {
        if (u.size() < 2 || u[0].kind != ItemKind::letter || !u[0].sym.wedge) {
          return;
        }
        TildeWord const flat = BracketedWord{u}.strip();
        if (!flat.back().wedge) {
          return;
        }
        NodeInfo const info = _cls.analyze(u);
        if (!info.cls.has(BracketClass::left)) {
          return;
        }
        std::string const text = to_string(BracketedWord{u}, _A);
        letter const      y    = u[0].sym.second;
        letter const      a    = flat.back().second;
        Arrow const       h    = _cls.hat(*info.path[static_cast<std::size_t>(BracketClass::left)]);
        Arrow const       da = _A.delta(a), dy = _A.delta(y);
        bool ok = _A.is_idempotent(h) && _A.l_related(da, dy) && _A.l_related(dy, h)
                  && _A.omega(a) == _A.omega(y) && _A.omega(y) == h.source && h.source == h.target;
        Items const    v     = slice(u, 1, u.size());
        NodeInfo const vinfo = _cls.analyze(v);
        std::optional<TildeWord> vp;
        if (vinfo.cls.has(BracketClass::w)) {
          vp = vinfo.path[static_cast<std::size_t>(BracketClass::w)];
        } else if (vinfo.cls.has(BracketClass::empty_w)) {
          vp = vinfo.path[static_cast<std::size_t>(BracketClass::empty_w)];
        } else {
          ok = false;
        }
        if (vp) {
          Arrow const hv = _cls.hat(*vp);
          ok = ok && _A.is_idempotent(hv) && _A.l_related(dy, hv) && _A.omega(y) == hv.source;
        }
        _rec.record("deformedlemma(3)", ok, text);
      }

      ArrowAlphabet const& _A;
      Classifier           _cls;
      LemmaRecorder&       _rec;
    };
  }  // namespace

  void check_bracket_lemmas(BracketedWord const& w, ArrowAlphabet const& A, std::vector<LemmaCheck>& checks) {
    LemmaRecorder rec(checks);
    LemmaWalker(A, rec).node(w.items, BracketClass::w);
  }

  // ---- the verifier ----

  EmbeddingReport verify_embedding(ArrowAlphabet const& A,
                                   std::size_t          trials,
                                   std::size_t          max_steps,
                                   std::uint64_t        seed,
                                   std::size_t          max_len) {
    auto const&     c   = A.semigroupoid();
    auto const&     ctx = c.context();
    auto const&     S   = ctx.s();
    auto const&     T   = ctx.t();
    EmbeddingReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<elem> pick(0, static_cast<elem>(S.order() - 1));

    for (std::size_t trial = 0; trial < trials; ++trial) {
      elem const      s      = pick(rng);
      auto const      k      = kappa(A, s);
      Arrow const     target = A.arrow(k.word.front().first);
      BracketedWord   bw     = BracketedWord::from_word(k.word);
      std::ostringstream log;
      log << "seed " << seed << " trial " << trial << " start " << to_string(k.word, A);
      auto const fail = [&](std::string const& why) {
        rep.invariance_ok = false;
        rep.failure       = log.str() + " : " + why;
        throw Error(ErrorCode::invariance_violated, rep.failure, {seed, trial});
      };
      if (wp_hat(bw, BracketClass::w, A) != target) {
        fail("the kappa letter is not its own invariant");
      }
      ++rep.derivations;
      for (std::size_t step = 0; step < max_steps; ++step) {
        TildeWord const word = bw.strip();
        auto const      st   = random_step(word, A, max_len, rng);
        if (!st) {
          break;
        }
        log << " ; " << to_string(*st, A);
        Lift lifted;
        try {
          lifted = lift_step_traced(bw, *st, A);
        } catch (Error const& e) {
          fail(std::string("lift failed on ") + to_string(bw, A) + ": " + e.what());
        }
        if (lifted.word.strip() != apply_step(word, *st, A)) {
          fail("lift does not strip to the derived word");
        }
        auto const cls = classify_bracketed(lifted.word, A);
        if (!cls.has(BracketClass::w)) {
          fail("lifted word " + to_string(lifted.word, A) + " is not in W (" + cls.to_string() + ")");
        }
        auto const h = wp_hat(lifted.word, BracketClass::w, A);
        if (h != target) {
          fail("invariant changed at " + to_string(lifted.word, A) + ": "
               + (h ? to_string(*h) : std::string("absent")) + " != " + to_string(target));
        }
        bw = std::move(lifted.word);
        ++rep.lifted_steps;
        ++rep.per_kind[st->kind];
        ++rep.per_case[lifted.rule];
        rep.max_brackets = std::max(rep.max_brackets, bw.bracket_count());
      }
    }

    // (ii) kappa letters of distinct rho-related elements keep distinct invariants
    std::vector<Arrow> images;
    images.reserve(S.order());
    for (elem s = 0; s < S.order(); ++s) {
      images.push_back(A.arrow(kappa(A, s).word.front().first));
    }
    for (elem s = 0; s < S.order(); ++s) {
      for (elem t = s + 1; t < S.order(); ++t) {
        if (!ctx.rho().related(s, t)) {
          continue;
        }
        ++rep.rho_pairs;
        if (hat_eval({Sym::single(A.letter_of(images[s]))}, A)
            == hat_eval({Sym::single(A.letter_of(images[t]))}, A)) {
          rep.separation_ok = false;
          if (rep.failure.empty()) {
            rep.failure = "kappa letters of " + std::to_string(s) + " and " + std::to_string(t) + " coincide";
          }
        }
      }
    }

    // (iii) kappa(s) kappa(t) with the action applied letterwise evaluates to kappa(st)
    for (elem s = 0; s < S.order(); ++s) {
      for (elem t = 0; t < S.order(); ++t) {
        ++rep.homomorphism_checks;
        elem const sigma = ctx.project(s);
        elem const st    = T.product(sigma, ctx.project(t));
        elem const eps   = T.product(st, ctx.t_inverse(st));
        bool       ok    = false;
        std::string why;
        try {
          TildeWord const w{Sym::single(A.letter_of(c.act(eps, images[s]))),
                            Sym::single(A.letter_of(c.act(sigma, images[t])))};
          ok = hat_eval(w, A) == images[S.product(s, t)];
          if (!ok) {
            why = to_string(w, A) + " does not evaluate to kappa(" + std::to_string(S.product(s, t)) + ")";
          }
        } catch (Error const& e) {
          why = e.what();
        }
        if (!ok) {
          rep.homomorphism_ok = false;
          if (rep.failure.empty()) {
            rep.failure = "homomorphism at (" + std::to_string(s) + ", " + std::to_string(t) + "): " + why;
          }
        }
      }
    }
    return rep;
  }

}  // namespace esli
