#include "esli/term.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "esli/error.hpp"

namespace esli {

  namespace {
    constexpr std::uint32_t tag_shift = 29;
    constexpr std::uint32_t payload   = (1U << tag_shift) - 1;

    constexpr std::uint32_t tok_letter(letter x) {
      return x;
    }
    constexpr std::uint32_t tok_wedge() {
      return 1U << tag_shift;
    }
    constexpr std::uint32_t tok_concat(std::size_t k) {
      return (2U << tag_shift) | static_cast<std::uint32_t>(k);
    }
    constexpr std::uint32_t tag(std::uint32_t t) {
      return t >> tag_shift;
    }
    constexpr bool is_letter_tok(std::uint32_t t) {
      return tag(t) == 0;
    }

    using Tokens = std::vector<std::uint32_t>;

    std::size_t subterm_end(Tokens const& tok, std::size_t i) {
      switch (tag(tok[i])) {
        case 0: return i + 1;
        case 1: return subterm_end(tok, subterm_end(tok, i + 1));
        default: {
          std::size_t j = i + 1;
          for (std::uint32_t c = 0; c < (tok[i] & payload); ++c) {
            j = subterm_end(tok, j);
          }
          return j;
        }
      }
    }

    std::vector<std::size_t> child_starts(Tokens const& tok, std::size_t i) {
      std::vector<std::size_t> out;
      std::size_t              n = tag(tok[i]) == 1 ? 2 : (tok[i] & payload);
      std::size_t              j = i + 1;
      for (std::size_t c = 0; c < n; ++c) {
        out.push_back(j);
        j = subterm_end(tok, j);
      }
      out.push_back(j);
      return out;
    }

    letter first_letter(Tokens const& tok, std::size_t begin) {
      while (!is_letter_tok(tok[begin])) {
        ++begin;
      }
      return tok[begin];
    }

    letter last_letter(Tokens const& tok, std::size_t end) {
      while (!is_letter_tok(tok[end - 1])) {
        --end;
      }
      return tok[end - 1];
    }

    // A factor that is a wedge of two letters.
    bool letter_wedge(Tokens const& tok, std::size_t i, letter& x, letter& y) {
      if (tag(tok[i]) != 1 || !is_letter_tok(tok[i + 1]) || !is_letter_tok(tok[i + 2])) {
        return false;
      }
      x = tok[i + 1];
      y = tok[i + 2];
      return true;
    }

    // Replacement for a segment of two factors, if some rule applies.
    std::optional<Tokens> segment_rewrite(Tokens const& tok, std::size_t a, std::size_t b,
                                          Rule rule) {
      letter x1 = 0, y1 = 0, x2 = 0, y2 = 0;
      bool   la = is_letter_tok(tok[a]), lb = is_letter_tok(tok[b]);
      bool   wa = letter_wedge(tok, a, x1, y1), wb = letter_wedge(tok, b, x2, y2);
      switch (rule) {
        case Rule::r1:
          if (la && wb && y2 == tok[a]) {
            return Tokens{tok[a]};
          }
          break;
        case Rule::r2:
          if (wa && lb && x1 == tok[b]) {
            return Tokens{tok[b]};
          }
          break;
        case Rule::r3:
          if (wa && wb && x1 == x2) {
            return Tokens{tok_wedge(), x2, y2};
          }
          break;
        case Rule::r4:
          if (wa && wb && y1 == y2) {
            return Tokens{tok_wedge(), x1, y1};
          }
          break;
        case Rule::r5:
          if (la && lb && tok[a] == prime(tok[b])) {
            return Tokens{tok_wedge(), tok[a], tok[b]};
          }
          break;
        case Rule::r0: break;
      }
      return std::nullopt;
    }

    std::size_t collect(Tokens const& tok, std::size_t i, std::vector<Redex>& out) {
      switch (tag(tok[i])) {
        case 0: return i + 1;
        case 1: {
          std::size_t e1 = collect(tok, i + 1, out);
          std::size_t e2 = collect(tok, e1, out);
          if (!(is_letter_tok(tok[i + 1]) && is_letter_tok(tok[e1]))) {
            out.push_back({Rule::r0, i, 0});
          }
          return e2;
        }
        default: {
          std::vector<std::size_t> starts{i + 1};
          for (std::uint32_t c = 0; c < (tok[i] & payload); ++c) {
            starts.push_back(collect(tok, starts.back(), out));
          }
          for (std::size_t j = 0; j + 2 < starts.size(); ++j) {
            for (Rule r : {Rule::r1, Rule::r2, Rule::r3, Rule::r4, Rule::r5}) {
              if (segment_rewrite(tok, starts[j], starts[j + 1], r)) {
                out.push_back({r, i, j});
              }
            }
          }
          return starts.back();
        }
      }
    }

    struct Parser {
      std::string_view       text;
      DoubledAlphabet const& alphabet;
      std::size_t            pos = 0;

      [[noreturn]] void fail(std::string const& msg) const {
        throw Error(ErrorCode::syntax_error, msg + " at position " + std::to_string(pos), {pos});
      }
      void skip() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) {
          ++pos;
        }
      }
      bool at_wedge() {
        skip();
        if (text.substr(pos, 1) == "^") {
          return true;
        }
        return text.substr(pos, 3) == "\xE2\x88\xA7";
      }
      void eat_wedge() {
        pos += text[pos] == '^' ? 1 : 3;
      }
      bool at_factor() {
        skip();
        return pos < text.size() && text[pos] != ')' && !at_wedge();
      }
      Term factor() {
        skip();
        if (text[pos] == '(') {
          ++pos;
          Term u = term();
          skip();
          if (pos < text.size() && text[pos] == ')') {
            ++pos;  // plain grouping
            return u;
          }
          if (!at_wedge()) {
            fail("expected '^'");
          }
          eat_wedge();
          Term v = term();
          skip();
          if (pos >= text.size() || text[pos] != ')') {
            fail("expected ')'");
          }
          ++pos;
          return Term::make_wedge(u, v);
        }
        auto m = alphabet.match(text.substr(pos));
        if (!m) {
          fail("unknown letter");
        }
        pos += m->second;
        letter x = m->first;
        while (pos < text.size() && text[pos] == '\'') {
          x = prime(x);
          ++pos;
        }
        return Term::make_letter(x);
      }
      Term term() {
        std::vector<Term> factors;
        while (at_factor()) {
          factors.push_back(factor());
        }
        if (factors.empty()) {
          fail("expected a term");
        }
        return Term::make_concat(factors);
      }
    };
  }  // namespace

  Term Term::make_letter(letter x) {
    Term t;
    t._tokens = {tok_letter(x)};
    return t;
  }

  Term Term::make_wedge(Term const& u, Term const& v) {
    Term t;
    t._tokens.reserve(1 + u._tokens.size() + v._tokens.size());
    t._tokens.push_back(tok_wedge());
    t._tokens.insert(t._tokens.end(), u._tokens.begin(), u._tokens.end());
    t._tokens.insert(t._tokens.end(), v._tokens.begin(), v._tokens.end());
    return t;
  }

  Term Term::make_concat(std::vector<Term> const& factors) {
    if (factors.empty()) {
      throw Error(ErrorCode::precondition_violated, "empty concatenation");
    }
    if (factors.size() == 1) {
      return factors[0];
    }
    Term        t;
    std::size_t count = 0;
    t._tokens.push_back(0);
    for (auto const& f : factors) {
      if (f.kind() == Kind::concat) {
        count += f._tokens[0] & payload;
        t._tokens.insert(t._tokens.end(), f._tokens.begin() + 1, f._tokens.end());
      } else {
        ++count;
        t._tokens.insert(t._tokens.end(), f._tokens.begin(), f._tokens.end());
      }
    }
    t._tokens[0] = tok_concat(count);
    return t;
  }

  Term Term::from_tokens(std::vector<std::uint32_t> tokens) {
    Term t;
    t._tokens = std::move(tokens);
    return t;
  }

  Term::Kind Term::kind() const {
    switch (tag(_tokens[0])) {
      case 0: return Kind::letter;
      case 1: return Kind::wedge;
      default: return Kind::concat;
    }
  }

  letter Term::as_letter() const {
    if (kind() != Kind::letter) {
      throw Error(ErrorCode::precondition_violated, "term is not a letter");
    }
    return _tokens[0];
  }

  std::vector<Term> Term::children() const {
    std::vector<Term> out;
    if (kind() == Kind::letter) {
      return out;
    }
    auto starts = child_starts(_tokens, 0);
    for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
      out.push_back(from_tokens(Tokens(_tokens.begin() + static_cast<std::ptrdiff_t>(starts[c]),
                                       _tokens.begin()
                                           + static_cast<std::ptrdiff_t>(starts[c + 1]))));
    }
    return out;
  }

  std::size_t Term::operation_count() const {
    std::size_t ops = 0;
    for (auto t : _tokens) {
      if (tag(t) == 1) {
        ops += 1;
      } else if (tag(t) == 2) {
        ops += (t & payload) - 1;
      }
    }
    return ops;
  }

  std::size_t Term::letter_count() const {
    std::size_t n = 0;
    for (auto t : _tokens) {
      n += is_letter_tok(t);
    }
    return n;
  }

  std::size_t TermHash::operator()(Term const& t) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : t.tokens()) {
      h = (h ^ x) * 1099511628211ULL;
    }
    return h;
  }

  Term parse_term(std::string_view text, DoubledAlphabet const& alphabet) {
    Parser p{text, alphabet};
    Term   t = p.term();
    p.skip();
    if (p.pos != text.size()) {
      p.fail("unexpected character");
    }
    return t;
  }

  std::string to_string(Term const& t, DoubledAlphabet const& alphabet) {
    switch (t.kind()) {
      case Term::Kind::letter: return alphabet.name(t.as_letter());
      case Term::Kind::wedge: {
        auto c = t.children();
        return "(" + to_string(c[0], alphabet) + "^" + to_string(c[1], alphabet) + ")";
      }
      default: {
        std::string out;
        for (auto const& c : t.children()) {
          out += to_string(c, alphabet);
        }
        return out;
      }
    }
  }

  letter iota(Term const& t) {
    return first_letter(t.tokens(), 0);
  }

  letter tau(Term const& t) {
    return last_letter(t.tokens(), t.tokens().size());
  }

  TildeWord r0_flatten(Term const& t) {
    auto const& tok = t.tokens();
    TildeWord   out;
    auto        factor = [&](std::size_t begin, std::size_t end) {
      if (is_letter_tok(tok[begin])) {
        out.push_back(Sym::single(tok[begin]));
      } else {
        // Collapsing inner wedges never moves the first or last letter.
        out.push_back(Sym::wedge_of(first_letter(tok, begin + 1), last_letter(tok, end)));
      }
    };
    if (t.kind() == Term::Kind::concat) {
      auto starts = child_starts(tok, 0);
      for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
        factor(starts[c], starts[c + 1]);
      }
    } else {
      factor(0, tok.size());
    }
    return out;
  }

  Term word_to_term(TildeWord const& w) {
    std::vector<Term> factors;
    for (auto const& s : w) {
      factors.push_back(s.wedge ? Term::make_wedge(Term::make_letter(s.first),
                                                   Term::make_letter(s.second))
                                : Term::make_letter(s.first));
    }
    return Term::make_concat(factors);
  }

  TildeWord term_to_word(Term const& t) {
    TildeWord out;
    auto      add = [&](Term const& f) {
      if (f.kind() == Term::Kind::letter) {
        out.push_back(Sym::single(f.as_letter()));
        return;
      }
      auto const& tok = f.tokens();
      if (f.kind() == Term::Kind::wedge && tok.size() == 3 && is_letter_tok(tok[1])
          && is_letter_tok(tok[2])) {
        out.push_back(Sym::wedge_of(tok[1], tok[2]));
        return;
      }
      throw Error(ErrorCode::precondition_violated, "term is not a word over X~");
    };
    if (t.kind() == Term::Kind::concat) {
      for (auto const& c : t.children()) {
        add(c);
      }
    } else {
      add(t);
    }
    return out;
  }

  std::vector<Redex> redexes(Term const& t) {
    std::vector<Redex> out;
    collect(t.tokens(), 0, out);
    return out;
  }

  Term apply_redex(Term const& t, Redex const& r) {
    auto const& tok = t.tokens();
    Tokens      out(tok.begin(), tok.begin() + static_cast<std::ptrdiff_t>(r.node));
    auto const  starts = child_starts(tok, r.node);
    if (r.rule == Rule::r0) {
      if (tag(tok[r.node]) != 1) {
        throw Error(ErrorCode::no_match, "R0 needs a wedge node");
      }
      out.push_back(tok_wedge());
      out.push_back(first_letter(tok, starts[0]));
      out.push_back(last_letter(tok, starts[2]));
      out.insert(out.end(), tok.begin() + static_cast<std::ptrdiff_t>(starts[2]), tok.end());
      return Term::from_tokens(std::move(out));
    }
    if (tag(tok[r.node]) != 2 || r.index + 2 >= starts.size()) {
      throw Error(ErrorCode::no_match, "segment rules need a concatenation node");
    }
    auto repl = segment_rewrite(tok, starts[r.index], starts[r.index + 1], r.rule);
    if (!repl) {
      throw Error(ErrorCode::no_match, "rule does not apply at this segment");
    }
    std::size_t k = starts.size() - 1;
    if (k > 2) {
      out.push_back(tok_concat(k - 1));
    }
    out.insert(out.end(), tok.begin() + static_cast<std::ptrdiff_t>(starts[0]),
               tok.begin() + static_cast<std::ptrdiff_t>(starts[r.index]));
    out.insert(out.end(), repl->begin(), repl->end());
    out.insert(out.end(), tok.begin() + static_cast<std::ptrdiff_t>(starts[r.index + 2]),
               tok.end());
    return Term::from_tokens(std::move(out));
  }

  Term reduce(Term const& t) {
    Term current = t;
    while (true) {
      auto rs = redexes(current);
      if (rs.empty()) {
        return current;
      }
      current = apply_redex(current, rs.front());
    }
  }

  bool theta_cs_equal(Term const& u, Term const& v) {
    return reduce(u) == reduce(v);
  }

  bool theta_cs_equal(TildeWord const& u, TildeWord const& v) {
    return reduce(word_to_term(u)) == reduce(word_to_term(v));
  }

  elem evaluate(Term const& t, FiniteSemigroup const& S, std::vector<elem> const& nu,
                std::vector<elem> const& wedges) {
    auto const& tok = t.tokens();
    auto const  n   = S.order();
    std::function<elem(std::size_t, std::size_t&)> eval = [&](std::size_t i,
                                                              std::size_t& end) -> elem {
      switch (tag(tok[i])) {
        case 0: end = i + 1; return nu[tok[i]];
        case 1: {
          std::size_t mid = 0;
          elem        a   = eval(i + 1, mid);
          elem        b   = eval(mid, end);
          return wedges[a * n + b];
        }
        default: {
          std::size_t j   = i + 1;
          elem        acc = eval(j, j);
          for (std::uint32_t c = 1; c < (tok[i] & payload); ++c) {
            acc = S.product(acc, eval(j, j));
          }
          end = j;
          return acc;
        }
      }
    };
    std::size_t end = 0;
    return eval(0, end);
  }

  std::vector<std::vector<elem>> matched_maps(FiniteSemigroup const& S, std::size_t base_size,
                                              std::size_t limit) {
    std::vector<std::vector<elem>> inverses(S.order());
    for (elem s = 0; s < S.order(); ++s) {
      inverses[s] = inverses_of(S, s).members();
    }
    std::vector<std::vector<elem>>          out;
    std::vector<elem>                       nu(2 * base_size);
    std::function<void(std::size_t)>        rec = [&](std::size_t i) {
      if (out.size() >= limit) {
        return;
      }
      if (i == base_size) {
        out.push_back(nu);
        return;
      }
      for (elem s = 0; s < S.order(); ++s) {
        for (elem si : inverses[s]) {
          nu[2 * i]     = s;
          nu[2 * i + 1] = si;
          rec(i + 1);
        }
      }
    };
    rec(0);
    return out;
  }

  std::vector<Term> all_normal_forms(Term const& t) {
    std::unordered_map<Term, std::vector<Term>, TermHash> memo;
    std::function<std::vector<Term> const&(Term const&)> visit
        = [&](Term const& u) -> std::vector<Term> const& {
      if (auto it = memo.find(u); it != memo.end()) {
        return it->second;
      }
      std::vector<Term> forms;
      auto const        rs = redexes(u);
      if (rs.empty()) {
        forms.push_back(u);
      }
      for (auto const& r : rs) {
        for (auto const& f : visit(apply_redex(u, r))) {
          if (std::find(forms.begin(), forms.end(), f) == forms.end()) {
            forms.push_back(f);
          }
        }
      }
      return memo.emplace(u, std::move(forms)).first->second;
    };
    auto out = visit(t);
    std::sort(out.begin(), out.end());
    return out;
  }

  void for_each_term(std::size_t ops, std::vector<letter> const& letters,
                     std::function<void(Term const&)> const& f) {
    // Factors are terms that are not concatenations; levels below `ops` are cached.
    std::vector<std::vector<Term>> factors(ops + 1), terms(ops + 1);
    auto build = [&](std::size_t n, bool keep, std::function<void(Term const&)> const& emit) {
      std::vector<Term> fac;
      if (n == 0) {
        for (letter x : letters) {
          fac.push_back(Term::make_letter(x));
        }
      }
      for (std::size_t a = 0; a < n; ++a) {
        for (auto const& u : terms[a]) {
          for (auto const& v : terms[n - 1 - a]) {
            fac.push_back(Term::make_wedge(u, v));
          }
        }
      }
      for (auto const& x : fac) {
        emit(x);
      }
      // A concatenation is a leading factor followed by any term.
      std::vector<Term> cat;
      for (std::size_t a = 0; a < n; ++a) {
        for (auto const& h : factors[a]) {
          for (auto const& tail : terms[n - 1 - a]) {
            auto t = Term::make_concat({h, tail});
            emit(t);
            if (keep) {
              cat.push_back(std::move(t));
            }
          }
        }
      }
      if (keep) {
        factors[n] = fac;
        terms[n]   = std::move(fac);
        terms[n].insert(terms[n].end(), cat.begin(), cat.end());
      }
    };
    for (std::size_t n = 0; n < ops; ++n) {
      build(n, true, [](Term const&) {});
    }
    build(ops, false, f);
  }

}  // namespace esli
