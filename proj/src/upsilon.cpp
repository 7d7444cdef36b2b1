#include "esli/upsilon.hpp"

#include <unordered_map>

#include "esli/error.hpp"

namespace esli {

  namespace {
    [[noreturn]] void no_match(UpsilonStep const& s) {
      throw Error(ErrorCode::no_match, "step " + to_string(s) + " does not apply",
                  {s.position});
    }

    bool is_letter_at(TildeWord const& w, std::size_t p) {
      return p < w.size() && !w[p].wedge;
    }
    bool is_wedge_at(TildeWord const& w, std::size_t p) {
      return p < w.size() && w[p].wedge;
    }

    TildeWord splice(TildeWord const& w, std::size_t p, std::size_t len, TildeWord const& repl) {
      TildeWord out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
      out.insert(out.end(), repl.begin(), repl.end());
      out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(p + len), w.end());
      return out;
    }
  }  // namespace

  std::string to_string(UpsilonStep const& step) {
    static char const* names[] = {"I", "U3", "U4", "U5"};
    std::string        out     = names[static_cast<int>(step.rule)];
    out += step.direction == Direction::forward ? "+" : "-";
    out += "@" + std::to_string(step.position);
    if (step.direction == Direction::backward
        && (step.rule == UpsilonRule::u3 || step.rule == UpsilonRule::u4)) {
      out += "/" + std::to_string(step.param);
    }
    return out;
  }

  TildeWord apply_upsilon_step(TildeWord const& w, UpsilonStep const& s) {
    auto const p   = s.position;
    bool const fwd = s.direction == Direction::forward;
    switch (s.rule) {
      case UpsilonRule::i:
        if (fwd) {
          if (!is_letter_at(w, p) || !is_letter_at(w, p + 1) || !is_letter_at(w, p + 2)
              || w[p + 1].first != prime(w[p].first) || w[p + 2].first != w[p].first) {
            no_match(s);
          }
          return splice(w, p, 3, {w[p]});
        }
        if (!is_letter_at(w, p)) {
          no_match(s);
        }
        return splice(w, p, 1, {w[p], Sym::single(prime(w[p].first)), w[p]});
      case UpsilonRule::u3:
        if (fwd) {
          if (!is_wedge_at(w, p) || !is_wedge_at(w, p + 1) || w[p].first != w[p + 1].first) {
            no_match(s);
          }
          return splice(w, p, 2, {w[p + 1]});
        }
        if (!is_wedge_at(w, p)) {
          no_match(s);
        }
        return splice(w, p, 1, {Sym::wedge_of(w[p].first, s.param), w[p]});
      case UpsilonRule::u4:
        if (fwd) {
          if (!is_wedge_at(w, p) || !is_wedge_at(w, p + 1) || w[p].second != w[p + 1].second) {
            no_match(s);
          }
          return splice(w, p, 2, {w[p]});
        }
        if (!is_wedge_at(w, p)) {
          no_match(s);
        }
        return splice(w, p, 1, {w[p], Sym::wedge_of(s.param, w[p].second)});
      case UpsilonRule::u5:
        if (fwd) {
          if (!is_letter_at(w, p) || !is_letter_at(w, p + 1)
              || w[p].first != prime(w[p + 1].first)) {
            no_match(s);
          }
          return splice(w, p, 2, {Sym::wedge_of(w[p].first, w[p + 1].first)});
        }
        if (!is_wedge_at(w, p) || w[p].first != prime(w[p].second)) {
          no_match(s);
        }
        return splice(w, p, 1, {Sym::single(w[p].first), Sym::single(w[p].second)});
    }
    no_match(s);
  }

  UpsilonStep inverse_step(TildeWord const& before, UpsilonStep const& s) {
    UpsilonStep inv = s;
    inv.direction = s.direction == Direction::forward ? Direction::backward : Direction::forward;
    inv.param     = 0;
    if (s.direction == Direction::forward && s.rule == UpsilonRule::u3) {
      inv.param = before[s.position].second;
    } else if (s.direction == Direction::forward && s.rule == UpsilonRule::u4) {
      inv.param = before[s.position + 1].first;
    }
    return inv;
  }

  std::vector<UpsilonStep> upsilon_steps(TildeWord const&           w,
                                         std::vector<letter> const& alphabet,
                                         std::size_t                max_len,
                                         RuleSet                    rules) {
    std::vector<UpsilonStep> out;
    auto on = [&](UpsilonRule r) { return (rules & rule_bit(r)) != 0; };
    auto const n = w.size();
    for (std::size_t p = 0; p < n; ++p) {
      if (w[p].wedge) {
        if (on(UpsilonRule::u3)) {
          if (p + 1 < n && w[p + 1].wedge && w[p].first == w[p + 1].first) {
            out.push_back({UpsilonRule::u3, Direction::forward, p, 0});
          }
          if (n + 1 <= max_len) {
            for (letter y : alphabet) {
              out.push_back({UpsilonRule::u3, Direction::backward, p, y});
            }
          }
        }
        if (on(UpsilonRule::u4)) {
          if (p + 1 < n && w[p + 1].wedge && w[p].second == w[p + 1].second) {
            out.push_back({UpsilonRule::u4, Direction::forward, p, 0});
          }
          if (n + 1 <= max_len) {
            for (letter y : alphabet) {
              out.push_back({UpsilonRule::u4, Direction::backward, p, y});
            }
          }
        }
        if (on(UpsilonRule::u5) && w[p].first == prime(w[p].second) && n + 1 <= max_len) {
          out.push_back({UpsilonRule::u5, Direction::backward, p, 0});
        }
        continue;
      }
      if (on(UpsilonRule::i)) {
        if (p + 2 < n && !w[p + 1].wedge && !w[p + 2].wedge
            && w[p + 1].first == prime(w[p].first) && w[p + 2].first == w[p].first) {
          out.push_back({UpsilonRule::i, Direction::forward, p, 0});
        }
        if (n + 2 <= max_len) {
          out.push_back({UpsilonRule::i, Direction::backward, p, 0});
        }
      }
      if (on(UpsilonRule::u5) && p + 1 < n && !w[p + 1].wedge
          && w[p].first == prime(w[p + 1].first)) {
        out.push_back({UpsilonRule::u5, Direction::forward, p, 0});
      }
    }
    return out;
  }

  TildeWord replay(TildeWord const& start, Derivation const& d) {
    TildeWord w = start;
    for (auto const& s : d) {
      w = apply_upsilon_step(w, s);
    }
    return w;
  }

  std::optional<Derivation> derivation_search(TildeWord const&           u,
                                              TildeWord const&           v,
                                              std::vector<letter> const& alphabet,
                                              std::size_t                max_steps,
                                              std::size_t                max_len,
                                              RuleSet                    rules,
                                              std::size_t                node_budget) {
    if (u == v) {
      return Derivation{};
    }
    struct Node {
      TildeWord   parent;
      UpsilonStep step;
      std::size_t depth = 0;
      bool        root  = false;
    };
    using Map = std::unordered_map<TildeWord, Node, TildeWordHash>;
    Map                    seen[2];
    std::vector<TildeWord> frontier[2] = {{u}, {v}};
    std::size_t            depth[2]    = {0, 0};
    seen[0].emplace(u, Node{{}, {}, 0, true});
    seen[1].emplace(v, Node{{}, {}, 0, true});

    // Steps from the root of `side` to w, in the order they were applied.
    auto chain = [&](int side, TildeWord w) {
      std::vector<std::pair<TildeWord, UpsilonStep>> out;  // (word before, step)
      while (!seen[side].at(w).root) {
        auto const& node = seen[side].at(w);
        out.emplace_back(node.parent, node.step);
        w = node.parent;
      }
      return std::vector(out.rbegin(), out.rend());
    };

    while (depth[0] + depth[1] < max_steps) {
      int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
      if (frontier[side].empty()) {
        return std::nullopt;
      }
      std::optional<TildeWord> meet;
      std::size_t              best = SIZE_MAX;
      std::vector<TildeWord>   next;
      for (auto const& w : frontier[side]) {
        for (auto const& s : upsilon_steps(w, alphabet, max_len, rules)) {
          auto w2 = apply_upsilon_step(w, s);
          if (seen[side].count(w2) != 0) {
            continue;
          }
          seen[side].emplace(w2, Node{w, s, depth[side] + 1, false});
          if (seen[0].size() + seen[1].size() > node_budget) {
            throw Error(ErrorCode::budget_exceeded,
                        "derivation search visited more than " + std::to_string(node_budget)
                            + " words");
          }
          if (auto it = seen[1 - side].find(w2); it != seen[1 - side].end()) {
            if (it->second.depth < best) {
              best = it->second.depth;
              meet = w2;
            }
          }
          next.push_back(std::move(w2));
        }
      }
      depth[side] += 1;
      frontier[side] = std::move(next);
      if (meet) {
        Derivation d;
        for (auto const& [before, step] : chain(0, *meet)) {
          d.push_back(step);
        }
        auto back = chain(1, *meet);
        for (auto it = back.rbegin(); it != back.rend(); ++it) {
          d.push_back(inverse_step(it->first, it->second));
        }
        return d;
      }
    }
    return std::nullopt;
  }

}  // namespace esli
