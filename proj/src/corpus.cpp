#include "esli/corpus.hpp"

#include <algorithm>

#include "esli/constructors.hpp"

namespace esli {

  namespace {
    void add_named(std::vector<CorpusEntry>&       out,
                   std::string const&              kind,
                   std::vector<std::size_t> const& params) {
      std::string name = kind;
      for (auto p : params) {
        name += "_" + std::to_string(p);
      }
      out.push_back({name, "named", named_small(kind, params), std::nullopt});
    }

    // B(G, n): triples (i, g, j) numbered (i * |G| + g) * n + j, then zero.
    FiniteSemigroup brandt(FiniteSemigroup const& G, std::size_t n) {
      auto const        g    = G.order();
      auto const        zero = static_cast<elem>(n * g * n);
      std::vector<elem> table((zero + 1) * (zero + 1), zero);
      for (elem x = 0; x < zero; ++x) {
        for (elem y = 0; y < zero; ++y) {
          elem const j = x % n, gx = (x / n) % g, i = x / n / g;
          elem const l = y % n, gy = (y / n) % g, k = y / n / g;
          if (j == k) {
            table[x * (zero + 1) + y] = (i * g + G.product(gx, gy)) * n + l;
          }
        }
      }
      return FiniteSemigroup::from_table(zero + 1, std::move(table));
    }

    // Largest idempotent-separating congruence of an inverse semigroup.
    Congruence mu(FiniteSemigroup const& S) {
      auto const        E   = idempotents(S).members();
      auto const        inv = unique_inverses(S);
      std::vector<elem> labels(S.order());
      std::vector<std::vector<elem>> keys;
      for (elem a = 0; a < S.order(); ++a) {
        std::vector<elem> k;
        for (elem e : E) {
          k.push_back(S.product(S.product(inv[a], e), a));
        }
        auto it   = std::find(keys.begin(), keys.end(), k);
        labels[a] = static_cast<elem>(it - keys.begin());
        if (it == keys.end()) {
          keys.push_back(std::move(k));
        }
      }
      return Congruence(S, Partition(std::move(labels)));
    }

    struct GroupSpec {
      std::string     name;
      FiniteSemigroup group;
    };
  }  // namespace

  std::vector<CorpusEntry> generate_corpus(CorpusConfig const& config) {
    std::vector<CorpusEntry> out;
    add_named(out, "trivial", {});
    for (std::size_t n : {2, 3, 4}) {
      add_named(out, "cyclic_group", {n});
    }
    add_named(out, "symmetric_group_3", {});
    add_named(out, "chain", {2});
    add_named(out, "chain", {3});
    add_named(out, "diamond", {});
    add_named(out, "brandt_2", {});
    add_named(out, "symmetric_inverse_2", {});
    add_named(out, "partial_transformations_2", {});
    add_named(out, "left_zero", {2});
    add_named(out, "right_zero", {2});
    add_named(out, "rectangular_band", {2, 2});
    add_named(out, "rectangular_band", {2, 3});
    add_named(out, "null", {2});
    out.push_back({"brandt_Z2_2", "named", brandt(named_small("cyclic_group", {2}), 2), std::nullopt});

    // Normalised sandwich matrices: only p(2,2) is free when both sides are 2.
    std::vector<GroupSpec> groups{{"Z2", named_small("cyclic_group", {2})},
                                  {"Z3", named_small("cyclic_group", {3})},
                                  {"S3", named_small("symmetric_group_3")}};
    for (auto const& [gname, G] : groups) {
      for (std::size_t i = 1; i <= 2; ++i) {
        for (std::size_t l = 1; l <= 2; ++l) {
          std::size_t const free = (i == 2 && l == 2) ? G.order() : 1;
          for (elem g = 0; g < free; ++g) {
            std::vector<elem> p(i * l, 0);
            if (i == 2 && l == 2) {
              p[3] = g;
            }
            std::string name = "rees_" + gname + "_" + std::to_string(i) + "x"
                               + std::to_string(l) + (free > 1 ? "_p" + std::to_string(g) : "");
            out.push_back({name, "rees", rees_matrix({G, i, l, p}), std::nullopt});
          }
        }
      }
    }

    auto const Y2   = named_small("chain", {2});
    auto const Z2   = named_small("cyclic_group", {2});
    auto const rb22 = named_small("rectangular_band", {2, 2});
    auto const m1   = rees_matrix({Z2, 2, 2, {0, 0, 0, 0}});
    auto const m_p  = rees_matrix({Z2, 2, 2, {0, 0, 0, 1}});
    out.push_back({"sslat_rb22_over_trivial", "sslat",
                   strong_semilattice({Y2, {rb22, named_small("trivial")}, {{{0, 1}, {0, 0, 0, 0}}}}),
                   std::nullopt});
    out.push_back({"sslat_Z2_over_Z2", "sslat",
                   strong_semilattice({Y2, {Z2, Z2}, {{{0, 1}, {0, 1}}}}), std::nullopt});
    out.push_back({"sslat_rb22_over_L2", "sslat",
                   strong_semilattice({Y2, {rb22, named_small("left_zero", {2})},
                                       {{{0, 1}, {0, 0, 1, 1}}}}),
                   std::nullopt});
    {
      std::vector<elem> to_g(m1.order());
      for (elem x = 0; x < m1.order(); ++x) {
        to_g[x] = (x / 2) % 2;
      }
      out.push_back({"sslat_MZ2_over_Z2", "sslat",
                     strong_semilattice({Y2, {m1, Z2}, {{{0, 1}, to_g}}}), std::nullopt});
    }
    out.push_back({"sslat_chain3_of_rb22", "sslat",
                   strong_semilattice({named_small("chain", {3}),
                                       {rb22, named_small("left_zero", {2}), named_small("trivial")},
                                       {{{0, 1}, {0, 0, 1, 1}}, {{1, 2}, {0, 0}}, {{0, 2}, {0, 0, 0, 0}}}}),
                   std::nullopt});

    struct Pair {
      std::string     k_name;
      FiniteSemigroup k;
      std::string     t_name;
      FiniteSemigroup t;
    };
    std::vector<Pair> pairs{{"rb22", rb22, "Y2", Y2},
                            {"rb22", rb22, "B2", named_small("brandt_2")},
                            {"MZ2p", m_p, "Y2", Y2},
                            {"MZ2p", m_p, "B2", named_small("brandt_2")},
                            {"rb22", rb22, "I2", named_small("symmetric_inverse_2")},
                            {"MZ2p", m_p, "I2", named_small("symmetric_inverse_2")},
                            {"Z3", named_small("cyclic_group", {3}), "Z2", Z2}};
    for (auto const& pr : pairs) {
      // Largest products first; ties keep enumeration order.
      auto                                         actions = enumerate_actions(pr.k, pr.t, 1000);
      std::vector<std::pair<std::size_t, std::size_t>> by_order;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        auto const n = lambda_sdp(actions[i]).semigroup().order();
        if (n <= config.max_lsdp_order) {
          by_order.emplace_back(n, i);
        }
      }
      std::stable_sort(by_order.begin(), by_order.end(),
                       [](auto const& x, auto const& y) { return x.first > y.first; });
      by_order.resize(std::min(by_order.size(), config.actions_per_pair));
      for (auto const& [n, i] : by_order) {
        out.push_back({"lsdp_" + pr.k_name + "_" + pr.t_name + "_a" + std::to_string(i), "lsdp",
                       lambda_sdp(actions[i]).semigroup(), actions[i]});
      }
    }
    return out;
  }

  std::vector<ContextEntry> context_corpus(std::vector<CorpusEntry> const& corpus,
                                           std::size_t                     max_order,
                                           std::size_t                     exhaustive_order) {
    std::vector<ContextEntry> out;
    for (auto const& e : corpus) {
      auto const& S = e.semigroup;
      if (S.order() > max_order || !is_regular(S) || !is_locally_inverse(S) || !is_e_solid(S)) {
        continue;
      }
      std::vector<std::pair<std::string, Congruence>> cands;
      cands.emplace_back("least", least_inverse_congruence(S));
      if (is_inverse(S)) {
        cands.emplace_back("identity", Congruence::identity(S));
        cands.emplace_back("mu", mu(S));
      }
      if (is_completely_simple(S)) {
        cands.emplace_back("universal", Congruence::universal(S));
      }
      if (e.action) {
        cands.emplace_back("theta2", lambda_sdp(*e.action).theta2());
      }
      if (S.order() <= exhaustive_order) {
        std::size_t i = 0;
        for (auto const& rho : all_congruences(S, exhaustive_order)) {
          if (is_congruence_over_cs(S, rho)) {
            cands.emplace_back("cong" + std::to_string(i++), rho);
          }
        }
      }
      // Coinciding candidates become one context named by all their tags.
      std::vector<std::pair<std::string, Congruence>> merged;
      for (auto& [tag, rho] : cands) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](auto const& m) { return m.second == rho; });
        if (it == merged.end()) {
          merged.emplace_back(tag, std::move(rho));
        } else if (tag.starts_with("cong")) {
          continue;
        } else {
          it->first += "+" + tag;
        }
      }
      for (auto& [tag, rho] : merged) {
        out.push_back({e.name + "/" + tag, S, std::move(rho)});
      }
    }
    return out;
  }

}  // namespace esli
