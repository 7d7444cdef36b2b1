#include "cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "esli/congruence.hpp"
#include "esli/constructors.hpp"
#include "esli/corpus.hpp"
#include "esli/derived.hpp"
#include "esli/embedding.hpp"
#include "esli/error.hpp"
#include "esli/io.hpp"
#include "esli/lambda_product.hpp"
#include "esli/semigroup.hpp"
#include "esli/term.hpp"
#include "esli/upsilon.hpp"

namespace esli::cli {

  namespace {

    using json  = nlohmann::ordered_json;
    using clock = std::chrono::steady_clock;

    //! Bad arguments or unreadable inputs; exits with exit_usage.
    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    constexpr char const* default_instance = "lsdp_rb22_B2_a3/least+theta2";
    constexpr std::uint64_t default_seed   = 1;

    double ms_since(clock::time_point start) {
      return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    }

    json error_json(Error const& e) {
      return {{"code", std::string(error_code_name(e.code()))},
              {"message", e.what()},
              {"witness", e.witness()}};
    }

    //! Verdicts collected for one instance or one whole run.
    class Verdicts {
     public:
      void add(std::string check, bool pass, json witness = nullptr, std::string detail = {}) {
        json v{{"check", std::move(check)}, {"pass", pass}};
        if (!detail.empty()) {
          v["detail"] = std::move(detail);
        }
        if (!witness.is_null()) {
          v["witness"] = std::move(witness);
        }
        _all &= pass;
        _list.push_back(std::move(v));
      }
      void push(json v) {
        _all &= v.at("pass").get<bool>();
        _list.push_back(std::move(v));
      }
      void add_error(std::string check, Error const& e) {
        add(std::move(check), false, error_json(e), e.what());
      }
      [[nodiscard]] bool pass() const noexcept {
        return _all;
      }
      [[nodiscard]] json const& list() const noexcept {
        return _list;
      }

     private:
      json _list = json::array();
      bool _all  = true;
    };

    //! Reading an input; library errors become usage errors naming the input.
    template <typename F>
    auto load(std::string const& what, F&& f) -> decltype(f()) {
      try {
        return f();
      } catch (Error const& e) {
        std::string msg = what + ": " + e.what();
        if (!e.witness().empty() && e.code() != ErrorCode::parse_error) {
          msg += " [" + std::string(error_code_name(e.code())) + "]";
        }
        throw UsageError(msg);
      }
    }

    FiniteSemigroup load_cayley(std::string const& path) {
      return load(path, [&] { return read_cayley(read_file(path)).semigroup; });
    }

    Action load_action(std::string const& path) {
      return load(path, [&] { return read_action(read_file(path)); });
    }

    // ---------------------------------------------------------------- contexts

    struct Instance {
      std::string     name;
      FiniteSemigroup semigroup;
      Congruence      rho;
    };

    struct InputOptions {
      std::string cayley;
      std::string action;
      std::string instance;
      std::string rho = "least";
      std::string dagger = "lowest";
      bool        all = false;
    };

    std::vector<ContextEntry> const& corpus_contexts() {
      static auto const ctxs = context_corpus(generate_corpus());
      return ctxs;
    }

    Congruence resolve_rho(FiniteSemigroup const&             S,
                           std::string const&                 spec,
                           std::optional<LambdaProduct> const& product) {
      if (spec == "least") {
        return load("--rho least", [&] { return least_inverse_congruence(S); });
      }
      if (spec == "identity") {
        return Congruence::identity(S);
      }
      if (spec == "universal") {
        return Congruence::universal(S);
      }
      if (spec == "theta2") {
        if (!product) {
          throw UsageError("--rho theta2 needs --action");
        }
        return product->theta2();
      }
      return load(spec, [&] { return to_congruence(S, read_congruence(read_file(spec))); });
    }

    void add_input_options(CLI::App* sub, InputOptions& in, bool batch) {
      auto* c = sub->add_option("--cayley", in.cayley, "Cayley file of S");
      auto* a = sub->add_option("--action", in.action, "action file; S is its lambda-semidirect product");
      auto* i = sub->add_option("--instance", in.instance, "named corpus context");
      c->excludes(a)->excludes(i);
      a->excludes(i);
      sub->add_option("--rho", in.rho, "least, identity, universal, theta2 or a congruence file")
          ->capture_default_str();
      sub->add_option("--dagger", in.dagger, "choice of inverses")
          ->check(CLI::IsMember({"lowest", "highest"}))
          ->capture_default_str();
      if (batch) {
        sub->add_flag("--all", in.all, "every corpus context")
            ->excludes(c)
            ->excludes(a)
            ->excludes(i);
      }
    }

    std::vector<Instance> resolve_instances(InputOptions const& in, char const* fallback) {
      if (in.all) {
        std::vector<Instance> out;
        for (auto const& e : corpus_contexts()) {
          out.push_back({e.name, e.semigroup, e.rho});
        }
        return out;
      }
      if (!in.cayley.empty()) {
        auto S = load_cayley(in.cayley);
        auto r = resolve_rho(S, in.rho, std::nullopt);
        return {{in.cayley + "/" + in.rho, std::move(S), std::move(r)}};
      }
      if (!in.action.empty()) {
        auto action = load_action(in.action);
        auto product = load(in.action, [&] { return std::optional<LambdaProduct>(LambdaProduct(action)); });
        auto S       = product->semigroup();
        auto r       = resolve_rho(S, in.rho, product);
        return {{in.action + "/" + in.rho, std::move(S), std::move(r)}};
      }
      std::string const name = in.instance.empty() ? (fallback ? fallback : "") : in.instance;
      if (name.empty()) {
        throw UsageError("one of --cayley, --action, --instance or --all is required");
      }
      for (auto const& e : corpus_contexts()) {
        if (e.name == name) {
          return {{e.name, e.semigroup, e.rho}};
        }
      }
      throw UsageError("unknown instance '" + name + "'");
    }

    DaggerPolicy dagger_policy(std::string const& s) {
      return s == "highest" ? DaggerPolicy::highest : DaggerPolicy::lowest;
    }

    struct InstanceResult {
      std::string name;
      json        result = json::object();
      Verdicts    verdicts;
    };

    //! Runs fn over the instances on `jobs` threads; results come back sorted by name.
    std::vector<InstanceResult> run_pool(std::vector<Instance> const& instances,
                                         std::size_t                  jobs,
                                         std::function<void(Instance const&, InstanceResult&)> const& fn) {
      std::vector<InstanceResult> results(instances.size());
      std::atomic<std::size_t>    next{0};
      auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < instances.size();) {
          auto& r      = results[k];
          r.name       = instances[k].name;
          auto const t = clock::now();
          try {
            fn(instances[k], r);
          } catch (Error const& e) {
            r.verdicts.add_error("error", e);
          }
          r.result["elapsed_ms"] = ms_since(t);
        }
      };
      jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, instances.size()));
      std::vector<std::jthread> pool;
      for (std::size_t j = 1; j < jobs; ++j) {
        pool.emplace_back(worker);
      }
      worker();
      pool.clear();
      std::stable_sort(results.begin(), results.end(),
                       [](auto const& x, auto const& y) { return x.name < y.name; });
      return results;
    }

    // ---------------------------------------------------------------- report

    struct Run {
      json     report;
      Verdicts verdicts;
    };

    void merge_instances(Run& run, std::vector<InstanceResult> const& results) {
      json list = json::array();
      for (auto const& r : results) {
        for (auto v : r.verdicts.list()) {
          v["instance"] = r.name;
          run.verdicts.push(std::move(v));
        }
        list.push_back({{"name", r.name},
                        {"pass", r.verdicts.pass()},
                        {"result", r.result},
                        {"verdicts", r.verdicts.list()}});
      }
      run.report["instances"] = std::move(list);
    }

    // ---------------------------------------------------------------- commands

    std::vector<std::pair<std::string, bool (*)(FiniteSemigroup const&)>> const& flag_table() {
      static std::vector<std::pair<std::string, bool (*)(FiniteSemigroup const&)>> const t{
          {"regular", is_regular},
          {"inverse", is_inverse},
          {"completely-regular", is_completely_regular},
          {"completely-simple", is_completely_simple},
          {"locally-inverse", is_locally_inverse},
          {"e-solid", is_e_solid},
          {"orthodox", is_orthodox},
          {"band", is_band},
          {"semilattice", is_semilattice},
          {"group", is_group},
          {"commutative", is_commutative}};
      return t;
    }

    json flags_json(FiniteSemigroup const& S, json* holds = nullptr) {
      json flags = json::object();
      for (auto const& [name, pred] : flag_table()) {
        bool const v = pred(S);
        flags[name]  = v;
        if (holds != nullptr && v) {
          holds->push_back(name);
        }
      }
      return flags;
    }

    void classify(Run& run, std::string const& file, std::vector<std::string> const& require) {
      auto const cf = load(file, [&] { return read_cayley(read_file(file)); });
      auto const& S = cf.semigroup;
      json holds    = json::array();
      auto flags    = flags_json(S, &holds);
      run.report["result"] = {{"kind", cf.kind},
                              {"order", S.order()},
                              {"idempotents", idempotents(S).count()},
                              {"flags", flags},
                              {"holds", holds}};
      for (auto const& f : require) {
        run.verdicts.add("require " + f, flags.at(f).get<bool>());
      }
    }

    void green_cmd(Run& run, std::string const& file) {
      auto const S = load_cayley(file);
      auto const g = green(S);
      run.report["result"] = {{"order", S.order()},
                              {"r", g.r_classes.classes()},
                              {"l", g.l_classes.classes()},
                              {"h", g.h_classes.classes()},
                              {"d", g.d_classes.classes()}};
      run.verdicts.add("h = r meet l", g.h_classes == meet(g.r_classes, g.l_classes));
      run.verdicts.add("d = r join l", g.d_classes == join(g.r_classes, g.l_classes));
    }

    //! First (x, y, z) with x rho y but xz, yz or zx, zy unrelated.
    std::optional<std::array<elem, 3>> incompatible(FiniteSemigroup const& S, Partition const& p) {
      for (elem x = 0; x < S.order(); ++x) {
        for (elem y = x + 1; y < S.order(); ++y) {
          if (!p.same(x, y)) {
            continue;
          }
          for (elem z = 0; z < S.order(); ++z) {
            if (!p.same(S.product(x, z), S.product(y, z))
                || !p.same(S.product(z, x), S.product(z, y))) {
              return std::array<elem, 3>{x, y, z};
            }
          }
        }
      }
      return std::nullopt;
    }

    void congruences_cmd(Run& run, std::string const& file, std::size_t max_order) {
      auto const S     = load_cayley(file);
      auto const congs = load(file, [&] { return all_congruences(S, max_order); });
      json list        = json::array();
      bool has_id = false, has_univ = false;
      std::optional<json> bad;
      for (auto const& c : congs) {
        auto const q = quotient(S, c).quotient;
        list.push_back({{"classes", c.classes()},
                        {"quotient_order", q.order()},
                        {"quotient_inverse", is_inverse(q)},
                        {"over_cs", is_congruence_over_cs(S, c)}});
        has_id   = has_id || c == Congruence::identity(S);
        has_univ = has_univ || c == Congruence::universal(S);
        if (auto w = incompatible(S, c.partition()); w && !bad) {
          bad = json{{"classes", c.classes()}, {"x_y_z", *w}};
        }
      }
      run.report["result"] = {{"order", S.order()}, {"count", congs.size()}, {"congruences", list}};
      run.verdicts.add("identity listed", has_id);
      run.verdicts.add("universal listed", has_univ);
      run.verdicts.add("every partition compatible", !bad, bad.value_or(json()));
    }

    void least_inv(Run& run, std::string const& file, std::string const& out_path) {
      auto const S   = load_cayley(file);
      auto const rho = least_inverse_congruence(S);
      auto const q   = quotient(S, rho);
      bool const over_cs = is_congruence_over_cs(S, rho);
      run.report["result"] = {{"order", S.order()},
                              {"classes", rho.classes()},
                              {"quotient_order", q.quotient.order()},
                              {"over_cs", over_cs}};
      run.verdicts.add("quotient inverse", is_inverse(q.quotient));
      run.verdicts.add("e-solid iff over completely simple", is_e_solid(S) == over_cs);
      if (!out_path.empty()) {
        write_file(out_path, write_congruence(rho.partition()));
      }
    }

    void write_semigroup(Run& run, FiniteSemigroup const& S, std::string const& kind,
                         std::string const& out_path) {
      json holds = json::array();
      run.report["result"] = {{"order", S.order()}, {"flags", flags_json(S, &holds)}, {"holds", holds}};
      if (!out_path.empty()) {
        write_file(out_path, write_cayley(S, kind));
        run.report["result"]["written"] = out_path;
      }
    }

    void rees_cmd(Run& run, std::string const& file, std::string const& out_path) {
      auto const spec = load(file, [&] { return read_rees(read_file(file)); });
      auto const S    = rees_matrix(spec);
      write_semigroup(run, S, "rees", out_path);
      run.verdicts.add("completely simple", is_completely_simple(S));
    }

    void sslat_cmd(Run& run, std::string const& file, std::string const& out_path) {
      auto const spec = load(file, [&] { return read_sslat(read_file(file)); });
      auto const S    = strong_semilattice(spec);
      write_semigroup(run, S, "sslat", out_path);
      std::vector<elem> to_y;
      for (elem e = 0; e < spec.components.size(); ++e) {
        to_y.insert(to_y.end(), spec.components[e].order(), e);
      }
      run.verdicts.add("projection onto the semilattice is a homomorphism",
                       is_homomorphism(S, spec.semilattice, to_y));
    }

    void lsdp_build(Run& run, std::string const& file, std::string const& out_path) {
      auto const action = load_action(file);
      if (auto v = check_action(action)) {
        run.verdicts.add("action", false, v->witness, v->what);
        return;
      }
      LambdaProduct const P(action);
      write_semigroup(run, P.semigroup(), "lsdp", out_path);
      run.report["result"]["carrier"] = P.carrier();
      if (is_completely_simple(action.k)) {
        run.verdicts.add("e-solid", is_e_solid(P.semigroup()));
        run.verdicts.add("locally inverse", is_locally_inverse(P.semigroup()));
      } else {
        run.report["result"]["note"] = "K is not completely simple; no verdicts";
      }
    }

    void lsdp_verify(Run& run, std::string const& file) {
      auto const action = load_action(file);
      if (auto v = check_action(action)) {
        run.verdicts.add("action", false, v->witness, v->what);
        return;
      }
      LambdaProduct const P(action);
      auto const          rep = verify_lsdtul(P);
      run.report["result"] = {{"order", P.semigroup().order()}};
      run.verdicts.add("k completely simple", rep.precondition);
      static constexpr std::array<char const*, 5> names{
          "e-solid and locally inverse", "idempotent formula", "inverse formula",
          "pi2 onto T, theta2 over completely simple", "kernel is a strong semilattice"};
      for (std::size_t k = 0; k < names.size(); ++k) {
        run.verdicts.add(names[k], rep.clauses[k].pass, nullptr, rep.clauses[k].detail);
      }
    }

    DoubledAlphabet term_alphabet(std::size_t base) {
      return DoubledAlphabet::standard(base);
    }

    Term load_term(std::string const& text, DoubledAlphabet const& X) {
      return load("term '" + text + "'", [&] { return parse_term(text, X); });
    }

    void term_reduce(Run& run, std::string const& text, std::size_t base) {
      auto const X = term_alphabet(base);
      auto const t = load_term(text, X);
      auto const r = reduce(t);
      run.report["result"] = {{"term", to_string(t, X)}, {"reduced", to_string(r, X)},
                              {"operations", t.operation_count()},
                              {"reduced_operations", r.operation_count()}};
      run.verdicts.add("reduced form is irreducible", redexes(r).empty());
    }

    void term_equal(Run& run, std::string const& u_text, std::string const& v_text,
                    std::size_t base) {
      auto const X = term_alphabet(base);
      auto const u = load_term(u_text, X), v = load_term(v_text, X);
      auto const ru = reduce(u), rv = reduce(v);
      run.report["result"] = {{"u", to_string(u, X)}, {"v", to_string(v, X)},
                              {"u_reduced", to_string(ru, X)}, {"v_reduced", to_string(rv, X)}};
      bool const eq = theta_cs_equal(u, v);
      run.verdicts.add("equal reduced forms", eq,
                       eq ? json() : json::array({to_string(ru, X), to_string(rv, X)}));
    }

    RuleSet parse_rules(std::vector<std::string> const& names) {
      if (names.empty()) {
        return all_upsilon_rules;
      }
      RuleSet set = 0;
      for (auto const& n : names) {
        set |= n == "i"    ? rule_bit(UpsilonRule::i)
               : n == "u3" ? rule_bit(UpsilonRule::u3)
               : n == "u4" ? rule_bit(UpsilonRule::u4)
                           : rule_bit(UpsilonRule::u5);
      }
      return set;
    }

    struct SearchOptions {
      std::size_t              base      = 2;
      std::size_t              max_steps = 12;
      std::size_t              max_len   = 6;
      std::size_t              budget    = 2'000'000;
      std::vector<std::string> rules;
    };

    void derive_search(Run& run, std::string const& u_text, std::string const& v_text,
                       SearchOptions const& o) {
      auto const X = term_alphabet(o.base);
      auto word    = [&](std::string const& s) {
        return load("word '" + s + "'", [&] { return parse_tilde_word(s, X); });
      };
      auto const u = word(u_text), v = word(v_text);
      auto const d = derivation_search(u, v, X.letters(), o.max_steps, o.max_len,
                                       parse_rules(o.rules), o.budget);
      run.report["result"] = {{"u", to_string(u, X)}, {"v", to_string(v, X)}};
      if (!d) {
        run.verdicts.add("derivation found", false,
                         json{{"max_steps", o.max_steps}, {"max_len", o.max_len}},
                         "no derivation within the bounds");
        return;
      }
      json steps = json::array(), words = json::array({to_string(u, X)});
      auto w     = u;
      for (auto const& s : *d) {
        w = apply_upsilon_step(w, s);
        steps.push_back(to_string(s));
        words.push_back(to_string(w, X));
      }
      run.report["result"]["steps"] = steps;
      run.report["result"]["words"] = words;
      run.verdicts.add("derivation found", true);
      run.verdicts.add("replay reaches v", replay(u, *d) == v);
    }

    DerivedSemigroupoid build_derived(Instance const& inst, std::string const& dagger) {
      return DerivedSemigroupoid(
          ExtensionContext::build(inst.semigroup, inst.rho, dagger_policy(dagger)));
    }

    void derived_build(Instance const& inst, InstanceResult& r, std::string const& dagger) {
      auto const c = build_derived(inst, dagger);
      std::size_t loops = 0;
      for (auto const& a : c.arrows()) {
        loops += a.source == a.target ? 1 : 0;
      }
      r.result = {{"s_order", inst.semigroup.order()},
                  {"objects", c.context().t().order()},
                  {"arrows", c.arrows().size()},
                  {"loops", loops},
                  {"stable_arrows", c.stable_arrows().size()}};
      for (auto const& l : check_lemmas(c)) {
        r.verdicts.add(l.name, l.pass, l.pass ? json() : json(l.detail),
                       std::to_string(l.instances) + " instances");
      }
    }

    void hat_check(Instance const& inst, InstanceResult& r, std::string const& dagger) {
      auto const c = build_derived(inst, dagger);
      std::optional<json> below, idem, comp, wedge;
      std::size_t         pairs = 0, wedges = 0;
      for (auto const& a : c.arrows()) {
        auto const h = c.hat(a);
        if (!below && !(c.is_stable(h) && c.leq(h, a))) {
          below = json::array({to_string(a), to_string(h)});
        }
        if (!idem && c.hat(h) != h) {
          idem = json::array({to_string(a), to_string(h)});
        }
      }
      for (auto const& a : c.arrows()) {
        for (auto const& b : c.arrows()) {
          if (a.target == b.source) {
            ++pairs;
            auto const lhs = c.hat(c.compose(a, b));
            auto const rhs = c.compose(c.hat(a), c.hat(b));
            if (!comp && lhs != rhs) {
              comp = json::array({to_string(a), to_string(b), to_string(lhs), to_string(rhs)});
            }
          }
          if (a.source == b.target) {
            ++wedges;
            auto const lhs = c.hat(c.arrow_wedge(a, b));
            auto const rhs = c.arrow_wedge(c.hat(a), c.hat(b));
            if (!wedge && lhs != rhs) {
              wedge = json::array({to_string(a), to_string(b), to_string(lhs), to_string(rhs)});
            }
          }
        }
      }
      r.result = {{"arrows", c.arrows().size()},
                  {"stable_arrows", c.stable_arrows().size()},
                  {"composable_pairs", pairs},
                  {"adjacent_pairs", wedges}};
      r.verdicts.add("hat is stable and below", !below, below.value_or(json()));
      r.verdicts.add("hat is idempotent", !idem, idem.value_or(json()));
      r.verdicts.add("hat respects composition", !comp, comp.value_or(json()));
      r.verdicts.add("hat respects wedge", !wedge, wedge.value_or(json()));
    }

    struct EmbedOptions {
      std::size_t trials    = 200;
      std::size_t max_steps = 40;
      std::size_t max_len   = 10;
      std::string policy    = "hat-of-dagger";
    };

    void embed_verify(Instance const& inst, InstanceResult& r, std::string const& dagger,
                      EmbedOptions const& o, std::uint64_t seed) {
      ArrowAlphabet const A(build_derived(inst, dagger), o.policy == "dagger-of-hat"
                                                             ? PrimePolicy::dagger_of_hat
                                                             : PrimePolicy::hat_of_dagger);
      try {
        auto const rep = verify_embedding(A, o.trials, o.max_steps, seed, o.max_len);
        json kinds = json::object(), cases = json::object();
        for (auto const& [k, n] : rep.per_kind) {
          kinds[std::string(step_kind_name(k))] = n;
        }
        for (auto const& [k, n] : rep.per_case) {
          cases[std::string(lift_case_name(k))] = n;
        }
        r.result = {{"arrows", A.arrow_count()},
                    {"derivations", rep.derivations},
                    {"lifted_steps", rep.lifted_steps},
                    {"per_kind", kinds},
                    {"per_case", cases},
                    {"max_brackets", rep.max_brackets},
                    {"rho_pairs", rep.rho_pairs},
                    {"homomorphism_checks", rep.homomorphism_checks}};
        r.verdicts.add("wp_hat invariance", rep.invariance_ok);
        r.verdicts.add("kappa separation", rep.separation_ok, nullptr,
                       rep.separation_ok ? "" : rep.failure);
        r.verdicts.add("kappa homomorphism", rep.homomorphism_ok, nullptr,
                       rep.homomorphism_ok ? "" : rep.failure);
      } catch (Error const& e) {
        if (e.code() != ErrorCode::invariance_violated) {
          throw;
        }
        r.verdicts.add("wp_hat invariance", false,
                       json{{"transcript", e.what()}, {"seed_trial", e.witness()}});
      }
    }

    struct CorpusOptions {
      std::string out;
      std::size_t actions_per_pair = CorpusConfig{}.actions_per_pair;
      std::size_t max_lsdp_order   = CorpusConfig{}.max_lsdp_order;
    };

    void corpus_gen(Run& run, CorpusOptions const& o) {
      auto const corpus = generate_corpus({o.actions_per_pair, o.max_lsdp_order});
      auto const files  = load(o.out, [&] { return write_corpus(o.out, corpus); });
      std::map<std::string, CorpusEntry const*> by_name;
      for (auto const& e : corpus) {
        by_name[e.name] = &e;
      }
      std::optional<json> bad;
      for (auto const& f : files) {
        if (f.format == "index" || bad) {
          continue;
        }
        auto const  text  = read_file(f.path);
        auto const& entry = *by_name.at(f.name);
        bool        same  = false;
        if (f.format == "cayley") {
          auto const cf = read_cayley(text);
          same = write_cayley(cf) == text && cf.semigroup == entry.semigroup;
        } else {
          auto const a = read_action(text);
          same = write_action(a) == text && LambdaProduct(a).semigroup() == entry.semigroup;
        }
        if (!same) {
          bad = f.path.string();
        }
      }
      std::map<std::string, std::size_t> kinds;
      for (auto const& e : corpus) {
        ++kinds[e.kind];
      }
      run.report["result"] = {{"directory", o.out},
                              {"instances", corpus.size()},
                              {"files", files.size()},
                              {"kinds", kinds}};
      run.verdicts.add("every file re-parses to the same instance", !bad, bad.value_or(json()));
    }

    std::uint64_t parse_seed_env(char const* text) {
      std::uint64_t v = 0;
      std::string_view s(text);
      auto const [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || end != s.data() + s.size()) {
        throw UsageError("ESLI_SEED must be a non-negative integer, got '" + std::string(s) + "'");
      }
      return v;
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification tool for E-solid locally inverse semigroups", "esli"};
    app.require_subcommand(1);
    std::string report_path;
    std::size_t jobs = 1;
    app.add_option("--report", report_path, "also write the JSON report to this file");
    app.add_option("--jobs,-j", jobs, "worker threads for batch runs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string              file, file2, out_path, text_u, text_v;
    std::vector<std::string> require;
    std::size_t              max_order = 8, base = 4;
    InputOptions             in;
    SearchOptions            search;
    EmbedOptions             embed;
    CorpusOptions            corpus;
    std::uint64_t            seed = default_seed;

    std::vector<std::string> flag_names;
    for (auto const& f : flag_table()) {
      flag_names.push_back(f.first);
    }

    auto file_arg = [&](CLI::App* s, char const* what) {
      s->add_option("file", file, what)->required();
    };
    auto out_arg = [&](CLI::App* s) {
      s->add_option("-o,--output", out_path, "write the result to this file");
    };

    std::vector<std::pair<CLI::App*, std::function<void(Run&)>>> commands;
    auto add = [&](char const* name, char const* help, std::function<void(Run&)> f) {
      auto* s = app.add_subcommand(name, help);
      commands.emplace_back(s, std::move(f));
      return s;
    };
    auto batch = [&](auto fn) {
      return [&, fn](Run& run) {
        auto const insts = resolve_instances(in, nullptr);
        merge_instances(run, run_pool(insts, jobs, fn));
      };
    };

    auto* s = add("classify", "structural flags of a Cayley table",
                  [&](Run& r) { classify(r, file, require); });
    file_arg(s, "Cayley file");
    s->add_option("--require", require, "flag that must hold; repeatable")
        ->check(CLI::IsMember(flag_names));

    s = add("green", "Green's relations", [&](Run& r) { green_cmd(r, file); });
    file_arg(s, "Cayley file");

    s = add("congruences", "all congruences", [&](Run& r) { congruences_cmd(r, file, max_order); });
    file_arg(s, "Cayley file");
    s->add_option("--max-order", max_order, "refuse larger semigroups")->capture_default_str();

    s = add("least-inv", "least inverse congruence", [&](Run& r) { least_inv(r, file, out_path); });
    file_arg(s, "Cayley file");
    out_arg(s);

    s = add("rees", "Rees matrix semigroup from a rees file",
            [&](Run& r) { rees_cmd(r, file, out_path); });
    file_arg(s, "rees file");
    out_arg(s);

    s = add("sslat", "strong semilattice from an sslat file",
            [&](Run& r) { sslat_cmd(r, file, out_path); });
    file_arg(s, "sslat file");
    out_arg(s);

    s = add("lsdp-build", "lambda-semidirect product of an action",
            [&](Run& r) { lsdp_build(r, file, out_path); });
    file_arg(s, "action file");
    out_arg(s);

    s = add("lsdp-verify", "structure clauses of a lambda-semidirect product",
            [&](Run& r) { lsdp_verify(r, file); });
    file_arg(s, "action file");

    s = add("term-reduce", "reduced form of a term", [&](Run& r) { term_reduce(r, text_u, base); });
    s->add_option("term", text_u, "term, e.g. x(y^x')")->required();
    s->add_option("--base", base, "base letters x, y, z, w, v4, ...")->capture_default_str();

    s = add("term-equal", "compare reduced forms of two terms",
            [&](Run& r) { term_equal(r, text_u, text_v, base); });
    s->add_option("u", text_u, "first term")->required();
    s->add_option("v", text_v, "second term")->required();
    s->add_option("--base", base, "base letters")->capture_default_str();

    s = add("derive-search", "shortest derivation between two words",
            [&](Run& r) { derive_search(r, text_u, text_v, search); });
    s->add_option("u", text_u, "start word")->required();
    s->add_option("v", text_v, "target word")->required();
    s->add_option("--base", search.base, "base letters")->capture_default_str();
    s->add_option("--max-steps", search.max_steps)->capture_default_str();
    s->add_option("--max-len", search.max_len)->capture_default_str();
    s->add_option("--budget", search.budget, "node budget")->capture_default_str();
    s->add_option("--rules", search.rules, "subset of i, u3, u4, u5")
        ->check(CLI::IsMember({"i", "u3", "u4", "u5"}));

    s = add("derived-build", "derived semigroupoid and its arrow lemmas",
            batch([&](Instance const& i, InstanceResult& r) { derived_build(i, r, in.dagger); }));
    add_input_options(s, in, true);

    s = add("hat-check", "hat map: stable, below, idempotent, a morphism",
            batch([&](Instance const& i, InstanceResult& r) { hat_check(i, r, in.dagger); }));
    add_input_options(s, in, true);

    CLI::Option* seed_opt = nullptr;
    s = add("embed-verify", "lifted derivations, kappa separation and homomorphism",
            [&](Run& run) {
              auto const insts = resolve_instances(in, default_instance);
              merge_instances(run, run_pool(insts, jobs, [&](Instance const& i, InstanceResult& r) {
                                embed_verify(i, r, in.dagger, embed, seed);
                              }));
            });
    add_input_options(s, in, true);
    seed_opt = s->add_option("--seed", seed, "overrides ESLI_SEED");
    s->add_option("--trials", embed.trials)->capture_default_str();
    s->add_option("--max-steps", embed.max_steps)->capture_default_str();
    s->add_option("--max-len", embed.max_len)->capture_default_str();
    s->add_option("--policy", embed.policy, "image of primed letters")
        ->check(CLI::IsMember({"hat-of-dagger", "dagger-of-hat"}))
        ->capture_default_str();

    s = add("corpus-gen", "write the instance corpus", [&](Run& r) { corpus_gen(r, corpus); });
    s->add_option("--out", corpus.out, "output directory")->required();
    s->add_option("--actions-per-pair", corpus.actions_per_pair)->capture_default_str();
    s->add_option("--max-lsdp-order", corpus.max_lsdp_order)->capture_default_str();

    std::vector<char const*> argv;
    for (auto const& a : args) {
      argv.push_back(a.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? exit_pass : exit_usage;
    }

    Run  run;
    auto const start = clock::now();
    json echo        = json::array();
    for (auto const& a : args) {
      echo.push_back(a);
    }
    try {
      std::optional<std::uint64_t> used_seed;
      if (app.got_subcommand("embed-verify")) {
        char const* env = std::getenv("ESLI_SEED");
        if (seed_opt->count() == 0 && env != nullptr) {
          seed = parse_seed_env(env);
        }
        used_seed = seed;
      }
      for (auto const& [sub, fn] : commands) {
        if (sub->parsed()) {
          run.report["command"] = sub->get_name();
          run.report["argv"]    = echo;
          run.report["seed"]    = used_seed ? json(*used_seed) : json();
          fn(run);
        }
      }
    } catch (UsageError const& e) {
      err << "esli: " << e.what() << '\n';
      return exit_usage;
    } catch (Error const& e) {
      run.verdicts.add_error("error", e);
    }
    run.report["verdicts"]   = run.verdicts.list();
    run.report["pass"]       = run.verdicts.pass();
    run.report["timings_ms"] = {{"total", ms_since(start)}};

    auto const text = run.report.dump(2) + "\n";
    out << text;
    if (!report_path.empty()) {
      try {
        write_file(report_path, text);
      } catch (Error const& e) {
        err << "esli: " << e.what() << '\n';
        return exit_usage;
      }
    }
    if (!run.verdicts.pass()) {
      err << "esli: verdict failure\n";
    }
    return run.verdicts.pass() ? exit_pass : exit_verdict;
  }

}  // namespace esli::cli
