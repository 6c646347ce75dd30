// Subcommand implementations for the pfree command-line tool. Kept apart from
// main() so tests can drive them directly.

#ifndef PFREE_TOOLS_EXPERIMENT_HPP_
#define PFREE_TOOLS_EXPERIMENT_HPP_

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pfree/pfree.hpp"

namespace pfree::cli {

  using json = nlohmann::ordered_json;

  struct ExperimentConfig {
    int                        a         = 2;
    bool                       semigroup = false;
    std::string                set       = "extremal";
    std::string                words;
    int                        k       = 2;
    int                        residue = 1;
    std::string                marked  = "a";
    std::optional<std::size_t> cap;
    std::optional<std::size_t> n;
    // Empty x and y select F^{aa} in a group and the whole semigroup
    // otherwise.
    std::string                x;
    std::string                y;
    std::string                base;
    std::string                epsilon = "1/10";
    std::size_t                depth   = 3;
    std::uint64_t              seed    = 1;
    std::uint64_t              trials  = 1000000;
    // Empty picks text for rho and enumerate and json elsewhere.
    std::string                format;
    std::string                output;
    unsigned                   threads = 1;
    std::uint64_t              budget  = default_enumeration_budget;
    std::string                builder = "simple";
    bool                       increment = false;
    bool                       list      = false;
    std::string                ambient   = "F";
  };

  inline const std::vector<std::pair<std::string, std::string>>& subcommands() {
    static const std::vector<std::pair<std::string, std::string>> names{
        {"count", "Exact layer counts"},
        {"enumerate", "List the reduced words of a layer"},
        {"density", "Density sequence of the input set"},
        {"verify", "Check strong k-product-freeness up to the cap"},
        {"construct", "Build the input set and summarize its layers"},
        {"greedy", "Greedy W with unique products"},
        {"regularity", "Regularity probe or density-increment descent"},
        {"sample", "Monte Carlo estimate against the exact probability"},
        {"rho", "Least integer >= 2 not dividing k - 1"},
        {"theorem-check", "Extremal set, its density and the greedy bound"}};
    return names;
  }

  // Registers every option on `app`; subcommands accept them after their
  // name through fallthrough.
  inline void add_options(CLI::App& app, ExperimentConfig& c) {
    app.add_option("--a", c.a, "Alphabet size")->check(CLI::Range(1, 127));
    app.add_flag("--semigroup", c.semigroup, "Free semigroup instead of free group");
    app.add_option("--set", c.set, "Input set: extremal, xy-slice or file")
        ->check(CLI::IsMember({"extremal", "xy-slice", "file"}));
    app.add_option("--words", c.words, "Word file for --set file");
    app.add_option("--k", c.k, "Product length k")->check(CLI::Range(1, 1000));
    app.add_option("--residue", c.residue, "Residue class of the extremal set");
    app.add_option("--marked", c.marked, "Marked generator of the extremal set");
    app.add_option("--cap", c.cap, "Length cap");
    app.add_option("--n", c.n, "Horizon (defaults to the cap)");
    app.add_option("--x", c.x, "First letter of the subsemigroup");
    app.add_option("--y", c.y, "Last letter of the subsemigroup");
    app.add_option("--base", c.base, "Coset base word");
    app.add_option("--epsilon", c.epsilon, "Regularity tolerance (p/q or decimal)");
    app.add_option("--depth", c.depth, "Regularity probe depth");
    app.add_option("--seed", c.seed, "Random seed");
    app.add_option("--trials", c.trials, "Monte Carlo trials");
    app.add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"", "json", "csv", "text"}));
    app.add_option("--output", c.output, "Output file (stdout when empty)");
    app.add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--budget", c.budget, "Enumeration item budget");
    app.add_option("--builder", c.builder, "Greedy builder: simple or regular")
        ->check(CLI::IsMember({"simple", "regular"}));
    app.add_flag("--increment", c.increment, "Run the density-increment descent");
    app.add_flag("--list", c.list, "List the words of a construction");
    app.add_option("--ambient", c.ambient, "Density ambient: F or xy")
        ->check(CLI::IsMember({"F", "xy"}));
  }

  // ---------------------------------------------------------------------------
  // Resolution helpers
  // ---------------------------------------------------------------------------

  inline Alphabet alphabet_of(const ExperimentConfig& c) {
    return Alphabet(c.a, c.semigroup ? Structure::free_semigroup : Structure::free_group);
  }

  // Largest cap <= 10 whose ball stays below 150000 words.
  inline std::size_t default_cap(const Alphabet& alphabet) {
    std::size_t   cap   = 0;
    std::uint64_t total = 1;
    while (cap < 10) {
      auto next = layer_size_u64(alphabet, cap + 1);
      if (!next || total + *next > 150000) {
        break;
      }
      total += *next;
      ++cap;
    }
    return std::max<std::size_t>(cap, 1);
  }

  inline std::size_t cap_of(const ExperimentConfig& c) {
    return c.cap.value_or(default_cap(alphabet_of(c)));
  }

  inline std::size_t horizon_of(const ExperimentConfig& c) {
    return c.n.value_or(cap_of(c));
  }

  inline Subsemigroup semigroup_of(const ExperimentConfig& c) {
    Alphabet alph = alphabet_of(c);
    if (c.x.empty() && c.y.empty()) {
      if (c.semigroup) {
        return Subsemigroup::whole(alph);
      }
      return Subsemigroup::xy(alph, Letter(1), Letter(1));
    }
    std::string x = c.x.empty() ? c.y : c.x;
    std::string y = c.y.empty() ? c.x : c.y;
    return Subsemigroup::xy(alph, parse_letter(alph, x), parse_letter(alph, y));
  }

  inline Coset coset_of(const ExperimentConfig& c) {
    Subsemigroup g = semigroup_of(c);
    return Coset(g, parse_word(g.alphabet(), c.base));
  }

  inline Rational epsilon_of(const ExperimentConfig& c) {
    return parse_rational(c.epsilon);
  }

  inline WordSet input_set(const ExperimentConfig& c, std::size_t cap) {
    Alphabet alph = alphabet_of(c);
    if (c.set == "extremal") {
      return extremal_mod_k({alph, parse_letter(alph, c.marked), c.k, c.residue, cap});
    }
    if (c.set == "xy-slice") {
      return coset_set(coset_of(c), cap);
    }
    std::ifstream in(c.words);
    if (!in) {
      throw Error(ErrorKind::parse, "cannot open word file '" + c.words + "'");
    }
    return WordSet::from_words(alph, cap, read_words(alph, in));
  }

  inline json config_json(const ExperimentConfig& c) {
    json j;
    j["a"]         = c.a;
    j["semigroup"] = c.semigroup;
    j["set"]       = c.set;
    j["words"]     = c.words;
    j["k"]         = c.k;
    j["residue"]   = c.residue;
    j["marked"]    = c.marked;
    j["cap"]       = cap_of(c);
    j["n"]         = horizon_of(c);
    j["x"]         = c.x;
    j["y"]         = c.y;
    j["base"]      = c.base;
    j["epsilon"]   = c.epsilon;
    j["depth"]     = c.depth;
    j["seed"]      = c.seed;
    j["trials"]    = c.trials;
    j["format"]    = c.format;
    j["threads"]   = c.threads;
    j["budget"]    = c.budget;
    j["builder"]   = c.builder;
    j["increment"] = c.increment;
    j["ambient"]   = c.ambient;
    return j;
  }

  // key=value lines accepted by --config.
  inline std::string config_text(const ExperimentConfig& c) {
    std::ostringstream out;
    json               j = config_json(c);
    for (const auto& [key, value] : j.items()) {
      out << key << "=" << value.dump() << "\n";
    }
    return out.str();
  }

  inline json envelope(const std::string& command, const ExperimentConfig& c) {
    json j;
    j["command"] = command;
    j["version"] = std::string(version);
    j["config"]  = config_json(c);
    return j;
  }

  inline std::string decimal(const Rational& q, int digits = 10) {
    std::ostringstream s;
    s << std::setprecision(digits) << q.get_d();
    return s.str();
  }

  inline json word_list(const std::vector<Word>& words) {
    json arr = json::array();
    for (const Word& w : words) {
      arr.push_back(format_word(w));
    }
    return arr;
  }

  inline json witness_json(const ProductWitness& w) {
    json j;
    j["factors"] = word_list(w.factors);
    j["product"] = format_word(w.product);
    return j;
  }

  inline json trace_json(const GreedyTrace& t, const Alphabet& alph) {
    json j;
    j["ambient"]    = t.ambient.describe();
    j["horizon"]    = t.horizon;
    j["target"]     = to_string(t.target);
    j["pr_ambient"] = to_string(t.pr_ambient);
    if (t.density) {
      j["density"] = to_string(*t.density);
    }
    j["spacing"] = t.spacing;
    j["stop"]    = std::string(to_string(t.stop));
    json steps   = json::array();
    for (const auto& s : t.steps) {
      json st;
      st["layer"]     = s.layer;
      st["added"]     = s.added;
      st["measure"]   = to_string(s.measure);
      st["increment"] = to_string(s.increment);
      st["certified"] = to_string(s.certified);
      st["kappa_measure"] = decimal(kappa(alph) * s.measure);
      steps.push_back(st);
    }
    j["steps"] = steps;
    return j;
  }

  inline json verdict_json(const RegularityVerdict& v) {
    json j;
    j["regular"]      = v.regular;
    j["epsilon"]      = to_string(v.epsilon);
    j["coset"]        = v.coset.describe();
    j["base_density"] = to_string(v.base_density);
    j["max_refined"]  = to_string(v.max_refined);
    j["witness"]      = v.witness ? json(format_word(*v.witness)) : json(nullptr);
    j["witness_density"] =
        v.witness_density ? json(to_string(*v.witness_density)) : json(nullptr);
    j["horizon"] = v.horizon;
    j["depth"]   = v.depth;
    j["probed"]  = v.probed;
    return j;
  }

  // ---------------------------------------------------------------------------
  // Subcommands
  // ---------------------------------------------------------------------------

  inline void emit(const json& j, std::ostream& out) {
    out << j.dump(2) << "\n";
  }

  inline void run_count(const ExperimentConfig& c, std::ostream& out) {
    Alphabet    alph = alphabet_of(c);
    std::size_t n    = horizon_of(c);
    bool        xy   = !c.x.empty() || !c.y.empty();
    mpz_class   value;
    if (xy) {
      Subsemigroup g = semigroup_of(c);
      value          = count_xy_layer(alph, *g.first(), *g.last(), n).value;
    } else {
      value = count_layer(alph, n).value;
    }
    if (c.format == "csv") {
      out << "n,count\n" << n << "," << value.get_str() << "\n";
    } else if (c.format == "text") {
      out << value.get_str() << "\n";
    } else {
      json j      = envelope("count", c);
      j["result"] = {{"n", n}, {"count", value.get_str()}};
      emit(j, out);
    }
  }

  inline void run_enumerate(const ExperimentConfig& c, std::ostream& out) {
    Alphabet    alph = alphabet_of(c);
    std::size_t n    = horizon_of(c);
    bool        coset = !c.x.empty() || !c.y.empty() || !c.base.empty();
    WordStream  stream = coset ? enumerate_coset_layer(coset_of(c), n, c.budget)
                               : enumerate_layer(alph, n, c.budget);
    if (c.format == "json") {
      json words = json::array();
      for (const Word& w : stream) {
        words.push_back(format_word(w));
      }
      json j      = envelope("enumerate", c);
      j["result"] = {{"n", n}, {"count", words.size()}, {"words", words}};
      emit(j, out);
      return;
    }
    if (c.format == "csv") {
      out << "word\n";
    }
    for (const Word& w : stream) {
      out << format_word(w) << "\n";
    }
  }

  inline void run_density(const ExperimentConfig& c, std::ostream& out) {
    std::size_t   cap = cap_of(c);
    std::size_t   n   = horizon_of(c);
    WordSet       s   = input_set(c, cap);
    DensityReport r   = c.ambient == "xy" ? density_sequence(s, Family(coset_of(c)), n)
                                          : density_sequence(s, Family::whole(s.alphabet()), n);
    if (c.format == "csv" || c.format == "text") {
      out << "n,numerator,denominator,decimal\n";
      for (const auto& p : r.values) {
        out << p.n << "," << p.value.get_num().get_str() << ","
            << p.value.get_den().get_str() << "," << decimal(p.value) << "\n";
      }
      return;
    }
    json values = json::array();
    for (const auto& p : r.values) {
      values.push_back({{"n", p.n}, {"value", to_string(p.value)}, {"decimal", decimal(p.value)}});
    }
    json j      = envelope("density", c);
    j["result"] = {{"ambient", r.ambient},
                   {"n_max", r.n_max},
                   {"tail_from", r.tail_from},
                   {"tail_max", to_string(r.tail_max)},
                   {"values", values}};
    emit(j, out);
  }

  inline SearchOptions search_options(const ExperimentConfig& c) {
    SearchOptions opt;
    opt.ball_budget = c.budget;
    return opt;
  }

  inline void run_verify(const ExperimentConfig& c, std::ostream& out) {
    std::size_t cap = cap_of(c);
    WordSet     s   = input_set(c, cap);
    auto        v   = find_k_product_violation(s, static_cast<std::size_t>(c.k), cap,
                                               search_options(c));
    json        j   = envelope("verify", c);
    j["result"]     = {{"size", s.size()},
                       {"strongly_k_product_free", !v.has_value()},
                       {"witness", v ? witness_json(*v) : json(nullptr)}};
    emit(j, out);
  }

  inline void run_construct(const ExperimentConfig& c, std::ostream& out) {
    std::size_t cap = cap_of(c);
    WordSet     s   = input_set(c, cap);
    if (c.list) {
      if (c.format == "json") {
        json j      = envelope("construct", c);
        j["result"] = {{"size", s.size()}, {"words", word_list(s.words())}};
        emit(j, out);
      } else {
        s.for_each([&](std::span<const Letter> v) {
          out << format_word(Word(s.alphabet(), v)) << "\n";
        });
      }
      return;
    }
    DensityReport r = density_sequence(s, Family::whole(s.alphabet()), cap);
    if (c.format == "csv" || c.format == "text") {
      out << "n,count,layer_measure,density\n";
      for (std::size_t n = 1; n <= cap; ++n) {
        out << n << "," << s.layer_size(n) << "," << to_string(mu_layer(s, n)) << ","
            << to_string(*r.at(n)) << "\n";
      }
      return;
    }
    json layers = json::array();
    for (std::size_t n = 0; n <= cap; ++n) {
      json l;
      l["n"]     = n;
      l["count"] = s.layer_size(n);
      if (n > 0) {
        l["layer_measure"] = to_string(mu_layer(s, n));
        l["density"]       = to_string(*r.at(n));
      }
      layers.push_back(l);
    }
    json j      = envelope("construct", c);
    j["result"] = {{"size", s.size()}, {"layers", layers}};
    emit(j, out);
  }

  // S restricted to the configured ambient coset.
  inline WordSet greedy_input(const ExperimentConfig& c, std::size_t cap) {
    return input_set(c, cap).restricted(coset_of(c));
  }

  inline void run_greedy(const ExperimentConfig& c, std::ostream& out) {
    std::size_t  cap  = cap_of(c);
    Subsemigroup g    = semigroup_of(c);
    Coset        h    = coset_of(c);
    WordSet      s    = greedy_input(c, cap);
    GreedyOptions gopt;
    gopt.search = search_options(c);
    GreedyTrace t = [&] {
      if (c.builder == "regular") {
        RegularOptions ropt;
        ropt.depth   = c.depth;
        ropt.horizon = horizon_of(c);
        ropt.greedy  = gopt;
        return build_W_regular(s, h.base(), epsilon_of(c), g, cap, ropt);
      }
      return build_W_simple(s, c.k, g, cap, gopt);
    }();
    if (c.format == "csv" || c.format == "text") {
      out << "step,layer,added,measure,increment,certified,kappa_measure\n";
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& st = t.steps[i];
        out << i + 1 << "," << st.layer << "," << st.added << "," << to_string(st.measure)
            << "," << to_string(st.increment) << "," << to_string(st.certified) << ","
            << decimal(kappa(s.alphabet()) * st.measure) << "\n";
      }
      return;
    }
    Rational mu = t.steps.empty() ? Rational(0) : t.steps.back().measure;
    json     j  = envelope("greedy", c);
    j["result"] = trace_json(t, s.alphabet());
    j["result"]["final_size"]   = t.final_set.size();
    j["result"]["lemma_bound"]  = to_string(lemma_bound(mu, c.k, s.alphabet()).value);
    j["result"]["divisor_free"] = is_divisor_free(t.final_set, t.ambient);
    j["result"]["unique_products"] = has_unique_products(t.final_set, t.ambient, cap);
    emit(j, out);
  }

  inline void run_regularity(const ExperimentConfig& c, std::ostream& out) {
    std::size_t  cap     = cap_of(c);
    std::size_t  horizon = horizon_of(c);
    Subsemigroup g       = semigroup_of(c);
    Rational     eps     = epsilon_of(c);
    json         j       = envelope("regularity", c);
    if (c.increment) {
      WordSet s = input_set(c, cap).restricted(Coset(g));
      auto    r = density_increment_search(s, g, eps, c.depth, horizon);
      json    chain = json::array();
      for (const auto& link : r.chain) {
        chain.push_back({{"base", format_word(link.base)}, {"density", to_string(link.density)}});
      }
      j["result"] = {{"conclusive", r.conclusive},
                     {"base", format_word(r.base)},
                     {"chain", chain},
                     {"verdict", r.verdict ? verdict_json(*r.verdict) : json(nullptr)},
                     {"note", r.note}};
    } else {
      Coset   h = coset_of(c);
      WordSet s = input_set(c, cap).restricted(h);
      j["result"] = verdict_json(regularity_probe(s, g, h.base(), eps, c.depth, horizon));
    }
    emit(j, out);
  }

  inline void run_sample(const ExperimentConfig& c, std::ostream& out) {
    Alphabet    alph = alphabet_of(c);
    std::size_t n    = horizon_of(c);
    WordSet     s    = input_set(c, std::max(cap_of(c), n));
    SampleModel model{alph, n, c.seed};
    Estimate    e = estimate_event(
        model, [&](std::span<const Letter> v) { return s.contains(v); }, c.trials, c.threads);
    Rational exact = probability_of(s, n);
    json     j     = envelope("sample", c);
    j["result"]    = {{"seed", e.seed},
                      {"trials", e.trials},
                      {"hits", e.hits},
                      {"point", e.point},
                      {"ci95", {e.lo, e.hi}},
                      {"exact", to_string(exact)},
                      {"exact_decimal", decimal(exact)}};
    emit(j, out);
  }

  inline void run_rho(const ExperimentConfig& c, std::ostream& out) {
    int r = rho(c.k);
    if (c.format == "json") {
      json j      = envelope("rho", c);
      j["result"] = {{"k", c.k}, {"rho", r}};
      emit(j, out);
    } else {
      out << r << "\n";
    }
  }

  // Builds the extremal set, verifies it, measures its density and runs the
  // greedy builder inside the configured subsemigroup.
  inline void run_theorem_check(const ExperimentConfig& c, std::ostream& out) {
    Alphabet    alph = alphabet_of(c);
    std::size_t cap  = cap_of(c);
    std::size_t n    = horizon_of(c);
    ExperimentConfig ec = c;
    ec.set              = "extremal";
    WordSet s           = input_set(ec, std::max(cap, n));
    auto    violation   = find_k_product_violation(s, static_cast<std::size_t>(c.k), cap,
                                                   search_options(c));
    DensityReport r      = density_sequence(s, Family::whole(alph), n);
    Rational      dn     = *r.at(n);
    Rational      target(1, c.k);
    Subsemigroup  g      = semigroup_of(c);
    WordSet       sg     = s.truncated(cap).restricted(Coset(g));
    GreedyOptions gopt;
    gopt.search          = search_options(c);
    gopt.verify_product_free = false;
    GreedyTrace t        = build_W_simple(sg, c.k, g, cap, gopt);
    Rational    mu       = t.steps.empty() ? Rational(0) : t.steps.back().measure;
    Rational    bound    = lemma_bound(mu, c.k, alph).value;
    Rational    gap      = abs(dn - target);

    json j      = envelope("theorem-check", c);
    j["result"] = {
        {"product_free", !violation.has_value()},
        {"witness", violation ? witness_json(*violation) : json(nullptr)},
        {"density", to_string(dn)},
        {"density_decimal", decimal(dn)},
        {"tail_max", to_string(r.tail_max)},
        {"one_over_k", to_string(target)},
        {"gap", decimal(gap)},
        {"greedy_steps", t.steps.size()},
        {"greedy_measure", to_string(mu)},
        {"lemma_bound", to_string(bound)},
        {"verdict", !violation && gap <= Rational(1, 50) ? "consistent" : "inconsistent"}};
    emit(j, out);
  }

  inline void run(const std::string& command, ExperimentConfig c, std::ostream& out) {
    if (c.format.empty()) {
      c.format = command == "rho" || command == "enumerate" ? "text" : "json";
    }
    if (command == "count") {
      run_count(c, out);
    } else if (command == "enumerate") {
      run_enumerate(c, out);
    } else if (command == "density") {
      run_density(c, out);
    } else if (command == "verify") {
      run_verify(c, out);
    } else if (command == "construct") {
      run_construct(c, out);
    } else if (command == "greedy") {
      run_greedy(c, out);
    } else if (command == "regularity") {
      run_regularity(c, out);
    } else if (command == "sample") {
      run_sample(c, out);
    } else if (command == "rho") {
      run_rho(c, out);
    } else if (command == "theorem-check") {
      run_theorem_check(c, out);
    } else {
      throw Error(ErrorKind::parse, "unknown subcommand '" + command + "'");
    }
  }

  inline json error_json(const Error& e) {
    json j;
    j["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    return j;
  }

  // Full command-line entry point; returns the process exit status.
  inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App         app{"Product-free sets in free groups: counting, measures and "
                "greedy constructions"};
    ExperimentConfig cfg;
    app.set_config("--config", "", "Read options from a key=value file");
    app.set_version_flag("--version", std::string(version));
    add_options(app, cfg);
    app.require_subcommand(1);
    for (const auto& [name, about] : subcommands()) {
      app.add_subcommand(name, about)->fallthrough();
    }
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForVersion&) {
      out << version << "\n";
      return 0;
    } catch (const CLI::ParseError& e) {
      err << e.what() << "\n";
      return 2;
    }
    std::string command = app.get_subcommands().front()->get_name();
    try {
      if (cfg.output.empty()) {
        run(command, cfg, out);
      } else {
        std::ostringstream buffer;
        run(command, cfg, buffer);
        std::ofstream file(cfg.output, std::ios::binary);
        if (!file) {
          throw Error(ErrorKind::parse, "cannot write '" + cfg.output + "'");
        }
        file << buffer.str();
      }
    } catch (const Error& e) {
      out << error_json(e).dump(2) << "\n";
      return e.kind() == ErrorKind::parse ? 2 : 1;
    }
    return 0;
  }

}  // namespace pfree::cli

#endif  // PFREE_TOOLS_EXPERIMENT_HPP_
