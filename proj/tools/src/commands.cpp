#include "tokcheck_cli/commands.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tokcheck/error.hpp"
#include "tokcheck/io.hpp"
#include "tokcheck/sim.hpp"
#include "tokcheck/transducer.hpp"

namespace tokcheck::cli {

namespace {

using nlohmann::json;

std::string decimal(const Rational& r, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << r.convert_to<double>();
  return os.str();
}

template <class W, class Show>
void verdict_line(std::ostream& out, const std::string& name, const Verdict<W>& v, Show show) {
  out << name << ": " << (v.holds ? "true" : "false");
  if (!v.holds && v.witness) out << ", witness " << show(*v.witness);
  out << '\n';
}

template <class W, class Show>
void property_line(std::ostream& out, const std::string& name, const Property<W>& p, Show show) {
  out << name << ": " << to_string(p.status);
  if (p.witness) out << ", witness " << show(*p.witness);
  if (!p.note.empty()) out << " (" << p.note << ")";
  out << '\n';
}

template <class W, class Show>
json verdict_json(const Verdict<W>& v, Show show) {
  json j = {{"holds", v.holds}};
  if (v.witness) j["witness"] = show(*v.witness);
  return j;
}

template <class W, class Show>
json property_json(const Property<W>& p, Show show) {
  json j = {{"status", std::string(to_string(p.status))}};
  if (p.witness) j["witness"] = show(*p.witness);
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

auto show_str = [](const Str& s) { return to_string(s); };
auto show_split = [](const SplitWitness& w) { return to_string(w.left) + " + " + to_string(w.right); };
auto show_prefix = [](const PrefixWitness& w) { return to_string(w.prefix) + " <= " + to_string(w.whole); };

struct CheckOptions {
  std::string spec;
  std::optional<std::size_t> max_len;
  std::string format = "text";
  std::size_t trials = 20;
  std::uint64_t seed = 1;
};

int cmd_check(const CheckOptions& o, std::ostream& out) {
  io::LoadedTokenizer loaded = io::load_tokenizer(o.spec, o.max_len);
  const Tokenizer& t = loaded.tokenizer;
  Verdict<Str> exact = is_exact(t);
  ClassificationReport report = classify(t);
  ConsistencyProbe probe = exact_iff_all_consistent_probe(t, o.trials, o.seed);

  if (o.format == "json") {
    json j;
    j["exact"] = verdict_json(exact, show_str);
    j["consistency_probe"] = {{"exact", probe.exact},
                              {"all_consistent", probe.all_consistent},
                              {"distributions_checked", probe.distributions_checked},
                              {"agrees", probe.agrees()}};
    if (probe.counterexample) j["consistency_probe"]["counterexample"] = json::parse(io::to_json(*probe.counterexample));
    j["deterministic_encoder"] = verdict_json(report.deterministic_encoder, show_str);
    j["deterministic_decoder"] = verdict_json(report.deterministic_decoder, show_str);
    j["decoder_deterministic_on_image"] = verdict_json(report.decoder_deterministic_on_image, show_str);
    j["bijective"] = verdict_json(report.bijective, show_str);
    j["multiplicative_decoder"] = property_json(report.multiplicative_decoder, show_split);
    j["trivial_kernel"] = property_json(report.trivial_kernel, show_str);
    j["prefix_monotone"] = property_json(report.prefix_monotone, show_prefix);
    j["max_len"] = loaded.max_len;
    j["notes"] = loaded.notes;
    out << j.dump(2) << '\n';
  } else {
    verdict_line(out, "exact", exact, show_str);
    out << "consistency probe: " << (probe.agrees() ? "agrees" : "DISAGREES") << ", checked "
        << probe.distributions_checked << ", "
        << (probe.all_consistent ? "all consistent" : "inconsistent one found") << "\n";
    verdict_line(out, "deterministic encoder", report.deterministic_encoder, show_str);
    verdict_line(out, "deterministic decoder", report.deterministic_decoder, show_str);
    verdict_line(out, "decoder deterministic on image", report.decoder_deterministic_on_image, show_str);
    verdict_line(out, "bijective", report.bijective, show_str);
    property_line(out, "multiplicative decoder", report.multiplicative_decoder, show_split);
    property_line(out, "trivial kernel", report.trivial_kernel, show_str);
    property_line(out, "prefix monotone", report.prefix_monotone, show_prefix);
    for (const auto& note : loaded.notes) out << "note: " << note << '\n';
  }
  return exact.holds ? kOk : kPropertyFalse;
}

struct PreimageOptions {
  std::string spec;
  std::optional<std::size_t> max_len;
  std::string text;
};

int cmd_preimages(const PreimageOptions& o, std::ostream& out) {
  io::LoadedTokenizer loaded = io::load_tokenizer(o.spec, o.max_len);
  PreimageEnumerator pre(loaded.tokenizer);
  Str sigma = parse_str(loaded.tokenizer.text_space().alphabet(), o.text);
  for (const Str& delta : pre(sigma)) out << to_string(delta) << '\n';
  out << "bound: " << preimage_bound(sigma.size(), pre.tokens().size()) << '\n';
  return kOk;
}

struct MarginalizeOptions {
  std::string spec;
  std::string dist;
  std::optional<std::size_t> max_len;
  std::optional<std::string> text;
  bool all = false;
  std::optional<std::size_t> up_to;
};

int cmd_marginalize(const MarginalizeOptions& o, std::ostream& out) {
  io::LoadedTokenizer loaded = io::load_tokenizer(o.spec, o.max_len);
  const Tokenizer& t = loaded.tokenizer;
  Dist q = io::parse_dist(io::read_file(o.dist), t.token_space());
  PreimageEnumerator pre(t);
  const Alphabet& chars = t.text_space().alphabet();
  if (o.text) {
    out << to_string(marginalize(pre, q, parse_str(chars, *o.text))) << '\n';
    return kOk;
  }
  Rational total = 0;
  for (const Str& sigma : enumerate_strings(chars, o.up_to.value_or(loaded.max_len))) {
    Rational m = marginalize(pre, q, sigma);
    if (m == 0) continue;
    out << to_string(sigma) << '\t' << to_string(m) << '\n';
    total += m;
  }
  out << "total: " << to_string(total) << '\n';
  return kOk;
}

struct SimulateOptions {
  std::string spec;
  std::string dist;
  std::optional<std::size_t> max_len;
  std::vector<std::size_t> schedule{100, 1000, 10000, 100000};
  std::uint64_t seed = 1;
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  io::LoadedTokenizer loaded = io::load_tokenizer(o.spec, o.max_len);
  const Tokenizer& t = loaded.tokenizer;
  Dist p_star = io::parse_dist(io::read_file(o.dist), t.text_space());
  EstimationRun run = run_estimation(t, p_star, o.schedule, o.seed);
  out << "n\ttv\n";
  for (const auto& [n, tv] : run.rows()) out << n << '\t' << decimal(tv) << '\n';
  out << "bias: " << to_string(run.bias) << '\n';
  out << "converged: " << (run.converged() ? "true" : "false") << " (tolerance " << to_string(kConvergenceTolerance)
      << ")\n";
  return kOk;
}

struct TransduceOptions {
  std::string spec;
  std::optional<std::string> text;
  std::optional<std::size_t> verify_max_len;
  std::optional<std::string> transducer;
  bool emit = false;
};

int cmd_transduce(const TransduceOptions& o, std::ostream& out) {
  io::TokenizerSpec spec = io::parse_tokenizer_spec(io::read_file(o.spec));
  io::LoadedTokenizer loaded = io::build(spec, std::size_t{0});
  if (!loaded.vocab) throw Error(Errc::invalid_argument, "transduce needs a spec with a vocab");
  const Vocab& vocab = *loaded.vocab;
  SubseqTransducer machine = o.transducer ? io::parse_transducer(io::read_file(*o.transducer))
                                          : build_maximal_munch_transducer(vocab);
  if (o.emit) out << io::to_json(machine) << '\n';
  if (o.text) out << "output: " << to_string(run(machine, parse_str(machine.input(), *o.text))) << '\n';
  if (o.verify_max_len) {
    Function greedy = [&vocab](const Str& s) { return maximal_munch_encode(vocab, s); };
    Verdict<Str> eq = equivalent_on(machine, greedy, *o.verify_max_len);
    out << "equivalent: " << (eq.holds ? "true" : "false");
    if (!eq.holds) {
      const Str& w = *eq.witness;
      out << ", witness " << to_string(w);
      out << " (transducer: ";
      try {
        out << to_string(run(machine, w));
      } catch (const Error& e) {
        out << e.what();
      }
      out << ", greedy: " << to_string(greedy(w)) << ")";
    }
    out << '\n';
    if (!eq.holds) return kPropertyFalse;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for tokenizers modelled as stochastic maps", "tokcheck"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "exactness, consistency probe and decoder properties");
  c->add_option("spec", check.spec, "tokenizer spec (JSON)")->required();
  c->add_option("--max-len", check.max_len, "truncation N of the text and token spaces");
  c->add_option("--format", check.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  c->add_option("--trials", check.trials, "random distributions in the consistency probe");
  c->add_option("--seed", check.seed, "seed for the consistency probe");

  PreimageOptions pre;
  auto* p = app.add_subcommand("preimages", "token sequences decoding to a text");
  p->add_option("spec", pre.spec, "tokenizer spec (JSON)")->required();
  p->add_option("--max-len", pre.max_len, "truncation N");
  p->add_option("--text", pre.text, "character string; \"ε\" or empty for the empty string")->required();

  MarginalizeOptions marg;
  auto* m = app.add_subcommand("marginalize", "sum a token distribution over the preimages of a text");
  m->add_option("spec", marg.spec, "tokenizer spec (JSON)")->required();
  m->add_option("dist", marg.dist, "distribution over token sequences (JSON)")->required();
  m->add_option("--max-len", marg.max_len, "truncation N");
  auto* text_opt = m->add_option("--text", marg.text, "character string");
  auto* all_opt = m->add_flag("--all", marg.all, "every text up to --up-to characters");
  m->add_option("--up-to", marg.up_to, "text length for --all (default N)")->needs(all_opt);
  text_opt->excludes(all_opt);

  SimulateOptions sim;
  auto* s = app.add_subcommand("simulate", "sample, encode, estimate and decode");
  s->add_option("spec", sim.spec, "tokenizer spec (JSON)")->required();
  s->add_option("dist", sim.dist, "source distribution p* over texts (JSON)")->required();
  s->add_option("--max-len", sim.max_len, "truncation N");
  s->add_option("--schedule", sim.schedule, "increasing sample counts")->delimiter(',');
  s->add_option("--seed", sim.seed, "base seed; step n uses seed XOR n");

  TransduceOptions tr;
  auto* t = app.add_subcommand("transduce", "run the maximal-munch transducer");
  t->add_option("spec", tr.spec, "tokenizer spec with a vocab (JSON)")->required();
  t->add_option("--text", tr.text, "input string");
  t->add_option("--verify-max-len", tr.verify_max_len, "compare with greedy encoding on all strings up to L");
  t->add_option("--transducer", tr.transducer, "use this transducer file instead of building one");
  t->add_flag("--emit-transducer", tr.emit, "print the transducer as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (c->parsed()) return cmd_check(check, out);
    if (p->parsed()) return cmd_preimages(pre, out);
    if (m->parsed()) {
      if (!marg.text && !marg.all) {
        err << "usage error: marginalize needs --text or --all\n";
        return kUsage;
      }
      return cmd_marginalize(marg, out);
    }
    if (s->parsed()) return cmd_simulate(sim, out);
    if (t->parsed()) {
      if (!tr.text && !tr.verify_max_len && !tr.emit) {
        err << "usage error: transduce needs --text, --verify-max-len or --emit-transducer\n";
        return kUsage;
      }
      return cmd_transduce(tr, out);
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace tokcheck::cli
