#include "tokcheck/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tokcheck/error.hpp"

namespace tokcheck::io {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::parse_error, what); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

const json& field(const json& obj, const char* key, const char* where) {
  if (!obj.is_object()) fail(std::string(where) + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(std::string(where) + " is missing \"" + key + "\"");
  return *it;
}

std::string text(const json& v, const char* where) {
  if (!v.is_string()) fail(std::string(where) + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> text_list(const json& v, const char* where) {
  if (!v.is_array()) fail(std::string(where) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(text(e, where));
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_masses(const json& v, const char* where) {
  std::vector<std::pair<std::string, std::string>> out;
  if (v.is_string()) {
    out.emplace_back(v.get<std::string>(), "1");
    return out;
  }
  if (!v.is_array()) fail(std::string(where) + " must be an array of {string, prob}");
  for (const auto& e : v) {
    const json& prob = field(e, "prob", where);
    std::string p = prob.is_number() ? prob.dump() : text(prob, where);
    out.emplace_back(text(field(e, "string", where), where), std::move(p));
  }
  return out;
}

json masses_json(const std::vector<std::pair<std::string, std::string>>& masses) {
  json arr = json::array();
  for (const auto& [s, p] : masses) arr.push_back({{"string", s}, {"prob", p}});
  return arr;
}

std::vector<TableRow> parse_table(const json& v, const char* where) {
  if (!v.is_array()) fail(std::string(where) + " must be an array of rows");
  std::vector<TableRow> rows;
  for (const auto& row : v) {
    rows.push_back({text(field(row, "input", where), where), parse_masses(field(row, "output", where), where)});
  }
  return rows;
}

json table_json(const std::vector<TableRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) arr.push_back({{"input", r.input}, {"output", masses_json(r.output)}});
  return arr;
}

Dist dist_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs, const Space& space) {
  std::vector<std::pair<Str, Rational>> masses;
  for (const auto& [s, p] : pairs) masses.emplace_back(parse_str(space.alphabet(), s), parse_rational(p));
  return Dist(space, masses);
}

StochMap map_from_table(const std::vector<TableRow>& table, const Space& domain, const Space& codomain) {
  StochMap::Rows rows;
  for (const auto& r : table) {
    Str x = parse_str(domain.alphabet(), r.input);
    if (!rows.emplace(x, dist_from_pairs(r.output, codomain)).second) fail("duplicate table row \"" + r.input + "\"");
  }
  return StochMap(domain, codomain, std::move(rows));
}

std::vector<std::pair<std::string, std::string>> dist_pairs(const Dist& p) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [x, m] : p.masses()) out.emplace_back(to_string(x), to_string(m));
  return out;
}

json labels_json(const Alphabet& alpha, const Word& w) {
  json arr = json::array();
  for (Symbol s : w) arr.push_back(alpha.label(s));
  return arr;
}

Word labels_word(const Alphabet& alpha, const json& v, const char* where) {
  Word w;
  for (const auto& label : text_list(v, where)) {
    auto s = alpha.find(label);
    if (!s) fail(std::string(where) + ": unknown symbol '" + label + "'");
    w.push_back(*s);
  }
  return w;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TokenizerSpec parse_tokenizer_spec(std::string_view json_text) {
  json doc = parse_json(json_text);
  TokenizerSpec spec;
  spec.alphabet = text_list(field(doc, "alphabet", "tokenizer spec"), "alphabet");
  if (doc.contains("space")) {
    std::string kind = text(doc["space"], "space");
    if (kind != "points" && kind != "truncated") fail("space must be \"points\" or \"truncated\"");
    spec.points = kind == "points";
  }
  if (doc.contains("max_len")) {
    if (!doc["max_len"].is_number_unsigned()) fail("max_len must be a nonnegative integer");
    spec.max_len = doc["max_len"].get<std::size_t>();
  }
  if (doc.contains("tokens")) spec.tokens = text_list(doc["tokens"], "tokens");
  if (doc.contains("vocab")) {
    if (!doc["vocab"].is_array()) fail("vocab must be an array");
    for (const auto& e : doc["vocab"]) {
      spec.vocab.emplace_back(text(field(e, "token", "vocab entry"), "token"),
                              text(field(e, "spelling", "vocab entry"), "spelling"));
    }
  }
  if (doc.contains("open")) {
    if (!doc["open"].is_boolean()) fail("open must be a boolean");
    spec.open = doc["open"].get<bool>();
  }

  const json& enc = field(doc, "encoder", "tokenizer spec");
  spec.encoder_type = text(field(enc, "type", "encoder"), "encoder type");
  if (enc.contains("merges")) {
    if (!enc["merges"].is_array()) fail("merges must be an array of pairs");
    for (const auto& m : enc["merges"]) {
      if (!m.is_array() || m.size() != 2) fail("each merge must be a pair of spellings");
      spec.merges.emplace_back(text(m[0], "merge"), text(m[1], "merge"));
    }
  }
  if (enc.contains("unk")) spec.unk = text(enc["unk"], "unk");
  if (enc.contains("table")) spec.encoder_table = parse_table(enc["table"], "encoder table");

  const json& dec = field(doc, "decoder", "tokenizer spec");
  spec.decoder_type = text(field(dec, "type", "decoder"), "decoder type");
  if (dec.contains("table")) spec.decoder_table = parse_table(dec["table"], "decoder table");
  return spec;
}

std::string to_json(const TokenizerSpec& spec) {
  json doc;
  doc["alphabet"] = spec.alphabet;
  doc["space"] = spec.points ? "points" : "truncated";
  if (spec.max_len) doc["max_len"] = *spec.max_len;
  if (!spec.tokens.empty()) doc["tokens"] = spec.tokens;
  if (!spec.vocab.empty()) {
    json vocab = json::array();
    for (const auto& [tok, sp] : spec.vocab) vocab.push_back({{"token", tok}, {"spelling", sp}});
    doc["vocab"] = vocab;
  }
  doc["open"] = spec.open;
  json enc = {{"type", spec.encoder_type}};
  if (!spec.merges.empty()) {
    json merges = json::array();
    for (const auto& [l, r] : spec.merges) merges.push_back({l, r});
    enc["merges"] = merges;
  }
  if (spec.unk) enc["unk"] = *spec.unk;
  if (!spec.encoder_table.empty()) enc["table"] = table_json(spec.encoder_table);
  doc["encoder"] = enc;
  json dec = {{"type", spec.decoder_type}};
  if (!spec.decoder_table.empty()) dec["table"] = table_json(spec.decoder_table);
  doc["decoder"] = dec;
  return doc.dump(2);
}

LoadedTokenizer build(const TokenizerSpec& spec, std::optional<std::size_t> max_len_override) {
  const std::size_t n = max_len_override.value_or(spec.max_len.value_or(kDefaultMaxLen));
  Alphabet chars(spec.alphabet, AlphabetRole::characters);

  std::optional<Vocab> vocab;
  std::optional<Alphabet> tokens;
  if (!spec.vocab.empty()) {
    std::vector<Vocab::Entry> entries;
    for (const auto& [tok, sp] : spec.vocab) entries.push_back({tok, parse_str(chars, sp)});
    vocab.emplace(chars, std::move(entries), spec.open);
    tokens = vocab->tokens();
  } else if (!spec.tokens.empty()) {
    tokens.emplace(spec.tokens, AlphabetRole::tokens);
  } else {
    fail("tokenizer spec needs either \"vocab\" or \"tokens\"");
  }

  const Space text_space = spec.points ? Space::points(chars) : Space(chars, n);
  const Space token_space = spec.points ? Space::points(*tokens) : Space(*tokens, n);
  auto need_vocab = [&](const std::string& what) {
    if (!vocab) fail(what + " needs a \"vocab\"");
    if (spec.points) fail(what + " cannot be used with \"points\" spaces");
  };

  std::vector<std::string> notes;
  std::optional<MergeList> merges;
  std::optional<StochMap> encoder;
  if (spec.encoder_type == "maximal_munch") {
    need_vocab("maximal_munch encoder");
    std::optional<Symbol> unk;
    if (spec.unk) {
      unk = vocab->tokens().find(*spec.unk);
      if (!unk) fail("unk token '" + *spec.unk + "' is not in the vocabulary");
      notes.push_back("lossy unk mode: unmatched characters collapse to '" + *spec.unk + "', which breaks exactness");
    }
    encoder = maximal_munch_encoder(*vocab, n, unk);
  } else if (spec.encoder_type == "bpe") {
    need_vocab("bpe encoder");
    std::vector<std::pair<Str, Str>> pairs;
    for (const auto& [l, r] : spec.merges) pairs.emplace_back(parse_str(chars, l), parse_str(chars, r));
    merges.emplace(*vocab, std::move(pairs));
    encoder = bpe_encoder(*vocab, *merges, n);
  } else if (spec.encoder_type == "uniform") {
    need_vocab("uniform encoder");
    encoder = uniform_segmenter_encoder(*vocab, n);
  } else if (spec.encoder_type == "table") {
    encoder = map_from_table(spec.encoder_table, text_space, token_space);
  } else {
    fail("unknown encoder type \"" + spec.encoder_type + "\"");
  }

  std::optional<StochMap> decoder;
  if (spec.decoder_type == "concat") {
    need_vocab("concat decoder");
    decoder = concat_decoder(*vocab, n);
  } else if (spec.decoder_type == "table") {
    decoder = map_from_table(spec.decoder_table, token_space, text_space);
  } else {
    fail("unknown decoder type \"" + spec.decoder_type + "\"");
  }

  return LoadedTokenizer{Tokenizer(std::move(*encoder), std::move(*decoder)),
                         std::move(vocab),
                         std::move(merges),
                         spec.encoder_type,
                         spec.decoder_type,
                         n,
                         std::move(notes)};
}

LoadedTokenizer load_tokenizer(const std::filesystem::path& path, std::optional<std::size_t> max_len_override) {
  return build(parse_tokenizer_spec(read_file(path)), max_len_override);
}

Dist parse_dist(std::string_view json_text, const Space& space) {
  return dist_from_pairs(parse_masses(parse_json(json_text), "distribution"), space);
}

std::string to_json(const Dist& p) { return masses_json(dist_pairs(p)).dump(2); }

StochMap parse_stochmap(std::string_view json_text, const Space& domain, const Space& codomain) {
  return map_from_table(parse_table(parse_json(json_text), "stochastic map"), domain, codomain);
}

std::string to_json(const StochMap& f) {
  std::vector<TableRow> rows;
  for (const auto& [x, row] : f.rows()) rows.push_back({to_string(x), dist_pairs(row)});
  return table_json(rows).dump(2);
}

SubseqTransducer parse_transducer(std::string_view json_text) {
  json doc = parse_json(json_text);
  Alphabet input(text_list(field(doc, "input_alphabet", "transducer"), "input_alphabet"), AlphabetRole::characters);
  Alphabet output(text_list(field(doc, "output_alphabet", "transducer"), "output_alphabet"), AlphabetRole::tokens);
  std::vector<std::string> names = text_list(field(doc, "states", "transducer"), "states");
  std::map<std::string, State> ids;
  for (State q = 0; q < names.size(); ++q) {
    if (!ids.emplace(names[q], q).second) fail("duplicate state name '" + names[q] + "'");
  }
  auto state = [&](const json& v) {
    std::string name = text(v, "state");
    auto it = ids.find(name);
    if (it == ids.end()) fail("unknown state '" + name + "'");
    return it->second;
  };
  State initial = state(field(doc, "initial", "transducer"));

  SubseqTransducer::Table table;
  const json& transitions = field(doc, "transitions", "transducer");
  if (!transitions.is_array()) fail("transitions must be an array");
  for (const auto& tr : transitions) {
    State from = state(field(tr, "from", "transition"));
    std::string in = text(field(tr, "in", "transition"), "in");
    auto sym = input.find(in);
    if (!sym) fail("unknown input symbol '" + in + "'");
    SubseqTransducer::Arc arc{state(field(tr, "to", "transition")), labels_word(output, field(tr, "out", "transition"), "out")};
    if (!table.emplace(std::pair{from, *sym}, std::move(arc)).second) {
      fail("two transitions from '" + names[from] + "' on '" + in + "'");
    }
  }

  std::vector<std::optional<Word>> terminal(names.size());
  const json& term = field(doc, "terminal", "transducer");
  if (!term.is_array()) fail("terminal must be an array");
  for (const auto& t : term) {
    State q = state(field(t, "state", "terminal entry"));
    if (terminal[q]) fail("state '" + names[q] + "' has two terminal outputs");
    terminal[q] = labels_word(output, field(t, "out", "terminal entry"), "out");
  }
  std::vector<Word> rho;
  for (State q = 0; q < names.size(); ++q) {
    if (!terminal[q]) fail("state '" + names[q] + "' has no terminal output");
    rho.push_back(std::move(*terminal[q]));
  }
  return SubseqTransducer(std::move(input), std::move(output), std::move(names), initial, std::move(table),
                          std::move(rho));
}

std::string to_json(const SubseqTransducer& t) {
  json doc;
  doc["input_alphabet"] = t.input().labels();
  doc["output_alphabet"] = t.output().labels();
  doc["states"] = t.state_names();
  doc["initial"] = t.state_names()[t.initial()];
  json transitions = json::array();
  for (const auto& [key, arc] : t.transitions()) {
    transitions.push_back({{"from", t.state_names()[key.first]},
                           {"in", t.input().label(key.second)},
                           {"to", t.state_names()[arc.to]},
                           {"out", labels_json(t.output(), arc.out)}});
  }
  doc["transitions"] = transitions;
  json terminal = json::array();
  for (State q = 0; q < t.state_count(); ++q) {
    terminal.push_back({{"state", t.state_names()[q]}, {"out", labels_json(t.output(), t.terminal()[q])}});
  }
  doc["terminal"] = terminal;
  return doc.dump(2);
}

}  // namespace tokcheck::io
