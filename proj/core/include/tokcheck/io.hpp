#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tokcheck/dist.hpp"
#include "tokcheck/encoders.hpp"
#include "tokcheck/stochmap.hpp"
#include "tokcheck/tokenizer.hpp"
#include "tokcheck/transducer.hpp"

// JSON document formats. Strings inside documents use the text forms of
// to_string(const Str&) and probabilities are "num/den" strings so masses
// survive the round trip exactly. Structural problems raise ParseError.

namespace tokcheck::io {

std::string read_file(const std::filesystem::path& path);

struct TableRow {
  std::string input;
  std::vector<std::pair<std::string, std::string>> output;  // (string, probability)

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Plain-data form of a tokenizer document:
///
///   {"alphabet": [...], "space": "truncated"|"points", "max_len": N,
///    "tokens": [...], "vocab": [{"token", "spelling"}], "open": bool,
///    "encoder": {"type": "maximal_munch"|"bpe"|"uniform"|"table",
///                "merges": [[l, r]], "unk": label, "table": [...]},
///    "decoder": {"type": "concat"|"table", "table": [...]}}
///
/// Table rows are {"input": s, "output": [{"string": t, "prob": "p"}]}; a bare
/// string output is shorthand for a point mass.
struct TokenizerSpec {
  std::vector<std::string> alphabet;
  bool points = false;
  std::optional<std::size_t> max_len;
  std::vector<std::string> tokens;
  std::vector<std::pair<std::string, std::string>> vocab;  // (token, spelling)
  bool open = true;

  std::string encoder_type;
  std::vector<std::pair<std::string, std::string>> merges;
  std::optional<std::string> unk;
  std::vector<TableRow> encoder_table;

  std::string decoder_type;
  std::vector<TableRow> decoder_table;

  friend bool operator==(const TokenizerSpec&, const TokenizerSpec&) = default;
};

TokenizerSpec parse_tokenizer_spec(std::string_view json_text);
std::string to_json(const TokenizerSpec& spec);

inline constexpr std::size_t kDefaultMaxLen = 5;

struct LoadedTokenizer {
  Tokenizer tokenizer;
  std::optional<Vocab> vocab;
  std::optional<MergeList> merges;
  std::string encoder_type;
  std::string decoder_type;
  std::size_t max_len;
  std::vector<std::string> notes;
};

/// Builds the stochastic maps a spec describes. The text space is Σ^≤N (N from
/// `max_len_override`, the document, or kDefaultMaxLen in that order) and the
/// token space Δ^≤N, or the bare symbols of each alphabet for "points" specs.
LoadedTokenizer build(const TokenizerSpec& spec, std::optional<std::size_t> max_len_override = std::nullopt);
LoadedTokenizer load_tokenizer(const std::filesystem::path& path,
                               std::optional<std::size_t> max_len_override = std::nullopt);

/// [{"string": s, "prob": "num/den"}]
Dist parse_dist(std::string_view json_text, const Space& space);
std::string to_json(const Dist& p);

/// [{"input": s, "output": [{"string": t, "prob": "num/den"}]}]
StochMap parse_stochmap(std::string_view json_text, const Space& domain, const Space& codomain);
std::string to_json(const StochMap& f);

/// {"input_alphabet": [...], "output_alphabet": [...], "states": [names],
///  "initial": name, "transitions": [{"from", "in", "to", "out": [labels]}],
///  "terminal": [{"state", "out": [labels]}]}
SubseqTransducer parse_transducer(std::string_view json_text);
std::string to_json(const SubseqTransducer& t);

}  // namespace tokcheck::io
