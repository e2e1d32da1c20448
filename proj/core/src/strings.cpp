#include "tokcheck/strings.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "tokcheck/error.hpp"

namespace tokcheck {

namespace {

constexpr std::string_view kEpsilon = "ε";

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::vector<std::string_view> split_codepoints(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t n = std::min(utf8_length(static_cast<unsigned char>(text[i])), text.size() - i);
    out.push_back(text.substr(i, n));
    i += n;
  }
  return out;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

void require_same_alphabet(const Str& a, const Str& b, const char* op) {
  if (!(a.alphabet() == b.alphabet())) {
    throw Error(Errc::alphabet_mismatch, std::string(op) + ": operands use different alphabets");
  }
}

}  // namespace

struct Alphabet::Data {
  std::vector<std::string> labels;
  AlphabetRole role;
  std::unordered_map<std::string, Symbol> index;
  bool single_codepoint = true;
};

Alphabet::Alphabet(std::vector<std::string> labels, AlphabetRole role) {
  if (labels.empty()) throw Error(Errc::invalid_argument, "alphabet must be nonempty");
  auto data = std::make_shared<Data>();
  data->role = role;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw Error(Errc::invalid_argument, "alphabet labels must be nonempty");
    if (!data->index.emplace(labels[i], static_cast<Symbol>(i)).second) {
      throw Error(Errc::invalid_argument, "duplicate alphabet label '" + labels[i] + "'");
    }
    if (split_codepoints(labels[i]).size() != 1) data->single_codepoint = false;
  }
  data->labels = std::move(labels);
  data_ = std::move(data);
}

std::size_t Alphabet::size() const noexcept { return data_->labels.size(); }
AlphabetRole Alphabet::role() const noexcept { return data_->role; }
const std::vector<std::string>& Alphabet::labels() const noexcept { return data_->labels; }
bool Alphabet::single_codepoint_labels() const noexcept { return data_->single_codepoint; }

const std::string& Alphabet::label(Symbol s) const {
  if (s >= data_->labels.size()) throw Error(Errc::invalid_argument, "symbol index out of range");
  return data_->labels[s];
}

std::optional<Symbol> Alphabet::find(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

bool operator==(const Alphabet& a, const Alphabet& b) noexcept {
  if (a.data_ == b.data_) return true;
  return a.data_->role == b.data_->role && a.data_->labels == b.data_->labels;
}

Str::Str(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

Str::Str(Alphabet alphabet, Word symbols) : alphabet_(std::move(alphabet)), syms_(std::move(symbols)) {
  for (Symbol s : syms_) {
    if (s >= alphabet_.size()) throw Error(Errc::invalid_argument, "symbol index out of range");
  }
}

Str Str::prefix(std::size_t n) const {
  n = std::min(n, syms_.size());
  return Str(alphabet_, Word(syms_.begin(), syms_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Str Str::drop(std::size_t n) const {
  n = std::min(n, syms_.size());
  return Str(alphabet_, Word(syms_.begin() + static_cast<std::ptrdiff_t>(n), syms_.end()));
}

bool operator==(const Str& a, const Str& b) noexcept {
  return a.syms_ == b.syms_ && a.alphabet_ == b.alphabet_;
}

std::strong_ordering operator<=>(const Str& a, const Str& b) noexcept {
  if (auto c = a.syms_.size() <=> b.syms_.size(); c != 0) return c;
  return a.syms_ <=> b.syms_;
}

bool canonical_less(const Word& a, const Word& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Str concat(const Str& a, const Str& b) {
  require_same_alphabet(a, b, "concat");
  Word w = a.symbols();
  w.insert(w.end(), b.symbols().begin(), b.symbols().end());
  return Str(a.alphabet(), std::move(w));
}

Str longest_common_prefix(const Str& a, const Str& b) {
  require_same_alphabet(a, b, "longest_common_prefix");
  auto [ia, ib] = std::mismatch(a.symbols().begin(), a.symbols().end(), b.symbols().begin(), b.symbols().end());
  return a.prefix(static_cast<std::size_t>(ia - a.symbols().begin()));
}

std::size_t left_distance(const Str& a, const Str& b) {
  std::size_t common = longest_common_prefix(a, b).size();
  return a.size() + b.size() - 2 * common;
}

bool is_prefix(const Str& a, const Str& b) {
  require_same_alphabet(a, b, "is_prefix");
  if (a.size() > b.size()) return false;
  return std::equal(a.symbols().begin(), a.symbols().end(), b.symbols().begin());
}

std::vector<Str> enumerate_strings(const Alphabet& alpha, std::size_t max_len) {
  std::vector<Str> out;
  out.reserve(static_cast<std::size_t>(count_strings(alpha.size(), max_len)));
  const auto k = static_cast<Symbol>(alpha.size());
  for (std::size_t len = 0; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      out.emplace_back(alpha, w);
      // odometer increment, last position fastest
      std::size_t pos = len;
      while (pos > 0 && w[pos - 1] == k - 1) w[--pos] = 0;
      if (pos == 0) break;
      ++w[pos - 1];
    }
  }
  return out;
}

std::uint64_t count_strings(std::uint64_t alphabet_size, std::size_t max_len) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::size_t i = 0; i <= max_len; ++i) {
    if (total > kMax - power) throw Error(Errc::invalid_argument, "string count overflows 64 bits");
    total += power;
    if (i < max_len) {
      if (alphabet_size != 0 && power > kMax / alphabet_size) {
        throw Error(Errc::invalid_argument, "string count overflows 64 bits");
      }
      power *= alphabet_size;
    }
  }
  return total;
}

Space::Space(Alphabet alphabet, std::size_t max_len)
    : Space(std::move(alphabet), max_len, SpaceKind::truncated) {}

Space::Space(Alphabet alphabet, std::size_t max_len, SpaceKind kind)
    : alphabet_(std::move(alphabet)), max_len_(max_len), kind_(kind) {}

Space Space::points(Alphabet alphabet) { return Space(std::move(alphabet), 1, SpaceKind::points); }

bool Space::contains(const Str& s) const noexcept {
  if (!(s.alphabet() == alphabet_)) return false;
  if (kind_ == SpaceKind::points) return s.size() == 1;
  return s.size() <= max_len_;
}

std::vector<Str> Space::members() const {
  if (kind_ == SpaceKind::truncated) return enumerate_strings(alphabet_, max_len_);
  std::vector<Str> out;
  out.reserve(alphabet_.size());
  for (Symbol s = 0; s < alphabet_.size(); ++s) out.emplace_back(alphabet_, Word{s});
  return out;
}

std::uint64_t Space::size() const {
  if (kind_ == SpaceKind::points) return alphabet_.size();
  return count_strings(alphabet_.size(), max_len_);
}

bool Space::compatible_with(const Space& other) const noexcept {
  return kind_ == other.kind_ && alphabet_ == other.alphabet_;
}

bool operator==(const Space& a, const Space& b) noexcept {
  return a.kind_ == b.kind_ && a.max_len_ == b.max_len_ && a.alphabet_ == b.alphabet_;
}

std::string to_string(const Space& space) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < space.alphabet().size(); ++i) {
    if (i) os << ',';
    os << space.alphabet().labels()[i];
  }
  os << '}';
  if (space.kind() == SpaceKind::truncated) os << "^≤" << space.max_len();
  return os.str();
}

std::string to_string(const Str& s) {
  if (s.empty()) return std::string(kEpsilon);
  const Alphabet& alpha = s.alphabet();
  std::string_view sep = " ";
  if (alpha.role() == AlphabetRole::tokens) {
    sep = "|";
  } else if (alpha.single_codepoint_labels()) {
    sep = "";
  }
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += alpha.label(s[i]);
  }
  return out;
}

Str parse_str(const Alphabet& alphabet, std::string_view text) {
  if (text.empty() || (text == kEpsilon && !alphabet.find(kEpsilon))) return Str(alphabet);
  std::vector<std::string_view> parts;
  if (alphabet.role() == AlphabetRole::tokens) {
    parts = split_on(text, '|');
  } else if (alphabet.single_codepoint_labels()) {
    parts = split_codepoints(text);
  } else {
    parts = split_whitespace(text);
  }
  Word w;
  w.reserve(parts.size());
  for (auto part : parts) {
    auto sym = alphabet.find(part);
    if (!sym) {
      throw Error(Errc::parse_error, "unknown symbol '" + std::string(part) + "' in \"" + std::string(text) + "\"");
    }
    w.push_back(*sym);
  }
  return Str(alphabet, std::move(w));
}

}  // namespace tokcheck
