#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tokcheck/encoders.hpp"
#include "tokcheck/stochmap.hpp"
#include "tokcheck/strings.hpp"

namespace tokcheck {

using State = std::size_t;

/// Left subsequential transducer (Q, Γ, B, i, ◇, ∗, ρ).
///
/// The next-state and output functions share one explicit domain table, so
/// they are defined on exactly the same (state, symbol) pairs. ρ is total on
/// Q. A pair missing from the table is an undefined transition; there is no
/// implicit sink state.
class SubseqTransducer {
 public:
  struct Arc {
    State to;
    Word out;

    friend bool operator==(const Arc&, const Arc&) = default;
  };
  using Table = std::map<std::pair<State, Symbol>, Arc>;

  SubseqTransducer(Alphabet input, Alphabet output, std::vector<std::string> state_names, State initial,
                   Table transitions, std::vector<Word> terminal);

  const Alphabet& input() const noexcept { return input_; }
  const Alphabet& output() const noexcept { return output_; }
  std::size_t state_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& state_names() const noexcept { return names_; }
  State initial() const noexcept { return initial_; }
  const Table& transitions() const noexcept { return table_; }
  const std::vector<Word>& terminal() const noexcept { return terminal_; }

  /// nullptr when (q, a) is outside the domain.
  const Arc* arc(State q, Symbol a) const;

  friend bool operator==(const SubseqTransducer&, const SubseqTransducer&) = default;

 private:
  Alphabet input_;
  Alphabet output_;
  std::vector<std::string> names_;
  State initial_;
  Table table_;
  std::vector<Word> terminal_;
};

struct PathResult {
  Word output;  // i ∗ γ
  State state;  // i ◇ γ
};

/// Follows γ from the initial state. Throws UndefinedTransition.
PathResult follow(const SubseqTransducer& t, const Str& input);

/// (i ∗ γ) · ρ(i ◇ γ).
Str run(const SubseqTransducer& t, const Str& input);

/// States are the viable munch buffers (proper prefixes of spellings, ε
/// included). Reading a character extends the buffer while it is still a
/// proper prefix of some spelling; otherwise the longest spelling prefixing
/// the buffer is emitted and the leftover is re-read from ε, all at
/// construction time. ρ emits the greedy segmentation of the buffer.
/// Throws VocabNotOpen.
SubseqTransducer build_maximal_munch_transducer(const Vocab& vocab);

/// Compares run(t, γ) with f(γ) for every γ in Γ^≤max_len, canonical order.
/// The witness is the first γ on which they differ (or on which either side
/// throws).
Verdict<Str> equivalent_on(const SubseqTransducer& t, const Function& f, std::size_t max_len);
Verdict<Str> equivalent_on(const SubseqTransducer& t, const StochMap& f, std::size_t max_len);

/// True iff ρ maps every state to ε; witness is the first state name that
/// does not.
Verdict<std::string> sequential_of(const SubseqTransducer& t);

}  // namespace tokcheck
