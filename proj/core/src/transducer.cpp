#include "tokcheck/transducer.hpp"

#include <deque>
#include <set>

#include "tokcheck/error.hpp"

namespace tokcheck {

SubseqTransducer::SubseqTransducer(Alphabet input, Alphabet output, std::vector<std::string> state_names,
                                   State initial, Table transitions, std::vector<Word> terminal)
    : input_(std::move(input)),
      output_(std::move(output)),
      names_(std::move(state_names)),
      initial_(initial),
      table_(std::move(transitions)),
      terminal_(std::move(terminal)) {
  const std::size_t n = names_.size();
  if (n == 0) throw Error(Errc::invalid_argument, "transducer needs at least one state");
  if (initial_ >= n) throw Error(Errc::invalid_argument, "initial state out of range");
  if (terminal_.size() != n) throw Error(Errc::invalid_argument, "terminal function must cover every state");
  auto check_output = [&](const Word& w) {
    for (Symbol s : w) {
      if (s >= output_.size()) throw Error(Errc::invalid_argument, "output symbol out of range");
    }
  };
  for (const auto& [key, arc] : table_) {
    if (key.first >= n || arc.to >= n) throw Error(Errc::invalid_argument, "transition references an unknown state");
    if (key.second >= input_.size()) throw Error(Errc::invalid_argument, "transition on an unknown input symbol");
    check_output(arc.out);
  }
  for (const Word& w : terminal_) check_output(w);
}

const SubseqTransducer::Arc* SubseqTransducer::arc(State q, Symbol a) const {
  auto it = table_.find({q, a});
  return it == table_.end() ? nullptr : &it->second;
}

PathResult follow(const SubseqTransducer& t, const Str& input) {
  if (!(input.alphabet() == t.input())) {
    throw Error(Errc::alphabet_mismatch, "transducer input is over a different alphabet");
  }
  PathResult r{{}, t.initial()};
  for (std::size_t pos = 0; pos < input.size(); ++pos) {
    const auto* arc = t.arc(r.state, input[pos]);
    if (arc == nullptr) {
      throw Error(Errc::undefined_transition, "no transition from state '" + t.state_names()[r.state] + "' on '" +
                                                  t.input().label(input[pos]) + "' at position " + std::to_string(pos));
    }
    r.output.insert(r.output.end(), arc->out.begin(), arc->out.end());
    r.state = arc->to;
  }
  return r;
}

Str run(const SubseqTransducer& t, const Str& input) {
  PathResult r = follow(t, input);
  const Word& tail = t.terminal()[r.state];
  r.output.insert(r.output.end(), tail.begin(), tail.end());
  return Str(t.output(), std::move(r.output));
}

namespace {

class MunchCompiler {
 public:
  explicit MunchCompiler(const Vocab& vocab) : vocab_(vocab) {
    for (const Word& sp : vocab.spellings()) {
      for (std::size_t len = 0; len < sp.size(); ++len) {
        viable_.insert(Word(sp.begin(), sp.begin() + static_cast<std::ptrdiff_t>(len)));
      }
    }
  }

  bool viable(const Word& buffer) const { return viable_.contains(buffer); }

  // Read one character with `buffer` pending; returns the tokens emitted and
  // the new pending buffer.
  std::pair<Word, Word> step(const Word& buffer, Symbol c) const {
    Word extended = buffer;
    extended.push_back(c);
    if (viable(extended)) return {Word{}, extended};
    Word out;
    std::size_t used = 0;
    for (std::size_t len = extended.size(); len >= 1; --len) {
      if (auto tok = vocab_.find_spelling(Word(extended.begin(), extended.begin() + static_cast<std::ptrdiff_t>(len)))) {
        out.push_back(*tok);
        used = len;
        break;
      }
    }
    // open vocabulary guarantees the single character matches
    Word pending;
    for (std::size_t i = used; i < extended.size(); ++i) {
      auto [emitted, next] = step(pending, extended[i]);
      out.insert(out.end(), emitted.begin(), emitted.end());
      pending = std::move(next);
    }
    return {out, pending};
  }

  Word flush(const Word& buffer) const {
    return maximal_munch_encode(vocab_, Str(vocab_.characters(), buffer)).symbols();
  }

 private:
  const Vocab& vocab_;
  std::set<Word> viable_;
};

}  // namespace

SubseqTransducer build_maximal_munch_transducer(const Vocab& vocab) {
  if (!vocab.covers_alphabet()) {
    throw Error(Errc::vocab_not_open, "maximal-munch transducer needs a token for every character");
  }
  MunchCompiler compiler(vocab);
  std::map<Word, State> ids;
  std::vector<Word> buffers;
  std::deque<State> queue;
  auto intern = [&](const Word& b) {
    auto [it, fresh] = ids.emplace(b, buffers.size());
    if (fresh) {
      buffers.push_back(b);
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(Word{});

  SubseqTransducer::Table table;
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Symbol c = 0; c < vocab.characters().size(); ++c) {
      auto [out, next] = compiler.step(buffers[q], c);
      State to = intern(next);
      table.emplace(std::pair{q, c}, SubseqTransducer::Arc{to, std::move(out)});
    }
  }

  std::vector<std::string> names;
  std::vector<Word> terminal;
  for (const Word& b : buffers) {
    names.push_back(to_string(Str(vocab.characters(), b)));
    terminal.push_back(compiler.flush(b));
  }
  return SubseqTransducer(vocab.characters(), vocab.tokens(), std::move(names), 0, std::move(table),
                          std::move(terminal));
}

Verdict<Str> equivalent_on(const SubseqTransducer& t, const Function& f, std::size_t max_len) {
  for (const Str& gamma : enumerate_strings(t.input(), max_len)) {
    try {
      if (!(run(t, gamma) == f(gamma))) return Verdict<Str>::fail(gamma);
    } catch (const Error&) {
      return Verdict<Str>::fail(gamma);
    }
  }
  return Verdict<Str>::pass();
}

Verdict<Str> equivalent_on(const SubseqTransducer& t, const StochMap& f, std::size_t max_len) {
  return equivalent_on(t, Function([&](const Str& s) { return apply(f, s); }), max_len);
}

Verdict<std::string> sequential_of(const SubseqTransducer& t) {
  for (State q = 0; q < t.state_count(); ++q) {
    if (!t.terminal()[q].empty()) return Verdict<std::string>::fail(t.state_names()[q]);
  }
  return Verdict<std::string>::pass();
}

}  // namespace tokcheck
